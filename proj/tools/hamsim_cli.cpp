// Command-line front end: run, validate, bounds-sweep, export-qasm.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "hamsim/analysis.hpp"
#include "hamsim/circuit.hpp"
#include "hamsim/experiment.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kInvariantViolation = 2;

int report_config_error(const hamsim::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kConfigError;
}

int cmd_run(const std::string& path) {
    try {
        const auto cfg = hamsim::load_config(path);
        const auto start = std::chrono::steady_clock::now();
        const auto res = hamsim::run_experiment(cfg);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        for (const auto& w : res.warnings)
            std::cerr << "warning: " << w << '\n';
        for (const auto& f : res.files)
            std::cout << f.string() << '\n';
        std::cerr << hamsim::to_string(cfg.experiment) << " finished in " << secs << " s\n";
        return kOk;
    } catch (const hamsim::ConfigError& e) {
        return report_config_error(e);
    } catch (const hamsim::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kInvariantViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
}

int cmd_validate(const std::string& path) {
    try {
        const auto cfg = hamsim::load_config(path);
        std::cout << path << ": valid " << hamsim::to_string(cfg.experiment) << " config\n";
        return kOk;
    } catch (const hamsim::ConfigError& e) {
        return report_config_error(e);
    }
}

int cmd_sweep(int n_min, int n_max, const std::vector<std::string>& orders, const std::string& out_dir) {
    hamsim::ExperimentConfig cfg;
    cfg.experiment = hamsim::ExperimentKind::BoundsSweep;
    cfg.output_dir = out_dir;
    cfg.sweep.n_min = n_min;
    cfg.sweep.n_max = n_max;
    cfg.sweep.orders.clear();
    for (const auto& o : orders)
        cfg.sweep.orders.push_back(o == "1" || o == "first" ? hamsim::Order::First : hamsim::Order::Second);
    try {
        const auto res = hamsim::run_experiment(cfg);
        for (const auto& f : res.files)
            std::cout << f.string() << '\n';
        return kOk;
    } catch (const hamsim::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kInvariantViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
}

int cmd_export(const std::string& path, const std::string& out) {
    try {
        const auto cfg = hamsim::load_config(path);
        if (cfg.experiment == hamsim::ExperimentKind::BoundsSweep ||
            cfg.experiment == hamsim::ExperimentKind::CommutatorSuite)
            throw hamsim::ConfigError(std::vector<hamsim::ConfigIssue>{{"experiment", "has no circuit to export"}});
        // OpenQASM's standard gates have no multi-controlled RZ.
        const hamsim::Circuit step = hamsim::decompose(hamsim::step_circuit(cfg.problem));
        std::ofstream os(out, std::ios::binary | std::ios::trunc);
        if (!os)
            throw std::runtime_error("cannot write '" + out + "'");
        os << hamsim::export_qasm(step);
        std::cout << out << ": " << step.size() << " gates, "
                  << hamsim::count_cnots(step, hamsim::CnotCountMode::Analytic) << " CNOTs\n";
        return kOk;
    } catch (const hamsim::ConfigError& e) {
        return report_config_error(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trotterized Hamiltonian simulation of advection and wave equations"};
    app.require_subcommand(1);

    std::string config;
    auto* run = app.add_subcommand("run", "Run the experiment described by a JSON config");
    run->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);

    auto* validate = app.add_subcommand("validate", "Check a config and report every problem");
    validate->add_option("config", config, "Config file")->required();

    int n_min = 2, n_max = 6;
    std::vector<std::string> orders{"1", "2"};
    std::string sweep_out = "out/bounds_sweep";
    auto* sweep = app.add_subcommand("bounds-sweep", "Measured Trotter error against the closed-form bounds");
    sweep->add_option("--n-min", n_min, "Smallest register size")->check(CLI::Range(2, 10));
    sweep->add_option("--n-max", n_max, "Largest register size")->check(CLI::Range(2, 10));
    sweep->add_option("--orders", orders, "Product-formula orders")
        ->check(CLI::IsMember({"1", "2", "first", "second"}))
        ->delimiter(',');
    sweep->add_option("--out-dir", sweep_out, "Output directory (HAMSIM_OUTPUT_DIR overrides)");

    std::string qasm_out;
    auto* qasm = app.add_subcommand("export-qasm", "Write one Trotter step as OpenQASM 3");
    qasm->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
    qasm->add_option("--out", qasm_out, "Output .qasm file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kConfigError;
    }

    if (*run)
        return cmd_run(config);
    if (*validate)
        return cmd_validate(config);
    if (*sweep) {
        if (n_max < n_min) {
            std::cerr << "--n-max must be >= --n-min\n";
            return kConfigError;
        }
        return cmd_sweep(n_min, n_max, orders, sweep_out);
    }
    return cmd_export(config, qasm_out);
}
