#include "hamsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "hamsim/hamiltonian.hpp"
#include "hamsim/statevector.hpp"

namespace hamsim {

using nlohmann::json;

namespace {

// Above this size exact evolution uses the sparse Taylor series.
constexpr int kSpectralQubits = 10;

std::vector<int> recorded_steps(const ExperimentConfig& cfg, bool all_by_default) {
    const int r = num_steps(cfg.problem);
    std::vector<int> steps;
    if (cfg.record_times.empty()) {
        if (all_by_default)
            for (int k = 0; k <= r; ++k)
                steps.push_back(k);
        else
            steps.push_back(r);
        return steps;
    }
    for (double t : cfg.record_times)
        steps.push_back(steps_for_time(t, cfg.problem.tau));
    return steps;
}

/// Exact states exp(-iH k τ)|ψ0> at ascending steps.
std::vector<std::vector<cplx>> exact_series(const PDEProblem& p, const std::vector<cplx>& psi0,
                                            const std::vector<int>& steps) {
    const QubitOperator h = hamiltonian(p);
    std::vector<std::vector<cplx>> out;
    if (h.num_qubits() <= kSpectralQubits) {
        const SpectralPropagator prop(h);
        for (int k : steps)
            out.push_back(prop.apply(k * p.tau, psi0));
        return out;
    }
    std::vector<cplx> psi = psi0;
    int at = 0;
    for (int k : steps) {
        if (k > at)
            psi = taylor_evolve(h, (k - at) * p.tau, std::move(psi));
        at = k;
        out.push_back(psi);
    }
    return out;
}

std::vector<std::vector<cplx>> circuit_series(const PDEProblem& p, const std::vector<cplx>& psi0,
                                              const std::vector<int>& steps) {
    const Circuit step = step_circuit(p);
    StateVector s = StateVector::from_amplitudes(psi0);
    std::vector<std::vector<cplx>> out;
    int at = 0;
    for (int k : steps) {
        for (; at < k; ++at)
            apply_inplace(step, s);
        if (std::abs(s.norm() - 1.0) > 1e-10)
            throw std::runtime_error("circuit evolution lost normalization at step " + std::to_string(k));
        out.push_back(s.amplitudes());
    }
    return out;
}

std::vector<std::vector<cplx>> fdm_series(const ExperimentConfig& cfg, const std::vector<cplx>& psi0,
                                          const std::vector<int>& steps, std::vector<std::string>& warnings) {
    const PDEProblem& p = cfg.problem;
    std::vector<double> times;
    for (int k : steps)
        times.push_back(k * p.tau);
    std::vector<std::vector<cplx>> out;

    if (p.equation == Equation::Advection) {
        std::vector<double> u0(psi0.size());
        for (std::size_t i = 0; i < psi0.size(); ++i)
            u0[i] = psi0[i].real();
        const FdmTrajectory tr = advect_fdm(u0, p.velocity, p.l, cfg.fdm_dt, p.total_time, p.bc, times);
        warnings.insert(warnings.end(), tr.warnings.begin(), tr.warnings.end());
        for (const auto& u : tr.u)
            out.emplace_back(u.begin(), u.end());
        return out;
    }

    // Wave: block 0 holds ∂u/∂t, block 1 holds i·c·Σ_α κ_α D_α u with κ = (1, i).
    const std::size_t nodes = psi0.size() / 2;
    std::vector<double> w0(nodes), u0(nodes, 0.0);
    for (std::size_t i = 0; i < nodes; ++i)
        w0[i] = psi0[i].real();
    const WaveBoundary bc = p.bc == BoundaryCondition::Periodic ? WaveBoundary::Periodic : WaveBoundary::Mixed;
    const FdmTrajectory tr =
        wave_fdm(u0, w0, p.d, p.speed, p.l, cfg.fdm_dt, p.total_time, bc, cfg.fdm_laplacian, times);
    warnings.insert(warnings.end(), tr.warnings.begin(), tr.warnings.end());
    const cplx ic{0.0, p.speed};
    for (std::size_t s = 0; s < tr.u.size(); ++s) {
        std::vector<cplx> psi(psi0.size());
        for (std::size_t i = 0; i < nodes; ++i)
            psi[i] = tr.dudt[s][i];
        for (int a = 1; a <= p.d; ++a) {
            const cplx kappa = a == 1 ? cplx{1.0, 0.0} : cplx{0.0, 1.0};
            const std::vector<double> g = wave_gradient(tr.u[s], p.d, a, p.l, bc);
            for (std::size_t i = 0; i < nodes; ++i)
                psi[nodes + i] += ic * kappa * g[i];
        }
        out.push_back(std::move(psi));
    }
    return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

// Key columns of one amplitude: [block,] j1 [, j2].
struct Layout {
    bool wave;
    int d, n;
    std::string header() const {
        std::string h = "step";
        if (wave)
            h += ",block";
        for (int a = 1; a <= d; ++a)
            h += ",j" + std::to_string(a);
        return h;
    }
    std::string key(int step, Index idx) const {
        std::string k = std::to_string(step);
        const Index nodes = Index{1} << (d * n);
        if (wave)
            k += "," + std::to_string(idx / nodes);
        const Index node = idx % nodes;
        for (int a = 1; a <= d; ++a)
            k += "," + std::to_string((node >> ((d - a) * n)) & ((Index{1} << n) - 1));
        return k;
    }
};

void write_amplitudes(const std::filesystem::path& path, const Layout& lay, const std::vector<int>& steps,
                      const std::vector<std::vector<cplx>>& series) {
    std::ofstream out = open_out(path);
    out << lay.header() << ",re,im\n";
    for (std::size_t s = 0; s < steps.size(); ++s)
        for (Index i = 0; i < series[s].size(); ++i)
            out << lay.key(steps[s], i) << ',' << csv_number(series[s][i].real()) << ','
                << csv_number(series[s][i].imag()) << '\n';
}

json problem_json(const PDEProblem& p) {
    json j;
    j["equation"] = to_string(p.equation);
    j["d"] = p.d;
    j["n"] = p.n;
    j["l"] = p.l;
    j["tau"] = p.tau;
    j["T"] = p.total_time;
    j["order"] = to_string(p.order);
    j["bc"] = to_string(p.bc);
    if (p.equation == Equation::Advection)
        j["velocity"] = p.velocity;
    else
        j["speed"] = p.speed;
    j["num_qubits"] = num_qubits(p);
    return j;
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

void run_trajectory(const ExperimentConfig& cfg, RunResult& res, json& summary) {
    const TrajectoryResult tr = simulate_trajectory(cfg);
    const PDEProblem& p = cfg.problem;
    const Layout lay{p.equation == Equation::Wave, p.d, p.n};
    const auto dir = res.output_dir;
    write_amplitudes(dir / "amplitudes_circuit.csv", lay, tr.steps, tr.circuit);
    write_amplitudes(dir / "amplitudes_exact.csv", lay, tr.steps, tr.exact);
    write_amplitudes(dir / "amplitudes_fdm.csv", lay, tr.steps, tr.fdm);
    {
        std::ofstream out = open_out(dir / "errors.csv");
        out << lay.header() << ",abs_circuit_fdm,abs_exact_fdm,abs_circuit_exact\n";
        for (std::size_t s = 0; s < tr.steps.size(); ++s)
            for (Index i = 0; i < tr.circuit[s].size(); ++i)
                out << lay.key(tr.steps[s], i) << ',' << csv_number(std::abs(tr.circuit[s][i] - tr.fdm[s][i])) << ','
                    << csv_number(std::abs(tr.exact[s][i] - tr.fdm[s][i])) << ','
                    << csv_number(std::abs(tr.circuit[s][i] - tr.exact[s][i])) << '\n';
    }
    for (const char* f : {"amplitudes_circuit.csv", "amplitudes_exact.csv", "amplitudes_fdm.csv", "errors.csv"})
        res.files.push_back(dir / f);

    json times = json::array();
    for (std::size_t s = 0; s < tr.steps.size(); ++s) {
        const int k = tr.steps[s];
        const double ce = max_abs_deviation(tr.circuit[s], tr.exact[s]);
        const double allowed = k * tr.per_step_bound;
        json e;
        e["step"] = k;
        e["t"] = k * p.tau;
        e["max_abs_circuit_exact"] = ce;
        e["max_abs_exact_fdm"] = max_abs_deviation(tr.exact[s], tr.fdm[s]);
        e["max_abs_circuit_fdm"] = max_abs_deviation(tr.circuit[s], tr.fdm[s]);
        e["accumulated_bound"] = allowed;
        if (p.equation == Equation::Advection)
            e["peak_position"] = {{"circuit", peak_position(tr.circuit[s], p.d, p.n)},
                                  {"exact", peak_position(tr.exact[s], p.d, p.n)},
                                  {"fdm", peak_position(tr.fdm[s], p.d, p.n)}};
        times.push_back(e);
        if (ce > allowed + 1e-12)
            res.violations.push_back("step " + std::to_string(k) + ": circuit-vs-exact deviation " + csv_number(ce) +
                                     " exceeds accumulated bound " + csv_number(allowed));
    }
    summary["problem"] = problem_json(p);
    summary["fdm_dt"] = cfg.fdm_dt;
    summary["fdm_laplacian"] = cfg.fdm_laplacian == WaveLaplacian::Standard ? "standard" : "central_squared";
    summary["r"] = tr.r;
    summary["per_step_bound"] = tr.per_step_bound;
    summary["records"] = times;
    res.warnings.insert(res.warnings.end(), tr.warnings.begin(), tr.warnings.end());
}

void run_shots(const ExperimentConfig& cfg, RunResult& res, json& summary) {
    const ShotsResult sr = simulate_shots(cfg);
    const auto dir = res.output_dir;
    {
        std::ofstream out = open_out(dir / "observables.csv");
        out << "step,name,value,ci95\n";
        for (const auto& pt : sr.points) {
            out << pt.step << ",kinetic_shots," << csv_number(pt.estimate) << ',' << csv_number(pt.ci95) << '\n';
            out << pt.step << ",kinetic_statevector," << csv_number(pt.statevector) << ",0\n";
            out << pt.step << ",kinetic_exact," << csv_number(pt.exact) << ",0\n";
        }
    }
    {
        std::ofstream out = open_out(dir / "shots.csv");
        out << "t,estimate,ci95,exact\n";
        for (const auto& pt : sr.points)
            out << csv_number(pt.t) << ',' << csv_number(pt.estimate) << ',' << csv_number(pt.ci95) << ','
                << csv_number(pt.exact) << '\n';
    }
    res.files.push_back(dir / "observables.csv");
    res.files.push_back(dir / "shots.csv");

    int within = 0;
    for (const auto& pt : sr.points) {
        // ci95 is exactly 0 for a deterministic outcome; the slack absorbs
        // rounding in the exact series.
        if (std::abs(pt.estimate - pt.exact) <= 3 * pt.ci95 + 1e-12)
            ++within;
        const double allowed = pt.step * sr.per_step_bound;
        if (pt.state_deviation > allowed + 1e-12)
            res.violations.push_back("step " + std::to_string(pt.step) + ": circuit-vs-exact deviation " +
                                     csv_number(pt.state_deviation) + " exceeds accumulated bound " +
                                     csv_number(allowed));
    }
    summary["problem"] = problem_json(cfg.problem);
    summary["shots"] = cfg.shots;
    summary["seed"] = cfg.seed;
    summary["r"] = sr.r;
    summary["per_step_bound"] = sr.per_step_bound;
    summary["points"] = sr.points.size();
    summary["points_within_3ci95"] = within;
}

void run_sweep(const ExperimentConfig& cfg, RunResult& res, json& summary) {
    const auto reports = bounds_sweep(cfg.sweep);
    write_report_csv(res.output_dir / "report.csv", reports);
    res.files.push_back(res.output_dir / "report.csv");
    double worst = 0.0;
    for (const auto& r : reports) {
        worst = std::max(worst, r.ratio());
        if (!r.compliant())
            res.violations.push_back(r.kind + " n=" + std::to_string(r.n) + " d=" + std::to_string(r.d) +
                                     " tau=" + csv_number(r.tau) + ": measured " + csv_number(r.measured_error) +
                                     " > bound " + csv_number(r.bound));
    }
    summary["points"] = reports.size();
    summary["violation_count"] = res.violations.size();
    summary["max_ratio"] = worst;
}

void run_commutators(const ExperimentConfig& cfg, RunResult& res, json& summary) {
    std::vector<CommutatorReport> reports;
    for (int n : cfg.commutators.n)
        for (double lambda : cfg.commutators.lambda)
            reports.push_back(verify_commutators(n, lambda, cfg.commutators.tol));
    write_commutator_csv(res.output_dir / "commutators.csv", reports);
    res.files.push_back(res.output_dir / "commutators.csv");
    std::size_t checks = 0;
    for (const auto& rep : reports)
        for (const auto& c : rep.checks) {
            ++checks;
            if (!c.passed)
                res.violations.push_back("n=" + std::to_string(rep.n) + " lambda=" + csv_number(rep.lambda) + ": " +
                                         c.name + " deviates by " + csv_number(c.max_deviation));
        }
    summary["checks"] = checks;
    summary["failures"] = res.violations.size();
    summary["tol"] = cfg.commutators.tol;
}

} // namespace

double max_abs_deviation(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("max_abs_deviation: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::vector<double> peak_position(const std::vector<cplx>& amplitudes, int d, int n) {
    const Index nodes = Index{1} << n;
    if (amplitudes.size() != (std::size_t{1} << (d * n)))
        throw std::invalid_argument("peak_position: amplitude count does not match the grid");
    std::vector<double> out;
    for (int a = 1; a <= d; ++a) {
        const int shift = (d - a) * n;
        double c = 0.0, s = 0.0;
        for (Index i = 0; i < amplitudes.size(); ++i) {
            const double w = std::norm(amplitudes[i]);
            const double phase = 2 * std::numbers::pi * double((i >> shift) & (nodes - 1)) / double(nodes);
            c += w * std::cos(phase);
            s += w * std::sin(phase);
        }
        double pos = std::atan2(s, c) / (2 * std::numbers::pi) * double(nodes);
        if (pos < 0)
            pos += double(nodes);
        if (pos >= double(nodes)) // -0 rounding up to a full period
            pos -= double(nodes);
        out.push_back(pos);
    }
    return out;
}

TrajectoryResult simulate_trajectory(const ExperimentConfig& cfg) {
    const PDEProblem& p = cfg.problem;
    TrajectoryResult tr;
    tr.num_qubits = num_qubits(p);
    tr.r = num_steps(p);
    tr.per_step_bound = per_step_bound(p);
    tr.steps = recorded_steps(cfg, false);
    const std::vector<cplx> psi0 = initial_state(p);
    tr.circuit = circuit_series(p, psi0, tr.steps);
    tr.exact = exact_series(p, psi0, tr.steps);
    tr.fdm = fdm_series(cfg, psi0, tr.steps, tr.warnings);
    return tr;
}

ShotsResult simulate_shots(const ExperimentConfig& cfg) {
    const PDEProblem& p = cfg.problem;
    ShotsResult sr;
    sr.r = num_steps(p);
    sr.per_step_bound = per_step_bound(p);
    const std::vector<int> steps = recorded_steps(cfg, true);
    const std::vector<cplx> psi0 = initial_state(p);
    const auto circ = circuit_series(p, psi0, steps);
    const auto exact = exact_series(p, psi0, steps);
    const Observable obs = kinetic_energy_observable(num_qubits(p));
    for (std::size_t s = 0; s < steps.size(); ++s) {
        const StateVector cs = StateVector::from_amplitudes(circ[s]);
        const StateVector es = StateVector::from_amplitudes(exact[s]);
        const ShotEstimate est = sample_observable(cs, obs, cfg.shots, cfg.seed + std::uint64_t(steps[s]));
        ShotPoint pt;
        pt.step = steps[s];
        pt.t = steps[s] * p.tau;
        pt.estimate = est.estimate;
        pt.ci95 = est.ci95;
        pt.statevector = expectation(cs, obs);
        pt.exact = expectation(es, obs);
        pt.state_deviation = max_abs_deviation(circ[s], exact[s]);
        sr.points.push_back(pt);
    }
    return sr;
}

std::filesystem::path resolve_output_dir(const std::string& configured) {
    if (const char* env = std::getenv("HAMSIM_OUTPUT_DIR"); env && *env)
        return env;
    return configured;
}

RunResult run_experiment(const ExperimentConfig& cfg) {
    RunResult res;
    res.output_dir = resolve_output_dir(cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(res.output_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + res.output_dir.string() + "': " + ec.message());

    json summary;
    summary["schema_version"] = 1;
    summary["experiment"] = to_string(cfg.experiment);
    if (!cfg.description.empty())
        summary["description"] = cfg.description;
    switch (cfg.experiment) {
    case ExperimentKind::Advection1d:
    case ExperimentKind::Advection2d:
    case ExperimentKind::Wave1d:
    case ExperimentKind::Wave2d: run_trajectory(cfg, res, summary); break;
    case ExperimentKind::Wave1dShots: run_shots(cfg, res, summary); break;
    case ExperimentKind::BoundsSweep: run_sweep(cfg, res, summary); break;
    case ExperimentKind::CommutatorSuite: run_commutators(cfg, res, summary); break;
    }
    summary["warnings"] = res.warnings;
    summary["violations"] = res.violations;
    write_json(res.output_dir / "summary.json", summary);
    res.files.push_back(res.output_dir / "summary.json");

    if (!res.violations.empty()) {
        std::ostringstream os;
        os << res.violations.size() << " invariant violation(s); first: " << res.violations.front();
        throw InvariantViolation(os.str());
    }
    return res;
}

} // namespace hamsim
