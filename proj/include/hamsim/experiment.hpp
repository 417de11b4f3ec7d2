#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hamsim/analysis.hpp"
#include "hamsim/fdm.hpp"
#include "hamsim/problem.hpp"

namespace hamsim {

enum class ExperimentKind { Advection1d, Advection2d, Wave1d, Wave2d, Wave1dShots, BoundsSweep, CommutatorSuite };

const char* to_string(ExperimentKind k);

struct CommutatorSuiteOptions {
    std::vector<int> n{2, 3, 4, 5, 6};
    std::vector<double> lambda{0.0, 0.3, -1.5707963267948966};
    double tol = 1e-12;
};

struct ExperimentConfig {
    int schema_version = 1;
    ExperimentKind experiment = ExperimentKind::Advection1d;
    std::string description;
    PDEProblem problem;
    double fdm_dt = 0.0;
    WaveLaplacian fdm_laplacian = WaveLaplacian::Standard;
    std::vector<double> record_times;
    int shots = 0;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    SweepOptions sweep;
    CommutatorSuiteOptions commutators;
};

struct ConfigIssue {
    std::string field; ///< dotted path, e.g. "problem.tau"
    std::string message;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<ConfigIssue> issues);
    const std::vector<ConfigIssue>& issues() const { return issues_; }

private:
    std::vector<ConfigIssue> issues_;
};

/// Strict parse: unknown keys, wrong types and semantic problems are all
/// collected and thrown together as a ConfigError.
ExperimentConfig validate_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Raised when a circuit-vs-exact deviation exceeds its accumulated bound or
/// a verification suite fails. Outputs are written before it is thrown.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunResult {
    std::filesystem::path output_dir;
    std::vector<std::filesystem::path> files;
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
};

/// Circuit, exact and classical series at the recorded steps, all in the
/// statevector layout (the classical wave solution mapped to ψ-form).
struct TrajectoryResult {
    int num_qubits = 0;
    int r = 0;
    double per_step_bound = 0.0;
    std::vector<int> steps;
    std::vector<std::vector<cplx>> circuit, exact, fdm;
    std::vector<std::string> warnings;
};

TrajectoryResult simulate_trajectory(const ExperimentConfig& cfg);

struct ShotPoint {
    int step = 0;
    double t = 0.0;
    double estimate = 0.0;
    double ci95 = 0.0;
    double statevector = 0.0; ///< exact expectation in the Trotterized state
    double exact = 0.0;       ///< expectation in exp(-iHt)|ψ(0)>
    double state_deviation = 0.0;
};

struct ShotsResult {
    int r = 0;
    double per_step_bound = 0.0;
    std::vector<ShotPoint> points;
};

/// Sample k uses seed cfg.seed + k, so reruns are identical.
ShotsResult simulate_shots(const ExperimentConfig& cfg);

/// Circular centroid of |a|² along each axis of a d-dimensional 2^n grid,
/// in node units in [0, 2^n).
std::vector<double> peak_position(const std::vector<cplx>& amplitudes, int d, int n);

double max_abs_deviation(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// The output directory is `HAMSIM_OUTPUT_DIR` if set, else cfg.output_dir.
/// Throws InvariantViolation after writing outputs if a check failed.
RunResult run_experiment(const ExperimentConfig& cfg);

/// Output directory resolution shared by all commands.
std::filesystem::path resolve_output_dir(const std::string& configured);

// CSV helpers: 17 significant digits, '.' separator, LF line endings.
std::string csv_number(double x);
void write_report_csv(const std::filesystem::path& path, const std::vector<TrotterReport>& reports);
void write_commutator_csv(const std::filesystem::path& path, const std::vector<CommutatorReport>& reports);

} // namespace hamsim
