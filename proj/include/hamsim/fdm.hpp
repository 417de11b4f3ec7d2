#pragma once

#include <string>
#include <vector>

#include "hamsim/qubit_operator.hpp"

namespace hamsim {

/// Nodal fields at the recorded times. For d > 1 nodes are row-major with
/// axis 1 outermost, the same order as the qubit encoding.
struct FdmTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> u;
    std::vector<std::vector<double>> dudt; ///< wave equation only
    std::vector<std::string> warnings;
};

/// Forward Euler with central differences: u <- u - dt Σ_α v_α (D^±_bc)_α u.
/// The dimension d is v.size(). With empty `record_times` every step is kept.
FdmTrajectory advect_fdm(const std::vector<double>& u0, const std::vector<double>& v, double l, double dt, double T,
                         BoundaryCondition bc, const std::vector<double>& record_times = {});

enum class WaveBoundary {
    Mixed,   ///< u = 0 at the first node, zero slope past the last node
    Periodic
};

enum class WaveLaplacian {
    Standard,      ///< D^Δ, with the Neumann correction for Mixed
    CentralSquared ///< (D^±)², the operator the periodic quantum encoding squares
};

/// Semi-implicit Euler on (u, ∂u/∂t): u <- u + dt·w, then w <- w + dt·c²·L u.
FdmTrajectory wave_fdm(const std::vector<double>& u0, const std::vector<double>& dudt0, int d, double c, double l,
                       double dt, double T, WaveBoundary bc, WaveLaplacian lap = WaveLaplacian::Standard,
                       const std::vector<double>& record_times = {});

/// The Laplacian used by wave_fdm applied to a nodal field.
std::vector<double> wave_laplacian(const std::vector<double>& u, int d, double l, WaveBoundary bc, WaveLaplacian lap);
/// Per-axis first difference matching the quantum encoding of the wave
/// equation (D^- for Mixed, D^± for Periodic).
std::vector<double> wave_gradient(const std::vector<double>& u, int d, int axis, double l, WaveBoundary bc);

} // namespace hamsim
