#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hamsim/problem.hpp"
#include "hamsim/qubit_operator.hpp"

namespace hamsim {

/// Σ_α -i v_α (D^±_bc)_α. Neumann is rejected: its central operator is not
/// anti-Hermitian, so the result could not be a Hamiltonian.
QubitOperator advection_hamiltonian(const PDEProblem& p);
/// Block-encoded first-order wave system over n+1, 2n+1 or 3n+2 qubits.
QubitOperator wave_hamiltonian(const PDEProblem& p);
/// γ Σ_α Σ_j η_α (e^{iλ_α}(s_j^-)_α + e^{-iλ_α}(s_j^+)_α).
QubitOperator generic_shift_hamiltonian(const PDEProblem& p);
QubitOperator hamiltonian(const PDEProblem& p);

/// exp(-iHt) from a dense Hermitian eigendecomposition.
Eigen::MatrixXcd exact_propagator(const QubitOperator& h, double t);

/// Caches one eigendecomposition so that many times can be evaluated.
class SpectralPropagator {
public:
    explicit SpectralPropagator(const QubitOperator& h);
    Eigen::MatrixXcd matrix(double t) const;
    std::vector<cplx> apply(double t, const std::vector<cplx>& psi) const;

private:
    Eigen::MatrixXcd vectors_;
    Eigen::VectorXd values_;
};

/// exp(-iHt)|psi> by a truncated Taylor series in substeps; sparse, for
/// registers where a dense propagator does not fit.
std::vector<cplx> taylor_evolve(const QubitOperator& h, double t, std::vector<cplx> psi);

inline constexpr int kMaxDenseQubits = 14;

} // namespace hamsim
