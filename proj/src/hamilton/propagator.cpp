#include "hamsim/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace hamsim {

SpectralPropagator::SpectralPropagator(const QubitOperator& h) {
    if (h.num_qubits() > kMaxDenseQubits)
        throw std::length_error("exact propagator: " + std::to_string(h.num_qubits()) + " qubits exceeds the dense limit of " +
                                std::to_string(kMaxDenseQubits));
    if (!h.is_hermitian(1e-10))
        throw std::invalid_argument("exact propagator: Hamiltonian is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h.to_dense());
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("exact propagator: eigendecomposition failed");
    vectors_ = eig.eigenvectors();
    values_ = eig.eigenvalues();
}

Eigen::MatrixXcd SpectralPropagator::matrix(double t) const {
    Eigen::VectorXcd phases(values_.size());
    for (Eigen::Index k = 0; k < values_.size(); ++k)
        phases(k) = std::polar(1.0, -values_(k) * t);
    return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

std::vector<cplx> SpectralPropagator::apply(double t, const std::vector<cplx>& psi) const {
    if (Eigen::Index(psi.size()) != vectors_.rows())
        throw std::invalid_argument("SpectralPropagator::apply: dimension mismatch");
    Eigen::Map<const Eigen::VectorXcd> in(psi.data(), Eigen::Index(psi.size()));
    Eigen::VectorXcd coeff = vectors_.adjoint() * in;
    for (Eigen::Index k = 0; k < coeff.size(); ++k)
        coeff(k) *= std::polar(1.0, -values_(k) * t);
    Eigen::VectorXcd out = vectors_ * coeff;
    return {out.data(), out.data() + out.size()};
}

Eigen::MatrixXcd exact_propagator(const QubitOperator& h, double t) { return SpectralPropagator(h).matrix(t); }

std::vector<cplx> taylor_evolve(const QubitOperator& h, double t, std::vector<cplx> psi) {
    if (psi.size() != h.dim())
        throw std::invalid_argument("taylor_evolve: dimension mismatch");
    const double norm = h.norm_inf();
    const int substeps = std::max(1, int(std::ceil(norm * std::abs(t))));
    const cplx factor(0.0, -t / substeps);
    std::vector<cplx> term(psi.size()), next(psi.size());
    for (int s = 0; s < substeps; ++s) {
        term = psi;
        for (int k = 1; k <= 60; ++k) {
            h.apply(term.data(), next.data());
            double tn = 0.0;
            for (std::size_t i = 0; i < psi.size(); ++i) {
                term[i] = next[i] * factor / double(k);
                psi[i] += term[i];
                tn += std::norm(term[i]);
            }
            if (tn < 1e-34)
                break;
        }
    }
    return psi;
}

} // namespace hamsim
