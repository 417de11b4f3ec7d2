#include "hamsim/qubit_operator.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

namespace hamsim {

double op_norm(const Eigen::MatrixXcd& m) {
    if (m.size() == 0)
        return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

namespace {

double norm2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const auto& x : v)
        s += std::norm(x);
    return std::sqrt(s);
}

// Power iteration on A^†A. Stops when the Rayleigh quotient has settled and
// the eigen-residual is small relative to it.
double power_norm(const QubitOperator& a, const NormOptions& opts) {
    const QubitOperator ad = a.adjoint();
    const Index n = a.dim();
    std::mt19937_64 rng(0x5eed);
    std::vector<cplx> x(n), y(n), z(n);
    for (auto& v : x)
        v = cplx(double(rng() >> 11) * 0x1.0p-53 - 0.5, double(rng() >> 11) * 0x1.0p-53 - 0.5);
    double nx = norm2(x);
    for (auto& v : x)
        v /= nx;

    double prev = -1.0;
    for (int it = 0; it < opts.max_iterations; ++it) {
        a.apply(x.data(), y.data());
        ad.apply(y.data(), z.data());
        double rho = 0.0; // <x, A^†A x> = |Ax|^2
        for (const auto& v : y)
            rho += std::norm(v);
        double resid = 0.0;
        for (Index i = 0; i < n; ++i)
            resid += std::norm(z[i] - rho * x[i]);
        resid = std::sqrt(resid);
        const double sigma = std::sqrt(rho);
        if (prev >= 0.0 && std::abs(sigma - prev) <= opts.tol * sigma && resid <= std::sqrt(opts.tol) * rho)
            return sigma;
        prev = sigma;
        const double nz = norm2(z);
        if (nz == 0.0)
            return 0.0;
        for (Index i = 0; i < n; ++i)
            x[i] = z[i] / nz;
    }
    throw std::runtime_error("op_norm: power iteration did not converge in " + std::to_string(opts.max_iterations) +
                             " iterations (dimension " + std::to_string(n) + ")");
}

} // namespace

double op_norm(const QubitOperator& op, const NormOptions& opts) {
    if (op.is_zero())
        return 0.0;
    if (op.dim() <= opts.dense_limit)
        return op_norm(op.to_dense());
    return power_norm(op, opts);
}

} // namespace hamsim
