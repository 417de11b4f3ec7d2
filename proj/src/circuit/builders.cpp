#include "hamsim/circuit.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace hamsim {

namespace {

std::vector<int> range(int lo, int hi) {
    std::vector<int> v;
    for (int k = lo; k < hi; ++k)
        v.push_back(k);
    return v;
}

// Ũ^{1..j}(λ): H, P(λ) on `top`, then CNOTs from `top` onto qubits 0..j-1.
Circuit extended_bell_unitary(int q, int top, int j, double lambda) {
    Circuit c(q);
    c.h(top).phase(top, lambda);
    for (int m = 0; m < j; ++m)
        c.cx(top, m);
    return c;
}

} // namespace

Circuit bell_basis_unitary(int n, int j, double lambda) {
    if (j < 1 || j > n)
        throw std::out_of_range("bell_basis_unitary: j=" + std::to_string(j) + " outside [1, " + std::to_string(n) + "]");
    Circuit c(n);
    c.h(j - 1).phase(j - 1, lambda);
    for (int m = 1; m < j; ++m)
        c.cx(j - 1, m - 1);
    return c;
}

Circuit shift_term_block(int n, int j, double angle, double lambda) {
    const Circuit u = bell_basis_unitary(n, j, -lambda);
    Circuit c(n);
    c.append(u.adjoint());
    c.mcrz(range(0, j - 1), j - 1, 2.0 * angle);
    c.append(u);
    return c;
}

Circuit trotter_step_first(int n, double angle, double lambda) {
    if (n < 1)
        throw std::invalid_argument("trotter_step_first: n must be >= 1");
    Circuit c(n);
    for (int j = 1; j <= n; ++j)
        c.append(shift_term_block(n, j, angle, lambda));
    return c;
}

Circuit trotter_step_second(int n, double angle, double lambda) {
    if (n < 1)
        throw std::invalid_argument("trotter_step_second: n must be >= 1");
    // W_1(γτ/2)·V·W_1(-γτ/2) with the inner W_1(γτ)W_1(-γτ/2) merged.
    Circuit c(n);
    c.append(shift_term_block(n, 1, angle / 2, lambda));
    for (int j = 2; j <= n; ++j)
        c.append(shift_term_block(n, j, angle, lambda));
    c.append(shift_term_block(n, 1, angle / 2, lambda));
    return c;
}

Circuit periodic_boundary_step(int n, double angle) {
    if (n < 2)
        throw std::invalid_argument("periodic_boundary_step: n must be >= 2, got " + std::to_string(n));
    const Circuit u = bell_basis_unitary(n, n, -std::numbers::pi / 2);
    Circuit flips(n);
    for (int k = 0; k < n - 1; ++k)
        flips.x(k);
    Circuit c(n);
    c.append(u.adjoint());
    c.append(flips);
    c.mcrz(range(0, n - 1), n - 1, 2.0 * angle);
    c.append(flips);
    c.append(u);
    return c;
}

Circuit advection_circuit(const PDEProblem& p) {
    check_problem(p);
    if (p.equation != Equation::Advection)
        throw std::invalid_argument("advection_circuit: problem is not an advection problem");
    if (p.bc == BoundaryCondition::Neumann)
        throw std::invalid_argument("advection_circuit: Neumann central differences are not Hermitian; no circuit");
    const bool periodic = p.bc == BoundaryCondition::Periodic;
    if (periodic && p.n < 2)
        throw std::invalid_argument("advection_circuit: periodic boundary needs n >= 2");
    const double lambda = -std::numbers::pi / 2;
    Circuit c(p.d * p.n);
    for (int a = 1; a <= p.d; ++a) {
        const double theta = p.velocity[a - 1] * p.tau / (2.0 * p.l);
        const int offset = (p.d - a) * p.n;
        Circuit axis(p.n);
        if (p.order == Order::First) {
            if (periodic)
                axis.append(periodic_boundary_step(p.n, theta));
            axis.append(trotter_step_first(p.n, theta, lambda));
        } else {
            if (periodic)
                axis.append(periodic_boundary_step(p.n, theta / 2));
            axis.append(trotter_step_second(p.n, theta, lambda));
            if (periodic)
                axis.append(periodic_boundary_step(p.n, theta / 2));
        }
        c.append(axis, offset);
    }
    return c;
}

Circuit generic_shift_circuit(const PDEProblem& p) {
    check_problem(p);
    if (p.equation != Equation::GenericShift)
        throw std::invalid_argument("generic_shift_circuit: problem is not a generic shift problem");
    Circuit c(p.d * p.n);
    for (int a = 1; a <= p.d; ++a) {
        const double angle = p.gamma * p.eta[a - 1] * p.tau;
        const Circuit axis = p.order == Order::First ? trotter_step_first(p.n, angle, p.lambda[a - 1])
                                                     : trotter_step_second(p.n, angle, p.lambda[a - 1]);
        c.append(axis, (p.d - a) * p.n);
    }
    return c;
}

Circuit wave_circuit(const PDEProblem& p) {
    check_problem(p);
    if (p.equation != Equation::Wave)
        throw std::invalid_argument("wave_circuit: problem is not a wave problem");
    if (p.bc == BoundaryCondition::Periodic)
        return term_product_step(wave_periodic_terms(p), num_qubits(p), p.tau, p.order);
    if (p.d != 1)
        throw std::invalid_argument("wave_circuit: mixed-boundary circuits exist for d=1 only; use periodic bc for d=2");

    const int n = p.n;
    const int q = n + 1;
    const int top = n;
    const double phi = p.speed * p.tau / p.l;
    Circuit products(q);
    for (int j = 1; j <= n; ++j) {
        const Circuit u = extended_bell_unitary(q, top, j, 0.0);
        products.append(u.adjoint());
        products.x(j - 1);
        products.mcrz(range(0, j), top, 2.0 * phi);
        products.x(j - 1);
        products.append(u);
    }
    Circuit c(q);
    if (p.order == Order::First) {
        c.append(products);
        c.rx(top, -2.0 * phi);
    } else {
        c.rx(top, -phi);
        c.append(products);
        c.rx(top, -phi);
    }
    return c;
}

Circuit step_circuit(const PDEProblem& p) {
    switch (p.equation) {
    case Equation::Advection: return advection_circuit(p);
    case Equation::Wave: return wave_circuit(p);
    case Equation::GenericShift: return generic_shift_circuit(p);
    }
    throw std::invalid_argument("step_circuit: unknown equation");
}

} // namespace hamsim
