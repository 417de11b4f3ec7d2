#include "hamsim/hamiltonian.hpp"

#include <stdexcept>
#include <string>

namespace hamsim {

namespace {

const cplx kI{0.0, 1.0};

QubitOperator on_axis(const PDEProblem& p, Scheme s, BoundaryCondition bc, int axis) {
    return embed_axis(build_difference(p.n, s, bc, p.l), axis, p.d, p.n);
}

} // namespace

QubitOperator advection_hamiltonian(const PDEProblem& p) {
    check_problem(p);
    if (p.equation != Equation::Advection)
        throw std::invalid_argument("advection_hamiltonian: problem is not an advection problem");
    if (p.bc == BoundaryCondition::Neumann)
        throw std::invalid_argument("advection_hamiltonian: -i v D^± with Neumann padding is not Hermitian");
    QubitOperator h(p.d * p.n);
    for (int a = 1; a <= p.d; ++a)
        h += on_axis(p, Scheme::Central, p.bc, a) * (-kI * p.velocity[a - 1]);
    return h;
}

QubitOperator wave_hamiltonian(const PDEProblem& p) {
    check_problem(p);
    if (p.equation != Equation::Wave)
        throw std::invalid_argument("wave_hamiltonian: problem is not a wave problem");
    const bool periodic = p.bc == BoundaryCondition::Periodic;
    const Scheme fwd = periodic ? Scheme::Central : Scheme::Forward;
    const Scheme bwd = periodic ? Scheme::Central : Scheme::Backward;
    auto dp = [&](int axis) { return on_axis(p, fwd, p.bc, axis); };
    auto dm = [&](int axis) { return on_axis(p, bwd, p.bc, axis); };
    const auto s00 = local::sigma00(), s01 = local::sigma01(), s10 = local::sigma10();

    QubitOperator h(num_qubits(p));
    switch (p.d) {
    case 1:
        h = kron(s01, dp(1)) - kron(s10, dm(1));
        break;
    case 2:
        h = kron(s01, dp(1) - kI * dp(2)) - kron(s10, dm(1) + kI * dm(2));
        break;
    case 3:
        h = kron(kron(s00, s01), dp(1)) + kron(kron(s01, s00), dp(2)) + kron(kron(s01, s01), dp(3)) -
            kron(kron(s00, s10), dm(1)) - kron(kron(s10, s00), dm(2)) - kron(kron(s10, s10), dm(3));
        break;
    default:
        throw std::invalid_argument("wave_hamiltonian: unsupported d=" + std::to_string(p.d));
    }
    return h * p.speed;
}

QubitOperator generic_shift_hamiltonian(const PDEProblem& p) {
    check_problem(p);
    if (p.equation != Equation::GenericShift)
        throw std::invalid_argument("generic_shift_hamiltonian: problem is not a generic shift problem");
    QubitOperator h(p.d * p.n);
    for (int a = 1; a <= p.d; ++a) {
        const cplx up = std::polar(1.0, p.lambda[a - 1]);
        QubitOperator axis(p.n);
        for (int j = 1; j <= p.n; ++j)
            axis += ladder_term(p.n, j, Shift::Minus) * up + ladder_term(p.n, j, Shift::Plus) * std::conj(up);
        h += embed_axis(axis, a, p.d, p.n) * (p.gamma * p.eta[a - 1]);
    }
    return h;
}

QubitOperator hamiltonian(const PDEProblem& p) {
    switch (p.equation) {
    case Equation::Advection: return advection_hamiltonian(p);
    case Equation::Wave: return wave_hamiltonian(p);
    case Equation::GenericShift: return generic_shift_hamiltonian(p);
    }
    throw std::invalid_argument("hamiltonian: unknown equation");
}

} // namespace hamsim
