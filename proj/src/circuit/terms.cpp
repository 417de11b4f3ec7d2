#include "hamsim/circuit.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace hamsim {

namespace {

void check_term(const ShiftTerm& t, int num_qubits) {
    if (t.n < 1 || t.offset < 0 || t.offset + t.n > num_qubits)
        throw std::out_of_range("shift term register does not fit in " + std::to_string(num_qubits) + " qubits");
    if (!t.boundary && (t.j < 1 || t.j > t.n))
        throw std::out_of_range("shift term j=" + std::to_string(t.j) + " outside [1, " + std::to_string(t.n) + "]");
    if (t.boundary && t.n < 2)
        throw std::invalid_argument("wrap-around term needs a register of at least 2 qubits");
    if (t.block != BlockPauli::I) {
        if (t.block_qubit < 0 || t.block_qubit >= num_qubits)
            throw std::out_of_range("shift term block qubit out of range");
        if (t.block_qubit >= t.offset && t.block_qubit < t.offset + t.n)
            throw std::invalid_argument("shift term block qubit overlaps its register");
    }
}

QubitOperator block_pauli(BlockPauli b) {
    switch (b) {
    case BlockPauli::X: return local::pauli_x();
    case BlockPauli::Y: return local::pauli_y();
    case BlockPauli::I: break;
    }
    return QubitOperator::identity(1);
}

} // namespace

QubitOperator shift_term_operator(const ShiftTerm& t, int num_qubits) {
    check_term(t, num_qubits);
    const cplx up = std::polar(1.0, t.lambda);
    QubitOperator reg(t.n);
    if (t.boundary)
        reg = kron_power(local::sigma10(), t.n) * up + kron_power(local::sigma01(), t.n) * std::conj(up);
    else
        reg = ladder_term(t.n, t.j, Shift::Minus) * up + ladder_term(t.n, t.j, Shift::Plus) * std::conj(up);
    QubitOperator op = embed(reg, t.offset, num_qubits);
    if (t.block != BlockPauli::I)
        op = embed(block_pauli(t.block), t.block_qubit, num_qubits) * op;
    return op * t.coefficient;
}

Circuit shift_term_exponential(const ShiftTerm& t, int num_qubits, double time) {
    check_term(t, num_qubits);
    const double theta = t.coefficient * time;
    const int jj = t.boundary ? t.n : t.j;

    // Register part T = G (Z_target Π_controls |1><1|) G^†. A wrap-around
    // term is the s_n term with phase -λ conjugated by X on the lower n-1
    // qubits.
    Circuit g(t.n);
    g.append(bell_basis_unitary(t.n, jj, t.boundary ? t.lambda : -t.lambda));
    if (t.boundary)
        for (int k = 0; k < t.n - 1; ++k)
            g.x(k);
    Circuit g_full(num_qubits);
    g_full.append(g, t.offset);

    const int target = t.offset + jj - 1;
    std::vector<int> controls;
    for (int k = 0; k < jj - 1; ++k)
        controls.push_back(t.offset + k);

    Circuit c(num_qubits);
    c.append(g_full.adjoint());
    if (t.block == BlockPauli::I) {
        c.mcrz(controls, target, 2.0 * theta);
    } else {
        // Q = R Z R^† with R = H (Q = X) or R = S·H (Q = Y); Z_b Z_t is
        // reduced to Z_t by a CNOT from the block qubit.
        const int b = t.block_qubit;
        if (t.block == BlockPauli::Y)
            c.phase(b, -std::numbers::pi / 2);
        c.h(b);
        c.cx(b, target);
        c.mcrz(controls, target, 2.0 * theta);
        c.cx(b, target);
        c.h(b);
        if (t.block == BlockPauli::Y)
            c.phase(b, std::numbers::pi / 2);
    }
    c.append(g_full);
    return c;
}

Circuit term_product_step(const std::vector<ShiftTerm>& terms, int num_qubits, double tau, Order order) {
    Circuit c(num_qubits);
    if (terms.empty())
        return c;
    if (order == Order::First) {
        for (const auto& t : terms)
            c.append(shift_term_exponential(t, num_qubits, tau));
        return c;
    }
    const std::size_t m = terms.size();
    for (std::size_t k = 0; k + 1 < m; ++k)
        c.append(shift_term_exponential(terms[k], num_qubits, tau / 2));
    c.append(shift_term_exponential(terms[m - 1], num_qubits, tau));
    for (std::size_t k = m - 1; k-- > 0;)
        c.append(shift_term_exponential(terms[k], num_qubits, tau / 2));
    return c;
}

std::vector<ShiftTerm> wave_periodic_terms(const PDEProblem& p) {
    check_problem(p);
    if (p.equation != Equation::Wave || p.bc != BoundaryCondition::Periodic || p.d > 2)
        throw std::invalid_argument("wave_periodic_terms: needs a periodic wave problem with d <= 2");
    if (p.n < 2)
        throw std::invalid_argument("wave_periodic_terms: periodic wave needs n >= 2");
    // c(σ01 - σ10) = c·iY and -ic(σ01 + σ10) = -ic·X, so axis 1 carries
    // Y ⊗ i(P^- - P^+) and axis 2 carries X ⊗ -i(P^- - P^+), each /(2l).
    const double coef = p.speed / (2.0 * p.l);
    const int block = p.d * p.n;
    const double pi2 = std::numbers::pi / 2;
    std::vector<ShiftTerm> terms;
    for (int a = 1; a <= p.d; ++a) {
        const BlockPauli q = a == 1 ? BlockPauli::Y : BlockPauli::X;
        const double lambda = a == 1 ? pi2 : -pi2;
        const int offset = (p.d - a) * p.n;
        for (int j = 1; j <= p.n; ++j)
            terms.push_back({coef, q, block, offset, p.n, j, lambda, false});
        terms.push_back({coef, q, block, offset, p.n, p.n, lambda, true});
    }
    return terms;
}

} // namespace hamsim
