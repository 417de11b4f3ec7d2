#include "hamsim/qubit_operator.hpp"

#include <stdexcept>
#include <string>

namespace hamsim {

const char* to_string(BoundaryCondition bc) {
    switch (bc) {
    case BoundaryCondition::Dirichlet: return "dirichlet";
    case BoundaryCondition::Neumann: return "neumann";
    case BoundaryCondition::Periodic: return "periodic";
    }
    return "?";
}

const char* to_string(Scheme s) {
    switch (s) {
    case Scheme::Forward: return "forward";
    case Scheme::Backward: return "backward";
    case Scheme::Central: return "central";
    case Scheme::Laplacian: return "laplacian";
    case Scheme::Forward2: return "forward2";
    case Scheme::Backward2: return "backward2";
    }
    return "?";
}

QubitOperator ladder_term(int n, int j, Shift dir) {
    if (n < 1 || j < 1 || j > n)
        throw std::out_of_range("ladder_term: need 1 <= j <= n, got j=" + std::to_string(j) + ", n=" + std::to_string(n));
    const bool minus = dir == Shift::Minus;
    QubitOperator op = kron(QubitOperator::identity(n - j), minus ? local::sigma01() : local::sigma10());
    return kron(op, kron_power(minus ? local::sigma10() : local::sigma01(), j - 1));
}

QubitOperator build_shift(int n, Shift dir) {
    if (n < 1)
        throw std::invalid_argument("build_shift: n must be >= 1, got " + std::to_string(n));
    QubitOperator s(n);
    for (int j = 1; j <= n; ++j)
        s += ladder_term(n, j, dir);
    return s;
}

QubitOperator build_difference(int n, Scheme scheme, BoundaryCondition bc, double l) {
    if (n < 1)
        throw std::invalid_argument("build_difference: n must be >= 1, got " + std::to_string(n));
    if (!(l > 0.0))
        throw std::invalid_argument("build_difference: node spacing must be positive");
    if ((scheme == Scheme::Forward2 || scheme == Scheme::Backward2) && bc != BoundaryCondition::Dirichlet)
        throw std::invalid_argument(std::string("build_difference: ") + to_string(scheme) +
                                    " is only defined with Dirichlet padding, not " + to_string(bc));

    const QubitOperator id = QubitOperator::identity(n);
    const QubitOperator sm = build_shift(n, Shift::Minus);
    const QubitOperator sp = build_shift(n, Shift::Plus);
    const QubitOperator p00 = kron_power(local::sigma00(), n);
    const QubitOperator p11 = kron_power(local::sigma11(), n);
    const QubitOperator wrap_down = kron_power(local::sigma10(), n); // |N-1><0|
    const QubitOperator wrap_up = kron_power(local::sigma01(), n);   // |0><N-1|
    const bool neumann = bc == BoundaryCondition::Neumann;
    const bool periodic = bc == BoundaryCondition::Periodic;

    QubitOperator d(n);
    double scale = 1.0;
    switch (scheme) {
    case Scheme::Forward:
        d = sm - id;
        if (neumann) d += p11;
        if (periodic) d += wrap_down;
        scale = 1.0 / l;
        break;
    case Scheme::Backward:
        d = id - sp;
        if (neumann) d = d - p00;
        if (periodic) d = d - wrap_up;
        scale = 1.0 / l;
        break;
    case Scheme::Central:
        d = sm - sp;
        if (neumann) d += p11 - p00;
        if (periodic) d += wrap_down - wrap_up;
        scale = 0.5 / l;
        break;
    case Scheme::Laplacian:
        d = sm + sp - id * 2.0;
        if (neumann) d += p00 + p11;
        if (periodic) d += wrap_up + wrap_down;
        scale = 1.0 / (l * l);
        break;
    case Scheme::Forward2:
        d = id * -3.0 + sm * 4.0 - sm * sm;
        scale = 0.5 / l;
        break;
    case Scheme::Backward2:
        d = id * 3.0 - sp * 4.0 + sp * sp;
        scale = 0.5 / l;
        break;
    }
    return d * scale;
}

QubitOperator embed_axis(const QubitOperator& op, int axis, int d, int n) {
    if (op.num_qubits() != n)
        throw std::invalid_argument("embed_axis: operator has " + std::to_string(op.num_qubits()) +
                                    " qubits, expected n=" + std::to_string(n));
    if (d < 1 || axis < 1 || axis > d)
        throw std::out_of_range("embed_axis: axis " + std::to_string(axis) + " out of range for d=" + std::to_string(d));
    return embed(op, (d - axis) * n, d * n);
}

} // namespace hamsim
