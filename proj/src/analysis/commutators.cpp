#include "hamsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hamsim/statevector.hpp"

namespace hamsim {

bool CommutatorReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

namespace {

QubitOperator sm(int n, int j) { return ladder_term(n, j, Shift::Minus); }
QubitOperator sp(int n, int j) { return ladder_term(n, j, Shift::Plus); }

// Tensor product that tolerates zero-qubit factors (an empty power is 1).
QubitOperator kr(const QubitOperator& a, const QubitOperator& b) {
    if (a.num_qubits() == 0)
        return b;
    if (b.num_qubits() == 0)
        return a;
    return kron(a, b);
}

QubitOperator kp(const QubitOperator& a, int k) {
    if (k == 0)
        return QubitOperator::identity(0);
    return kron_power(a, k);
}

QubitOperator id(int k) { return QubitOperator::identity(k); }

class Checker {
public:
    Checker(CommutatorReport& rep, double tol) : rep_(rep), tol_(tol) {}

    void equal(const std::string& name, const QubitOperator& got, const QubitOperator& want) {
        const double dev = got.max_abs_diff(want);
        rep_.checks.push_back({name, dev <= tol_, dev});
    }
    void value(const std::string& name, double got, double want) {
        const double dev = std::abs(got - want);
        rep_.checks.push_back({name, dev <= tol_, dev});
    }
    void at_most(const std::string& name, double got, double bound) {
        const double excess = std::max(0.0, got - bound);
        rep_.checks.push_back({name, got <= bound + tol_, excess});
    }

private:
    CommutatorReport& rep_;
    double tol_;
};

} // namespace

CommutatorReport verify_commutators(int n, double lambda, double tol) {
    if (n < 2 || n > 6)
        throw std::invalid_argument("verify_commutators: n must be in [2, 6], got " + std::to_string(n));
    CommutatorReport rep{n, lambda, {}};
    Checker chk(rep, tol);

    const cplx e1 = std::polar(1.0, lambda);
    const cplx e2 = std::polar(1.0, 2 * lambda);
    const cplx i{0.0, 1.0};
    auto s = [&](int nn, int j) { return sm(nn, j) * e1 + sp(nn, j) * std::conj(e1); };
    const QubitOperator s00 = local::sigma00(), s01 = local::sigma01(), s10 = local::sigma10(), s11 = local::sigma11();
    const QubitOperator z = local::pauli_z();
    const QubitOperator zero(n);
    const auto tag = [](const char* what, int j, int jp = 0) {
        return std::string(what) + "(j=" + std::to_string(j) + (jp ? ",j'=" + std::to_string(jp) : std::string()) + ")";
    };

    // Terms of different j above 1 commute.
    for (int j = 2; j <= n; ++j)
        for (int jp = 2; jp < j; ++jp)
            chk.equal(tag("commute", j, jp), commutator(s(n, j), s(n, jp)), zero);

    for (int j = 1; j <= n; ++j)
        chk.equal(tag("self_commutator", j), commutator(s(n, j), s(n, j)), zero);

    // Commutators against j' = 1: unit norm and the two closed forms.
    for (int j = 2; j <= n; ++j) {
        const QubitOperator c = commutator(s(n, j), s(n, 1));
        chk.value(tag("unit_norm", j, 1), op_norm(c), 1.0);

        const QubitOperator inner = kr(s01, kp(s10, j - 2)) * e2 - kr(s10, kp(s01, j - 2)) * std::conj(e2);
        chk.equal(tag("closed_form_ladder", j, 1), c, -kr(id(n - j), kron(inner, z)));

        const Eigen::MatrixXcd u = materialize(bell_basis_unitary(j - 1, j - 1, -2 * lambda - std::numbers::pi / 2));
        const Eigen::MatrixXcd diag = kr(z, kp(s11, j - 2)).to_dense();
        const QubitOperator rotated = QubitOperator::from_dense(u * diag * u.adjoint());
        chk.equal(tag("closed_form_bell", j, 1), c, kr(id(n - j), kron(rotated, z)) * i);
    }

    // Product table of the ladder terms.
    for (int j = 2; j <= n; ++j)
        for (int jp = 2; jp < j; ++jp) {
            const std::string t = "(j=" + std::to_string(j) + ",j'=" + std::to_string(jp) + ")";
            chk.equal("mm" + t, sm(n, j) * sm(n, jp), zero);
            chk.equal("mm_rev" + t, sm(n, jp) * sm(n, j), zero);
            chk.equal("pp" + t, sp(n, j) * sp(n, jp), zero);
            chk.equal("pp_rev" + t, sp(n, jp) * sp(n, j), zero);
            chk.equal("mp" + t, sm(n, j) * sp(n, jp), zero);
            chk.equal("mp_rev" + t, sm(n, jp) * sp(n, j), zero);
            chk.equal("pm" + t, sp(n, j) * sm(n, jp), zero);
            chk.equal("pm_rev" + t, sp(n, jp) * sm(n, j), zero);
            chk.equal("ss" + t, s(n, j) * s(n, jp), zero);
        }
    for (int j = 2; j <= n; ++j) {
        const QubitOperator m1 = sm(n - 1, j - 1), p1 = sp(n - 1, j - 1);
        chk.equal(tag("m_j m_1", j), sm(n, j) * sm(n, 1), kron(m1, s11));
        chk.equal(tag("m_1 m_j", j), sm(n, 1) * sm(n, j), kron(m1, s00));
        chk.equal(tag("p_j p_1", j), sp(n, j) * sp(n, 1), kron(p1, s00));
        chk.equal(tag("p_1 p_j", j), sp(n, 1) * sp(n, j), kron(p1, s11));
        chk.equal(tag("m_j p_1", j), sm(n, j) * sp(n, 1), zero);
        chk.equal(tag("m_1 p_j", j), sm(n, 1) * sp(n, j), zero);
        chk.equal(tag("p_j m_1", j), sp(n, j) * sm(n, 1), zero);
        chk.equal(tag("p_1 m_j", j), sp(n, 1) * sm(n, j), zero);
        chk.equal(tag("s_j s_1", j), s(n, j) * s(n, 1), kron(m1, s11) * e2 + kron(p1, s00) * std::conj(e2));
        chk.equal(tag("s_1 s_j", j), s(n, 1) * s(n, j), kron(m1, s00) * e2 + kron(p1, s11) * std::conj(e2));
    }
    for (int j = 1; j <= n; ++j) {
        const QubitOperator lo = kr(id(n - j), kr(s00, kp(s11, j - 1)));
        const QubitOperator hi = kr(id(n - j), kr(s11, kp(s00, j - 1)));
        chk.equal(tag("m_j m_j", j), sm(n, j) * sm(n, j), zero);
        chk.equal(tag("p_j p_j", j), sp(n, j) * sp(n, j), zero);
        chk.equal(tag("m_j p_j", j), sm(n, j) * sp(n, j), lo);
        chk.equal(tag("p_j m_j", j), sp(n, j) * sm(n, j), hi);
        chk.equal(tag("s_j^2", j), s(n, j) * s(n, j), lo + hi);
    }
    chk.equal("s_1^2=I", s(n, 1) * s(n, 1), id(n));

    // Recursions on the register size.
    if (n >= 3)
        for (int j = 2; j <= n; ++j) {
            chk.equal(tag("recursion_minus", j), sm(n, j), kron(sm(n - 1, j - 1), s10));
            chk.equal(tag("recursion_plus", j), sp(n, j), kron(sp(n - 1, j - 1), s01));
        }

    // Nested-commutator norm estimates of the second-order bound (γ = 1).
    QubitOperator h1 = s(n, 1), h2(n);
    for (int j = 2; j <= n; ++j)
        h2 += s(n, j);
    const QubitOperator c21 = commutator(h2, h1);
    chk.at_most("nested_H2_H2_H1", op_norm(commutator(h2, c21)), 3.0 * n - 5);
    chk.at_most("nested_H1_H1_H2", op_norm(commutator(h1, commutator(h1, h2))), 2.0 * (n - 1));
    return rep;
}

} // namespace hamsim
