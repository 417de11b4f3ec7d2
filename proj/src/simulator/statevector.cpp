#include "hamsim/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace hamsim {

StateVector::StateVector(int num_qubits) : q_(num_qubits) {
    if (num_qubits < 1 || num_qubits > 30)
        throw std::invalid_argument("StateVector: qubit count " + std::to_string(num_qubits) + " out of range");
    amps_.assign(dim(), cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::basis(int num_qubits, Index index) {
    StateVector s(num_qubits);
    if (index >= s.dim())
        throw std::out_of_range("StateVector::basis: index " + std::to_string(index) + " out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amplitudes) {
    const std::size_t n = amplitudes.size();
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("StateVector: amplitude count " + std::to_string(n) + " is not a power of two >= 2");
    int q = 0;
    while ((std::size_t{1} << q) < n)
        ++q;
    StateVector s(q);
    s.amps_ = std::move(amplitudes);
    if (std::abs(s.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("StateVector: amplitudes are not normalized (norm " + std::to_string(s.norm()) + ")");
    return s;
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto& a : amps_)
        sum += std::norm(a);
    return std::sqrt(sum);
}

Observable::Observable(QubitOperator op) : op_(std::move(op)) {
    if (!op_.is_hermitian(1e-12))
        throw std::invalid_argument("Observable: operator is not Hermitian");
}

Observable kinetic_energy_observable(int num_qubits) {
    if (num_qubits < 1)
        throw std::invalid_argument("kinetic_energy_observable: need at least one qubit");
    const QubitOperator half_z_plus_i = (local::pauli_z() + QubitOperator::identity(1)) * 0.5;
    return Observable(kron(half_z_plus_i, QubitOperator::identity(num_qubits - 1)));
}

void apply_inplace(const Circuit& c, StateVector& s, const kernels::KernelTable& k) {
    if (c.num_qubits() != s.num_qubits())
        throw std::invalid_argument("apply: circuit has " + std::to_string(c.num_qubits()) + " qubits, state has " +
                                    std::to_string(s.num_qubits()));
    cplx* a = s.mutable_amplitudes().data();
    const int nq = s.num_qubits();
    const double r2 = 1.0 / std::numbers::sqrt2;
    for (const Gate& g : c.gates()) {
        const int t = g.targets[0];
        const double th = g.angle;
        switch (g.kind) {
        case GateKind::H:
            k.apply_1q(a, nq, t, {{r2, r2, r2, -r2}});
            break;
        case GateKind::X:
            k.apply_1q(a, nq, t, {{0.0, 1.0, 1.0, 0.0}});
            break;
        case GateKind::RX: {
            const cplx cs = std::cos(th / 2), sn{0.0, -std::sin(th / 2)};
            k.apply_1q(a, nq, t, {{cs, sn, sn, cs}});
            break;
        }
        case GateKind::Phase:
            k.apply_diag(a, nq, 0, t, 1.0, std::polar(1.0, th));
            break;
        case GateKind::RZ:
            k.apply_diag(a, nq, 0, t, std::polar(1.0, -th / 2), std::polar(1.0, th / 2));
            break;
        case GateKind::CNOT:
            k.apply_cnot(a, nq, g.controls[0], t);
            break;
        case GateKind::MCRZ: {
            std::uint64_t mask = 0;
            for (int q : g.controls)
                mask |= std::uint64_t{1} << q;
            k.apply_diag(a, nq, mask, t, std::polar(1.0, -th / 2), std::polar(1.0, th / 2));
            break;
        }
        }
    }
}

StateVector apply(const Circuit& c, const StateVector& s) {
    StateVector out = s;
    apply_inplace(c, out);
    return out;
}

Trajectory evolve(const Circuit& step, const StateVector& s0, int r, int record_every,
                  const std::function<void(int, const StateVector&)>& observer) {
    if (r < 1)
        throw std::invalid_argument("evolve: r must be >= 1");
    const bool store = s0.num_qubits() <= kMaxRecordedQubits;
    Trajectory tr;
    StateVector s = s0;
    auto record = [&](int k) {
        if (observer)
            observer(k, s);
        if (store || k == r) {
            tr.steps.push_back(k);
            tr.states.push_back(s);
        }
    };
    record(0);
    for (int k = 1; k <= r; ++k) {
        apply_inplace(step, s);
        const double nrm = s.norm();
        if (std::abs(nrm - 1.0) > 1e-10)
            throw std::runtime_error("evolve: norm drifted to " + std::to_string(nrm) + " at step " + std::to_string(k));
        if (k == r || (record_every > 0 && k % record_every == 0))
            record(k);
    }
    return tr;
}

double expectation(const StateVector& s, const Observable& o) {
    if (s.num_qubits() != o.num_qubits())
        throw std::invalid_argument("expectation: dimension mismatch");
    const auto& a = s.amplitudes();
    const std::vector<cplx> oa = o.op().apply(a);
    cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += std::conj(a[i]) * oa[i];
    if (std::abs(sum.imag()) > 1e-10)
        throw std::runtime_error("expectation: imaginary part " + std::to_string(sum.imag()) + " exceeds 1e-10");
    return sum.real();
}

ShotEstimate sample_observable(const StateVector& s, const Observable& o, int shots, std::uint64_t seed,
                               const Circuit& basis_change) {
    if (shots < 1)
        throw std::invalid_argument("sample_observable: shots must be >= 1, got " + std::to_string(shots));
    if (s.num_qubits() != o.num_qubits())
        throw std::invalid_argument("sample_observable: dimension mismatch");
    for (const auto& e : o.op().entries())
        if (e.row != e.col)
            throw std::invalid_argument("sample_observable: observable is not diagonal in the measured basis");

    StateVector rotated = s;
    if (!basis_change.empty())
        apply_inplace(basis_change, rotated);
    const auto& a = rotated.amplitudes();
    std::vector<double> cdf(a.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        cdf[i] = acc += std::norm(a[i]);

    // std::mt19937_64's sequence is fixed by the standard; the double is
    // built from the top 53 bits so the draw is portable as well.
    std::mt19937_64 rng(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (int k = 0; k < shots; ++k) {
        const double u = double(rng() >> 11) * 0x1.0p-53 * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end())
            --it;
        const double v = o.op().at(Index(it - cdf.begin()), Index(it - cdf.begin())).real();
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / shots;
    double var = 0.0;
    if (shots > 1)
        var = std::max(0.0, (sum_sq - shots * mean * mean) / (shots - 1));
    return {mean, 1.96 * std::sqrt(var) / std::sqrt(double(shots))};
}

Eigen::MatrixXcd materialize(const Circuit& c) {
    const int q = c.num_qubits();
    if (q < 1 || q > 12)
        throw std::length_error("materialize: " + std::to_string(q) + " qubits is outside the dense range [1, 12]");
    const Index dim = Index{1} << q;
    Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (Index col = 0; col < dim; ++col) {
        StateVector s = StateVector::basis(q, col);
        apply_inplace(c, s);
        for (Index row = 0; row < dim; ++row)
            u(Eigen::Index(row), Eigen::Index(col)) = s.amplitudes()[row];
    }
    return u;
}

} // namespace hamsim
