#include "hamsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace hamsim {

const char* to_string(GateKind k) {
    switch (k) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Phase: return "p";
    case GateKind::RZ: return "rz";
    case GateKind::RX: return "rx";
    case GateKind::CNOT: return "cx";
    case GateKind::MCRZ: return "mcrz";
    }
    return "?";
}

Circuit::Circuit(int num_qubits) : q_(num_qubits) {
    if (num_qubits < 0)
        throw std::invalid_argument("Circuit: negative qubit count");
}

Circuit& Circuit::add(Gate g) {
    auto in_range = [this](int k) { return k >= 0 && k < q_; };
    if (g.targets.size() != 1)
        throw std::invalid_argument(std::string("Circuit: ") + to_string(g.kind) + " takes exactly one target");
    const bool controlled = g.kind == GateKind::CNOT || g.kind == GateKind::MCRZ;
    if (!controlled && !g.controls.empty())
        throw std::invalid_argument(std::string("Circuit: ") + to_string(g.kind) + " takes no controls");
    if (g.kind == GateKind::CNOT && g.controls.size() != 1)
        throw std::invalid_argument("Circuit: cx takes exactly one control");
    if (!in_range(g.targets[0]))
        throw std::out_of_range("Circuit: target " + std::to_string(g.targets[0]) + " outside " + std::to_string(q_) +
                                " qubits");
    std::vector<int> seen = g.controls;
    seen.push_back(g.targets[0]);
    for (int c : g.controls)
        if (!in_range(c))
            throw std::out_of_range("Circuit: control " + std::to_string(c) + " outside " + std::to_string(q_) + " qubits");
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw std::invalid_argument("Circuit: controls and target must be distinct qubits");
    if (!std::isfinite(g.angle))
        throw std::invalid_argument("Circuit: non-finite angle");
    gates_.push_back(std::move(g));
    return *this;
}

Circuit& Circuit::h(int q) { return add({GateKind::H, 0.0, {q}, {}}); }
Circuit& Circuit::x(int q) { return add({GateKind::X, 0.0, {q}, {}}); }
Circuit& Circuit::phase(int q, double lambda) { return add({GateKind::Phase, lambda, {q}, {}}); }
Circuit& Circuit::rz(int q, double theta) { return add({GateKind::RZ, theta, {q}, {}}); }
Circuit& Circuit::rx(int q, double theta) { return add({GateKind::RX, theta, {q}, {}}); }
Circuit& Circuit::cx(int control, int target) { return add({GateKind::CNOT, 0.0, {target}, {control}}); }
Circuit& Circuit::mcrz(std::vector<int> controls, int target, double theta) {
    return add({GateKind::MCRZ, theta, {target}, std::move(controls)});
}

Circuit& Circuit::append(const Circuit& other, int offset) {
    if (offset < 0 || offset + other.q_ > q_)
        throw std::out_of_range("Circuit::append: " + std::to_string(other.q_) + "-qubit circuit at offset " +
                                std::to_string(offset) + " does not fit in " + std::to_string(q_) + " qubits");
    for (Gate g : other.gates_) {
        for (int& t : g.targets)
            t += offset;
        for (int& c : g.controls)
            c += offset;
        gates_.push_back(std::move(g));
    }
    return *this;
}

Circuit Circuit::adjoint() const {
    Circuit out(q_);
    out.gates_.assign(gates_.rbegin(), gates_.rend());
    for (Gate& g : out.gates_)
        g.angle = -g.angle;
    return out;
}

namespace {

long long analytic_mcrz_cnots(std::size_t k) {
    if (k == 0)
        return 0;
    if (k == 1)
        return 2;
    return 16 * (long long)(k + 1) - 40;
}

} // namespace

Circuit decompose_mcrz(int k, double theta) {
    if (k < 0)
        throw std::invalid_argument("decompose_mcrz: negative control count");
    // exp(-iθ/2 Z_t Π_c|1><1|_c) = Π_S exp(-i θ(-1)^{|S|}/2^{k+1} Z_t Z_S).
    // Parities are visited in Gray-code order so each step is a single CNOT.
    Circuit c(k + 1);
    const int target = k;
    const long long terms = 1LL << k;
    const double unit = theta / double(terms);
    int prev = 0;
    for (long long i = 0; i < terms; ++i) {
        const int gray = int(i ^ (i >> 1));
        if (i > 0)
            c.cx(__builtin_ctz(unsigned(gray ^ prev)), target);
        c.rz(target, __builtin_popcount(unsigned(gray)) % 2 ? -unit : unit);
        prev = gray;
    }
    if (k > 0)
        c.cx(__builtin_ctz(unsigned(prev)), target);
    return c;
}

Circuit decompose(const Circuit& c) {
    Circuit out(c.num_qubits());
    for (const Gate& g : c.gates()) {
        if (g.kind != GateKind::MCRZ) {
            out.add(g);
            continue;
        }
        const int k = int(g.controls.size());
        const Circuit lowered = decompose_mcrz(k, g.angle);
        for (Gate sub : lowered.gates()) {
            auto map = [&](int qb) { return qb == k ? g.targets[0] : g.controls[qb]; };
            for (int& t : sub.targets)
                t = map(t);
            for (int& q : sub.controls)
                q = map(q);
            out.add(std::move(sub));
        }
    }
    return out;
}

long long count_cnots(const Circuit& c, CnotCountMode mode) {
    long long total = 0;
    std::map<std::size_t, long long> decomposed;
    for (const Gate& g : c.gates()) {
        if (g.kind == GateKind::CNOT) {
            ++total;
        } else if (g.kind == GateKind::MCRZ) {
            const std::size_t k = g.controls.size();
            if (mode == CnotCountMode::Analytic) {
                total += analytic_mcrz_cnots(k);
            } else {
                auto it = decomposed.find(k);
                if (it == decomposed.end())
                    it = decomposed.emplace(k, count_cnots(decompose_mcrz(int(k), 1.0), CnotCountMode::Analytic)).first;
                total += it->second;
            }
        }
    }
    return total;
}

} // namespace hamsim
