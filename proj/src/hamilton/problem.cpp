#include "hamsim/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hamsim {

const char* to_string(Equation e) {
    switch (e) {
    case Equation::Advection: return "advection";
    case Equation::Wave: return "wave";
    case Equation::GenericShift: return "generic";
    }
    return "?";
}

const char* to_string(Order o) { return o == Order::First ? "first" : "second"; }

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok)
        throw std::invalid_argument(msg);
}

bool finite_all(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x))
            return false;
    return true;
}

} // namespace

void check_problem(const PDEProblem& p) {
    require(p.d >= 1 && p.d <= 3, "d must be 1, 2 or 3, got " + std::to_string(p.d));
    require(p.n >= 1, "n must be >= 1, got " + std::to_string(p.n));
    require(std::isfinite(p.l) && p.l > 0, "node spacing l must be positive");
    require(std::isfinite(p.tau) && p.tau > 0, "tau must be positive");
    require(std::isfinite(p.total_time) && p.total_time > 0, "total_time must be positive");
    switch (p.equation) {
    case Equation::Advection:
        require(int(p.velocity.size()) == p.d, "velocity needs " + std::to_string(p.d) + " components, got " +
                                                   std::to_string(p.velocity.size()));
        require(finite_all(p.velocity), "velocity must be finite");
        break;
    case Equation::GenericShift:
        require(int(p.eta.size()) == p.d, "eta needs " + std::to_string(p.d) + " components");
        require(int(p.lambda.size()) == p.d, "lambda needs " + std::to_string(p.d) + " components");
        require(std::isfinite(p.gamma) && finite_all(p.eta) && finite_all(p.lambda), "gamma/eta/lambda must be finite");
        break;
    case Equation::Wave:
        require(std::isfinite(p.speed) && p.speed >= 0, "wave speed must be non-negative");
        require(p.bc != BoundaryCondition::Neumann, "wave equation supports mixed (dirichlet-padded) or periodic bc");
        require(p.bc != BoundaryCondition::Periodic || p.d <= 2, "periodic wave equation is defined for d <= 2");
        break;
    }
    require(num_qubits(p) <= 26, "problem needs " + std::to_string(num_qubits(p)) + " qubits; limit is 26");
}

int num_qubits(const PDEProblem& p) {
    if (p.equation != Equation::Wave)
        return p.d * p.n;
    switch (p.d) {
    case 1: return p.n + 1;
    case 2: return 2 * p.n + 1;
    default: return 3 * p.n + 2;
    }
}

int steps_for_time(double t, double tau) {
    const double k = std::round(t / tau);
    if (std::abs(k * tau - t) > 1e-9 * std::max(1.0, std::abs(t)))
        throw std::invalid_argument("time " + std::to_string(t) + " is not a multiple of tau=" + std::to_string(tau));
    return int(k);
}

int num_steps(const PDEProblem& p) {
    const int r = steps_for_time(p.total_time, p.tau);
    if (r < 1)
        throw std::invalid_argument("total_time must be at least one step");
    return r;
}

std::vector<cplx> initial_state(const PDEProblem& p) {
    const int q = num_qubits(p);
    const Index dim = Index{1} << q;
    std::vector<cplx> psi(dim);
    if (const auto* b = std::get_if<BasisState>(&p.initial)) {
        require(b->index < dim, "initial basis index " + std::to_string(b->index) + " exceeds dimension " +
                                    std::to_string(dim));
        psi[b->index] = 1.0;
        return psi;
    }
    if (const auto* w = std::get_if<UniformWindow>(&p.initial)) {
        require(int(w->ranges.size()) == p.d, "initial window needs one range per axis");
        const Index nodes = Index{1} << p.n;
        Index count = 1;
        for (const auto& [lo, hi] : w->ranges) {
            require(lo < hi && hi <= nodes, "initial window range [" + std::to_string(lo) + "," + std::to_string(hi) +
                                                ") is empty or exceeds " + std::to_string(nodes) + " nodes");
            count *= hi - lo;
        }
        const double amp = 1.0 / std::sqrt(double(count));
        // Odometer over the box; axis 1 is the most significant register.
        std::vector<Index> j(p.d);
        for (int a = 0; a < p.d; ++a)
            j[a] = w->ranges[a].first;
        for (Index k = 0; k < count; ++k) {
            Index idx = 0;
            for (int a = 0; a < p.d; ++a)
                idx = (idx << p.n) | j[a];
            psi[idx] = amp; // block 0 for the wave equation
            for (int a = p.d - 1; a >= 0; --a) {
                if (++j[a] < w->ranges[a].second)
                    break;
                j[a] = w->ranges[a].first;
            }
        }
        return psi;
    }
    const auto& e = std::get<ExplicitAmplitudes>(p.initial);
    require(e.amplitudes.size() == dim, "initial amplitudes need " + std::to_string(dim) + " entries, got " +
                                            std::to_string(e.amplitudes.size()));
    double norm = 0.0;
    for (const auto& a : e.amplitudes)
        norm += std::norm(a);
    require(std::abs(std::sqrt(norm) - 1.0) <= 1e-10, "initial amplitudes must have unit 2-norm");
    return e.amplitudes;
}

} // namespace hamsim
