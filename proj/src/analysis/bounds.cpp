#include "hamsim/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hamsim/hamiltonian.hpp"
#include "hamsim/statevector.hpp"

namespace hamsim {

const char* to_string(BoundKind k) {
    switch (k) {
    case BoundKind::GenericFirst: return "GenericFirst";
    case BoundKind::GenericSecond: return "GenericSecond";
    case BoundKind::DdimFirst: return "DdimFirst";
    case BoundKind::DdimSecond: return "DdimSecond";
    case BoundKind::AdvectionPeriodicFirst: return "AdvectionPeriodicFirst";
    case BoundKind::AdvectionPeriodicSecond: return "AdvectionPeriodicSecond";
    case BoundKind::WaveFirst: return "WaveFirst";
    case BoundKind::WaveSecond: return "WaveSecond";
    }
    return "?";
}

std::optional<BoundKind> parse_bound_kind(std::string_view s) {
    for (BoundKind k : kAllBoundKinds)
        if (s == to_string(k))
            return k;
    return std::nullopt;
}

int bound_order(BoundKind k) {
    switch (k) {
    case BoundKind::GenericFirst:
    case BoundKind::DdimFirst:
    case BoundKind::AdvectionPeriodicFirst:
    case BoundKind::WaveFirst: return 1;
    default: return 2;
    }
}

namespace {

template <typename T>
T need(const std::optional<T>& v, BoundKind k, const char* field) {
    if (!v)
        throw std::invalid_argument(std::string("error_bound: ") + to_string(k) + " needs parameter '" + field + "'");
    return *v;
}

const std::vector<double>& need(const std::vector<double>& v, BoundKind k, const char* field) {
    if (v.empty())
        throw std::invalid_argument(std::string("error_bound: ") + to_string(k) + " needs parameter '" + field + "'");
    return v;
}

double abs_power_sum(const std::vector<double>& v, int p) {
    double s = 0.0;
    for (double x : v)
        s += std::pow(std::abs(x), p);
    return s;
}

BoundKind family_kind(BoundKind k, int order) {
    switch (k) {
    case BoundKind::GenericFirst:
    case BoundKind::GenericSecond: return order == 1 ? BoundKind::GenericFirst : BoundKind::GenericSecond;
    case BoundKind::DdimFirst:
    case BoundKind::DdimSecond: return order == 1 ? BoundKind::DdimFirst : BoundKind::DdimSecond;
    case BoundKind::AdvectionPeriodicFirst:
    case BoundKind::AdvectionPeriodicSecond:
        return order == 1 ? BoundKind::AdvectionPeriodicFirst : BoundKind::AdvectionPeriodicSecond;
    case BoundKind::WaveFirst:
    case BoundKind::WaveSecond: return order == 1 ? BoundKind::WaveFirst : BoundKind::WaveSecond;
    }
    return k;
}

// Smallest integer r with C·T^p / r^{p-1} ≤ ε.
int steps_from_constant(double c, int p, double T, double eps, double* required) {
    const double rhs = std::pow(c * std::pow(T, p) / eps, 1.0 / (p - 1));
    if (required)
        *required = rhs;
    if (!(rhs > 0))
        return 1;
    const double nearest = std::round(rhs);
    const double snapped = std::abs(rhs - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest : std::ceil(rhs);
    if (snapped > double(std::numeric_limits<int>::max()))
        throw std::overflow_error("steps_required: r exceeds the integer range");
    return std::max(1, int(snapped));
}

std::vector<QubitOperator> wave_term_operators(const PDEProblem& p) {
    std::vector<QubitOperator> ops;
    for (const auto& t : wave_periodic_terms(p))
        ops.push_back(shift_term_operator(t, num_qubits(p)));
    return ops;
}

} // namespace

double error_bound(BoundKind kind, const BoundParams& p) {
    const double tau = std::abs(need(p.tau, kind, "tau"));
    const double n = need(p.n, kind, "n");
    if (n < 1)
        throw std::invalid_argument("error_bound: n must be >= 1");
    // A single-term Hamiltonian has no Trotter error; the second-order
    // formulas would turn negative at n = 1.
    switch (kind) {
    case BoundKind::GenericFirst: {
        const double g = std::abs(need(p.gamma, kind, "gamma"));
        return g * g * tau * tau * (n - 1) / 2.0;
    }
    case BoundKind::GenericSecond: {
        const double g = std::abs(need(p.gamma, kind, "gamma"));
        return n < 2 ? 0.0 : g * g * g * tau * tau * tau * (2 * n - 3) / 6.0;
    }
    case BoundKind::DdimFirst: {
        const double g = std::abs(need(p.gamma, kind, "gamma"));
        return g * g * tau * tau * (n - 1) * abs_power_sum(need(p.eta, kind, "eta"), 2) / 2.0;
    }
    case BoundKind::DdimSecond: {
        const double g = std::abs(need(p.gamma, kind, "gamma"));
        return n < 2 ? 0.0 : g * g * g * tau * tau * tau * (2 * n - 3) * abs_power_sum(need(p.eta, kind, "eta"), 3) / 6.0;
    }
    case BoundKind::AdvectionPeriodicFirst: {
        const double l = need(p.l, kind, "l");
        return abs_power_sum(need(p.velocity, kind, "velocity"), 2) * tau * tau * n / (8.0 * l * l);
    }
    case BoundKind::AdvectionPeriodicSecond: {
        const double l = need(p.l, kind, "l");
        return abs_power_sum(need(p.velocity, kind, "velocity"), 3) * tau * tau * tau * (2 * n - 1) / (48.0 * l * l * l);
    }
    case BoundKind::WaveFirst: {
        const double c = std::abs(need(p.speed, kind, "speed")), l = need(p.l, kind, "l");
        return c * c * tau * tau * n / (2.0 * l * l);
    }
    case BoundKind::WaveSecond: {
        const double c = std::abs(need(p.speed, kind, "speed")), l = need(p.l, kind, "l");
        return c * c * c * tau * tau * tau * (2 * n - 1) / (6.0 * l * l * l);
    }
    }
    throw std::invalid_argument("error_bound: unknown kind");
}

std::optional<BoundKind> bound_kind_for(const PDEProblem& p) {
    const bool first = p.order == Order::First;
    switch (p.equation) {
    case Equation::GenericShift:
        if (p.d == 1)
            return first ? BoundKind::GenericFirst : BoundKind::GenericSecond;
        return first ? BoundKind::DdimFirst : BoundKind::DdimSecond;
    case Equation::Advection:
        if (p.bc == BoundaryCondition::Periodic)
            return first ? BoundKind::AdvectionPeriodicFirst : BoundKind::AdvectionPeriodicSecond;
        // Without wrap-around terms the advection Hamiltonian is the generic
        // one with γ = 1/2l, η = v and λ = -π/2.
        return first ? BoundKind::DdimFirst : BoundKind::DdimSecond;
    case Equation::Wave:
        if (p.bc == BoundaryCondition::Dirichlet && p.d == 1)
            return first ? BoundKind::WaveFirst : BoundKind::WaveSecond;
        return std::nullopt;
    }
    return std::nullopt;
}

BoundParams bound_params_for(const PDEProblem& p) {
    BoundParams b;
    b.n = p.n;
    b.tau = p.tau;
    b.l = p.l;
    switch (p.equation) {
    case Equation::GenericShift:
        b.gamma = p.d == 1 ? p.gamma * std::abs(p.eta.at(0)) : p.gamma;
        b.eta = p.eta;
        break;
    case Equation::Advection:
        b.velocity = p.velocity;
        b.gamma = 1.0 / (2.0 * p.l);
        b.eta = p.velocity;
        break;
    case Equation::Wave: b.speed = p.speed; break;
    }
    return b;
}

double per_step_bound(const PDEProblem& p) {
    if (auto kind = bound_kind_for(p))
        return error_bound(*kind, bound_params_for(p));
    if (p.equation == Equation::Wave && p.bc == BoundaryCondition::Periodic)
        return product_formula_bound(wave_term_operators(p), p.tau, p.order);
    throw std::invalid_argument("per_step_bound: no bound for this problem");
}

double trotter_error_measured(const QubitOperator& h, const Circuit& step, double tau) {
    if (h.num_qubits() != step.num_qubits())
        throw std::invalid_argument("trotter_error_measured: Hamiltonian and circuit sizes differ");
    if (h.num_qubits() > 12)
        throw std::length_error("trotter_error_measured: " + std::to_string(h.num_qubits()) +
                                " qubits exceeds the dense limit of 12");
    if (step.empty() && h.is_zero())
        return 0.0;
    return op_norm(Eigen::MatrixXcd(exact_propagator(h, tau) - materialize(step)));
}

double product_formula_bound(const std::vector<QubitOperator>& terms, double tau, Order order) {
    const std::size_t m = terms.size();
    if (m < 2)
        return 0.0;
    const double t = std::abs(tau);
    double sum = 0.0;
    if (order == Order::First) {
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t q = k + 1; q < m; ++q)
                sum += op_norm(commutator(terms[k], terms[q]));
        return t * t / 2.0 * sum;
    }
    // The symmetric product over H_1..H_m is S(H_1, S(H_2, ...)); each level
    // splits H_k from B_k = Σ_{m>k} H_m.
    QubitOperator rest(terms[0].num_qubits());
    for (std::size_t k = m - 1; k-- > 0;) {
        rest += terms[k + 1];
        const QubitOperator inner = commutator(rest, terms[k]);
        sum += op_norm(commutator(rest, inner)) / 12.0 + op_norm(commutator(terms[k], inner)) / 24.0;
    }
    return t * t * t * sum;
}

StepCount steps_required(BoundKind kind, const BoundParams& p, double T, double eps) {
    if (!(eps > 0))
        throw std::invalid_argument("steps_required: eps must be positive");
    BoundParams unit = p;
    unit.tau = 1.0;
    const double c = error_bound(kind, unit);
    const int order = bound_order(kind);
    StepCount out{};
    out.r = steps_from_constant(c, order + 1, std::abs(T), eps, &out.required);
    const int n = need(p.n, kind, "n");
    int d = 1;
    if (kind == BoundKind::DdimFirst || kind == BoundKind::DdimSecond)
        d = int(p.eta.size());
    else if (kind == BoundKind::AdvectionPeriodicFirst || kind == BoundKind::AdvectionPeriodicSecond)
        d = int(p.velocity.size());
    out.total_cnots = (long long)out.r * d * lemma_cnot_formula(n);

    out.leading_term = std::numeric_limits<double>::quiet_NaN();
    const bool ddim = kind == BoundKind::DdimFirst || kind == BoundKind::DdimSecond;
    const bool generic = kind == BoundKind::GenericFirst || kind == BoundKind::GenericSecond;
    if (ddim || generic) {
        const double g = std::abs(*p.gamma);
        const std::vector<double> eta = ddim ? p.eta : std::vector<double>{1.0};
        const double dn = double(n), tt = std::abs(T);
        if (order == 1)
            out.leading_term = 9.0 * d * dn * dn * dn * g * g * tt * tt * abs_power_sum(eta, 2) / (2.0 * eps);
        else
            out.leading_term = 3.0 * std::sqrt(3.0) * d * std::pow(dn, 2.5) * std::pow(g, 1.5) * std::pow(tt, 1.5) *
                               std::sqrt(abs_power_sum(eta, 3)) / std::sqrt(eps);
    }
    return out;
}

double classical_cost(int d, int n, double T, double eps, double sparsity, Order order, double l) {
    if (d < 1 || n < 1)
        throw std::invalid_argument("classical_cost: d and n must be >= 1");
    const double nodes = std::pow(2.0, double(d) * n);
    const double stepping = order == Order::First ? T * T / eps : std::pow(T, 1.5) / std::sqrt(eps);
    return sparsity * nodes * (stepping + T / l);
}

long long lemma_cnot_formula(int n) {
    if (n < 1)
        throw std::invalid_argument("lemma_cnot_formula: n must be >= 1");
    if (n == 1)
        return 0; // a lone W_1 has no controls and no CNOT ladder
    const long long m = n;
    return 9 * m * m - 33 * m + 34;
}

TrotterReport trotter_report(const PDEProblem& p) {
    check_problem(p);
    TrotterReport rep;
    rep.n = p.n;
    rep.d = p.d;
    rep.order = p.order;
    rep.tau = p.tau;
    if (p.equation == Equation::GenericShift)
        rep.lambda = p.lambda.at(0);

    const Circuit step = step_circuit(p);
    rep.measured_error = trotter_error_measured(hamiltonian(p), step, p.tau);
    rep.bound = per_step_bound(p);
    rep.cnots_analytic = count_cnots(step, CnotCountMode::Analytic);
    rep.cnots_decomposed = count_cnots(step, CnotCountMode::Decomposed);

    constexpr double kT = 1.0, kEps = 0.01;
    if (auto kind = bound_kind_for(p)) {
        rep.kind = to_string(*kind);
        const BoundParams b = bound_params_for(p);
        rep.r_thm1 = steps_required(family_kind(*kind, 1), b, kT, kEps).r;
        rep.r_thm2 = steps_required(family_kind(*kind, 2), b, kT, kEps).r;
    } else {
        rep.kind = "WavePeriodicAssembled";
        const auto ops = wave_term_operators(p);
        rep.r_thm1 = steps_from_constant(product_formula_bound(ops, 1.0, Order::First), 2, kT, kEps, nullptr);
        rep.r_thm2 = steps_from_constant(product_formula_bound(ops, 1.0, Order::Second), 3, kT, kEps, nullptr);
    }
    return rep;
}

std::vector<TrotterReport> bounds_sweep(const SweepOptions& opts) {
    if (opts.n_min < 2 || opts.n_max < opts.n_min)
        throw std::invalid_argument("bounds_sweep: need 2 <= n_min <= n_max");
    if (opts.n_max > 10)
        throw std::invalid_argument("bounds_sweep: n_max above 10 is outside the dense range");
    const double pi2 = std::numbers::pi / 2;
    std::vector<TrotterReport> out;
    auto run = [&](PDEProblem p) {
        p.total_time = p.tau;
        out.push_back(trotter_report(p));
    };
    for (int n = opts.n_min; n <= opts.n_max; ++n)
        for (Order order : opts.orders)
            for (double tau : opts.taus) {
                PDEProblem base;
                base.n = n;
                base.tau = tau;
                base.order = order;
                base.l = 1.0;

                for (double lambda : {0.0, -pi2}) {
                    PDEProblem g = base;
                    g.equation = Equation::GenericShift;
                    g.gamma = 1.0;
                    g.eta = {1.0};
                    g.lambda = {lambda};
                    run(g);
                }
                PDEProblem a = base;
                a.equation = Equation::Advection;
                a.velocity = {1.0};
                a.bc = BoundaryCondition::Periodic;
                run(a);

                PDEProblem w = base;
                w.equation = Equation::Wave;
                w.speed = 1.0;
                w.bc = BoundaryCondition::Dirichlet;
                run(w);

                if (opts.include_multidim && (n <= 3)) {
                    PDEProblem g2 = base;
                    g2.equation = Equation::GenericShift;
                    g2.d = 2;
                    g2.gamma = 1.0;
                    g2.eta = {1.0, 0.5};
                    g2.lambda = {0.0, -pi2};
                    run(g2);
                }
                if (opts.include_multidim && n == 2) {
                    PDEProblem g3 = base;
                    g3.equation = Equation::GenericShift;
                    g3.d = 3;
                    g3.gamma = 1.0;
                    g3.eta = {1.0, 0.5, 0.25};
                    g3.lambda = {0.0, -pi2, 0.3};
                    run(g3);
                }
            }
    return out;
}

} // namespace hamsim
