#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hamsim/circuit.hpp"
#include "hamsim/problem.hpp"
#include "hamsim/qubit_operator.hpp"

namespace hamsim {

enum class BoundKind {
    GenericFirst,
    GenericSecond,
    DdimFirst,
    DdimSecond,
    AdvectionPeriodicFirst,
    AdvectionPeriodicSecond,
    WaveFirst,
    WaveSecond
};

inline constexpr BoundKind kAllBoundKinds[] = {
    BoundKind::GenericFirst,           BoundKind::GenericSecond,           BoundKind::DdimFirst,
    BoundKind::DdimSecond,             BoundKind::AdvectionPeriodicFirst, BoundKind::AdvectionPeriodicSecond,
    BoundKind::WaveFirst,              BoundKind::WaveSecond};

const char* to_string(BoundKind k);
std::optional<BoundKind> parse_bound_kind(std::string_view s);
/// 1 for first-order kinds, 2 for second-order kinds.
int bound_order(BoundKind k);

/// Inputs of the closed-form bounds. Which fields are read depends on the
/// kind; a missing one is an error, unused ones are ignored.
struct BoundParams {
    std::optional<int> n;
    std::optional<double> tau;
    std::optional<double> gamma;
    std::vector<double> eta;      ///< Ddim kinds
    std::vector<double> velocity; ///< advection kinds, summed over axes
    std::optional<double> speed;  ///< wave kinds
    std::optional<double> l;
};

/// Closed-form per-step operator-norm bound. Coefficients enter through
/// their absolute values.
double error_bound(BoundKind kind, const BoundParams& p);

/// The bound kind covering a problem's step circuit, if a closed form exists.
/// Periodic wave problems have none (see per_step_bound).
std::optional<BoundKind> bound_kind_for(const PDEProblem& p);
BoundParams bound_params_for(const PDEProblem& p);

/// Closed form where one exists, otherwise the assembled-term commutator
/// bound of the periodic wave term list.
double per_step_bound(const PDEProblem& p);

/// ‖exp(-iHτ) - step‖ by dense materialization; at most 12 qubits.
double trotter_error_measured(const QubitOperator& h, const Circuit& step, double tau);

/// Commutator bound for a product formula over `terms` in list order. First
/// order: (τ²/2) Σ_{k<m} ‖[H_k, H_m]‖. Second order (symmetric product):
/// Σ_k τ³/12 ‖[B_k,[B_k,H_k]]‖ + τ³/24 ‖[H_k,[H_k,B_k]]‖ with B_k = Σ_{m>k} H_m.
double product_formula_bound(const std::vector<QubitOperator>& terms, double tau, Order order);

struct StepCount {
    int r;
    long long total_cnots;
    /// The unrounded right-hand side of the inequality for r.
    double required;
    /// Leading-term constant written out in the complexity statement
    /// (Ddim kinds only, NaN otherwise).
    double leading_term;
};

/// Smallest r with r · bound(τ = T/r) ≤ ε, i.e. r = ⌈(C T^p / ε)^{1/(p-1)}⌉
/// where C is the bound at τ = 1 and p = order + 1. Values within 1e-9 of an
/// integer are snapped to it before the ceiling. `p.tau` is ignored.
StepCount steps_required(BoundKind kind, const BoundParams& p, double T, double eps);

/// Unit-constant asymptotic comparator for a classical explicit solver:
/// s·2^{dn}·(T²/ε + T/l) for first order, s·2^{dn}·(T^{1.5}/ε^{0.5} + T/l)
/// for second order.
double classical_cost(int d, int n, double T, double eps, double sparsity, Order order, double l = 1.0);

/// Analytic CNOTs of one first-order step on an n-qubit register.
long long lemma_cnot_formula(int n);

struct TrotterReport {
    std::string kind;
    std::optional<double> lambda;
    int n = 0;
    int d = 1;
    Order order = Order::First;
    double tau = 0.0;
    double measured_error = 0.0;
    double bound = 0.0;
    long long cnots_analytic = 0;
    long long cnots_decomposed = 0;
    int r_thm1 = 0; ///< steps for T = 1, ε = 0.01 from the first-order bound of the same family
    int r_thm2 = 0; ///< same, second-order bound
    double ratio() const { return bound > 0 ? measured_error / bound : 0.0; }
    bool compliant() const { return measured_error <= bound; }
};

TrotterReport trotter_report(const PDEProblem& p);

struct SweepOptions {
    int n_min = 2;
    int n_max = 6;
    std::vector<Order> orders{Order::First, Order::Second};
    std::vector<double> taus{0.2, 0.1, 0.05};
    /// Adds d = 2 (n ≤ 3) and d = 3 (n = 2) generic problems for the Ddim kinds.
    bool include_multidim = true;
};

/// Generic (λ = 0 and -π/2), periodic advection and mixed wave problems
/// over the grid, plus the multi-dimensional generic cases.
std::vector<TrotterReport> bounds_sweep(const SweepOptions& opts);

struct IdentityCheck {
    std::string name;
    bool passed;
    double max_deviation;
};

struct CommutatorReport {
    int n;
    double lambda;
    std::vector<IdentityCheck> checks;
    bool all_passed() const;
};

/// Entrywise checks of the shift-term algebra: vanishing commutators for
/// j > j' ≥ 2, unit-norm commutators against j' = 1 and their closed forms,
/// the product table, the recursions, s_1² = I, and the nested-commutator
/// norm estimates behind the second-order bound. 2 ≤ n ≤ 6.
CommutatorReport verify_commutators(int n, double lambda, double tol = 1e-12);

} // namespace hamsim
