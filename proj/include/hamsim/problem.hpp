#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "hamsim/qubit_operator.hpp"

namespace hamsim {

enum class Equation { Advection, Wave, GenericShift };
enum class Order { First, Second };

const char* to_string(Equation e);
const char* to_string(Order o);

struct BasisState {
    Index index = 0;
};

/// Uniform amplitude over a box of nodes; one half-open [lo, hi) range per
/// axis. For the wave equation the box lives in the ∂u/∂t block.
struct UniformWindow {
    std::vector<std::pair<Index, Index>> ranges;
};

struct ExplicitAmplitudes {
    std::vector<cplx> amplitudes;
};

using InitialCondition = std::variant<BasisState, UniformWindow, ExplicitAmplitudes>;

/// For the wave equation `bc` selects the spatial operators: Dirichlet means
/// the Dirichlet-padded forward/backward pair (Dirichlet at x=0, Neumann at
/// x=L for u), Periodic means central differences with wrap-around.
struct PDEProblem {
    Equation equation = Equation::Advection;
    int d = 1;
    int n = 1;
    double l = 1.0;
    std::vector<double> velocity;
    double speed = 1.0;
    double gamma = 1.0;
    std::vector<double> eta;
    std::vector<double> lambda;
    BoundaryCondition bc = BoundaryCondition::Periodic;
    double tau = 0.1;
    double total_time = 1.0;
    Order order = Order::First;
    InitialCondition initial = BasisState{0};
};

/// Throws std::invalid_argument describing the first violated constraint.
void check_problem(const PDEProblem& p);
int num_qubits(const PDEProblem& p);
/// r = T/τ; throws unless T/τ is an integer to 1e-9 relative.
int num_steps(const PDEProblem& p);
int steps_for_time(double t, double tau);
/// Normalized initial statevector over num_qubits(p) qubits.
std::vector<cplx> initial_state(const PDEProblem& p);

} // namespace hamsim
