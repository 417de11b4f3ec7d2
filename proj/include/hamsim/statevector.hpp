#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "hamsim/circuit.hpp"
#include "hamsim/kernels.hpp"
#include "hamsim/qubit_operator.hpp"

namespace hamsim {

class StateVector {
public:
    explicit StateVector(int num_qubits); ///< |0...0>
    static StateVector basis(int num_qubits, Index index);
    /// Requires unit 2-norm to 1e-10.
    static StateVector from_amplitudes(std::vector<cplx> amplitudes);

    int num_qubits() const { return q_; }
    Index dim() const { return Index{1} << q_; }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::vector<cplx>& mutable_amplitudes() { return amps_; }
    double norm() const;

private:
    int q_;
    std::vector<cplx> amps_;
};

class Observable {
public:
    /// Throws unless Hermitian to 1e-12.
    explicit Observable(QubitOperator op);
    const QubitOperator& op() const { return op_; }
    int num_qubits() const { return op_.num_qubits(); }

private:
    QubitOperator op_;
};

/// ½(Z + I) on the top qubit of a (num_qubits)-qubit register: the weight of
/// the ∂u/∂t block of the wave encoding.
Observable kinetic_energy_observable(int num_qubits);

void apply_inplace(const Circuit& c, StateVector& s, const kernels::KernelTable& k = kernels::active_kernels());
StateVector apply(const Circuit& c, const StateVector& s);

struct Trajectory {
    std::vector<int> steps;
    std::vector<StateVector> states;
};

inline constexpr int kMaxRecordedQubits = 14;

/// States after k·record_every steps (k = 0, 1, ...) and after step r. Above
/// kMaxRecordedQubits only the final state is stored; `observer`, if given,
/// still sees every recorded step.
Trajectory evolve(const Circuit& step, const StateVector& s0, int r, int record_every,
                  const std::function<void(int, const StateVector&)>& observer = {});

double expectation(const StateVector& s, const Observable& o);

struct ShotEstimate {
    double estimate;
    double ci95;
};

/// Multinomial sampling of computational-basis outcomes after `basis_change`.
/// The observable must be diagonal in that basis.
ShotEstimate sample_observable(const StateVector& s, const Observable& o, int shots, std::uint64_t seed,
                               const Circuit& basis_change = Circuit());

/// Dense unitary of a circuit, one column per basis state.
Eigen::MatrixXcd materialize(const Circuit& c);

} // namespace hamsim
