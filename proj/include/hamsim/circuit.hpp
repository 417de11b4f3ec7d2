#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hamsim/problem.hpp"
#include "hamsim/qubit_operator.hpp"

namespace hamsim {

// Qubit indices are 0-based and little-endian: index k is 1-based
// qubit k+1 and carries weight 2^k in a basis-state index.

enum class GateKind { H, X, Phase, RZ, RX, CNOT, MCRZ };

const char* to_string(GateKind k);

struct Gate {
    GateKind kind;
    double angle = 0.0;
    std::vector<int> targets;
    std::vector<int> controls;

    bool operator==(const Gate&) const = default;
};

class Circuit {
public:
    explicit Circuit(int num_qubits = 0);

    int num_qubits() const { return q_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

    Circuit& h(int q);
    Circuit& x(int q);
    Circuit& phase(int q, double lambda);
    Circuit& rz(int q, double theta);
    Circuit& rx(int q, double theta);
    Circuit& cx(int control, int target);
    /// exp(-iθZ/2) on `target` inside the all-ones subspace of `controls`.
    Circuit& mcrz(std::vector<int> controls, int target, double theta);
    Circuit& add(Gate g);

    /// Appends `other`, whose qubit k is placed on qubit k + offset.
    Circuit& append(const Circuit& other, int offset = 0);

    /// Reversed gate order with negated angles.
    Circuit adjoint() const;

    bool operator==(const Circuit&) const = default;

private:
    int q_;
    std::vector<Gate> gates_;
};

/// U_j(λ) = (Π_m CNOT^j_m) P_j(λ) H_j on an n-qubit register.
Circuit bell_basis_unitary(int n, int j, double lambda);
/// W_j(γτ, λ) = U_j(-λ) · CRZ^{1..j-1}_j(2γτ) · U_j(-λ)^†, the exact
/// exponential exp(-iγτ(e^{iλ}s_j^- + e^{-iλ}s_j^+)).
Circuit shift_term_block(int n, int j, double angle, double lambda);
/// V = W_n ... W_1.
Circuit trotter_step_first(int n, double angle, double lambda);
/// W_1(γτ/2) · W_n ... W_2 · W_1(γτ/2).
Circuit trotter_step_second(int n, double angle, double lambda);
/// exp(-iθ·(-i)(σ10^{⊗n} - σ01^{⊗n})) with θ = vτ/2l.
Circuit periodic_boundary_step(int n, double angle);

Circuit advection_circuit(const PDEProblem& p);
Circuit wave_circuit(const PDEProblem& p);
Circuit generic_shift_circuit(const PDEProblem& p);
/// One Trotter step for any supported problem.
Circuit step_circuit(const PDEProblem& p);

// Assembled-term path: a Hamiltonian written as Σ c_k Q_k ⊗ T_k where Q_k is
// I, X or Y on a block qubit and T_k is a (possibly wrapped) shift term on one
// register. Each factor is exponentiated exactly.

enum class BlockPauli { I, X, Y };

struct ShiftTerm {
    double coefficient = 1.0;
    BlockPauli block = BlockPauli::I;
    int block_qubit = -1;
    int offset = 0; ///< lowest qubit of the register
    int n = 1;      ///< register size
    int j = 1;
    double lambda = 0.0;
    /// Wrap-around term e^{iλ}σ10^{⊗n} + e^{-iλ}σ01^{⊗n} instead of s_j.
    bool boundary = false;
};

QubitOperator shift_term_operator(const ShiftTerm& t, int num_qubits);
Circuit shift_term_exponential(const ShiftTerm& t, int num_qubits, double time);
/// First order: factors in list order. Second order: symmetric product.
Circuit term_product_step(const std::vector<ShiftTerm>& terms, int num_qubits, double tau, Order order);
/// Periodic central-difference wave Hamiltonian for d = 1, 2 as a term list.
std::vector<ShiftTerm> wave_periodic_terms(const PDEProblem& p);

enum class CnotCountMode { Analytic, Decomposed };

long long count_cnots(const Circuit& c, CnotCountMode mode);
/// MCRZ(θ) with controls 0..k-1 and target k, from CNOT and RZ only.
Circuit decompose_mcrz(int k, double theta);
/// Every MCRZ replaced by its decomposition.
Circuit decompose(const Circuit& c);

std::string export_qasm(const Circuit& c);
Circuit parse_qasm(std::string_view text);

} // namespace hamsim
