#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace hamsim {

using cplx = std::complex<double>;
using Index = std::uint64_t;

struct Entry {
    Index row;
    Index col;
    cplx value;
};

/// Sparse 2^q x 2^q complex matrix. Entries are kept sorted row-major with
/// exact zeros removed, so two equal operators have identical entry lists.
class QubitOperator {
public:
    explicit QubitOperator(int num_qubits);
    /// Duplicate coordinates are summed.
    QubitOperator(int num_qubits, std::vector<Entry> entries);

    static QubitOperator identity(int num_qubits);
    static QubitOperator from_dense(const Eigen::MatrixXcd& m);

    int num_qubits() const { return q_; }
    Index dim() const { return Index{1} << q_; }
    std::size_t nnz() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

    cplx at(Index row, Index col) const;

    QubitOperator adjoint() const;
    QubitOperator operator+(const QubitOperator& o) const;
    QubitOperator operator-(const QubitOperator& o) const;
    QubitOperator operator-() const;
    QubitOperator operator*(const QubitOperator& o) const;
    QubitOperator operator*(cplx s) const;
    friend QubitOperator operator*(cplx s, const QubitOperator& a) { return a * s; }
    QubitOperator& operator+=(const QubitOperator& o) { return *this = *this + o; }

    /// y = A x
    void apply(const cplx* x, cplx* y) const;
    std::vector<cplx> apply(const std::vector<cplx>& x) const;

    Eigen::MatrixXcd to_dense() const;

    double max_abs_diff(const QubitOperator& o) const;
    bool approx_equal(const QubitOperator& o, double tol = 1e-12) const { return max_abs_diff(o) <= tol; }
    bool is_hermitian(double tol = 1e-12) const;
    bool is_zero() const { return entries_.empty(); }

    /// Largest absolute row sum.
    double norm_inf() const;

    /// Debug dump of every dense entry as "row,col,re,im".
    void dump_dense_csv(std::ostream& os) const;

private:
    int q_;
    std::vector<Entry> entries_;
};

/// a ⊗ b with a on the most significant qubits.
QubitOperator kron(const QubitOperator& a, const QubitOperator& b);
QubitOperator kron_power(const QubitOperator& a, int k);
/// I^{⊗(total-offset-k)} ⊗ op ⊗ I^{⊗offset} for a k-qubit op.
QubitOperator embed(const QubitOperator& op, int offset, int total_qubits);
QubitOperator commutator(const QubitOperator& a, const QubitOperator& b);

namespace local {
QubitOperator sigma00();
QubitOperator sigma01();
QubitOperator sigma10();
QubitOperator sigma11();
QubitOperator pauli_x();
QubitOperator pauli_y();
QubitOperator pauli_z();
} // namespace local

enum class Shift { Minus, Plus };
enum class BoundaryCondition { Dirichlet, Neumann, Periodic };
enum class Scheme { Forward, Backward, Central, Laplacian, Forward2, Backward2 };

const char* to_string(BoundaryCondition bc);
const char* to_string(Scheme s);

/// s_j^- = I^{⊗(n-j)} ⊗ σ01 ⊗ σ10^{⊗(j-1)}, or its adjoint s_j^+.
QubitOperator ladder_term(int n, int j, Shift dir);
QubitOperator build_shift(int n, Shift dir);
QubitOperator build_difference(int n, Scheme scheme, BoundaryCondition bc, double l);
/// I^{⊗(α-1)n} ⊗ op ⊗ I^{⊗(d-α)n}; axis 1 is the most significant register.
QubitOperator embed_axis(const QubitOperator& op, int axis, int d, int n);

struct NormOptions {
    Index dense_limit = 512;
    double tol = 1e-10;
    int max_iterations = 10000;
};

double op_norm(const QubitOperator& op, const NormOptions& opts = {});
double op_norm(const Eigen::MatrixXcd& m);

} // namespace hamsim
