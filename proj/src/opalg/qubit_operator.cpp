#include "hamsim/qubit_operator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hamsim {

namespace {

constexpr int kMaxQubits = 40;

void check_qubits(int q) {
    if (q < 0 || q > kMaxQubits)
        throw std::invalid_argument("QubitOperator: qubit count " + std::to_string(q) + " out of range");
}

void check_same_shape(const QubitOperator& a, const QubitOperator& b, const char* what) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument(std::string(what) + ": qubit counts differ (" + std::to_string(a.num_qubits()) +
                                    " vs " + std::to_string(b.num_qubits()) + ")");
}

bool row_major_less(const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
}

} // namespace

QubitOperator::QubitOperator(int num_qubits) : q_(num_qubits) {
    check_qubits(num_qubits);
}

QubitOperator::QubitOperator(int num_qubits, std::vector<Entry> entries) : q_(num_qubits) {
    check_qubits(num_qubits);
    const Index n = dim();
    for (const auto& e : entries) {
        if (e.row >= n || e.col >= n)
            throw std::out_of_range("QubitOperator: entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                                    ") outside " + std::to_string(n) + "x" + std::to_string(n));
    }
    std::sort(entries.begin(), entries.end(), row_major_less);
    std::size_t out = 0;
    for (std::size_t i = 0; i < entries.size();) {
        Entry acc = entries[i++];
        while (i < entries.size() && entries[i].row == acc.row && entries[i].col == acc.col)
            acc.value += entries[i++].value;
        if (acc.value != cplx{0.0, 0.0})
            entries[out++] = acc;
    }
    entries.resize(out);
    entries_ = std::move(entries);
}

QubitOperator QubitOperator::identity(int num_qubits) {
    check_qubits(num_qubits);
    std::vector<Entry> e;
    e.reserve(Index{1} << num_qubits);
    for (Index i = 0; i < (Index{1} << num_qubits); ++i)
        e.push_back({i, i, 1.0});
    return QubitOperator(num_qubits, std::move(e));
}

QubitOperator QubitOperator::from_dense(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols() || m.rows() == 0 || (m.rows() & (m.rows() - 1)) != 0)
        throw std::invalid_argument("QubitOperator::from_dense: matrix is not 2^q x 2^q");
    int q = 0;
    while ((Eigen::Index{1} << q) < m.rows())
        ++q;
    std::vector<Entry> e;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            if (m(r, c) != cplx{0.0, 0.0})
                e.push_back({Index(r), Index(c), m(r, c)});
    return QubitOperator(q, std::move(e));
}

cplx QubitOperator::at(Index row, Index col) const {
    const Entry key{row, col, {}};
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key, row_major_less);
    if (it != entries_.end() && it->row == row && it->col == col)
        return it->value;
    return {0.0, 0.0};
}

QubitOperator QubitOperator::adjoint() const {
    std::vector<Entry> e;
    e.reserve(entries_.size());
    for (const auto& x : entries_)
        e.push_back({x.col, x.row, std::conj(x.value)});
    return QubitOperator(q_, std::move(e));
}

QubitOperator QubitOperator::operator+(const QubitOperator& o) const {
    check_same_shape(*this, o, "operator+");
    std::vector<Entry> e(entries_);
    e.insert(e.end(), o.entries_.begin(), o.entries_.end());
    return QubitOperator(q_, std::move(e));
}

QubitOperator QubitOperator::operator-(const QubitOperator& o) const {
    check_same_shape(*this, o, "operator-");
    return *this + (-o);
}

QubitOperator QubitOperator::operator-() const { return *this * cplx{-1.0, 0.0}; }

QubitOperator QubitOperator::operator*(cplx s) const {
    std::vector<Entry> e;
    e.reserve(entries_.size());
    for (const auto& x : entries_)
        e.push_back({x.row, x.col, x.value * s});
    return QubitOperator(q_, std::move(e));
}

QubitOperator QubitOperator::operator*(const QubitOperator& o) const {
    check_same_shape(*this, o, "operator*");
    std::vector<Entry> out;
    std::vector<Entry> row_buf;
    auto b_row = [&o](Index r) {
        const Entry key{r, 0, {}};
        auto lo = std::lower_bound(o.entries_.begin(), o.entries_.end(), key, row_major_less);
        auto hi = lo;
        while (hi != o.entries_.end() && hi->row == r)
            ++hi;
        return std::pair{lo, hi};
    };
    for (std::size_t i = 0; i < entries_.size();) {
        const Index r = entries_[i].row;
        row_buf.clear();
        for (; i < entries_.size() && entries_[i].row == r; ++i) {
            auto [lo, hi] = b_row(entries_[i].col);
            for (auto it = lo; it != hi; ++it)
                row_buf.push_back({r, it->col, entries_[i].value * it->value});
        }
        out.insert(out.end(), row_buf.begin(), row_buf.end());
    }
    return QubitOperator(q_, std::move(out));
}

void QubitOperator::apply(const cplx* x, cplx* y) const {
    std::fill(y, y + dim(), cplx{0.0, 0.0});
    for (const auto& e : entries_)
        y[e.row] += e.value * x[e.col];
}

std::vector<cplx> QubitOperator::apply(const std::vector<cplx>& x) const {
    if (x.size() != dim())
        throw std::invalid_argument("QubitOperator::apply: vector length " + std::to_string(x.size()) +
                                    " does not match dimension " + std::to_string(dim()));
    std::vector<cplx> y(dim());
    apply(x.data(), y.data());
    return y;
}

Eigen::MatrixXcd QubitOperator::to_dense() const {
    if (q_ > 14)
        throw std::length_error("QubitOperator::to_dense: " + std::to_string(q_) + " qubits is too large");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(dim()), Eigen::Index(dim()));
    for (const auto& e : entries_)
        m(Eigen::Index(e.row), Eigen::Index(e.col)) = e.value;
    return m;
}

double QubitOperator::max_abs_diff(const QubitOperator& o) const {
    check_same_shape(*this, o, "max_abs_diff");
    double worst = 0.0;
    for (const auto& e : (*this - o).entries_)
        worst = std::max(worst, std::abs(e.value));
    return worst;
}

bool QubitOperator::is_hermitian(double tol) const { return max_abs_diff(adjoint()) <= tol; }

double QubitOperator::norm_inf() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < entries_.size();) {
        const Index r = entries_[i].row;
        double sum = 0.0;
        for (; i < entries_.size() && entries_[i].row == r; ++i)
            sum += std::abs(entries_[i].value);
        worst = std::max(worst, sum);
    }
    return worst;
}

void QubitOperator::dump_dense_csv(std::ostream& os) const {
    os << "row,col,re,im\n" << std::setprecision(17);
    for (Index r = 0; r < dim(); ++r)
        for (Index c = 0; c < dim(); ++c) {
            const cplx v = at(r, c);
            os << r << ',' << c << ',' << v.real() << ',' << v.imag() << '\n';
        }
}

QubitOperator kron(const QubitOperator& a, const QubitOperator& b) {
    const int q = a.num_qubits() + b.num_qubits();
    check_qubits(q);
    const int shift = b.num_qubits();
    std::vector<Entry> e;
    e.reserve(a.nnz() * b.nnz());
    for (const auto& x : a.entries())
        for (const auto& y : b.entries())
            e.push_back({(x.row << shift) | y.row, (x.col << shift) | y.col, x.value * y.value});
    return QubitOperator(q, std::move(e));
}

QubitOperator kron_power(const QubitOperator& a, int k) {
    if (k < 0)
        throw std::invalid_argument("kron_power: negative exponent");
    QubitOperator out = QubitOperator::identity(0);
    for (int i = 0; i < k; ++i)
        out = kron(out, a);
    return out;
}

QubitOperator embed(const QubitOperator& op, int offset, int total_qubits) {
    const int k = op.num_qubits();
    if (offset < 0 || offset + k > total_qubits)
        throw std::out_of_range("embed: " + std::to_string(k) + "-qubit operator at offset " + std::to_string(offset) +
                                " does not fit in " + std::to_string(total_qubits) + " qubits");
    return kron(kron(QubitOperator::identity(total_qubits - offset - k), op), QubitOperator::identity(offset));
}

QubitOperator commutator(const QubitOperator& a, const QubitOperator& b) { return a * b - b * a; }

namespace local {
QubitOperator sigma00() { return QubitOperator(1, {{0, 0, 1.0}}); }
QubitOperator sigma01() { return QubitOperator(1, {{0, 1, 1.0}}); }
QubitOperator sigma10() { return QubitOperator(1, {{1, 0, 1.0}}); }
QubitOperator sigma11() { return QubitOperator(1, {{1, 1, 1.0}}); }
QubitOperator pauli_x() { return QubitOperator(1, {{0, 1, 1.0}, {1, 0, 1.0}}); }
QubitOperator pauli_y() { return QubitOperator(1, {{0, 1, cplx{0, -1}}, {1, 0, cplx{0, 1}}}); }
QubitOperator pauli_z() { return QubitOperator(1, {{0, 0, 1.0}, {1, 1, -1.0}}); }
} // namespace local

} // namespace hamsim
