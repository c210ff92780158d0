#pragma once

#include <algorithm>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "syzygy/field.hpp"

namespace syzygy {

using Index = long;

// Rectangular exact matrix in triplet form. Entries are kept sorted by
// (row, col), unique, and nonzero. Immutable after construction.
template <class F>
class SparseMatrix {
public:
    using Elem = typename F::Elem;
    struct Entry {
        Index row;
        Index col;
        Elem value;
    };

    SparseMatrix(F field, Index rows, Index cols)
        : field_(field), rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("matrix: negative shape");
    }

    static SparseMatrix identity(F field, Index n) {
        SparseMatrix m(field, n, n);
        m.entries_.reserve(n);
        for (Index i = 0; i < n; ++i) m.entries_.push_back({i, i, field.one()});
        return m;
    }

    F field() const { return field_; }
    FieldSpec field_spec() const { return field_.spec(); }
    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    Index nnz() const { return static_cast<Index>(entries_.size()); }
    const std::vector<Entry>& entries() const { return entries_; }

    SparseMatrix transpose() const {
        SparseMatrix t(field_, cols_, rows_);
        t.entries_.reserve(entries_.size());
        for (const Entry& e : entries_) t.entries_.push_back({e.col, e.row, e.value});
        std::sort(t.entries_.begin(), t.entries_.end(), [](const Entry& a, const Entry& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        return t;
    }

    bool is_zero() const { return entries_.empty(); }

    // Dense column extraction (small matrices only).
    std::vector<Elem> dense_col(Index c) const {
        std::vector<Elem> v(static_cast<size_t>(rows_), field_.zero());
        for (const Entry& e : entries_)
            if (e.col == c) v[static_cast<size_t>(e.row)] = e.value;
        return v;
    }

private:
    template <class G>
    friend class MatrixBuilder;

    F field_;
    Index rows_, cols_;
    std::vector<Entry> entries_;
};

// Accumulating builder: duplicate (row, col) contributions are summed,
// zeros dropped, indices validated.
template <class F>
class MatrixBuilder {
public:
    using Elem = typename F::Elem;

    MatrixBuilder(F field, Index rows, Index cols)
        : field_(field), rows_(rows), cols_(cols) {}

    void add(Index r, Index c, const Elem& v) {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("matrix builder: entry (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") outside " + std::to_string(rows_) +
                                    "x" + std::to_string(cols_));
        if (field_.is_zero(v)) return;
        triplets_.push_back({r, c, v});
    }

    void add_int(Index r, Index c, long v) { add(r, c, field_.from_int(v)); }

    SparseMatrix<F> build() {
        using Entry = typename SparseMatrix<F>::Entry;
        std::sort(triplets_.begin(), triplets_.end(), [](const Entry& a, const Entry& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        SparseMatrix<F> m(field_, rows_, cols_);
        for (auto& t : triplets_) {
            if (!m.entries_.empty() && m.entries_.back().row == t.row &&
                m.entries_.back().col == t.col) {
                m.entries_.back().value = field_.add(m.entries_.back().value, t.value);
            } else {
                m.entries_.push_back(std::move(t));
            }
        }
        std::erase_if(m.entries_, [this](const Entry& e) { return field_.is_zero(e.value); });
        triplets_.clear();
        return m;
    }

private:
    F field_;
    Index rows_, cols_;
    std::vector<typename SparseMatrix<F>::Entry> triplets_;
};

namespace detail {
template <class F>
void require_same_field(const SparseMatrix<F>& a, const SparseMatrix<F>& b, const char* op) {
    if (!(a.field() == b.field()))
        throw std::invalid_argument(std::string(op) + ": field mismatch (" +
                                    a.field_spec().str() + " vs " + b.field_spec().str() + ")");
}
}  // namespace detail

// Exact product A*B.
template <class F>
SparseMatrix<F> compose(const SparseMatrix<F>& a, const SparseMatrix<F>& b) {
    detail::require_same_field(a, b, "compose");
    if (a.cols() != b.rows())
        throw std::invalid_argument("compose: shape mismatch " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " * " + std::to_string(b.rows()) +
                                    "x" + std::to_string(b.cols()));
    F f = a.field();
    // Row-major view of b.
    std::vector<std::vector<std::pair<Index, typename F::Elem>>> brows(
        static_cast<size_t>(b.rows()));
    for (const auto& e : b.entries()) brows[static_cast<size_t>(e.row)].push_back({e.col, e.value});

    MatrixBuilder<F> mb(f, a.rows(), b.cols());
    std::vector<typename F::Elem> acc(static_cast<size_t>(b.cols()), f.zero());
    std::vector<bool> used(static_cast<size_t>(b.cols()), false);
    std::vector<Index> touched;
    size_t i = 0;
    const auto& ae = a.entries();
    while (i < ae.size()) {
        Index r = ae[i].row;
        for (; i < ae.size() && ae[i].row == r; ++i) {
            for (const auto& [c2, v2] : brows[static_cast<size_t>(ae[i].col)]) {
                auto& slot = acc[static_cast<size_t>(c2)];
                if (!used[static_cast<size_t>(c2)]) {
                    used[static_cast<size_t>(c2)] = true;
                    touched.push_back(c2);
                }
                slot = f.add(slot, f.mul(ae[i].value, v2));
            }
        }
        std::sort(touched.begin(), touched.end());
        for (Index c : touched) {
            mb.add(r, c, acc[static_cast<size_t>(c)]);
            acc[static_cast<size_t>(c)] = f.zero();
            used[static_cast<size_t>(c)] = false;
        }
        touched.clear();
    }
    return mb.build();
}

template <class F>
SparseMatrix<F> add_matrices(const SparseMatrix<F>& a, const SparseMatrix<F>& b) {
    detail::require_same_field(a, b, "add");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("add: shape mismatch");
    MatrixBuilder<F> mb(a.field(), a.rows(), a.cols());
    for (const auto& e : a.entries()) mb.add(e.row, e.col, e.value);
    for (const auto& e : b.entries()) mb.add(e.row, e.col, e.value);
    return mb.build();
}

template <class F>
SparseMatrix<F> scale(const SparseMatrix<F>& a, const typename F::Elem& s) {
    MatrixBuilder<F> mb(a.field(), a.rows(), a.cols());
    for (const auto& e : a.entries()) mb.add(e.row, e.col, a.field().mul(e.value, s));
    return mb.build();
}

template <class F>
SparseMatrix<F> subtract(const SparseMatrix<F>& a, const SparseMatrix<F>& b) {
    return add_matrices(a, scale(b, b.field().from_int(-1)));
}

template <class F>
bool equal(const SparseMatrix<F>& a, const SparseMatrix<F>& b) {
    if (!(a.field() == b.field()) || a.rows() != b.rows() || a.cols() != b.cols()) return false;
    if (a.nnz() != b.nnz()) return false;
    F f = a.field();
    for (size_t i = 0; i < a.entries().size(); ++i) {
        const auto& x = a.entries()[i];
        const auto& y = b.entries()[i];
        if (x.row != y.row || x.col != y.col || !f.eq(x.value, y.value)) return false;
    }
    return true;
}

// Kronecker product: maps Tensor(domA, domB) -> Tensor(codA, codB) with
// lexicographic pair indexing (left factor major).
template <class F>
SparseMatrix<F> kron(const SparseMatrix<F>& a, const SparseMatrix<F>& b) {
    detail::require_same_field(a, b, "kron");
    F f = a.field();
    MatrixBuilder<F> mb(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (const auto& ea : a.entries())
        for (const auto& eb : b.entries())
            mb.add(ea.row * b.rows() + eb.row, ea.col * b.cols() + eb.col,
                   f.mul(ea.value, eb.value));
    return mb.build();
}

// Stack a on top of b (same column count).
template <class F>
SparseMatrix<F> vstack(const SparseMatrix<F>& a, const SparseMatrix<F>& b) {
    detail::require_same_field(a, b, "vstack");
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    MatrixBuilder<F> mb(a.field(), a.rows() + b.rows(), a.cols());
    for (const auto& e : a.entries()) mb.add(e.row, e.col, e.value);
    for (const auto& e : b.entries()) mb.add(a.rows() + e.row, e.col, e.value);
    return mb.build();
}

struct RankReport {
    Index rank = 0;
    Index nullity = 0;
    Index rows = 0;
    Index cols = 0;
    FieldSpec field;
};

// Rank by sparse fraction-free-style Gaussian elimination with
// Markowitz pivoting. Deterministic for fixed input.
template <class F>
RankReport rank(const SparseMatrix<F>& m);

// Basis of the right kernel, returned as the columns of a cols x nullity
// matrix K with M*K = 0 exactly.
template <class F>
SparseMatrix<F> kernel_basis(const SparseMatrix<F>& m);

// Incremental reduced row echelon basis with transform tracking, for
// subspace membership and coordinate extraction. Dense rows; intended
// for the small graded pieces, not for Koszul-scale matrices.
template <class F>
class RowBasis {
public:
    using Elem = typename F::Elem;

    RowBasis(F field, Index width);

    // Adds v to the span. Returns true if v was independent of the
    // current span (v becomes original basis vector #dim-1).
    bool add_row(const std::vector<Elem>& v);

    Index dim() const { return static_cast<Index>(rref_.size()); }
    Index width() const { return width_; }
    const std::vector<Index>& pivots() const { return pivots_; }

    bool contains(const std::vector<Elem>& v) const;

    // Coordinates of v in terms of the independent rows that were
    // accepted by add_row, in acceptance order. nullopt if v is outside
    // the span.
    std::optional<std::vector<Elem>> coords(const std::vector<Elem>& v) const;

    // Normal form: v minus its projection onto the span (reduction by
    // the RREF rows at their pivot columns).
    std::vector<Elem> reduce(const std::vector<Elem>& v) const;

private:
    F field_;
    Index width_;
    std::vector<std::vector<Elem>> rref_;       // reduced rows
    std::vector<std::vector<Elem>> transform_;  // rref_[i] = sum transform_[i][j]*orig_j
    std::vector<Index> pivots_;
};

// Matrix cache file format:
//   SYZMAT v1 <rows> <cols> <field>
//   <row> <col> <value>
// with one triplet per line, sorted by (row, col), canonical values
// ("n" or "n/d" over the rationals, the residue over a prime field).
// Round-trips are bit-exact.
template <class F>
void write_syzmat(std::ostream& os, const SparseMatrix<F>& m);

struct SyzmatHeader {
    Index rows = 0;
    Index cols = 0;
    FieldSpec field;
};
SyzmatHeader read_syzmat_header(std::istream& is);

template <class F>
SparseMatrix<F> read_syzmat(std::istream& is, F field);

// Reduce a rational matrix into the given field (identity over the
// rationals, reduction mod p over a prime field).
template <class F>
SparseMatrix<F> convert(const SparseMatrix<RationalField>& m, F field);

}  // namespace syzygy
