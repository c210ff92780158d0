#include "syzygy/sparse.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace syzygy {

namespace {

// Sparse Gaussian elimination with Markowitz pivot selection. Rows are
// kept as sorted (col, value) vectors; a per-column row index supports
// cheap pivot-column sweeps. Pivot rows are retired in order so the
// kernel can be recovered by back substitution.
template <class F>
class Eliminator {
public:
    using Elem = typename F::Elem;
    using Row = std::vector<std::pair<Index, Elem>>;

    explicit Eliminator(const SparseMatrix<F>& m)
        : f_(m.field()), nrows_(m.rows()), ncols_(m.cols()) {
        rows_.resize(static_cast<size_t>(nrows_));
        col_rows_.resize(static_cast<size_t>(ncols_));
        col_count_.assign(static_cast<size_t>(ncols_), 0);
        for (const auto& e : m.entries()) rows_[static_cast<size_t>(e.row)].push_back({e.col, e.value});
        row_alive_.assign(static_cast<size_t>(nrows_), true);
        col_alive_.assign(static_cast<size_t>(ncols_), true);
        for (Index r = 0; r < nrows_; ++r) {
            for (auto& [c, v] : rows_[static_cast<size_t>(r)]) {
                col_rows_[static_cast<size_t>(c)].push_back(r);
                ++col_count_[static_cast<size_t>(c)];
            }
            if (!rows_[static_cast<size_t>(r)].empty())
                by_count_.insert({static_cast<Index>(rows_[static_cast<size_t>(r)].size()), r});
        }
    }

    void run() {
        while (true) {
            auto piv = select_pivot();
            if (!piv) break;
            eliminate(piv->first, piv->second);
        }
    }

    Index rank() const { return static_cast<Index>(pivots_.size()); }

    SparseMatrix<F> kernel() const {
        std::vector<bool> is_pivot_col(static_cast<size_t>(ncols_), false);
        for (const auto& [r, c] : pivots_) is_pivot_col[static_cast<size_t>(c)] = true;
        std::vector<Index> free_cols;
        for (Index c = 0; c < ncols_; ++c)
            if (!is_pivot_col[static_cast<size_t>(c)]) free_cols.push_back(c);

        MatrixBuilder<F> mb(f_, ncols_, static_cast<Index>(free_cols.size()));
        for (size_t k = 0; k < free_cols.size(); ++k) {
            // x[free] = 1; pivot rows in reverse retirement order each
            // determine their own pivot coordinate.
            std::map<Index, Elem> x;
            x[free_cols[k]] = f_.one();
            for (size_t s = pivots_.size(); s-- > 0;) {
                const auto& [pr, pc] = pivots_[s];
                const Row& row = retired_[s];
                Elem acc = f_.zero();
                Elem pv = f_.zero();
                for (const auto& [c, v] : row) {
                    if (c == pc) {
                        pv = v;
                        continue;
                    }
                    auto it = x.find(c);
                    if (it != x.end()) acc = f_.add(acc, f_.mul(v, it->second));
                }
                if (!f_.is_zero(acc)) x[pc] = f_.neg(f_.div(acc, pv));
            }
            for (const auto& [c, v] : x)
                if (!f_.is_zero(v)) mb.add(c, static_cast<Index>(k), v);
        }
        return mb.build();
    }

private:
    std::optional<std::pair<Index, Index>> select_pivot() {
        constexpr int kCandidateRows = 8;
        std::optional<std::tuple<long long, Index, Index, Index>> best;  // cost, rowcount, col, row
        int examined = 0;
        for (auto it = by_count_.begin(); it != by_count_.end() && examined < kCandidateRows;) {
            auto [cnt, r] = *it;
            if (!row_alive_[static_cast<size_t>(r)] ||
                cnt != static_cast<Index>(rows_[static_cast<size_t>(r)].size())) {
                it = by_count_.erase(it);
                continue;
            }
            ++examined;
            for (const auto& [c, v] : rows_[static_cast<size_t>(r)]) {
                long long cost = static_cast<long long>(cnt - 1) *
                                 (col_count_[static_cast<size_t>(c)] - 1);
                std::tuple<long long, Index, Index, Index> cand{cost, cnt, c, r};
                if (!best || cand < *best) best = cand;
            }
            if (best && std::get<0>(*best) == 0 && examined >= 1) break;
            ++it;
        }
        if (!best) return std::nullopt;
        return std::make_pair(std::get<3>(*best), std::get<2>(*best));
    }

    void eliminate(Index pr, Index pc) {
        Row& prow = rows_[static_cast<size_t>(pr)];
        Elem pv = f_.zero();
        for (const auto& [c, v] : prow)
            if (c == pc) pv = v;

        // Collect live rows holding column pc (other than the pivot row).
        std::vector<Index> targets;
        auto& crs = col_rows_[static_cast<size_t>(pc)];
        for (Index r : crs) {
            if (r == pr || !row_alive_[static_cast<size_t>(r)]) continue;
            targets.push_back(r);
        }
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

        for (Index r : targets) {
            Row& row = rows_[static_cast<size_t>(r)];
            Elem rv = f_.zero();
            bool found = false;
            for (const auto& [c, v] : row)
                if (c == pc) {
                    rv = v;
                    found = true;
                    break;
                }
            if (!found) continue;
            Elem factor = f_.div(rv, pv);
            Row merged;
            merged.reserve(row.size() + prow.size());
            size_t i = 0, j = 0;
            while (i < row.size() || j < prow.size()) {
                if (j == prow.size() || (i < row.size() && row[i].first < prow[j].first)) {
                    merged.push_back(row[i++]);
                } else if (i == row.size() || prow[j].first < row[i].first) {
                    const auto& [c, v] = prow[j++];
                    Elem nv = f_.neg(f_.mul(factor, v));
                    if (!f_.is_zero(nv)) {
                        merged.push_back({c, std::move(nv)});
                        col_rows_[static_cast<size_t>(c)].push_back(r);
                        ++col_count_[static_cast<size_t>(c)];
                    }
                } else {
                    Elem nv = f_.sub(row[i].second, f_.mul(factor, prow[j].second));
                    if (!f_.is_zero(nv)) {
                        merged.push_back({row[i].first, std::move(nv)});
                    } else {
                        --col_count_[static_cast<size_t>(row[i].first)];
                    }
                    ++i;
                    ++j;
                }
            }
            row = std::move(merged);
            if (!row.empty()) by_count_.insert({static_cast<Index>(row.size()), r});
        }

        // Retire the pivot row and column.
        row_alive_[static_cast<size_t>(pr)] = false;
        col_alive_[static_cast<size_t>(pc)] = false;
        for (const auto& [c, v] : prow) --col_count_[static_cast<size_t>(c)];
        pivots_.push_back({pr, pc});
        retired_.push_back(std::move(prow));
        prow = Row{};
    }

    F f_;
    Index nrows_, ncols_;
    std::vector<Row> rows_;
    std::vector<std::vector<Index>> col_rows_;  // lazily cleaned
    std::vector<Index> col_count_;
    std::vector<bool> row_alive_, col_alive_;
    std::set<std::pair<Index, Index>> by_count_;  // (nnz, row)
    std::vector<std::pair<Index, Index>> pivots_;
    std::vector<Row> retired_;
};

}  // namespace

template <class F>
RankReport rank(const SparseMatrix<F>& m) {
    Eliminator<F> e(m);
    e.run();
    RankReport rep;
    rep.rank = e.rank();
    rep.nullity = m.cols() - rep.rank;
    rep.rows = m.rows();
    rep.cols = m.cols();
    rep.field = m.field_spec();
    return rep;
}

template <class F>
SparseMatrix<F> kernel_basis(const SparseMatrix<F>& m) {
    Eliminator<F> e(m);
    e.run();
    return e.kernel();
}

template <class F>
RowBasis<F>::RowBasis(F field, Index width) : field_(field), width_(width) {}

template <class F>
bool RowBasis<F>::add_row(const std::vector<Elem>& v) {
    if (static_cast<Index>(v.size()) != width_)
        throw std::invalid_argument("RowBasis: row width mismatch");
    std::vector<Elem> r = v;
    std::vector<Elem> t(rref_.size() + 1, field_.zero());
    t.back() = field_.one();
    for (size_t i = 0; i < rref_.size(); ++i) {
        const Elem& c = r[static_cast<size_t>(pivots_[i])];
        if (field_.is_zero(c)) continue;
        Elem cc = c;  // r[pivot] mutates during the sweep
        for (Index j = 0; j < width_; ++j) {
            if (field_.is_zero(rref_[i][static_cast<size_t>(j)])) continue;
            r[static_cast<size_t>(j)] =
                field_.sub(r[static_cast<size_t>(j)], field_.mul(cc, rref_[i][static_cast<size_t>(j)]));
        }
        for (size_t j = 0; j < transform_[i].size(); ++j)
            t[j] = field_.sub(t[j], field_.mul(cc, transform_[i][j]));
    }
    Index piv = -1;
    for (Index j = 0; j < width_; ++j)
        if (!field_.is_zero(r[static_cast<size_t>(j)])) {
            piv = j;
            break;
        }
    if (piv < 0) return false;

    Elem inv = field_.div(field_.one(), r[static_cast<size_t>(piv)]);
    for (auto& x : r)
        if (!field_.is_zero(x)) x = field_.mul(x, inv);
    for (auto& x : t) x = field_.mul(x, inv);

    // Back-eliminate the new pivot from the existing rows.
    for (size_t i = 0; i < rref_.size(); ++i) {
        const Elem c = rref_[i][static_cast<size_t>(piv)];
        if (field_.is_zero(c)) continue;
        for (Index j = 0; j < width_; ++j)
            rref_[i][static_cast<size_t>(j)] = field_.sub(
                rref_[i][static_cast<size_t>(j)], field_.mul(c, r[static_cast<size_t>(j)]));
        transform_[i].resize(t.size(), field_.zero());
        for (size_t j = 0; j < t.size(); ++j)
            transform_[i][j] = field_.sub(transform_[i][j], field_.mul(c, t[j]));
    }
    for (auto& tr : transform_) tr.resize(t.size(), field_.zero());
    rref_.push_back(std::move(r));
    transform_.push_back(std::move(t));
    pivots_.push_back(piv);
    return true;
}

template <class F>
std::vector<typename RowBasis<F>::Elem> RowBasis<F>::reduce(const std::vector<Elem>& v) const {
    if (static_cast<Index>(v.size()) != width_)
        throw std::invalid_argument("RowBasis: row width mismatch");
    std::vector<Elem> r = v;
    for (size_t i = 0; i < rref_.size(); ++i) {
        const Elem c = r[static_cast<size_t>(pivots_[i])];
        if (field_.is_zero(c)) continue;
        for (Index j = 0; j < width_; ++j) {
            if (field_.is_zero(rref_[i][static_cast<size_t>(j)])) continue;
            r[static_cast<size_t>(j)] =
                field_.sub(r[static_cast<size_t>(j)], field_.mul(c, rref_[i][static_cast<size_t>(j)]));
        }
    }
    return r;
}

template <class F>
bool RowBasis<F>::contains(const std::vector<Elem>& v) const {
    std::vector<Elem> r = reduce(v);
    for (const auto& x : r)
        if (!field_.is_zero(x)) return false;
    return true;
}

template <class F>
std::optional<std::vector<typename RowBasis<F>::Elem>> RowBasis<F>::coords(
    const std::vector<Elem>& v) const {
    if (!contains(v)) return std::nullopt;
    // In RREF coordinates, c_i = v[pivot_i]; map back through the transform.
    std::vector<Elem> out(rref_.size(), field_.zero());
    for (size_t i = 0; i < rref_.size(); ++i) {
        const Elem& c = v[static_cast<size_t>(pivots_[i])];
        if (field_.is_zero(c)) continue;
        for (size_t j = 0; j < transform_[i].size(); ++j)
            out[j] = field_.add(out[j], field_.mul(c, transform_[i][j]));
    }
    return out;
}

template <class F>
void write_syzmat(std::ostream& os, const SparseMatrix<F>& m) {
    F f = m.field();
    os << "SYZMAT v1 " << m.rows() << " " << m.cols() << " " << m.field_spec().str() << "\n";
    for (const auto& e : m.entries())
        os << e.row << " " << e.col << " " << f.to_string(e.value) << "\n";
}

SyzmatHeader read_syzmat_header(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("syzmat: empty stream");
    std::istringstream hs(line);
    std::string magic, version, fieldtok;
    SyzmatHeader h;
    hs >> magic >> version >> h.rows >> h.cols >> fieldtok;
    if (magic != "SYZMAT" || version != "v1" || hs.fail())
        throw std::runtime_error("syzmat: bad header '" + line + "'");
    h.field = FieldSpec::parse(fieldtok);
    return h;
}

template <class F>
SparseMatrix<F> read_syzmat(std::istream& is, F field) {
    SyzmatHeader h = read_syzmat_header(is);
    if (h.field != field.spec())
        throw std::runtime_error("syzmat: field mismatch, file has " + h.field.str() +
                                 ", expected " + field.spec().str());
    MatrixBuilder<F> mb(field, h.rows, h.cols);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Index r, c;
        std::string val;
        ls >> r >> c >> val;
        if (ls.fail()) throw std::runtime_error("syzmat: bad triplet line '" + line + "'");
        mb.add(r, c, field.from_string(val));
    }
    return mb.build();
}

template <class F>
SparseMatrix<F> convert(const SparseMatrix<RationalField>& m, F field) {
    MatrixBuilder<F> mb(field, m.rows(), m.cols());
    RationalField q;
    for (const auto& e : m.entries()) mb.add(e.row, e.col, field.from_string(q.to_string(e.value)));
    return mb.build();
}

template <>
SparseMatrix<RationalField> convert(const SparseMatrix<RationalField>& m, RationalField) {
    return m;
}

template RankReport rank(const SparseMatrix<RationalField>&);
template RankReport rank(const SparseMatrix<PrimeField>&);
template SparseMatrix<RationalField> kernel_basis(const SparseMatrix<RationalField>&);
template SparseMatrix<PrimeField> kernel_basis(const SparseMatrix<PrimeField>&);
template class RowBasis<RationalField>;
template class RowBasis<PrimeField>;
template void write_syzmat(std::ostream&, const SparseMatrix<RationalField>&);
template void write_syzmat(std::ostream&, const SparseMatrix<PrimeField>&);
template SparseMatrix<RationalField> read_syzmat(std::istream&, RationalField);
template SparseMatrix<PrimeField> read_syzmat(std::istream&, PrimeField);
template SparseMatrix<PrimeField> convert(const SparseMatrix<RationalField>&, PrimeField);

}  // namespace syzygy
