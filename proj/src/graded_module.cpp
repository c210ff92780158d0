#include "syzygy/graded_module.hpp"

#include "syzygy/spaces.hpp"

#include <algorithm>
#include <sstream>

namespace syzygy {

ParamForms build_nu(int g) {
    if (g < 2) throw std::invalid_argument("build_nu: need genus >= 2");
    ParamForms pf;
    pf.genus = g;
    pf.basis = BigradedBasis{g - 1, 1};
    pf.forms.resize(static_cast<size_t>(g) + 1);
    for (int k = 0; k <= g; ++k) {
        auto& form = pf.forms[static_cast<size_t>(k)];
        if (k < g) form.push_back({pf.basis.index(k, 0), g - k});      // (g-k) s^{g-k-1} t^k u
        if (k > 0) form.push_back({pf.basis.index(k - 1, 1), k});      // k s^{g-k} t^{k-1} v
    }
    return pf;
}

MonomialBasis::MonomialBasis(int nvars, int deg) : nvars(nvars), deg(deg) {
    if (nvars < 1 || deg < 0) {
        if (deg < 0) return;  // zero space
        throw std::invalid_argument("MonomialBasis: bad parameters");
    }
    std::vector<int> cur;
    // weakly increasing tuples, lex order
    struct Rec {
        int n, d;
        std::vector<std::vector<int>>& out;
        void go(std::vector<int>& c) {
            if (static_cast<int>(c.size()) == d) {
                out.push_back(c);
                return;
            }
            for (int v = c.empty() ? 0 : c.back(); v < n; ++v) {
                c.push_back(v);
                go(c);
                c.pop_back();
            }
        }
    } rec{nvars, deg, mons};
    rec.go(cur);
}

Index MonomialBasis::index(const std::vector<int>& m) const {
    auto it = std::lower_bound(mons.begin(), mons.end(), m);
    if (it == mons.end() || *it != m) throw std::logic_error("MonomialBasis: monomial not found");
    return static_cast<Index>(it - mons.begin());
}

std::string Quadric::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, j, c] : terms) {
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        long a = c > 0 ? c : -c;
        if (a != 1) os << a << "*";
        if (i == j) os << "Z" << i << "^2";
        else os << "Z" << i << "*Z" << j;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

// Multiplication by a bihomogeneous form, between full bigraded spaces.
template <class F>
SparseMatrix<F> bigraded_mult(F f, const BigradedBasis& dom,
                              const std::vector<std::pair<Index, long>>& form,
                              const BigradedBasis& formb) {
    BigradedBasis cod{dom.a + formb.a, dom.b + formb.b};
    MatrixBuilder<F> mb(f, cod.dim(), dom.dim());
    for (Index n = 0; n < dom.dim(); ++n) {
        auto [i, j] = dom.decode(n);
        for (const auto& [fm, c] : form) {
            auto [fi, fj] = formb.decode(fm);
            mb.add_int(cod.index(i + fi, j + fj), n, c);
        }
    }
    return mb.build();
}

}  // namespace

template <class F>
bool actions_commute(const GradedModule<F>& m) {
    for (int q = 0; q + 2 <= m.qmax(); ++q) {
        for (int k = 0; k < m.num_gens; ++k) {
            for (int l = k + 1; l < m.num_gens; ++l) {
                auto lhs = compose(m.action(l, q + 1), m.action(k, q));
                auto rhs = compose(m.action(k, q + 1), m.action(l, q));
                if (!equal(lhs, rhs)) return false;
            }
        }
    }
    return true;
}

template <class F>
GradedModule<F> pushforward_module(F field, int g, int qmax) {
    if (g < 3 || qmax < 2) throw std::invalid_argument("pushforward_module: need g >= 3, qmax >= 2");
    ParamForms pf = build_nu(g);
    GradedModule<F> m(field);
    m.object_tag = "pushforward";
    m.genus = g;
    m.num_gens = g + 1;
    for (int q = 0; q <= qmax; ++q) {
        typename GradedModule<F>::Piece p;
        p.dim = BigradedBasis{q * (g - 1), q}.dim();
        m.pieces.push_back(std::move(p));
    }
    for (int q = 0; q < qmax; ++q) {
        std::vector<SparseMatrix<F>> row;
        BigradedBasis dom{q * (g - 1), q};
        for (int k = 0; k <= g; ++k)
            row.push_back(bigraded_mult(field, dom, pf.forms[static_cast<size_t>(k)], pf.basis));
        m.act.push_back(std::move(row));
    }
    return m;
}

template <class F>
GradedModule<F> omega_module(F field, int g, int qmax) {
    if (g < 3) throw std::invalid_argument("omega_module: need g >= 3");
    GradedModule<F> m(field);
    m.object_tag = "omega";
    m.genus = g;
    m.num_gens = g + 1;
    for (int q = 0; q <= qmax; ++q) {
        typename GradedModule<F>::Piece p;
        p.dim = q == 0 ? 0 : static_cast<Index>(q) * g - 1;
        m.pieces.push_back(std::move(p));
    }
    for (int q = 0; q < qmax; ++q) {
        std::vector<SparseMatrix<F>> row;
        for (int k = 0; k <= g; ++k) {
            MatrixBuilder<F> mb(field, m.dim(q + 1), m.dim(q));
            // multiplication by s^{g-k} t^k on forms of degree qg-2
            for (Index i = 0; i < m.dim(q); ++i) mb.add(i + k, i, field.one());
            row.push_back(mb.build());
        }
        m.act.push_back(std::move(row));
    }
    return m;
}

template <class F>
SparseMatrix<F> delta_matrix(F field, int g, int q) {
    if (g < 3 || q < 0) throw std::invalid_argument("delta_matrix: bad parameters");
    BigradedBasis dom{q * (g - 1), q};
    Index rows = q == 0 ? 0 : static_cast<Index>(q) * g - 1;
    MatrixBuilder<F> mb(field, rows, dom.dim());
    if (q > 0) {
        // scale by g^{-q} so that the squares with the omega action
        // (which drops the global factor g) commute exactly
        typename F::Elem gq = field.one();
        for (int t = 0; t < q; ++t) gq = field.mul(gq, field.from_int(g));
        for (Index n = 0; n < dom.dim(); ++n) {
            auto [i, j] = dom.decode(n);
            long alpha = dom.a - i;   // s-exponent
            long gamma = dom.b - j;   // u-exponent
            long c = static_cast<long>(g - 1) * gamma - alpha;
            if (c == 0) continue;
            Index target = static_cast<Index>(i) + j - 1;  // t-degree of the image monomial
            mb.add(target, n, field.div(field.from_int(c), gq));
        }
    }
    return mb.build();
}

namespace {

template <class F>
std::vector<typename F::Elem> dense_product(F f, const ParamForms& pf,
                                            const std::vector<int>& ks, const BigradedBasis& amb) {
    std::vector<typename F::Elem> v(static_cast<size_t>(amb.dim()), f.zero());
    // expand the product of the chosen nu's term by term
    struct Term {
        int i = 0, j = 0;
        long c = 1;
    };
    std::vector<Term> terms{Term{}};
    for (int k : ks) {
        std::vector<Term> next;
        for (const Term& t : terms) {
            for (const auto& [fm, c] : pf.forms[static_cast<size_t>(k)]) {
                auto [fi, fj] = pf.basis.decode(fm);
                next.push_back({t.i + fi, t.j + fj, t.c * c});
            }
        }
        terms = std::move(next);
    }
    for (const Term& t : terms) {
        size_t idx = static_cast<size_t>(amb.index(t.i, t.j));
        v[idx] = f.add(v[idx], f.from_int(t.c));
    }
    return v;
}

template <class F>
std::vector<typename F::Elem> dense_mult_by_nu(F f, const ParamForms& pf, int k,
                                               const std::vector<typename F::Elem>& v,
                                               const BigradedBasis& dom, const BigradedBasis& cod) {
    std::vector<typename F::Elem> w(static_cast<size_t>(cod.dim()), f.zero());
    for (Index n = 0; n < dom.dim(); ++n) {
        const auto& x = v[static_cast<size_t>(n)];
        if (f.is_zero(x)) continue;
        auto [i, j] = dom.decode(n);
        for (const auto& [fm, c] : pf.forms[static_cast<size_t>(k)]) {
            auto [fi, fj] = pf.basis.decode(fm);
            size_t t = static_cast<size_t>(cod.index(i + fi, j + fj));
            w[t] = f.add(w[t], f.mul(x, f.from_int(c)));
        }
    }
    return w;
}

// Assemble pieces, act and amb_act from explicit ambient basis vectors.
template <class F>
void assemble_from_bases(GradedModule<F>& m, F f, const ParamForms& pf, int qmax,
                         const std::vector<std::vector<std::vector<typename F::Elem>>>& bases) {
    int g = pf.genus;
    std::vector<RowBasis<F>> rbs;
    for (int q = 0; q <= qmax; ++q) {
        BigradedBasis amb{q * (g - 1), q};
        RowBasis<F> rb(f, amb.dim());
        for (const auto& v : bases[static_cast<size_t>(q)])
            if (!rb.add_row(v))
                throw std::logic_error("tangent_module: supplied basis vectors are dependent");
        typename GradedModule<F>::Piece piece;
        piece.dim = static_cast<Index>(bases[static_cast<size_t>(q)].size());
        piece.ambient_dim = amb.dim();
        MatrixBuilder<F> ib(f, amb.dim(), piece.dim);
        for (size_t c = 0; c < bases[static_cast<size_t>(q)].size(); ++c)
            for (Index r = 0; r < amb.dim(); ++r) {
                const auto& x = bases[static_cast<size_t>(q)][c][static_cast<size_t>(r)];
                if (!f.is_zero(x)) ib.add(r, static_cast<Index>(c), x);
            }
        piece.incl = ib.build();
        m.pieces.push_back(std::move(piece));
        rbs.push_back(std::move(rb));
    }
    for (int q = 0; q < qmax; ++q) {
        BigradedBasis dom{q * (g - 1), q}, cod{(q + 1) * (g - 1), q + 1};
        std::vector<SparseMatrix<F>> arow, brow;
        for (int k = 0; k <= g; ++k) {
            MatrixBuilder<F> amb_mb(f, cod.dim(), m.dim(q));
            MatrixBuilder<F> act_mb(f, m.dim(q + 1), m.dim(q));
            for (Index c = 0; c < m.dim(q); ++c) {
                auto w = dense_mult_by_nu(f, pf, k, bases[static_cast<size_t>(q)][static_cast<size_t>(c)], dom, cod);
                for (Index r = 0; r < cod.dim(); ++r)
                    if (!f.is_zero(w[static_cast<size_t>(r)])) amb_mb.add(r, c, w[static_cast<size_t>(r)]);
                auto coords = rbs[static_cast<size_t>(q) + 1].coords(w);
                if (!coords)
                    throw std::logic_error("tangent_module: product escapes the next graded piece");
                for (size_t r = 0; r < coords->size(); ++r)
                    if (!f.is_zero((*coords)[r])) act_mb.add(static_cast<Index>(r), c, (*coords)[r]);
            }
            brow.push_back(amb_mb.build());
            arow.push_back(act_mb.build());
        }
        m.act.push_back(std::move(arow));
        m.amb_act.push_back(std::move(brow));
    }
}

}  // namespace

template <class F>
GradedModule<F> tangent_module(F field, int g, int qmax, TangentMethod method) {
    if (g < 3) throw std::invalid_argument("tangent_module: need g >= 3");
    ParamForms pf = build_nu(g);
    GradedModule<F> m(field);
    m.object_tag = "tangent";
    m.method = method == TangentMethod::image ? "image" : "kernel";
    m.genus = g;
    m.num_gens = g + 1;

    // Image construction: independent products of q of the nu's.
    std::vector<std::vector<std::vector<typename F::Elem>>> image_bases(static_cast<size_t>(qmax) + 1);
    std::vector<RowBasis<F>> image_rbs;
    for (int q = 0; q <= qmax; ++q) {
        BigradedBasis amb{q * (g - 1), q};
        RowBasis<F> rb(field, amb.dim());
        MonomialBasis tuples(g + 1, q);
        for (const auto& ks : tuples.mons) {
            auto v = dense_product(field, pf, ks, amb);
            if (rb.add_row(v)) image_bases[static_cast<size_t>(q)].push_back(std::move(v));
        }
        image_rbs.push_back(std::move(rb));
    }

    if (method == TangentMethod::image) {
        assemble_from_bases(m, field, pf, qmax, image_bases);
        return m;
    }

    // Kernel construction, cross-checked against the image subspace.
    std::vector<std::vector<std::vector<typename F::Elem>>> kernel_bases(static_cast<size_t>(qmax) + 1);
    for (int q = 0; q <= qmax; ++q) {
        auto ker = kernel_basis(delta_matrix(field, g, q));
        if (ker.cols() != static_cast<Index>(image_bases[static_cast<size_t>(q)].size()))
            throw std::runtime_error("tangent_module: kernel/image dimension mismatch at (g=" +
                                     std::to_string(g) + ", q=" + std::to_string(q) + ")");
        for (Index c = 0; c < ker.cols(); ++c) {
            auto v = ker.dense_col(c);
            if (!image_rbs[static_cast<size_t>(q)].contains(v))
                throw std::runtime_error("tangent_module: kernel vector outside product span at (g=" +
                                         std::to_string(g) + ", q=" + std::to_string(q) + ")");
            kernel_bases[static_cast<size_t>(q)].push_back(std::move(v));
        }
    }
    assemble_from_bases(m, field, pf, qmax, kernel_bases);
    return m;
}

template <class F>
RncModule<F> rnc_module(F field, int g, int qmax) {
    if (g < 2) throw std::invalid_argument("rnc_module: need g >= 2");
    RncModule<F> out{GradedModule<F>(field), {}};
    GradedModule<F>& m = out.module;
    m.object_tag = "rnc";
    m.genus = g;
    m.num_gens = g + 1;
    for (int q = 0; q <= qmax; ++q) {
        typename GradedModule<F>::Piece p;
        p.dim = static_cast<Index>(q) * g + 1;
        m.pieces.push_back(std::move(p));
    }
    for (int q = 0; q < qmax; ++q) {
        std::vector<SparseMatrix<F>> row;
        for (int k = 0; k <= g; ++k) {
            MatrixBuilder<F> mb(field, m.dim(q + 1), m.dim(q));
            for (Index i = 0; i < m.dim(q); ++i) mb.add(i + k, i, field.one());
            row.push_back(mb.build());
        }
        m.act.push_back(std::move(row));
    }
    out.catalecticant.genus = g;
    for (int i = 0; i < g; ++i) {
        for (int j = i + 1; j < g; ++j) {
            Quadric quad;
            quad.nvars = g + 1;
            // 2x2 minor on columns i and j of [[Z_0..Z_{g-1}],[Z_1..Z_g]]
            int a1 = i, b1 = j + 1, a2 = i + 1, b2 = j;
            quad.terms.push_back({std::min(a1, b1), std::max(a1, b1), 1});
            quad.terms.push_back({std::min(a2, b2), std::max(a2, b2), -1});
            out.catalecticant.minor_cols.push_back({i, j});
            out.catalecticant.minors.push_back(std::move(quad));
        }
    }
    return out;
}

std::vector<Quadric> default_ci_quadrics() {
    Quadric q1{4, {{0, 2, 1}, {1, 1, -1}}};  // Z0 Z2 - Z1^2
    Quadric q2{4, {{1, 3, 1}, {2, 2, -1}}};  // Z1 Z3 - Z2^2
    return {q1, q2};
}

template <class F>
GradedModule<F> ci_module(F field, const std::vector<Quadric>& quadrics, int qmax) {
    if (quadrics.size() != 2)
        throw std::invalid_argument("ci_module: expected exactly two quadrics");
    for (const auto& q : quadrics)
        if (q.nvars != 4) throw std::invalid_argument("ci_module: quadrics must live in Z0..Z3");

    GradedModule<F> m(field);
    m.object_tag = "ci";
    m.genus = 0;
    m.num_gens = 4;

    auto dim_s = [](int q) -> Index { return q < 0 ? 0 : binom(q + 3, 3); };

    std::vector<MonomialBasis> mons;
    std::vector<RowBasis<F>> ideal;        // RREF of the ideal piece
    std::vector<std::vector<Index>> std_mons;  // standard monomial indices per degree
    for (int q = 0; q <= qmax + 0; ++q) {
        mons.emplace_back(4, q);
        RowBasis<F> rb(field, mons.back().dim());
        if (q >= 2) {
            MonomialBasis lower(4, q - 2);
            for (const auto& quad : quadrics) {
                for (const auto& mn : lower.mons) {
                    std::vector<typename F::Elem> row(static_cast<size_t>(mons.back().dim()), field.zero());
                    for (const auto& [i, j, c] : quad.terms) {
                        std::vector<int> prod = mn;
                        prod.push_back(i);
                        prod.push_back(j);
                        std::sort(prod.begin(), prod.end());
                        size_t idx = static_cast<size_t>(mons.back().index(prod));
                        row[idx] = field.add(row[idx], field.from_int(c));
                    }
                    rb.add_row(row);
                }
            }
        }
        Index expected_ideal = dim_s(q) - (dim_s(q) - 2 * dim_s(q - 2) + dim_s(q - 4));
        if (rb.dim() != expected_ideal)
            throw std::domain_error("ci_module: quadrics do not form a regular sequence (failing degree " +
                                    std::to_string(q) + ")");
        std::vector<bool> is_pivot(static_cast<size_t>(mons.back().dim()), false);
        for (Index p : rb.pivots()) is_pivot[static_cast<size_t>(p)] = true;
        std::vector<Index> std_idx;
        for (Index i = 0; i < mons.back().dim(); ++i)
            if (!is_pivot[static_cast<size_t>(i)]) std_idx.push_back(i);
        typename GradedModule<F>::Piece piece;
        piece.dim = static_cast<Index>(std_idx.size());
        m.pieces.push_back(std::move(piece));
        ideal.push_back(std::move(rb));
        std_mons.push_back(std::move(std_idx));
    }

    for (int q = 0; q < qmax; ++q) {
        std::vector<SparseMatrix<F>> row;
        const auto& dom_std = std_mons[static_cast<size_t>(q)];
        const auto& cod_std = std_mons[static_cast<size_t>(q) + 1];
        std::vector<Index> cod_pos(static_cast<size_t>(mons[static_cast<size_t>(q) + 1].dim()), -1);
        for (size_t i = 0; i < cod_std.size(); ++i) cod_pos[static_cast<size_t>(cod_std[i])] = static_cast<Index>(i);
        for (int k = 0; k < 4; ++k) {
            MatrixBuilder<F> mb(field, m.dim(q + 1), m.dim(q));
            for (size_t c = 0; c < dom_std.size(); ++c) {
                std::vector<int> mono = mons[static_cast<size_t>(q)].mons[static_cast<size_t>(dom_std[c])];
                mono.push_back(k);
                std::sort(mono.begin(), mono.end());
                Index tgt = mons[static_cast<size_t>(q) + 1].index(mono);
                std::vector<typename F::Elem> e(static_cast<size_t>(mons[static_cast<size_t>(q) + 1].dim()),
                                                field.zero());
                e[static_cast<size_t>(tgt)] = field.one();
                auto nf = ideal[static_cast<size_t>(q) + 1].reduce(e);
                for (Index i = 0; i < static_cast<Index>(nf.size()); ++i) {
                    if (field.is_zero(nf[static_cast<size_t>(i)])) continue;
                    if (cod_pos[static_cast<size_t>(i)] < 0)
                        throw std::logic_error("ci_module: normal form hit a pivot monomial");
                    mb.add(cod_pos[static_cast<size_t>(i)], static_cast<Index>(c), nf[static_cast<size_t>(i)]);
                }
            }
            row.push_back(mb.build());
        }
        m.act.push_back(std::move(row));
    }
    return m;
}

template <class F>
GradedModule<F> polynomial_module(F field, int nvars, int qmax) {
    if (nvars < 1) throw std::invalid_argument("polynomial_module: need nvars >= 1");
    GradedModule<F> m(field);
    m.object_tag = "polynomial";
    m.genus = nvars - 1;
    m.num_gens = nvars;
    std::vector<MonomialBasis> mons;
    for (int q = 0; q <= qmax; ++q) {
        mons.emplace_back(nvars, q);
        typename GradedModule<F>::Piece p;
        p.dim = mons.back().dim();
        m.pieces.push_back(std::move(p));
    }
    for (int q = 0; q < qmax; ++q) {
        std::vector<SparseMatrix<F>> row;
        for (int k = 0; k < nvars; ++k) {
            MatrixBuilder<F> mb(field, m.dim(q + 1), m.dim(q));
            for (size_t c = 0; c < mons[static_cast<size_t>(q)].mons.size(); ++c) {
                std::vector<int> mono = mons[static_cast<size_t>(q)].mons[c];
                mono.push_back(k);
                std::sort(mono.begin(), mono.end());
                mb.add(mons[static_cast<size_t>(q) + 1].index(mono), static_cast<Index>(c), field.one());
            }
            row.push_back(mb.build());
        }
        m.act.push_back(std::move(row));
    }
    return m;
}

template bool actions_commute(const GradedModule<RationalField>&);
template bool actions_commute(const GradedModule<PrimeField>&);
template GradedModule<RationalField> pushforward_module(RationalField, int, int);
template GradedModule<PrimeField> pushforward_module(PrimeField, int, int);
template GradedModule<RationalField> omega_module(RationalField, int, int);
template GradedModule<PrimeField> omega_module(PrimeField, int, int);
template SparseMatrix<RationalField> delta_matrix(RationalField, int, int);
template SparseMatrix<PrimeField> delta_matrix(PrimeField, int, int);
template GradedModule<RationalField> tangent_module(RationalField, int, int, TangentMethod);
template GradedModule<PrimeField> tangent_module(PrimeField, int, int, TangentMethod);
template RncModule<RationalField> rnc_module(RationalField, int, int);
template RncModule<PrimeField> rnc_module(PrimeField, int, int);
template GradedModule<RationalField> ci_module(RationalField, const std::vector<Quadric>&, int);
template GradedModule<PrimeField> ci_module(PrimeField, const std::vector<Quadric>&, int);
template GradedModule<RationalField> polynomial_module(RationalField, int, int);
template GradedModule<PrimeField> polynomial_module(PrimeField, int, int);

}  // namespace syzygy
