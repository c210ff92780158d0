#pragma once

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "syzygy/sparse.hpp"

namespace syzygy {

// Monomial basis s^{a-i} t^i u^{b-j} v^j of the bihomogeneous forms of
// bidegree (a, b); index = i*(b+1) + j.
struct BigradedBasis {
    int a = 0, b = 0;
    Index dim() const { return static_cast<Index>(a + 1) * (b + 1); }
    Index index(int i, int j) const { return static_cast<Index>(i) * (b + 1) + j; }
    std::pair<int, int> decode(Index n) const {
        return {static_cast<int>(n / (b + 1)), static_cast<int>(n % (b + 1))};
    }
};

// The g+1 forms nu_k = (g-k) s^{g-k-1} t^k u + k s^{g-k} t^{k-1} v of
// bidegree (g-1, 1) parameterizing the tangent surface.
struct ParamForms {
    int genus = 0;
    BigradedBasis basis;  // bidegree (g-1, 1)
    std::vector<std::vector<std::pair<Index, long>>> forms;  // forms[k]: (monomial, coeff)
};

ParamForms build_nu(int g);

// Weakly increasing tuples of {0..nvars-1} of the given degree, lex
// ordered: the canonical monomial basis of S_deg in nvars variables.
struct MonomialBasis {
    int nvars = 0, deg = 0;
    std::vector<std::vector<int>> mons;

    MonomialBasis() = default;
    MonomialBasis(int nvars, int deg);
    Index dim() const { return static_cast<Index>(mons.size()); }
    Index index(const std::vector<int>& m) const;
};

// A quadratic form in Z_0..Z_{nvars-1}: integer coefficients on
// monomials Z_i Z_j, i <= j.
struct Quadric {
    int nvars = 0;
    std::vector<std::tuple<int, int, long>> terms;
    std::string str() const;
};

// Finitely many graded pieces with exact multiplication matrices for a
// fixed set of linear forms. Pieces may come with an ambient coordinate
// representation (basis = ambient_dim x dim inclusion); Koszul-space
// callers use amb_act to keep differentials sparse.
template <class F>
struct GradedModule {
    explicit GradedModule(F f) : field(std::move(f)) {}

    F field;
    std::string object_tag;
    std::string method;  // "image" / "kernel" for the tangent module, else ""
    int genus = 0;
    int num_gens = 0;

    struct Piece {
        Index dim = 0;
        Index ambient_dim = 0;                    // 0: no ambient representation
        std::optional<SparseMatrix<F>> incl;      // ambient_dim x dim when present
    };

    std::vector<Piece> pieces;                       // q = 0..qmax
    std::vector<std::vector<SparseMatrix<F>>> act;   // act[q][k]: dim_{q+1} x dim_q
    std::vector<std::vector<SparseMatrix<F>>> amb_act;  // ambient_{q+1} x dim_q, may be empty

    int qmax() const { return static_cast<int>(pieces.size()) - 1; }
    Index dim(int q) const { return pieces[static_cast<size_t>(q)].dim; }
    const SparseMatrix<F>& action(int k, int q) const {
        return act[static_cast<size_t>(q)][static_cast<size_t>(k)];
    }
    bool has_ambient_action(int q) const {
        return static_cast<size_t>(q) < amb_act.size() &&
               !amb_act[static_cast<size_t>(q)].empty();
    }
    // Multiplication with target written in ambient coordinates where
    // available (same rank and kernel, sparser columns).
    const SparseMatrix<F>& extended_action(int k, int q) const {
        if (has_ambient_action(q)) return amb_act[static_cast<size_t>(q)][static_cast<size_t>(k)];
        return action(k, q);
    }
};

// Pairwise commutativity of the action matrices, checked exactly.
template <class F>
bool actions_commute(const GradedModule<F>& m);

// Pushforward of the structure sheaf of P1 x P1 under nu: piece q is
// the full space of bidegree (q(g-1), q) forms, acted on by the nu_k.
template <class F>
GradedModule<F> pushforward_module(F field, int g, int qmax);

// Differentials of the curve: piece q realized as single-variable forms
// of degree qg-2 (dimension qg-1), M_0 = 0; action by s^{g-k} t^k.
template <class F>
GradedModule<F> omega_module(F field, int g, int qmax);

// The derivation matrix piece_q(pushforward) -> piece_q(omega): the
// graded-module surjection whose kernel is the tangent surface ring.
template <class F>
SparseMatrix<F> delta_matrix(F field, int g, int q);

enum class TangentMethod { image, kernel };

// Coordinate ring of the tangent developable surface. method=image
// spans products of the nu_k; method=kernel cuts out ker(delta) and
// cross-checks it against the image construction (mismatch throws).
template <class F>
GradedModule<F> tangent_module(F field, int g, int qmax, TangentMethod method);

struct CatalecticantData {
    int genus = 0;
    // 2 x g matrix [[Z_0..Z_{g-1}], [Z_1..Z_g]] is implicit; minors[c] is
    // the 2x2 minor on columns minor_cols[c] = (i, j), i.e.
    // Z_i Z_{j+1} - Z_{i+1} Z_j.
    std::vector<std::array<int, 2>> minor_cols;
    std::vector<Quadric> minors;
};

template <class F>
struct RncModule {
    GradedModule<F> module;
    CatalecticantData catalecticant;
};

// Coordinate ring of the rational normal curve of degree g: piece q is
// the degree-qg forms on P1, acted on by s^{g-k} t^k; also emits the
// catalecticant quadric generators.
template <class F>
RncModule<F> rnc_module(F field, int g, int qmax);

// Quotient of C[Z_0..Z_3] by two quadrics forming a regular sequence
// (verified degreewise against the Koszul-resolution Hilbert function;
// failure throws with the offending degree).
template <class F>
GradedModule<F> ci_module(F field, const std::vector<Quadric>& quadrics, int qmax);

std::vector<Quadric> default_ci_quadrics();

// Full polynomial ring on P^{nvars-1}: the free-module oracle.
template <class F>
GradedModule<F> polynomial_module(F field, int nvars, int qmax);

}  // namespace syzygy
