#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "syzygy/koszul.hpp"
#include "syzygy/spaces.hpp"

namespace syzygy {

// A linear map between SL2 spaces together with its exactly-checked
// equivariance certificate (total nnz of the commutator defects with
// e, f, h; zero for a genuinely equivariant map).
struct EquivariantMap {
    Space domain;
    Space codomain;
    SparseMatrix<RationalField> matrix;
    Index commutator_defect = -1;

    bool equivariant() const { return commutator_defect == 0; }
};

Index equivariance_defect(const Space& dom, const Space& cod,
                          const SparseMatrix<RationalField>& m);

// Jacobian-determinant pairing Wedge(2, S^{i+1}U) -> S^{2i}U,
// f ^ g -> f_x g_y - f_y g_x.
EquivariantMap wahl_map(int i);

struct CoWahlMap {
    EquivariantMap map;            // S^{2i}U -> Wedge(2, S^{i+1}U)
    mpq_class section_scalar;      // wahl o co_wahl = c * Id, c != 0
};

// The (multiplicity-one) equivariant section of the Wahl map, built
// from the highest weight vector x^{i+1} ^ x^i y and its f-orbit,
// scaled to integer entries.
CoWahlMap co_wahl_map(int i);

// Wedge^{i+1}S^{g-2}U (x) S^{2i}U -> Wedge^{i+1}S^{g-1}U (x) S^{i+1}U,
// the three-stage composition through the co-Wahl inclusion, the
// summand embedding and the functorial multiplication map.
EquivariantMap gamma_map(int g, int i);

// S^{2i}U (x) S^{g-i-2}(S^{i+1}U) -> S^{i+1}U (x) S^{g-i-1}(S^{i+1}U),
// the Koszul differential pulled back along co-Wahl.
EquivariantMap gamma_prime_map(int g, int i);

namespace detail {
// Stage compositions from an explicit co-Wahl matrix; used to verify
// that kernels do not depend on the co-Wahl normalization scalar.
SparseMatrix<RationalField> gamma_from_cowahl(int g, int i,
                                              const SparseMatrix<RationalField>& cowahl);
SparseMatrix<RationalField> gamma_prime_from_cowahl(int g, int i,
                                                    const SparseMatrix<RationalField>& cowahl);
// Wedge(2,V) (x) S^qV -> V (x) S^{q+1}V, (v^w)(x)h -> v(x)wh - w(x)vh.
SparseMatrix<RationalField> koszul_differential(Index dim_v, int q);
}  // namespace detail

template <class F>
Index kernel_dim(const SparseMatrix<RationalField>& m, F field) {
    auto mm = convert(m, field);
    return mm.cols() - rank(mm).rank;
}

// A subspace A of Wedge(2, V) presented by a basis of 2-forms.
struct KoszulModuleInstance {
    Index dim_v = 0;
    std::vector<std::vector<std::tuple<int, int, mpq_class>>> a_basis;  // (k, l, c), k < l
    std::string tag;
};

KoszulModuleInstance cowahl_instance(int i);       // V = S^{i+1}U, A = co-Wahl image
KoszulModuleInstance full_wedge_instance(int n);   // A = Wedge(2, V)
KoszulModuleInstance span01_instance(int n);       // A = span{v_0 ^ v_1}

struct KoszulModuleReport {
    Index dim_v = 0, dim_a = 0;
    int q = 0;
    Index dom_dim = 0, mid_dim = 0, top_dim = 0;  // A(x)S^qV, V(x)S^{q+1}V, S^{q+2}V
    Index rank_left = 0, rank_right = 0, ker_mid = 0;
    bool right_surjective = false;
    Index w_dim = 0;  // dim W_q(V, A) = ker_mid - rank_left
};

template <class F>
KoszulModuleReport koszul_module_dim(const KoszulModuleInstance& inst, int q, F field);

struct ProbeReport {
    bool found = false;
    long trials_run = 0;
    std::uint64_t prime = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> alpha, beta;  // witness when found
};

// One-sided randomized search for a decomposable 2-form annihilating A:
// sample alpha over F_p, solve the linear system for beta, accept when
// alpha ^ beta != 0.
ProbeReport decomposable_probe(const KoszulModuleInstance& inst, long trials, std::uint64_t seed);

struct EulerReport {
    int g = 0, n = 0;
    long long term_a = 0, term_mid = 0, term_top = 0;
    long long identity_value = 0;  // term_a - term_mid + term_top
    bool identity_zero = false;
    bool vanishing_checked = false;
    Index w_dim = -1;
    bool right_surjective = false;
    // dim K_{n-2,1} concluded from the four-term exact sequence
    long long concluded_kernel_dim = -1;
    bool pass = false;
};

// Odd-genus dimension finisher: the alternating binomial identity plus
// the Koszul-module vanishing and right surjectivity that upgrade it to
// dim K_{n-2,1}(tangent ring) = 0.
EulerReport euler_finisher(int g, bool run_vanishing = true);

struct FolkRow {
    int i = 0;
    Index direct = -1;           // dim K_{i,1} of the tangent ring
    Index ker_gamma = -1;
    Index ker_gamma_prime = -1;
    bool agree = false;
};

struct FolkReport {
    int genus = 0;
    FieldSpec field;
    std::uint64_t seed = 0;
    std::vector<FolkRow> rows;   // i = 1..floor(g/2)
    bool all_agree = false;
    bool top_vanishes = false;   // the i = floor(g/2) entry is (0,0,0)
    int np_p = 0;                // floor((g-3)/2)
    bool np_checked = false;
    bool np_holds = false;
    std::optional<std::array<long, 3>> np_witness;
    bool pass = false;
    double seconds = 0.0;
};

// Runs the three independent computations of dim K_{i,1} of the tangent
// ring for 1 <= i <= floor(g/2), checks their agreement and the required
// top vanishing, and optionally the full (N_p) table at p = floor((g-3)/2).
template <class F>
FolkReport folk_verify(F field, int g, bool run_np, int np_qmax = 2, int threads = 1);

nlohmann::json folk_json(const FolkReport& rep, bool with_timings);

}  // namespace syzygy
