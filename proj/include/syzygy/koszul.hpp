#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "syzygy/graded_module.hpp"

namespace syzygy {

// The three-term window around position (p, q):
//   d1: Wedge^{p+1} W (x) M_{q-1}  ->  Wedge^p W (x) M_q
//   d2: Wedge^p W (x) M_q          ->  Wedge^{p-1} W (x) M_{q+1}
// with W the num_gens linear forms and differential
//   d(w_{k0} ^ ... ^ w_{kp} (x) m) = sum_j (-1)^j w_{...j^...} (x) w_{kj} m.
// d2 targets the ambient coordinates of M_{q+1} when the module carries
// them (same kernel, sparser columns).
template <class F>
struct KoszulSlice {
    int p;
    int q;
    SparseMatrix<F> d1;
    SparseMatrix<F> d2;
};

template <class F>
KoszulSlice<F> koszul_slice(const GradedModule<F>& m, int p, int q);

// dim K_{p,q}(M) = dim ker d2 - rank d1.
template <class F>
Index koszul_group_dim(const GradedModule<F>& m, int p, int q);

struct BettiTable {
    std::string object_tag;
    int genus = 0;
    FieldSpec field;
    std::string method;
    int pmax = 0, qmax = 0;
    std::vector<std::vector<long>> grid;  // grid[p][q] = dim K_{p,q}
    double seconds = 0.0;

    long at(int p, int q) const { return grid[static_cast<size_t>(p)][static_cast<size_t>(q)]; }
};

template <class F>
BettiTable betti_table(const GradedModule<F>& m, int pmax, int qmax, int threads = 1);

struct NpReport {
    int requested_p = 0;
    bool holds = false;
    int holds_up_to = 0;  // largest p' <= requested_p that holds over the table's q range
    // first failing (i, q, b[i][q]) when !holds
    std::optional<std::array<long, 3>> witness;
};

// Property (N_p): b[i][q] = 0 for all 1 <= i <= p and q >= 2, within the
// table's computed range. Throws when the table does not cover (p, q=2).
NpReport check_Np(const BettiTable& t, int p);

std::string format_staircase(const BettiTable& t);
std::string format_csv(const BettiTable& t);
nlohmann::json betti_json(const BettiTable& t, bool with_timings);

}  // namespace syzygy
