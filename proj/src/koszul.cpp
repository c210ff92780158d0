#include "syzygy/koszul.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

namespace syzygy {

namespace {

std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur;
    struct Rec {
        int n, k;
        std::vector<std::vector<int>>& out;
        void go(std::vector<int>& c) {
            if (static_cast<int>(c.size()) == k) {
                out.push_back(c);
                return;
            }
            for (int v = c.empty() ? 0 : c.back() + 1; v < n; ++v) {
                c.push_back(v);
                go(c);
                c.pop_back();
            }
        }
    } rec{n, k, out};
    rec.go(cur);
    return out;
}

Index subset_index(const std::vector<std::vector<int>>& list, const std::vector<int>& s) {
    auto it = std::lower_bound(list.begin(), list.end(), s);
    if (it == list.end() || *it != s) throw std::logic_error("koszul: subset not found");
    return static_cast<Index>(it - list.begin());
}

template <class F>
std::vector<std::vector<std::pair<Index, typename F::Elem>>> column_view(const SparseMatrix<F>& m) {
    std::vector<std::vector<std::pair<Index, typename F::Elem>>> cols(static_cast<size_t>(m.cols()));
    for (const auto& e : m.entries()) cols[static_cast<size_t>(e.col)].push_back({e.row, e.value});
    return cols;
}

}  // namespace

template <class F>
KoszulSlice<F> koszul_slice(const GradedModule<F>& m, int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("koszul_slice: need p, q >= 0");
    if (q + 1 > m.qmax())
        throw std::invalid_argument("koszul_slice: extend module: pieces up to degree " +
                                    std::to_string(q + 1) + " required, have qmax=" +
                                    std::to_string(m.qmax()));
    F f = m.field;
    int w = m.num_gens;
    auto sp = subsets(w, p);
    auto sp1 = subsets(w, p + 1);
    auto spm = subsets(w, p - 1);

    // d1: Wedge^{p+1} x M_{q-1} -> Wedge^p x M_q
    SparseMatrix<F> d1(f, 0, 0);
    {
        Index dom_m = q >= 1 ? m.dim(q - 1) : 0;
        MatrixBuilder<F> mb(f, static_cast<Index>(sp.size()) * m.dim(q),
                            static_cast<Index>(sp1.size()) * dom_m);
        if (q >= 1 && !sp1.empty()) {
            std::vector<std::vector<std::vector<std::pair<Index, typename F::Elem>>>> cols;
            for (int k = 0; k < w; ++k) cols.push_back(column_view(m.action(k, q - 1)));
            for (size_t si = 0; si < sp1.size(); ++si) {
                const auto& tup = sp1[si];
                for (size_t j = 0; j < tup.size(); ++j) {
                    int k = tup[j];
                    std::vector<int> sub = tup;
                    sub.erase(sub.begin() + static_cast<long>(j));
                    Index sub_idx = subset_index(sp, sub);
                    bool neg = (j % 2) != 0;
                    for (Index mc = 0; mc < dom_m; ++mc) {
                        for (const auto& [r, v] : cols[static_cast<size_t>(k)][static_cast<size_t>(mc)]) {
                            mb.add(sub_idx * m.dim(q) + r,
                                   static_cast<Index>(si) * dom_m + mc, neg ? f.neg(v) : v);
                        }
                    }
                }
            }
        }
        d1 = mb.build();
    }

    // d2: Wedge^p x M_q -> Wedge^{p-1} x M_{q+1} (ambient target if present)
    SparseMatrix<F> d2(f, 0, 0);
    {
        Index tgt = 0;
        if (p >= 1) tgt = m.extended_action(0, q).rows();
        MatrixBuilder<F> mb(f, static_cast<Index>(spm.size()) * tgt,
                            static_cast<Index>(sp.size()) * m.dim(q));
        if (p >= 1) {
            std::vector<std::vector<std::vector<std::pair<Index, typename F::Elem>>>> cols;
            for (int k = 0; k < w; ++k) cols.push_back(column_view(m.extended_action(k, q)));
            for (size_t si = 0; si < sp.size(); ++si) {
                const auto& tup = sp[si];
                for (size_t j = 0; j < tup.size(); ++j) {
                    int k = tup[j];
                    std::vector<int> sub = tup;
                    sub.erase(sub.begin() + static_cast<long>(j));
                    Index sub_idx = subset_index(spm, sub);
                    bool neg = (j % 2) != 0;
                    for (Index mc = 0; mc < m.dim(q); ++mc) {
                        for (const auto& [r, v] : cols[static_cast<size_t>(k)][static_cast<size_t>(mc)]) {
                            mb.add(sub_idx * tgt + r,
                                   static_cast<Index>(si) * m.dim(q) + mc, neg ? f.neg(v) : v);
                        }
                    }
                }
            }
        }
        d2 = mb.build();
    }
    return KoszulSlice<F>{p, q, std::move(d1), std::move(d2)};
}

template <class F>
Index koszul_group_dim(const GradedModule<F>& m, int p, int q) {
    KoszulSlice<F> s = koszul_slice(m, p, q);
    Index ker_d2 = s.d2.cols() - rank(s.d2).rank;
    Index rk_d1 = rank(s.d1).rank;
    return ker_d2 - rk_d1;
}

template <class F>
BettiTable betti_table(const GradedModule<F>& m, int pmax, int qmax, int threads) {
    if (pmax < 0 || qmax < 0) throw std::invalid_argument("betti_table: bad range");
    auto t0 = std::chrono::steady_clock::now();
    BettiTable t;
    t.object_tag = m.object_tag;
    t.genus = m.genus;
    t.field = m.field.spec();
    t.method = m.method;
    t.pmax = pmax;
    t.qmax = qmax;
    t.grid.assign(static_cast<size_t>(pmax) + 1, std::vector<long>(static_cast<size_t>(qmax) + 1, 0));

    std::vector<std::pair<int, int>> cells;
    for (int p = 0; p <= pmax; ++p)
        for (int q = 0; q <= qmax; ++q) cells.push_back({p, q});

    if (threads <= 1) {
        for (auto [p, q] : cells)
            t.grid[static_cast<size_t>(p)][static_cast<size_t>(q)] = koszul_group_dim(m, p, q);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr err;
        std::mutex err_mu;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (size_t c = static_cast<size_t>(w); c < cells.size(); c += static_cast<size_t>(threads)) {
                        auto [p, q] = cells[c];
                        t.grid[static_cast<size_t>(p)][static_cast<size_t>(q)] = koszul_group_dim(m, p, q);
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }
    t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return t;
}

NpReport check_Np(const BettiTable& t, int p) {
    if (p < 0) throw std::invalid_argument("check_Np: need p >= 0");
    if (p > 0 && (t.pmax < p || t.qmax < 2))
        throw std::invalid_argument("check_Np: table range insufficient (need pmax >= " +
                                    std::to_string(p) + ", qmax >= 2)");
    NpReport rep;
    rep.requested_p = p;
    rep.holds_up_to = 0;
    rep.holds = true;
    for (int i = 1; i <= p; ++i) {
        bool row_ok = true;
        for (int q = 2; q <= t.qmax; ++q) {
            if (t.at(i, q) != 0) {
                row_ok = false;
                if (!rep.witness) rep.witness = {{i, q, t.at(i, q)}};
                break;
            }
        }
        if (!row_ok) {
            rep.holds = false;
            break;
        }
        rep.holds_up_to = i;
    }
    return rep;
}

std::string format_staircase(const BettiTable& t) {
    // rows = q, columns = p, dot for zero, with a leading total row
    std::vector<long> totals(static_cast<size_t>(t.pmax) + 1, 0);
    for (int p = 0; p <= t.pmax; ++p)
        for (int q = 0; q <= t.qmax; ++q) totals[static_cast<size_t>(p)] += t.at(p, q);

    auto cell = [](long v) { return v == 0 ? std::string(".") : std::to_string(v); };
    std::vector<size_t> width(static_cast<size_t>(t.pmax) + 1, 1);
    for (int p = 0; p <= t.pmax; ++p) {
        width[static_cast<size_t>(p)] =
            std::max(width[static_cast<size_t>(p)], std::to_string(p).size());
        width[static_cast<size_t>(p)] =
            std::max(width[static_cast<size_t>(p)], std::to_string(totals[static_cast<size_t>(p)]).size());
        for (int q = 0; q <= t.qmax; ++q)
            width[static_cast<size_t>(p)] =
                std::max(width[static_cast<size_t>(p)], cell(t.at(p, q)).size());
    }

    std::ostringstream os;
    os << "betti(" << t.object_tag;
    if (t.genus > 0) os << ", g=" << t.genus;
    os << ", " << t.field.str();
    if (!t.method.empty()) os << ", " << t.method;
    os << ")\n";
    os << std::setw(7) << " " << ":";
    for (int p = 0; p <= t.pmax; ++p)
        os << " " << std::setw(static_cast<int>(width[static_cast<size_t>(p)])) << p;
    os << "\n";
    os << std::setw(7) << "total" << ":";
    for (int p = 0; p <= t.pmax; ++p)
        os << " " << std::setw(static_cast<int>(width[static_cast<size_t>(p)]))
           << (totals[static_cast<size_t>(p)] == 0 ? "." : std::to_string(totals[static_cast<size_t>(p)]));
    os << "\n";
    for (int q = 0; q <= t.qmax; ++q) {
        os << std::setw(7) << q << ":";
        for (int p = 0; p <= t.pmax; ++p)
            os << " " << std::setw(static_cast<int>(width[static_cast<size_t>(p)])) << cell(t.at(p, q));
        os << "\n";
    }
    return os.str();
}

std::string format_csv(const BettiTable& t) {
    std::ostringstream os;
    os << "q\\p";
    for (int p = 0; p <= t.pmax; ++p) os << "," << p;
    os << "\n";
    for (int q = 0; q <= t.qmax; ++q) {
        os << q;
        for (int p = 0; p <= t.pmax; ++p) os << "," << t.at(p, q);
        os << "\n";
    }
    return os.str();
}

nlohmann::json betti_json(const BettiTable& t, bool with_timings) {
    nlohmann::json j;
    j["schema"] = "syzygy-report/1";
    j["kind"] = "betti";
    j["object"] = t.object_tag;
    j["genus"] = t.genus;
    j["field"] = t.field.str();
    j["method"] = t.method;
    j["pmax"] = t.pmax;
    j["qmax"] = t.qmax;
    j["grid"] = t.grid;  // grid[p][q]
    if (with_timings)
        j["timings"] = {{"seconds", t.seconds}};
    else
        j["timings"] = nullptr;
    return j;
}

template KoszulSlice<RationalField> koszul_slice(const GradedModule<RationalField>&, int, int);
template KoszulSlice<PrimeField> koszul_slice(const GradedModule<PrimeField>&, int, int);
template Index koszul_group_dim(const GradedModule<RationalField>&, int, int);
template Index koszul_group_dim(const GradedModule<PrimeField>&, int, int);
template BettiTable betti_table(const GradedModule<RationalField>&, int, int, int);
template BettiTable betti_table(const GradedModule<PrimeField>&, int, int, int);

}  // namespace syzygy
