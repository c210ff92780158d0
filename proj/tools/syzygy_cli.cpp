// Command-line driver: builds the graded modules, runs the Koszul and
// map-based verifications, and emits tables, reports, meshes and cache
// files. One command per process; exit codes: 0 success, 2 invalid
// configuration, 3 computation failure, 4 verification failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "syzygy/cache.hpp"
#include "syzygy/koszul.hpp"
#include "syzygy/maps.hpp"

using namespace syzygy;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;

struct FieldChoice {
    bool consensus = false;
    int consensus_count = 2;
    FieldSpec spec = FieldSpec::rationals();
};

FieldChoice parse_field(const std::string& s) {
    FieldChoice fc;
    if (s.rfind("consensus:", 0) == 0) {
        fc.consensus = true;
        fc.consensus_count = std::stoi(s.substr(10));
        if (fc.consensus_count < 1 || fc.consensus_count > 8)
            throw CLI::ValidationError("--field", "consensus count must be in 1..8");
        return fc;
    }
    fc.spec = FieldSpec::parse(s);
    return fc;
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open output file " + out_path);
    os << content;
}

int budget_genus(const FieldChoice& fc) {
    return (!fc.consensus && fc.spec.kind == FieldKind::rationals) ? 7 : 10;
}

struct BettiConfig {
    std::string object;
    int genus = 3;
    std::string method = "image";
    FieldChoice field;
    int pmax = -1;
    int qmax = 2;
    int np = -1;
    std::string format = "text";
    std::string out;
    std::uint64_t seed = kDefaultSeed;
    int threads = 1;
    bool timings = false;
    std::string cache_dir;
    bool unsafe_budget = false;
};

template <class F>
GradedModule<F> build_object(F field, const BettiConfig& cfg, int qpieces) {
    if (!cfg.cache_dir.empty()) {
        auto cached = load_module(cfg.cache_dir, field, cfg.object,
                                  cfg.object == "ci" ? 0 : cfg.genus,
                                  cfg.object == "tangent" ? cfg.method : "", qpieces);
        if (cached) return std::move(*cached);
    }
    auto build = [&]() -> GradedModule<F> {
        if (cfg.object == "rnc") return rnc_module(field, cfg.genus, qpieces).module;
        if (cfg.object == "tangent")
            return tangent_module(field, cfg.genus, qpieces,
                                  cfg.method == "kernel" ? TangentMethod::kernel
                                                         : TangentMethod::image);
        if (cfg.object == "pushforward") return pushforward_module(field, cfg.genus, qpieces);
        if (cfg.object == "omega") return omega_module(field, cfg.genus, qpieces);
        if (cfg.object == "ci") return ci_module(field, default_ci_quadrics(), qpieces);
        throw std::invalid_argument("unknown object " + cfg.object);
    };
    GradedModule<F> m = build();
    if (!cfg.cache_dir.empty()) save_module(cfg.cache_dir, m);
    return m;
}

int default_pmax(const BettiConfig& cfg) {
    if (cfg.object == "ci") return 3;
    if (cfg.object == "pushforward" || cfg.object == "omega") return cfg.genus + 1;
    return cfg.genus;
}

template <class F>
BettiTable betti_for_field(F field, const BettiConfig& cfg) {
    int qpieces = cfg.qmax + 1;
    auto m = build_object(field, cfg, qpieces);
    return betti_table(m, cfg.pmax, cfg.qmax, cfg.threads);
}

int cmd_betti(const BettiConfig& cfg_in) {
    BettiConfig cfg = cfg_in;
    if (cfg.pmax < 0) cfg.pmax = default_pmax(cfg);
    auto t0 = std::chrono::steady_clock::now();

    std::vector<BettiTable> tables;
    std::vector<std::uint64_t> primes;
    if (cfg.field.consensus) {
        std::mt19937_64 rng(cfg.seed);
        for (int k = 0; k < cfg.field.consensus_count; ++k) {
            std::uint64_t p = random_prime(rng);
            primes.push_back(p);
            tables.push_back(betti_for_field(PrimeField(p), cfg));
        }
        for (size_t k = 1; k < tables.size(); ++k) {
            if (tables[k].grid != tables[0].grid) {
                std::cerr << "consensus failure: table over prime " << primes[k]
                          << " differs from prime " << primes[0] << "\n";
                return 3;
            }
        }
    } else if (cfg.field.spec.kind == FieldKind::rationals) {
        tables.push_back(betti_for_field(RationalField{}, cfg));
    } else {
        tables.push_back(betti_for_field(PrimeField(cfg.field.spec.p), cfg));
    }
    BettiTable& table = tables[0];
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    table.seconds = seconds;

    std::optional<NpReport> np;
    if (cfg.np >= 0) np = check_Np(table, cfg.np);

    if (cfg.format == "json") {
        json j = betti_json(table, cfg.timings);
        j["seed"] = cfg.seed;
        if (cfg.field.consensus) j["consensus"] = {{"primes", primes}, {"agree", true}};
        if (np) {
            j["np"] = {{"p", np->requested_p},
                       {"holds", np->holds},
                       {"holds_up_to", np->holds_up_to}};
            if (np->witness)
                j["np"]["witness"] = {{"i", (*np->witness)[0]},
                                      {"q", (*np->witness)[1]},
                                      {"value", (*np->witness)[2]}};
        } else {
            j["np"] = nullptr;
        }
        write_output(cfg.out, j.dump(2) + "\n");
    } else if (cfg.format == "csv") {
        write_output(cfg.out, format_csv(table));
    } else {
        std::ostringstream os;
        os << format_staircase(table);
        if (cfg.field.consensus) {
            os << "consensus: " << primes.size() << " prime runs agree (";
            for (size_t k = 0; k < primes.size(); ++k) os << (k ? ", " : "") << primes[k];
            os << ")\n";
        }
        if (np) {
            os << "(N_" << np->requested_p << "): " << (np->holds ? "holds" : "fails");
            if (!np->holds && np->witness)
                os << " at b[" << (*np->witness)[0] << "][" << (*np->witness)[1]
                   << "] = " << (*np->witness)[2];
            os << "\n";
        }
        if (cfg.timings) os << "time: " << table.seconds << " s\n";
        write_output(cfg.out, os.str());
    }
    return 0;
}

struct FolkConfig {
    int genus = 5;
    FieldChoice field;
    bool np = true;
    int np_qmax = 2;
    std::string format = "text";
    std::string out;
    std::uint64_t seed = kDefaultSeed;
    int threads = 1;
    bool timings = false;
    bool unsafe_budget = false;
};

std::string folk_text(const FolkReport& rep, bool timings) {
    std::ostringstream os;
    os << "folk verification: genus " << rep.genus << " over " << rep.field.str() << "\n";
    os << "  i   direct  ker(gamma)  ker(gamma')\n";
    for (const auto& r : rep.rows) {
        os << "  " << r.i << "   " << r.direct << "       " << r.ker_gamma << "           "
           << r.ker_gamma_prime << (r.agree ? "" : "   << disagree") << "\n";
    }
    os << "  top entry (i=" << rep.rows.back().i << ") vanishes: "
       << (rep.top_vanishes ? "yes" : "NO") << "\n";
    if (rep.np_checked) {
        os << "  (N_" << rep.np_p << "): " << (rep.np_holds ? "holds" : "FAILS");
        if (rep.np_witness)
            os << " at b[" << (*rep.np_witness)[0] << "][" << (*rep.np_witness)[1]
               << "] = " << (*rep.np_witness)[2];
        os << "\n";
    }
    os << "verdict: " << (rep.pass ? "pass" : "fail") << "\n";
    if (timings) os << "time: " << rep.seconds << " s\n";
    return os.str();
}

int cmd_folk(const FolkConfig& cfg) {
    std::vector<FolkReport> reports;
    std::vector<std::uint64_t> primes;
    if (cfg.field.consensus) {
        std::mt19937_64 rng(cfg.seed);
        for (int k = 0; k < cfg.field.consensus_count; ++k) {
            std::uint64_t p = random_prime(rng);
            primes.push_back(p);
            reports.push_back(
                folk_verify(PrimeField(p), cfg.genus, cfg.np, cfg.np_qmax, cfg.threads));
            reports.back().seed = cfg.seed;
        }
        for (size_t k = 1; k < reports.size(); ++k) {
            for (size_t r = 0; r < reports[k].rows.size(); ++r) {
                if (reports[k].rows[r].direct != reports[0].rows[r].direct) {
                    std::cerr << "consensus failure at i=" << reports[k].rows[r].i << "\n";
                    return 4;
                }
            }
        }
    } else if (cfg.field.spec.kind == FieldKind::rationals) {
        reports.push_back(folk_verify(RationalField{}, cfg.genus, cfg.np, cfg.np_qmax, cfg.threads));
        reports.back().seed = cfg.seed;
    } else {
        reports.push_back(folk_verify(PrimeField(cfg.field.spec.p), cfg.genus, cfg.np, cfg.np_qmax,
                                      cfg.threads));
        reports.back().seed = cfg.seed;
    }
    const FolkReport& rep = reports[0];

    if (cfg.format == "json") {
        json j = folk_json(rep, cfg.timings);
        if (cfg.field.consensus) j["consensus"] = {{"primes", primes}, {"agree", true}};
        write_output(cfg.out, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << folk_text(rep, cfg.timings);
        if (cfg.field.consensus) {
            os << "consensus: " << primes.size() << " prime runs agree (";
            for (size_t k = 0; k < primes.size(); ++k) os << (k ? ", " : "") << primes[k];
            os << ")\n";
        }
        write_output(cfg.out, os.str());
    }
    return rep.pass ? 0 : 4;
}

int cmd_hermite(int amax, const std::string& format, const std::string& out) {
    std::ostringstream os;
    json rows = json::array();
    bool all_ok = true;
    for (int b = 1; b <= amax; ++b) {
        for (int a = 1; a <= b + 1; ++a) {
            auto rep = hermite_verify(a, b);
            all_ok = all_ok && rep.pass();
            if (format == "json") {
                rows.push_back({{"a", a},
                                {"b", b},
                                {"dim", rep.binomial},
                                {"dims_equal", rep.dims_equal},
                                {"chars_equal", rep.chars_equal}});
            } else if (!rep.pass()) {
                os << "FAIL a=" << a << " b=" << b << " (first mismatch weight "
                   << rep.first_mismatch_weight << ")\n";
            }
        }
    }
    if (format == "json") {
        json j{{"schema", "syzygy-report/1"},
               {"kind", "hermite"},
               {"amax", amax},
               {"pairs", rows},
               {"all_pass", all_ok}};
        write_output(out, j.dump(2) + "\n");
    } else {
        os << "hermite sweep 1 <= a <= b+1 <= " << (amax + 1) << ": "
           << (all_ok ? "all identities pass" : "FAILURES above") << "\n";
        write_output(out, os.str());
    }
    return all_ok ? 0 : 3;
}

int cmd_wahl(int imax, const std::string& format, const std::string& out) {
    std::ostringstream os;
    json rows = json::array();
    bool all_ok = true;
    RationalField qq;
    for (int i = 1; i <= imax; ++i) {
        auto w = wahl_map(i);
        auto cw = co_wahl_map(i);
        bool surj = rank(w.matrix).rank == 2 * i + 1;
        bool inj = kernel_basis(cw.map.matrix).cols() == 0;
        bool ok = surj && inj && w.equivariant() && cw.map.equivariant() &&
                  sgn(cw.section_scalar) != 0;
        all_ok = all_ok && ok;
        if (format == "json") {
            rows.push_back({{"i", i},
                            {"wahl_rank", rank(w.matrix).rank},
                            {"wahl_defect", w.commutator_defect},
                            {"cowahl_defect", cw.map.commutator_defect},
                            {"section_scalar", qq.to_string(cw.section_scalar)},
                            {"cowahl_injective", inj},
                            {"pass", ok}});
        } else {
            os << "i=" << i << ": wahl rank " << rank(w.matrix).rank << "/" << (2 * i + 1)
               << ", defects " << w.commutator_defect << "/" << cw.map.commutator_defect
               << ", section scalar " << qq.to_string(cw.section_scalar)
               << (ok ? "" : "  << FAIL") << "\n";
        }
    }
    if (format == "json") {
        json j{{"schema", "syzygy-report/1"}, {"kind", "wahl"}, {"imax", imax},
               {"rows", rows}, {"all_pass", all_ok}};
        write_output(out, j.dump(2) + "\n");
    } else {
        write_output(out, os.str());
    }
    return all_ok ? 0 : 3;
}

KoszulModuleInstance instance_from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read instance file " + path);
    json j = json::parse(is);
    KoszulModuleInstance inst;
    inst.dim_v = j.at("dimV").get<Index>();
    inst.tag = "file:" + path;
    RationalField qq;
    for (const auto& form : j.at("A")) {
        std::vector<std::tuple<int, int, mpq_class>> terms;
        for (const auto& t : form) {
            int k = t.at(0).get<int>(), l = t.at(1).get<int>();
            mpq_class c = qq.from_string(t.at(2).get<std::string>());
            terms.push_back({k, l, c});
        }
        inst.a_basis.push_back(std::move(terms));
    }
    return inst;
}

int cmd_koszulmodule(const KoszulModuleInstance& inst, int qmax, const FieldChoice& fc,
                     long probe_trials, std::uint64_t seed, const std::string& format,
                     const std::string& out) {
    std::ostringstream os;
    json rows = json::array();
    for (int q = 0; q <= qmax; ++q) {
        KoszulModuleReport rep = fc.spec.kind == FieldKind::rationals
                                     ? koszul_module_dim(inst, q, RationalField{})
                                     : koszul_module_dim(inst, q, PrimeField(fc.spec.p));
        if (format == "json") {
            rows.push_back({{"q", q},
                            {"w_dim", rep.w_dim},
                            {"right_surjective", rep.right_surjective},
                            {"dims", {rep.dom_dim, rep.mid_dim, rep.top_dim}}});
        } else {
            os << "q=" << q << ": dim W_q = " << rep.w_dim << " (right map "
               << (rep.right_surjective ? "surjective" : "NOT surjective") << ")\n";
        }
    }
    std::optional<ProbeReport> probe;
    if (probe_trials > 0) probe = decomposable_probe(inst, probe_trials, seed);
    if (format == "json") {
        json j{{"schema", "syzygy-report/1"},
               {"kind", "koszulmodule"},
               {"instance", inst.tag},
               {"dimV", inst.dim_v},
               {"dimA", inst.a_basis.size()},
               {"rows", rows},
               {"seed", seed}};
        if (probe) {
            j["probe"] = {{"found", probe->found},
                          {"trials", probe->trials_run},
                          {"prime", probe->prime}};
        } else {
            j["probe"] = nullptr;
        }
        write_output(out, j.dump(2) + "\n");
    } else {
        os << "instance " << inst.tag << ": dim V = " << inst.dim_v << ", dim A = "
           << inst.a_basis.size() << ", vanishing threshold q >= "
           << std::max<Index>(0, inst.dim_v - 3) << "\n";
        if (probe) {
            if (probe->found)
                os << "probe: found a decomposable annihilator after " << probe->trials_run
                   << " trials (prime " << probe->prime << ")\n";
            else
                os << "probe: no decomposable annihilator found in " << probe->trials_run
                   << " trials (prime " << probe->prime << ")\n";
        }
        write_output(out, os.str());
    }
    return 0;
}

int cmd_euler(int nmax, int genus, const std::string& format, const std::string& out) {
    std::ostringstream os;
    json rows = json::array();
    bool all_zero = true;
    for (int n = 3; n <= nmax; ++n) {
        long long v = (2LL * n - 3) * binom(2 * n - 4, n - 3) - n * binom(2 * n - 3, n - 2) +
                      binom(2 * n - 2, n - 1);
        all_zero = all_zero && v == 0;
        if (format == "json")
            rows.push_back({{"n", n}, {"g", 2 * n - 3}, {"value", v}});
        else
            os << "n=" << n << " (g=" << 2 * n - 3 << "): identity value " << v << "\n";
    }
    std::optional<EulerReport> fin;
    if (genus > 0) fin = euler_finisher(genus);
    bool ok = all_zero && (!fin || fin->pass);
    if (format == "json") {
        json j{{"schema", "syzygy-report/1"}, {"kind", "euler"}, {"nmax", nmax},
               {"rows", rows}, {"all_zero", all_zero}};
        if (fin) {
            j["finisher"] = {{"g", fin->g},
                             {"n", fin->n},
                             {"identity_value", fin->identity_value},
                             {"w_dim", fin->w_dim},
                             {"right_surjective", fin->right_surjective},
                             {"concluded_kernel_dim", fin->concluded_kernel_dim},
                             {"pass", fin->pass}};
        } else {
            j["finisher"] = nullptr;
        }
        write_output(out, j.dump(2) + "\n");
    } else {
        if (fin) {
            os << "finisher g=" << fin->g << ": W_{n-3} = " << fin->w_dim << ", right map "
               << (fin->right_surjective ? "surjective" : "NOT surjective")
               << ", concluded dim K = " << fin->concluded_kernel_dim << " -> "
               << (fin->pass ? "pass" : "fail") << "\n";
        }
        os << "identity sweep n=3.." << nmax << ": " << (all_zero ? "all zero" : "NONZERO")
           << "\n";
        write_output(out, os.str());
    }
    return ok ? 0 : 3;
}

int cmd_mesh(int genus, int samples, const std::string& out) {
    if (genus != 3) throw CLI::ValidationError("--genus", "mesh export is defined for genus 3");
    if (samples < 2) throw CLI::ValidationError("--samples", "need at least 2 samples per axis");
    ParamForms pf = build_nu(genus);
    std::ostringstream os;
    os << "# tangent developable surface of the twisted cubic, " << samples << "x" << samples
       << " parameter grid\n";
    os.precision(12);
    // curve parameter tau and line parameter omega, both in [-1, 1];
    // the cuspidal edge sits along tau = omega
    for (int a = 0; a < samples; ++a) {
        mpq_class tau(2 * a - (samples - 1), samples - 1);
        tau.canonicalize();
        for (int b = 0; b < samples; ++b) {
            mpq_class omega(2 * b - (samples - 1), samples - 1);
            omega.canonicalize();
            // nu at s=1, t=tau, u=1, v=omega
            std::vector<mpq_class> coord(4, mpq_class(0));
            for (int k = 0; k <= genus; ++k) {
                for (const auto& [m, c] : pf.forms[static_cast<size_t>(k)]) {
                    auto [i, j] = pf.basis.decode(m);
                    mpq_class term(c);
                    for (int e = 0; e < i; ++e) term *= tau;
                    if (j == 1) term *= omega;
                    coord[static_cast<size_t>(k)] += term;
                }
            }
            // dehomogenize by the first coordinate (3 s^2 u = 3 on this chart)
            os << "v " << mpq_class(coord[1] / coord[0]).get_d() << " "
               << mpq_class(coord[2] / coord[0]).get_d() << " "
               << mpq_class(coord[3] / coord[0]).get_d() << "\n";
        }
    }
    for (int a = 0; a + 1 < samples; ++a) {
        for (int b = 0; b + 1 < samples; ++b) {
            int v00 = a * samples + b + 1;
            int v01 = a * samples + b + 2;
            int v10 = (a + 1) * samples + b + 1;
            int v11 = (a + 1) * samples + b + 2;
            os << "f " << v00 << " " << v10 << " " << v11 << "\n";
            os << "f " << v00 << " " << v11 << " " << v01 << "\n";
        }
    }
    write_output(out, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Koszul cohomology of parameterized varieties"};
    app.require_subcommand(1);

    const char* env_cache = std::getenv("SYZYGY_CACHE_DIR");
    std::string default_cache = env_cache ? env_cache : "";

    BettiConfig bc;
    bc.cache_dir = default_cache;
    std::string bc_field = "rationals";
    auto* betti = app.add_subcommand("betti", "graded Betti table of an object");
    betti->add_option("--object", bc.object, "rnc | tangent | pushforward | omega | ci")
        ->required()
        ->check(CLI::IsMember({"rnc", "tangent", "pushforward", "omega", "ci"}));
    betti->add_option("--genus", bc.genus, "genus (ignored for ci)");
    betti->add_option("--method", bc.method, "tangent construction: image | kernel")
        ->check(CLI::IsMember({"image", "kernel"}));
    betti->add_option("--field", bc_field, "rationals | prime:P | consensus:K");
    betti->add_option("--pmax", bc.pmax, "max homological position (default per object)");
    betti->add_option("--qmax", bc.qmax, "max weight, q <= 3")->check(CLI::Range(0, 3));
    betti->add_option("--np", bc.np, "also evaluate Property (N_p) at this p");
    betti->add_option("--format", bc.format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    betti->add_option("--out", bc.out, "output path (default stdout)");
    betti->add_option("--seed", bc.seed, "seed for randomized prime selection");
    betti->add_option("--threads", bc.threads, "parallel cells")->check(CLI::Range(1, 64));
    betti->add_flag("--timings", bc.timings, "include wall time in reports");
    betti->add_option("--cache-dir", bc.cache_dir, "module cache directory (or SYZYGY_CACHE_DIR)");
    betti->add_flag("--unsafe-budget", bc.unsafe_budget, "lift the default genus budget");

    FolkConfig fc;
    std::string fc_field = "rationals";
    auto* folk = app.add_subcommand("folk", "triple-route syzygy verification for the tangent surface");
    folk->add_option("--genus", fc.genus, "genus >= 3")->required();
    folk->add_option("--field", fc_field, "rationals | prime:P | consensus:K");
    folk->add_flag("!--no-np", fc.np, "skip the (N_p) table check");
    folk->add_option("--np-qmax", fc.np_qmax, "weight range for the (N_p) check, 2 or 3")
        ->check(CLI::Range(2, 3));
    folk->add_option("--format", fc.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    folk->add_option("--out", fc.out, "output path");
    folk->add_option("--seed", fc.seed, "seed for randomized prime selection");
    folk->add_option("--threads", fc.threads, "parallel cells")->check(CLI::Range(1, 64));
    folk->add_flag("--timings", fc.timings, "include wall time in reports");
    folk->add_flag("--unsafe-budget", fc.unsafe_budget, "lift the default genus budget");

    int hermite_amax = 12;
    std::string hermite_format = "text", hermite_out;
    auto* hermite = app.add_subcommand("hermite", "character-level reciprocity sweep");
    hermite->add_option("--amax", hermite_amax, "sweep 1 <= a <= b+1 <= amax+1")
        ->check(CLI::Range(1, 16));
    hermite->add_option("--format", hermite_format)->check(CLI::IsMember({"text", "json"}));
    hermite->add_option("--out", hermite_out, "output path");

    int wahl_imax = 6;
    std::string wahl_format = "text", wahl_out;
    auto* wahl = app.add_subcommand("wahl", "section and equivariance certificates");
    wahl->add_option("--imax", wahl_imax)->check(CLI::Range(1, 8));
    wahl->add_option("--format", wahl_format)->check(CLI::IsMember({"text", "json"}));
    wahl->add_option("--out", wahl_out, "output path");

    std::string km_instance, km_format = "text", km_out, km_field = "rationals";
    int km_cowahl = 0, km_full = 0, km_span01 = 0, km_qmax = 2;
    long km_trials = 0;
    std::uint64_t km_seed = kDefaultSeed;
    auto* km = app.add_subcommand("koszulmodule", "W_q dimensions for a 2-form subspace");
    km->add_option("--instance", km_instance, "JSON instance file");
    km->add_option("--cowahl", km_cowahl, "builtin: co-Wahl image at this i");
    km->add_option("--full", km_full, "builtin: the whole wedge square, dim V = n");
    km->add_option("--span01", km_span01, "builtin: a single decomposable form, dim V = n");
    km->add_option("--qmax", km_qmax)->check(CLI::Range(0, 8));
    km->add_option("--field", km_field, "rationals | prime:P");
    km->add_option("--probe-trials", km_trials, "also run the decomposable-annihilator probe");
    km->add_option("--seed", km_seed);
    km->add_option("--format", km_format)->check(CLI::IsMember({"text", "json"}));
    km->add_option("--out", km_out, "output path");

    int euler_nmax = 12, euler_genus = 0;
    std::string euler_format = "text", euler_out;
    auto* euler = app.add_subcommand("euler", "odd-genus dimension identity and finisher");
    euler->add_option("--nmax", euler_nmax)->check(CLI::Range(3, 32));
    euler->add_option("--genus", euler_genus, "odd genus >= 5: run the full finisher");
    euler->add_option("--format", euler_format)->check(CLI::IsMember({"text", "json"}));
    euler->add_option("--out", euler_out, "output path");

    int mesh_genus = 3, mesh_samples = 64;
    std::string mesh_out;
    auto* mesh = app.add_subcommand("mesh", "parametric surface mesh (vertex/face text format)");
    mesh->add_option("--genus", mesh_genus);
    mesh->add_option("--samples", mesh_samples, "grid resolution per axis");
    mesh->add_option("--out", mesh_out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (betti->parsed()) {
            bc.field = parse_field(bc_field);
            if (bc.object != "ci" && bc.genus < 2)
                throw CLI::ValidationError("--genus", "need genus >= 2");
            if (bc.object != "ci" && bc.genus > budget_genus(bc.field) && !bc.unsafe_budget)
                throw CLI::ValidationError(
                    "--genus", "beyond the default budget for this field; pass --unsafe-budget");
            return cmd_betti(bc);
        }
        if (folk->parsed()) {
            fc.field = parse_field(fc_field);
            if (fc.genus < 3) throw CLI::ValidationError("--genus", "need genus >= 3");
            if (fc.genus > budget_genus(fc.field) && !fc.unsafe_budget)
                throw CLI::ValidationError(
                    "--genus", "beyond the default budget for this field; pass --unsafe-budget");
            return cmd_folk(fc);
        }
        if (hermite->parsed()) return cmd_hermite(hermite_amax, hermite_format, hermite_out);
        if (wahl->parsed()) return cmd_wahl(wahl_imax, wahl_format, wahl_out);
        if (km->parsed()) {
            int picked = (!km_instance.empty()) + (km_cowahl > 0) + (km_full > 0) + (km_span01 > 0);
            if (picked != 1)
                throw CLI::ValidationError(
                    "koszulmodule", "pick exactly one of --instance/--cowahl/--full/--span01");
            KoszulModuleInstance inst;
            if (!km_instance.empty()) inst = instance_from_file(km_instance);
            else if (km_cowahl > 0) inst = cowahl_instance(km_cowahl);
            else if (km_full > 0) inst = full_wedge_instance(km_full);
            else inst = span01_instance(km_span01);
            FieldChoice kf = parse_field(km_field);
            if (kf.consensus)
                throw CLI::ValidationError("--field", "koszulmodule does not take consensus fields");
            return cmd_koszulmodule(inst, km_qmax, kf, km_trials, km_seed, km_format, km_out);
        }
        if (euler->parsed()) {
            if (euler_genus != 0 && (euler_genus < 5 || euler_genus % 2 == 0))
                throw CLI::ValidationError("--genus", "finisher needs odd genus >= 5");
            return cmd_euler(euler_nmax, euler_genus, euler_format, euler_out);
        }
        if (mesh->parsed()) return cmd_mesh(mesh_genus, mesh_samples, mesh_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
