#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "syzygy/cache.hpp"
#include "syzygy/koszul.hpp"
#include "syzygy/maps.hpp"

namespace py = pybind11;
using namespace syzygy;

namespace {

template <class Fn>
auto with_field(const std::string& field, Fn&& fn) {
    FieldSpec spec = FieldSpec::parse(field);
    if (spec.kind == FieldKind::rationals) return fn(RationalField{});
    return fn(PrimeField(spec.p));
}

py::object json_to_py(const nlohmann::json& j) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(py::str(j.dump()));
}

template <class F>
GradedModule<F> build_object(F field, const std::string& object, int genus, int qpieces,
                             const std::string& method) {
    if (object == "rnc") return rnc_module(field, genus, qpieces).module;
    if (object == "tangent")
        return tangent_module(field, genus, qpieces,
                              method == "kernel" ? TangentMethod::kernel : TangentMethod::image);
    if (object == "pushforward") return pushforward_module(field, genus, qpieces);
    if (object == "omega") return omega_module(field, genus, qpieces);
    if (object == "ci") return ci_module(field, default_ci_quadrics(), qpieces);
    if (object == "polynomial") return polynomial_module(field, genus + 1, qpieces);
    throw std::invalid_argument("unknown object " + object);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact Koszul cohomology of parameterized varieties";

    m.def(
        "betti",
        [](const std::string& object, int genus, const std::string& field, int pmax, int qmax,
           const std::string& method, int threads) {
            return with_field(field, [&](auto f) {
                int pm = pmax >= 0 ? pmax : genus + 1;
                auto mod = build_object(f, object, genus, qmax + 1, method);
                auto t = betti_table(mod, pm, qmax, threads);
                return json_to_py(betti_json(t, false));
            });
        },
        py::arg("object"), py::arg("genus") = 3, py::arg("field") = "rationals",
        py::arg("pmax") = -1, py::arg("qmax") = 2, py::arg("method") = "image",
        py::arg("threads") = 1,
        "Graded Betti table of one of: rnc, tangent, pushforward, omega, ci, polynomial.");

    m.def(
        "koszul_group",
        [](const std::string& object, int genus, int p, int q, const std::string& field,
           const std::string& method) {
            return with_field(field, [&](auto f) {
                auto mod = build_object(f, object, genus, q + 1, method);
                return koszul_group_dim(mod, p, q);
            });
        },
        py::arg("object"), py::arg("genus"), py::arg("p"), py::arg("q"),
        py::arg("field") = "rationals", py::arg("method") = "image",
        "dim K_{p,q} of the named object.");

    m.def(
        "check_np",
        [](const std::string& object, int genus, int p, const std::string& field, int qmax) {
            return with_field(field, [&](auto f) {
                auto mod = build_object(f, object, genus, qmax + 1, "image");
                auto t = betti_table(mod, std::max(p, 1), qmax, 1);
                auto np = check_Np(t, p);
                py::dict d;
                d["p"] = np.requested_p;
                d["holds"] = np.holds;
                d["holds_up_to"] = np.holds_up_to;
                if (np.witness)
                    d["witness"] = py::make_tuple((*np.witness)[0], (*np.witness)[1],
                                                  (*np.witness)[2]);
                else
                    d["witness"] = py::none();
                return d;
            });
        },
        py::arg("object"), py::arg("genus"), py::arg("p"), py::arg("field") = "rationals",
        py::arg("qmax") = 2, "Property (N_p) report for the named object.");

    m.def(
        "folk",
        [](int genus, const std::string& field, bool np, int np_qmax, int threads) {
            return with_field(field, [&](auto f) {
                auto rep = folk_verify(f, genus, np, np_qmax, threads);
                return json_to_py(folk_json(rep, false));
            });
        },
        py::arg("genus"), py::arg("field") = "rationals", py::arg("np") = true,
        py::arg("np_qmax") = 2, py::arg("threads") = 1,
        "Three-route verification of the tangent-surface syzygy vanishing.");

    m.def(
        "hermite",
        [](int a, int b) {
            auto rep = hermite_verify(a, b);
            py::dict d;
            d["a"] = rep.a;
            d["b"] = rep.b;
            d["dim"] = rep.binomial;
            d["dims_equal"] = rep.dims_equal;
            d["chars_equal"] = rep.chars_equal;
            d["pass"] = rep.pass();
            return d;
        },
        py::arg("a"), py::arg("b"),
        "Character-level reciprocity check Wedge(a, S^b U) = S^{b+1-a}(S^a U).");

    m.def("wedge2_decompose", &wedge2_decompose, py::arg("m"),
          "Highest weights of the irreducible decomposition of Wedge(2, S^m U).");

    m.def(
        "wahl_certificate",
        [](int i) {
            auto w = wahl_map(i);
            auto cw = co_wahl_map(i);
            RationalField qq;
            py::dict d;
            d["i"] = i;
            d["wahl_rank"] = rank(w.matrix).rank;
            d["wahl_equivariant"] = w.equivariant();
            d["cowahl_equivariant"] = cw.map.equivariant();
            d["section_scalar"] = qq.to_string(cw.section_scalar);
            d["cowahl_injective"] = kernel_basis(cw.map.matrix).cols() == 0;
            return d;
        },
        py::arg("i"), "Wahl/co-Wahl section and equivariance certificates.");

    m.def(
        "gamma_kernel_dims",
        [](int g, int i, const std::string& field) {
            return with_field(field, [&](auto f) {
                py::dict d;
                d["g"] = g;
                d["i"] = i;
                d["ker_gamma"] = kernel_dim(gamma_map(g, i).matrix, f);
                d["ker_gamma_prime"] = kernel_dim(gamma_prime_map(g, i).matrix, f);
                return d;
            });
        },
        py::arg("g"), py::arg("i"), py::arg("field") = "rationals",
        "Kernel dimensions of the two map-based routes.");

    m.def(
        "koszul_module",
        [](const std::string& builtin, int param, int q, const std::string& field) {
            KoszulModuleInstance inst;
            if (builtin == "cowahl") inst = cowahl_instance(param);
            else if (builtin == "full") inst = full_wedge_instance(param);
            else if (builtin == "span01") inst = span01_instance(param);
            else throw std::invalid_argument("builtin must be cowahl|full|span01");
            return with_field(field, [&](auto f) {
                auto rep = koszul_module_dim(inst, q, f);
                py::dict d;
                d["dim_v"] = rep.dim_v;
                d["dim_a"] = rep.dim_a;
                d["q"] = rep.q;
                d["w_dim"] = rep.w_dim;
                d["right_surjective"] = rep.right_surjective;
                return d;
            });
        },
        py::arg("builtin"), py::arg("param"), py::arg("q"), py::arg("field") = "rationals",
        "W_q dimension for a builtin 2-form subspace instance.");

    m.def(
        "euler_finisher",
        [](int genus) {
            auto rep = euler_finisher(genus);
            py::dict d;
            d["g"] = rep.g;
            d["n"] = rep.n;
            d["identity_value"] = rep.identity_value;
            d["w_dim"] = rep.w_dim;
            d["right_surjective"] = rep.right_surjective;
            d["concluded_kernel_dim"] = rep.concluded_kernel_dim;
            d["pass"] = rep.pass;
            return d;
        },
        py::arg("genus"), "Odd-genus dimension finisher report.");

    m.def(
        "rank",
        [](Index rows, Index cols,
           const std::vector<std::tuple<Index, Index, std::string>>& triplets,
           const std::string& field) {
            return with_field(field, [&](auto f) {
                MatrixBuilder<decltype(f)> mb(f, rows, cols);
                for (const auto& [r, c, v] : triplets) mb.add(r, c, f.from_string(v));
                auto rep = syzygy::rank(mb.build());
                py::dict d;
                d["rank"] = rep.rank;
                d["nullity"] = rep.nullity;
                d["field"] = rep.field.str();
                return d;
            });
        },
        py::arg("rows"), py::arg("cols"), py::arg("triplets"), py::arg("field") = "rationals",
        "Exact rank of a sparse matrix given as (row, col, value-string) triplets.");

    m.attr("__version__") = "0.1.0";
}
