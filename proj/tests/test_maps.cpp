#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "syzygy/maps.hpp"

using namespace syzygy;

namespace {
const RationalField QQ;
}

TEST_CASE("wahl map at i = 1: explicit Jacobian pairings") {
    auto w = wahl_map(1);
    // domain basis x^2^xy, x^2^y^2, xy^y^2; codomain x^2, xy, y^2
    REQUIRE(w.matrix.rows() == 3);
    REQUIRE(w.matrix.cols() == 3);
    auto c0 = w.matrix.dense_col(0);
    auto c1 = w.matrix.dense_col(1);
    auto c2 = w.matrix.dense_col(2);
    CHECK(QQ.eq(c0[0], mpq_class(2)));  // x^2 ^ xy  -> 2 x^2
    CHECK(QQ.eq(c1[1], mpq_class(4)));  // x^2 ^ y^2 -> 4 xy
    CHECK(QQ.eq(c2[2], mpq_class(2)));  // xy ^ y^2  -> 2 y^2
    CHECK(w.matrix.nnz() == 3);
}

TEST_CASE("wahl map: equivariant and surjective for i <= 6") {
    for (int i = 1; i <= 6; ++i) {
        auto w = wahl_map(i);
        CHECK(w.commutator_defect == 0);
        CHECK(rank(w.matrix).rank == 2 * i + 1);
    }
}

TEST_CASE("co-wahl: equivariant section with nonzero scalar, injective") {
    for (int i = 1; i <= 6; ++i) {
        auto cw = co_wahl_map(i);
        CHECK(cw.map.commutator_defect == 0);
        CHECK(sgn(cw.section_scalar) != 0);
        CHECK(kernel_basis(cw.map.matrix).cols() == 0);  // section of a surjection
        // recompute the section identity independently
        auto comp = compose(wahl_map(i).matrix, cw.map.matrix);
        CHECK(equal(comp, scale(SparseMatrix<RationalField>::identity(QQ, 2 * i + 1),
                                cw.section_scalar)));
    }
    // i = 1: both sides 3-dimensional, hence an isomorphism
    auto cw1 = co_wahl_map(1);
    CHECK(cw1.map.matrix.rows() == 3);
    CHECK(rank(cw1.map.matrix).rank == 3);
}

TEST_CASE("gamma: shapes, kernels, equivariance") {
    auto g52 = gamma_map(5, 2);
    CHECK(g52.matrix.cols() == 20);  // C(4,3) * 5
    CHECK(g52.matrix.rows() == 40);  // C(5,3) * 4
    CHECK(g52.commutator_defect == 0);
    CHECK(kernel_dim(g52.matrix, QQ) == 0);  // i = [g/2] vanishing at g = 5

    CHECK(kernel_dim(gamma_map(6, 3).matrix, QQ) == 0);
    CHECK(kernel_dim(gamma_map(7, 3).matrix, QQ) == 0);

    for (int g = 4; g <= 6; ++g)
        for (int i = 1; i <= g / 2; ++i) CHECK(gamma_map(g, i).commutator_defect == 0);
}

TEST_CASE("gamma_prime: shapes, kernels, q = 0 edge") {
    auto gp52 = gamma_prime_map(5, 2);
    CHECK(gp52.matrix.cols() == 20);  // 5 * 4
    CHECK(gp52.matrix.rows() == 40);  // 4 * 10
    CHECK(gp52.commutator_defect == 0);
    CHECK(kernel_dim(gp52.matrix, QQ) == 0);

    // q = 0 edge at i = g-2: the differential is pure antisymmetrization
    auto gp42 = gamma_prime_map(4, 2);
    CHECK(kernel_dim(gp42.matrix, QQ) == 0);

    for (int g = 4; g <= 6; ++g)
        for (int i = 1; i <= g / 2; ++i) CHECK(gamma_prime_map(g, i).commutator_defect == 0);
}

TEST_CASE("gamma kernels are invariant under the co-wahl scalar") {
    auto cw = co_wahl_map(2);
    mpq_class c(7, 3);
    auto g0 = detail::gamma_from_cowahl(5, 2, cw.map.matrix);
    auto g1 = detail::gamma_from_cowahl(5, 2, scale(cw.map.matrix, c));
    CHECK(equal(g1, scale(g0, c)));  // co-wahl enters linearly, so kernels agree
    auto p0 = detail::gamma_prime_from_cowahl(5, 2, cw.map.matrix);
    auto p1 = detail::gamma_prime_from_cowahl(5, 2, scale(cw.map.matrix, c));
    CHECK(equal(p1, scale(p0, c)));
}

TEST_CASE("koszul module: full wedge is exact, a decomposable span is not") {
    for (int q = 0; q <= 2; ++q) {
        auto rep = koszul_module_dim(full_wedge_instance(4), q, QQ);
        CHECK(rep.right_surjective);
        CHECK(rep.w_dim == 0);
    }
    auto r0 = koszul_module_dim(span01_instance(4), 0, QQ);
    CHECK(r0.w_dim == 5);
    auto r1 = koszul_module_dim(span01_instance(4), 1, QQ);
    CHECK(r1.w_dim == 16);
}

TEST_CASE("koszul module: co-wahl image vanishes past the threshold") {
    // i = 2: V = S^3 U of dimension 4, A of dimension 5, threshold q >= 1
    auto inst = cowahl_instance(2);
    CHECK(inst.dim_v == 4);
    CHECK(static_cast<int>(inst.a_basis.size()) == 5);
    auto r0 = koszul_module_dim(inst, 0, QQ);
    CHECK(r0.w_dim == 1);  // below threshold: Wedge(2,V)/A is one-dimensional
    for (int q = 1; q <= 2; ++q) {
        auto rep = koszul_module_dim(inst, q, QQ);
        CHECK(rep.right_surjective);
        CHECK(rep.w_dim == 0);
    }
    // i = 3 over a prime field
    PrimeField fp(1073741827);
    auto r3 = koszul_module_dim(cowahl_instance(3), 2, fp);
    CHECK(r3.right_surjective);
    CHECK(r3.w_dim == 0);
}

TEST_CASE("decomposable probe finds the planted annihilator and nothing else") {
    auto hit = decomposable_probe(span01_instance(4), 50, 1);
    CHECK(hit.found);
    CHECK(hit.trials_run <= 50);
    REQUIRE(hit.alpha.size() == 4);

    auto clean = decomposable_probe(full_wedge_instance(4), 200, 2);
    CHECK(!clean.found);
    CHECK(clean.trials_run == 200);

    for (int i = 1; i <= 5; ++i) {
        auto rep = decomposable_probe(cowahl_instance(i), 10000, 3);
        CHECK(!rep.found);
        CHECK(rep.trials_run == 10000);
    }
}

TEST_CASE("euler finisher: binomial identity and the two worked genera") {
    for (int n = 3; n <= 12; ++n) {
        long long v = (2LL * n - 3) * binom(2 * n - 4, n - 3) - n * binom(2 * n - 3, n - 2) +
                      binom(2 * n - 2, n - 1);
        CHECK(v == 0);
    }
    auto e5 = euler_finisher(5);
    CHECK(e5.n == 4);
    CHECK(e5.term_a == 20);
    CHECK(e5.term_mid == 40);
    CHECK(e5.term_top == 20);
    CHECK(e5.identity_zero);
    CHECK(e5.w_dim == 0);
    CHECK(e5.right_surjective);
    CHECK(e5.concluded_kernel_dim == 0);
    CHECK(e5.pass);

    auto e7 = euler_finisher(7);
    CHECK(e7.pass);
    CHECK(e7.concluded_kernel_dim == 0);

    CHECK_THROWS_AS(euler_finisher(6), std::invalid_argument);
}

TEST_CASE("folk verification: small genus over both fields") {
    auto r4 = folk_verify(QQ, 4, true, 2);
    CHECK(r4.pass);
    REQUIRE(r4.rows.size() == 2);
    CHECK(r4.rows[0].direct == 1);  // one quadric through the surface at g = 4
    CHECK(r4.rows[0].agree);
    CHECK(r4.rows[1].direct == 0);
    CHECK(r4.top_vanishes);

    auto r5 = folk_verify(QQ, 5, true, 2);
    CHECK(r5.pass);
    CHECK(r5.np_checked);
    CHECK(r5.np_holds);

    PrimeField fp(1073741827);
    auto rp = folk_verify(fp, 5, false);
    CHECK(rp.pass);
    for (size_t i = 0; i < rp.rows.size(); ++i) {
        CHECK(rp.rows[i].direct == r5.rows[i].direct);
    }

    auto r3 = folk_verify(QQ, 3, true, 2);
    CHECK(r3.pass);
    CHECK(r3.rows.size() == 1);
    CHECK(r3.rows[0].direct == 0);  // no quadrics contain the g = 3 surface
}

TEST_CASE("folk json payload") {
    auto rep = folk_verify(QQ, 4, false);
    auto j = folk_json(rep, false);
    CHECK(j["schema"] == "syzygy-report/1");
    CHECK(j["kind"] == "folk");
    CHECK(j["verdict"] == "pass");
    CHECK(j["rows"].size() == 2);
    CHECK(j["timings"].is_null());
}
