#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "syzygy/sparse.hpp"

using namespace syzygy;

namespace {

const RationalField QQ;

template <class F>
SparseMatrix<F> random_matrix(F f, Index rows, Index cols, double density, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> val(-5, 5);
    MatrixBuilder<F> mb(f, rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c)
            if (coin(rng) < density) {
                int v = val(rng);
                if (v == 0) v = 1;
                mb.add(r, c, f.from_int(v));
            }
    return mb.build();
}

}  // namespace

TEST_CASE("rank: zero and catalecticant evaluation") {
    SparseMatrix<RationalField> zero(QQ, 3, 3);
    auto rep = rank(zero);
    CHECK(rep.rank == 0);
    CHECK(rep.nullity == 3);

    // [[z0,z1,z2],[z1,z2,z3]] at (1,1,1,1): both rows become (1,1,1)
    MatrixBuilder<RationalField> mb(QQ, 2, 3);
    for (Index r = 0; r < 2; ++r)
        for (Index c = 0; c < 3; ++c) mb.add_int(r, c, 1);
    CHECK(rank(mb.build()).rank == 1);
}

TEST_CASE("rank: 50x60 product of generic 50x30 and 30x60 over a prime field") {
    PrimeField f(1000003);
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::uint64_t> val(0, 1000002);
    MatrixBuilder<PrimeField> rb(f, 50, 30), sb(f, 30, 60);
    for (Index r = 0; r < 50; ++r)
        for (Index c = 0; c < 30; ++c) rb.add(r, c, val(rng));
    for (Index r = 0; r < 30; ++r)
        for (Index c = 0; c < 60; ++c) sb.add(r, c, val(rng));
    auto R = rb.build(), S = sb.build();
    // construction oracle: full factor ranks force rank(RS) = 30 exactly
    REQUIRE(rank(R).rank == 30);
    REQUIRE(rank(S).rank == 30);
    CHECK(rank(compose(R, S)).rank == 30);
}

TEST_CASE("kernel_basis: injective maps and the 1x2 difference") {
    auto id4 = SparseMatrix<RationalField>::identity(QQ, 4);
    CHECK(kernel_basis(id4).cols() == 0);

    MatrixBuilder<RationalField> mb(QQ, 1, 2);
    mb.add_int(0, 0, 1);
    mb.add_int(0, 1, -1);
    auto k = kernel_basis(mb.build());
    REQUIRE(k.cols() == 1);
    auto v = k.dense_col(0);
    CHECK(QQ.eq(v[0], v[1]));
    CHECK(!QQ.is_zero(v[0]));
}

TEST_CASE("kernel_basis: antisymmetrization of a 2-dim space is injective") {
    // v^w -> v(x)w - w(x)v for dim V = 2: a single column with 2 entries
    MatrixBuilder<RationalField> mb(QQ, 4, 1);
    mb.add_int(1, 0, 1);   // x(x)y
    mb.add_int(2, 0, -1);  // y(x)x
    auto m = mb.build();
    CHECK(rank(m).rank == 1);
    CHECK(kernel_basis(m).cols() == 0);
}

TEST_CASE("compose: identity, zero, and shape mismatch") {
    std::mt19937_64 rng(7);
    auto a = random_matrix(QQ, 8, 5, 0.4, rng);
    CHECK(equal(compose(a, SparseMatrix<RationalField>::identity(QQ, 5)), a));
    SparseMatrix<RationalField> z(QQ, 5, 9);
    CHECK(compose(a, z).is_zero());
    SparseMatrix<RationalField> bad(QQ, 4, 9);
    CHECK_THROWS_WITH_AS(compose(a, bad), doctest::Contains("8x5"), std::invalid_argument);
}

TEST_CASE("compose rejects mismatched prime fields") {
    PrimeField f1(1000003), f2(1000033);
    SparseMatrix<PrimeField> a(f1, 2, 2), b(f2, 2, 2);
    CHECK_THROWS_AS(compose(a, b), std::invalid_argument);
}

TEST_CASE("property: rank equals rank of the transpose") {
    std::mt19937_64 rng(12345);
    PrimeField fp(1073741827);  // prime just above 2^30
    for (int t = 0; t < 12; ++t) {
        auto m = random_matrix(QQ, 15, 22, 0.2, rng);
        CHECK(rank(m).rank == rank(m.transpose()).rank);
        auto mp = random_matrix(fp, 18, 11, 0.3, rng);
        CHECK(rank(mp).rank == rank(mp.transpose()).rank);
    }
}

TEST_CASE("property: rational rank >= prime rank, equal for random large primes") {
    std::mt19937_64 rng(987);
    for (int t = 0; t < 8; ++t) {
        auto m = random_matrix(QQ, 14, 14, 0.25, rng);
        Index rq = rank(m).rank;
        for (int pi = 0; pi < 2; ++pi) {
            PrimeField fp(random_prime(rng));
            Index rp = rank(convert(m, fp)).rank;
            CHECK(rq >= rp);
            CHECK(rq == rp);  // bad primes for such small integer matrices would exceed 2^30
        }
    }
}

TEST_CASE("property: kernel columns are independent and annihilated") {
    std::mt19937_64 rng(555);
    for (int t = 0; t < 10; ++t) {
        auto m = random_matrix(QQ, 12, 20, 0.2, rng);
        auto rep = rank(m);
        auto k = kernel_basis(m);
        CHECK(k.cols() == rep.nullity);
        CHECK(compose(m, k).is_zero());
        CHECK(rank(k).rank == rep.nullity);
    }
}

TEST_CASE("syzmat round-trip is bit-exact") {
    MatrixBuilder<RationalField> mb(QQ, 3, 4);
    mb.add(0, 0, QQ.from_string("2/3"));
    mb.add(1, 2, QQ.from_string("-7"));
    mb.add(2, 3, QQ.from_string("22/7"));
    auto m = mb.build();
    std::ostringstream s1;
    write_syzmat(s1, m);
    std::istringstream in(s1.str());
    auto m2 = read_syzmat(in, QQ);
    std::ostringstream s2;
    write_syzmat(s2, m2);
    CHECK(s1.str() == s2.str());
    CHECK(equal(m, m2));

    PrimeField fp(1000003);
    std::mt19937_64 rng(3);
    auto mp = random_matrix(fp, 6, 6, 0.4, rng);
    std::ostringstream t1;
    write_syzmat(t1, mp);
    std::istringstream tin(t1.str());
    auto mp2 = read_syzmat(tin, fp);
    std::ostringstream t2;
    write_syzmat(t2, mp2);
    CHECK(t1.str() == t2.str());

    std::istringstream bad(t1.str());
    CHECK_THROWS_AS(read_syzmat(bad, PrimeField(1000033)), std::runtime_error);
}

TEST_CASE("RowBasis: membership, coordinates and normal forms") {
    RowBasis<RationalField> rb(QQ, 4);
    std::vector<mpq_class> v1{1, 2, 0, 0}, v2{0, 1, 1, 0}, v3{1, 3, 1, 0};
    CHECK(rb.add_row(v1));
    CHECK(rb.add_row(v2));
    CHECK(!rb.add_row(v3));  // v3 = v1 + v2
    CHECK(rb.dim() == 2);
    CHECK(rb.contains(v3));
    auto c = rb.coords(v3);
    REQUIRE(c.has_value());
    REQUIRE(c->size() == 2);
    CHECK(QQ.eq((*c)[0], mpq_class(1)));
    CHECK(QQ.eq((*c)[1], mpq_class(1)));
    std::vector<mpq_class> w{0, 0, 0, 5};
    CHECK(!rb.contains(w));
    auto nf = rb.reduce(w);
    CHECK(QQ.eq(nf[3], mpq_class(5)));
}

TEST_CASE("RankReport bookkeeping") {
    std::mt19937_64 rng(31);
    auto m = random_matrix(QQ, 9, 13, 0.3, rng);
    auto rep = rank(m);
    CHECK(rep.rank + rep.nullity == m.cols());
    CHECK(rep.rank <= std::min(m.rows(), m.cols()));
    CHECK(rep.field == QQ.spec());
}
