#include <catch2/catch_amalgamated.hpp>

#include "liekit/linalg.hpp"
#include "liekit/scalars.hpp"

using namespace liekit;

TEST_CASE("QuadExt field arithmetic") {
    QuadExt a(Rat(1, 2), Rat(3), 2);     // 1/2 + 3*sqrt(2)
    QuadExt b(Rat(-2), Rat(1, 4), 2);    // -2 + (1/4)*sqrt(2)

    SECTION("sqrt(d) squares to d") {
        QuadExt s(Rat(0), Rat(1), 2);
        CHECK(s * s == QuadExt(Rat(2)));
        QuadExt t(Rat(0), Rat(1), 3);
        CHECK(t * t == QuadExt(Rat(3)));
    }
    SECTION("inverse") {
        CHECK(a * a.inverse() == QuadExt(Rat(1)));
        CHECK(b / b == QuadExt(Rat(1)));
    }
    SECTION("ring identities") {
        CHECK((a + b) * (a - b) == a * a - b * b);
        CHECK(a + (-a) == QuadExt());
    }
    SECTION("rationals are disc-agnostic") {
        QuadExt r(Rat(5));
        CHECK(r * a == a * r);
        CHECK((r + a).disc() == 2);
    }
    SECTION("mixing genuine irrational parts across discs throws") {
        QuadExt s2(Rat(0), Rat(1), 2), s3(Rat(0), Rat(1), 3);
        CHECK_THROWS_AS(s2 + s3, std::invalid_argument);
    }
    SECTION("exact_sqrt") {
        CHECK(exact_sqrt(Rat(9, 4), 3) == QuadExt(Rat(3, 2)));
        CHECK(exact_sqrt(Rat(1, 3), 3) == QuadExt(Rat(0), Rat(1, 3), 3));
        CHECK(exact_sqrt(Rat(1, 2), 2) == QuadExt(Rat(0), Rat(1, 2), 2));
        CHECK_THROWS(exact_sqrt(Rat(5), 2));
    }
    SECTION("to_double") {
        CHECK(QuadExt(Rat(0), Rat(1), 2).to_double() == Catch::Approx(std::sqrt(2.0)));
    }
}

TEST_CASE("Gaussian extension Q(i) is exact") {
    QuadExt i(Rat(0), Rat(1), -1);
    CHECK(i * i == QuadExt(Rat(-1)));
    CHECK(i.inverse() == -i);
    CHECK(i.to_complex() == Cplx(0.0, 1.0));
    CHECK_THROWS_AS(i.to_double(), std::domain_error);

    // the level-4 coefficient family c1 = i, c2 = 0, c3 = -i satisfies the
    // recurrence c_{i+j}(c_i + c_j) = c_i c_j + 1 exactly over Q(i)
    QuadExt one(Rat(1));
    std::vector<QuadExt> c = {QuadExt(), i, QuadExt(Rat(0), Rat(0), -1), -i};
    auto residual = [&](int a, int b) {
        int s = (a + b) % 4;
        return c[size_t(s)] * (c[size_t(a)] + c[size_t(b)]) - (c[size_t(a)] * c[size_t(b)] + one);
    };
    CHECK(residual(1, 1).is_zero());  // c2 * 2c1 = c1^2 + 1 = 0
    CHECK(residual(1, 2).is_zero());
    CHECK(residual(2, 3).is_zero());
    CHECK(residual(3, 3).is_zero());
}

TEST_CASE("exact kernel and rank") {
    auto q = [](long v) { return QuadExt(Rat(v)); };

    SECTION("2x3 kernel") {
        // rows: [1 2 3], [2 4 6] -> rank 1, kernel dim 2
        std::vector<SparseVec<QuadExt>> rows(2);
        rows[0] = {{0, q(1)}, {1, q(2)}, {2, q(3)}};
        rows[1] = {{0, q(2)}, {1, q(4)}, {2, q(6)}};
        CHECK(exact_rank(rows) == 1);
        auto ker = exact_kernel(rows, 3);
        REQUIRE(ker.size() == 2);
        for (const auto& v : ker) {
            QuadExt dot;
            for (const auto& [k, c] : v) dot += rows[0].count(k) ? rows[0][k] * c : QuadExt();
            CHECK(dot.is_zero());
        }
    }
    SECTION("full-rank 2x2 has trivial kernel") {
        std::vector<SparseVec<QuadExt>> rows(2);
        rows[0] = {{0, q(1)}, {1, q(1)}};
        rows[1] = {{0, q(1)}, {1, q(-1)}};
        CHECK(exact_rank(rows) == 2);
        CHECK(exact_kernel(rows, 2).empty());
    }
    SECTION("span membership") {
        std::vector<SparseVec<QuadExt>> cols(2);
        cols[0] = {{0, q(1)}, {1, q(1)}};
        cols[1] = {{1, q(1)}, {2, q(1)}};
        SparseVec<QuadExt> inside = {{0, q(2)}, {1, q(5)}, {2, q(3)}};
        auto coef = exact_in_span(cols, inside);
        REQUIRE(coef.has_value());
        CHECK((*coef)[0] == q(2));
        CHECK((*coef)[1] == q(3));
        SparseVec<QuadExt> outside = {{0, q(1)}};
        CHECK(!exact_in_span(cols, outside).has_value());
    }
}

TEST_CASE("complex rank with dead zone") {
    using M = std::vector<std::vector<Cplx>>;
    SECTION("clean ranks") {
        M a = {{1, 0}, {0, 1}, {1, 1}};
        CHECK(complex_rank(a).rank == 2);
        M b = {{1, 2}, {2, 4}};
        auto r = complex_rank(b);
        CHECK(r.rank == 1);
        CHECK_FALSE(r.indeterminate);
    }
    SECTION("pivot in the dead zone flags indeterminate") {
        M a = {{1, 0}, {0, 1e-8}};
        auto r = complex_rank(a);
        CHECK(r.indeterminate);
    }
    SECTION("tiny pivot below the zone is ignored cleanly") {
        M a = {{1, 0}, {0, 1e-12}};
        auto r = complex_rank(a);
        CHECK(r.rank == 1);
        CHECK_FALSE(r.indeterminate);
    }
}
