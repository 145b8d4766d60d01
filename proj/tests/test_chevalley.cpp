#include <catch2/catch_amalgamated.hpp>

#include "liekit/chevalley.hpp"
#include "liekit/verify.hpp"

using namespace liekit;

TEST_CASE("classical table magnitudes |N| = p+1") {
    for (const char* ts : {"A2", "A4", "B2", "C3", "G2", "F4", "D4"}) {
        RootSystem rs(SimpleLieType::parse(ts));
        StructureConstants sc(rs);
        INFO(ts);
        for (int a = 0; a < rs.size(); ++a)
            for (int b = 0; b < rs.size(); ++b) {
                if (rs.sum_index(a, b) < 0) continue;
                auto [p, q] = rs.root_string(a, b);
                (void)q;
                CHECK(std::abs(sc.classical_n(a, b)) == p + 1);
            }
    }
}

TEST_CASE("A2 normalized equals classical with |N_{a1,a2}| = 1") {
    RootSystem rs({Family::A, 2});
    StructureConstants sc(rs);
    int i1 = rs.index_of({1, 0}), i2 = rs.index_of({0, 1});
    CHECK(std::abs(sc.classical_n(i1, i2)) == 1);
    CHECK(sc.n(i1, i2) == QuadExt(Rat(sc.classical_n(i1, i2))));
}

TEST_CASE("normalized properties I-IV hold exactly on every pair") {
    for (const char* ts : {"A2", "B2", "C3", "G2", "F4", "D4", "A4"}) {
        RootSystem rs(SimpleLieType::parse(ts));
        StructureConstants sc(rs);
        INFO(ts);
        CHECK(chevalley_property_failures(rs, sc, 200, 42).empty());
    }
}

TEST_CASE("normalized magnitude law N^2 = q(p+1)(a,a)/2") {
    for (const char* ts : {"B2", "G2", "F4", "C3"}) {
        RootSystem rs(SimpleLieType::parse(ts));
        StructureConstants sc(rs);
        INFO(ts);
        for (int a = 0; a < rs.size(); ++a)
            for (int b = 0; b < rs.size(); ++b) {
                if (rs.sum_index(a, b) < 0) continue;
                auto [p, q] = rs.root_string(a, b);
                QuadExt lhs = sc.n(a, b) * sc.n(a, b);
                QuadExt rhs(Rat(q * (p + 1)) * rs.pairing(a, a) / 2);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("Cartan sector: [X_a, X_-a] = t_a and beta(t_a) = (a, beta)") {
    RootSystem rs({Family::G, 2});
    StructureConstants sc(rs);
    for (int a = 0; a < rs.size(); ++a) {
        auto br = sc.bracket(a, rs.negative_of(a));
        // t_a expands over the simple-root Cartan basis with a's coefficients
        const auto& coeffs = rs.root(a);
        size_t expected_terms = 0;
        for (int i = 0; i < rs.rank(); ++i)
            if (coeffs[size_t(i)] != 0) ++expected_terms;
        REQUIRE(br.size() == expected_terms);
        for (const auto& t : br) {
            int i = t.index - rs.size();
            CHECK(t.coeff == QuadExt(Rat(coeffs[size_t(i)])));
        }
        // [t_i, X_b] = (alpha_i, b) X_b
        for (int i = 0; i < rs.rank(); ++i) {
            auto ad = sc.bracket(rs.size() + i, a);
            Rat expect = sc.cartan_eval(i, a);
            if (expect.is_zero()) {
                CHECK(ad.empty());
            } else {
                REQUIRE(ad.size() == 1);
                CHECK(ad[0].index == a);
                CHECK(ad[0].coeff == QuadExt(expect));
            }
        }
    }
}

TEST_CASE("Chevalley involution is an automorphism") {
    // theta(X_a) = -X_{-a}, theta(t) = -t; theta[x,y] = [theta x, theta y]
    for (const char* ts : {"B2", "G2"}) {
        RootSystem rs(SimpleLieType::parse(ts));
        StructureConstants sc(rs);
        INFO(ts);
        int R = rs.size();
        auto theta_index = [&](int x) { return x < R ? rs.negative_of(x) : x; };
        for (int x = 0; x < sc.dim(); ++x)
            for (int y = 0; y < sc.dim(); ++y) {
                // theta[x,y]
                SparseVec<QuadExt> lhs;
                for (const auto& t : sc.bracket(x, y))
                    lhs[theta_index(t.index)] += -t.coeff;
                // [theta x, theta y] with theta introducing one sign per argument
                SparseVec<QuadExt> rhs;
                for (const auto& t : sc.bracket(theta_index(x), theta_index(y)))
                    rhs[t.index] += t.coeff;
                for (auto& [k, v] : lhs) {
                    CHECK(v == rhs[k]);
                    rhs.erase(k);
                }
                for (auto& [k, v] : rhs) CHECK(v.is_zero());
            }
    }
}

TEST_CASE("exact Jacobi identity on all basis triples for small ranks") {
    for (const char* ts : {"A2", "B2", "G2", "A3", "C3"}) {
        RootSystem rs(SimpleLieType::parse(ts));
        StructureConstants sc(rs);
        INFO(ts);
        int dim = sc.dim();
        auto bracket2 = [&](int a, int b, int c) {
            SparseVec<QuadExt> out;
            for (const auto& t : sc.bracket(a, b))
                for (const auto& u : sc.bracket(t.index, c)) out[u.index] += t.coeff * u.coeff;
            return out;
        };
        for (int x = 0; x < dim; ++x)
            for (int y = x; y < dim; ++y)
                for (int z = y; z < dim; ++z) {
                    SparseVec<QuadExt> total = bracket2(x, y, z);
                    axpy(total, bracket2(y, z, x), QuadExt(Rat(1)));
                    axpy(total, bracket2(z, x, y), QuadExt(Rat(1)));
                    bool zero = true;
                    for (const auto& [k, v] : total)
                        if (!v.is_zero()) zero = false;
                    if (!zero) {
                        INFO("triple " << x << "," << y << "," << z);
                        CHECK(zero);
                    }
                }
    }
}

TEST_CASE("seeded Jacobi sampling on E8 runs clean") {
    RootSystem rs({Family::E, 8});
    StructureConstants sc(rs);
    CHECK(chevalley_property_failures(rs, sc, 2000, 12345).empty());
}

TEST_CASE("sign corruption is caught by the property suite") {
    RootSystem rs({Family::B, 2});
    StructureConstants sc(rs);
    sc.corrupt_one_sign();
    CHECK_FALSE(chevalley_property_failures(rs, sc, 200, 7).empty());
}
