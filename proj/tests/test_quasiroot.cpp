#include <catch2/catch_amalgamated.hpp>

#include "liekit/quasiroot.hpp"

using namespace liekit;

TEST_CASE("G2 level-3 partition (enumeration oracle)") {
    RootSystem rs({Family::G, 2});
    StructureConstants sc(rs);
    MlaModel m(rs, sc, 0, 3);  // coefficient-3 node is alpha_1
    // counting alpha_1-coefficients mod 3 over all 12 roots puts the other
    // simple root's pair and +-(3,1), +-(3,2) into Omega_P
    CHECK(m.omega_p().size() == 6);
    CHECK(m.class_members(1).size() == 3);
    CHECK(m.class_members(2).size() == 3);
    CHECK(m.m_basis().size() == 6);
}

TEST_CASE("G2 level-2 partition") {
    RootSystem rs({Family::G, 2});
    StructureConstants sc(rs);
    MlaModel m(rs, sc, 1, 2);  // coefficient-2 node is alpha_2
    CHECK(m.omega_p().size() == 4);
    CHECK(m.class_members(1).size() == 8);
}

TEST_CASE("F4 level-4 partition") {
    RootSystem rs({Family::F, 4});
    StructureConstants sc(rs);
    MlaModel m(rs, sc, 2, 4);
    CHECK(m.omega_p().size() == 14);
    CHECK(m.class_members(1).size() == 8);
    CHECK(m.class_members(2).size() == 18);
    CHECK(m.class_members(3).size() == 8);
}

TEST_CASE("class negation symmetry and completeness") {
    RootSystem rs({Family::F, 4});
    StructureConstants sc(rs);
    MlaModel m(rs, sc, 2, 4);
    int l = m.level();
    size_t total = m.omega_p().size();
    for (int i = 1; i < l; ++i) {
        total += m.class_members(i).size();
        // classes[i] = -classes[l-i] elementwise as sets
        std::set<int> neg;
        for (int r : m.class_members(l - i)) neg.insert(rs.negative_of(r));
        std::set<int> cls(m.class_members(i).begin(), m.class_members(i).end());
        CHECK(neg == cls);
    }
    CHECK(total == size_t(rs.size()));
}

TEST_CASE("level preconditions") {
    RootSystem a2({Family::A, 2});
    StructureConstants sc(a2);
    // highest root of A2 is (1,1): no node admits level 2
    CHECK_THROWS_AS(MlaModel(a2, sc, 0, 2), std::invalid_argument);
    RootSystem g2({Family::G, 2});
    StructureConstants scg(g2);
    CHECK_THROWS_AS(MlaModel(g2, scg, 0, 4), std::invalid_argument);   // coeff 3 < 4
    CHECK_THROWS_AS(MlaModel(g2, scg, 5, 2), std::invalid_argument);   // bad node
}

TEST_CASE("connectivity of quasi-root classes") {
    RootSystem rs({Family::G, 2});
    StructureConstants sc(rs);
    MlaModel m(rs, sc, 0, 3);
    for (int i = 1; i < 3; ++i) CHECK(connectivity_check(m, i));
    // negative control: with the subsystem emptied, a class of size >= 2 falls apart
    CHECK_FALSE(connectivity_check_subsystem(m, 1, {}));
    CHECK_THROWS_AS(connectivity_check(m, 0), std::invalid_argument);
}

TEST_CASE("bracket image spans the whole target class") {
    for (auto [ts, node, l] : {std::tuple{"G2", 0, 3}, std::tuple{"F4", 2, 4}}) {
        RootSystem rs(SimpleLieType::parse(ts));
        StructureConstants sc(rs);
        MlaModel m(rs, sc, node, l);
        INFO(ts);
        for (int i = 1; i < l; ++i)
            for (int j = i; j < l; ++j) {
                if ((i + j) % l == 0) continue;
                CHECK(bracket_image_check(m, i, j));
            }
        CHECK_THROWS_AS(bracket_image_check(m, 1, l - 1), std::invalid_argument);
    }
}

TEST_CASE("invariant subspace dimensions, small models") {
    RootSystem g2({Family::G, 2});
    StructureConstants scg(g2);

    MlaModel m2(g2, scg, 1, 2);
    CHECK(invariant_subspace(m2, 2, -1).empty());    // floor((2-1)/2) = 0
    CHECK(invariant_subspace(m2, 3, +1).empty());    // no weight-zero triples at all

    MlaModel m3(g2, scg, 0, 3);
    auto b2 = invariant_subspace(m3, 2, -1);
    auto b3 = invariant_subspace(m3, 3, +1);
    CHECK(b2.size() == 1);
    CHECK(b3.size() == 1);

    RootSystem f4({Family::F, 4});
    StructureConstants scf(f4);
    MlaModel m4(f4, scf, 2, 4);
    CHECK(invariant_subspace(m4, 2, -1).size() == 1);
    CHECK(invariant_subspace(m4, 3, +1).size() == 1);
}

TEST_CASE("invariant vectors are exactly annihilated and theta-graded") {
    RootSystem f4({Family::F, 4});
    StructureConstants sc(f4);
    MlaModel m(f4, sc, 2, 4);
    for (auto [p, sign] : {std::pair{2, -1}, std::pair{3, +1}, std::pair{4, -1}}) {
        auto basis = invariant_subspace(m, p, sign);
        for (const auto& v : basis) {
            for (int g : m.omega_p()) CHECK(adjoint_action(sc, g, v).is_zero());
            for (int i = 0; i < f4.rank(); ++i)
                CHECK(adjoint_action(sc, f4.size() + i, v).is_zero());
            auto tv = cartan_involution(f4, v);
            Multivector<QuadExt> diff = tv;
            diff.axpy(QuadExt(Rat(-sign)), v);
            CHECK(diff.is_zero());
            for (const auto& [mono, c] : v.terms())
                CHECK(monomial_weight(f4, mono) == RootCoeffs(size_t(f4.rank()), 0));
        }
    }
}

TEST_CASE("degree-2 invariants are spanned by the class sums") {
    RootSystem g2({Family::G, 2});
    StructureConstants sc(g2);
    MlaModel m(g2, sc, 0, 3);
    auto b2 = invariant_subspace(m, 2, -1);
    REQUIRE(b2.size() == 1);
    // closed form: sum over beta in class 1 of X_beta ^ X_{-beta} (twice, once
    // per mirrored class, with matching sign)
    Multivector<QuadExt> closed;
    for (int b : m.class_members(1)) {
        Monomial w{uint16_t(b), uint16_t(g2.negative_of(b))};
        closed.add_word(w, QuadExt(Rat(1)));
    }
    // both span the same line: closed = lambda * b2[0] for some scalar
    const auto& [m0, c0] = *b2[0].terms().begin();
    QuadExt lam = closed.coeff(m0) / c0;
    Multivector<QuadExt> diff = closed;
    diff.axpy(-lam, b2[0]);
    CHECK(diff.is_zero());
    CHECK_FALSE(lam.is_zero());
}

TEST_CASE("no skew invariants on a self-negative class") {
    // l even, i = l/2: (Lambda^2 m_i)^k = 0. With the F4 level-4 model the
    // class-2 block of any degree-2 invariant must vanish.
    RootSystem f4({Family::F, 4});
    StructureConstants sc(f4);
    MlaModel m(f4, sc, 2, 4);
    auto b2 = invariant_subspace(m, 2, -1);
    for (const auto& v : b2)
        for (const auto& [mono, c] : v.terms()) {
            CHECK(m.class_of(mono[0]) != 2);
            CHECK(m.class_of(mono[1]) != 2);
        }
}

TEST_CASE("invariant subspace argument validation") {
    RootSystem g2({Family::G, 2});
    StructureConstants sc(g2);
    MlaModel m(g2, sc, 0, 3);
    CHECK_THROWS_AS(invariant_subspace(m, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(invariant_subspace(m, 2, 0), std::invalid_argument);
}
