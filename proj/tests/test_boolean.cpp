#include "catch_amalgamated.hpp"

#include <random>

#include "algsh/boolean_analysis.hpp"
#include "algsh/varieties.hpp"

using namespace algsh;

TEST_CASE("the full power-set shift is simple with one atom class per atom or fewer") {
    FiniteAlgebra alg = powerset_boolean(2);
    Subshift x = Subshift::full_shift(4);
    auto cert = simplicity_check(x, alg);
    REQUIRE(cert.ok);
    CHECK(!cert.reps.empty());
    for (const auto& link : cert.linkage) CHECK(link.rep >= 0);
}

TEST_CASE("atom projections match an explicit bitmask oracle") {
    FiniteAlgebra alg = powerset_boolean(3);
    BooleanStructure st = powerset_structure(alg);
    for (int t = 0; t < 3; ++t) {
        BlockMap pi = atom_projection(alg, st, t);
        for (Symbol s = 0; s < 8; ++s)
            CHECK(pi.rule({s}) == ((st.elem_mask[static_cast<std::size_t>(s)] >> t) & 1));
    }
}

TEST_CASE("random simple fixtures pass the simplicity check") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 60; ++trial) {
        const int natoms = 1 + trial % 3;
        BooleanFixture fx = random_simple_boolean(rng, natoms);
        auto cert = simplicity_check(fx.x, fx.alg);
        INFO("trial " << trial << " atoms " << natoms);
        REQUIRE(cert.ok);
        // linked atoms must share the fixture's class
        for (std::size_t t = 0; t < cert.linkage.size(); ++t)
            CHECK(fx.atom_class[t] == fx.atom_class[static_cast<std::size_t>(cert.linkage[t].rep)]);
    }
}

TEST_CASE("normal form is a radius-zero conjugacy respecting the boolean operations") {
    std::mt19937 rng(999);
    for (int trial = 0; trial < 20; ++trial) {
        BooleanFixture fx = random_simple_boolean(rng, 1 + trial % 3);
        auto cert = simplicity_check(fx.x, fx.alg);
        REQUIRE(cert.ok);
        BooleanNormalForm nf = boolean_normal_form(cert, fx.x, fx.alg);
        CHECK(nf.phi.radius == 0);
        CHECK(sofic_equal(apply_blockmap_image(nf.phi, {fx.x}), nf.Y));
        // phi maps a symbol to its atom bitmask restricted to the
        // representatives, so it turns meet, join and complement into the
        // bitwise operations; exact at the symbol level, hence on all words
        const int full = (1 << cert.reps.size()) - 1;
        for (Symbol a = 0; a < fx.alg.carrier; ++a) {
            CHECK(nf.phi.rule({fx.alg.apply(2, {a})}) == (full ^ nf.phi.rule({a})));
            for (Symbol b = 0; b < fx.alg.carrier; ++b) {
                CHECK(nf.phi.rule({fx.alg.apply(0, {a, b})}) ==
                      (nf.phi.rule({a}) & nf.phi.rule({b})));
                CHECK(nf.phi.rule({fx.alg.apply(1, {a, b})}) ==
                      (nf.phi.rule({a}) | nf.phi.rule({b})));
            }
        }
    }
}

TEST_CASE("non-simple inputs are reported, not misclassified") {
    FiniteAlgebra alg = powerset_boolean(1);
    // two symbols but only the all-zero row occurs: projection misses a value
    Subshift x = Subshift::from_forbidden(2, {{1}});
    CHECK_THROWS_AS(simplicity_check(x, alg), precondition_error);
}
