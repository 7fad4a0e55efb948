#include "catch_amalgamated.hpp"

#include "algsh/fixtures.hpp"
#include "algsh/recoding.hpp"
#include "algsh/varieties.hpp"

using namespace algsh;

TEST_CASE("cellwise lattice identities hold on the four-symbol shift") {
    auto a = four_symbol::algebra();
    auto verdict = check_subshift_identities(a, find_variety("lattice"));
    CHECK(verdict.pass);
}

TEST_CASE("closed-form meet agrees with the iterated rewriting") {
    // the staged rule must equal "cellwise meet then rewrite to fixpoint" at
    // the center of a window wide enough to absorb boundary effects
    Subshift x = four_symbol::shift();
    auto words = language(x, 9);
    std::size_t step = 0;
    for (const Word& u : words) {
        if (++step % 7 != 1) continue;      // stride sample, still thousands of pairs
        std::size_t inner = 0;
        for (const Word& v : words) {
            if (++inner % 13 != 1) continue;
            Word m(9);
            for (int i = 0; i < 9; ++i)
                m[static_cast<std::size_t>(i)] = four_symbol::lattice().apply(
                    0, {u[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)]});
            Word fix = four_symbol::rewrite_fixpoint(m);
            Word window(14);
            for (int i = 0; i < 7; ++i) {
                window[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i + 1)];
                window[static_cast<std::size_t>(i + 7)] = v[static_cast<std::size_t>(i + 1)];
            }
            CHECK(four_symbol::meet_rule(window) == fix[4]);
        }
    }
}

TEST_CASE("alternating products reach the expected limits") {
    for (int k = 0; k <= 4; ++k) {
        CHECK(four_symbol::t_k(four_symbol::point_x(), k) == four_symbol::expected_tk_x(k));
        CHECK(four_symbol::t_k(four_symbol::point_y(), k) == four_symbol::point_y());
    }
}

TEST_CASE("the four-symbol meet defeats every radius bound") {
    auto cl = affine_block_closure(four_symbol::algebra(), 3);
    CHECK(!cl.stabilized);
    CHECK(!cl.unbounded_witness.empty());
}

TEST_CASE("the quasigroup closure on the full shift is unbounded") {
    auto cl = affine_block_closure(quasigroup_shift(), 4);
    CHECK(!cl.stabilized);
    CHECK(!cl.unbounded_witness.empty());
}

TEST_CASE("groupoid products need full depth") {
    for (int k = 1; k <= 3; ++k) {
        auto rep = bottom_groupoid::depth_fixture(k);
        INFO("k=" << k);
        CHECK(rep.values_match);
        CHECK(rep.depth_refuted);
    }
}

TEST_CASE("cellwise operations recode at radius zero") {
    SubshiftAlgebra a = cellwise_subshift_algebra(Subshift::full_shift(2), chain_lattice(2));
    auto cl = affine_block_closure(a, 2);
    REQUIRE(cl.stabilized);
    RecodedSubshift rc = recode(a, cl);
    CHECK(rc.r == 0);
    CHECK(rc.nclasses == 2);
    // induced tables coincide with the original lattice
    FiniteAlgebra lat = chain_lattice(2);
    for (std::size_t op = 0; op < a.sig.size(); ++op)
        for (const auto& [args, out] : rc.induced_ops[op]) {
            Word orig;
            for (Symbol c : args) orig.push_back(rc.class_rep[static_cast<std::size_t>(c)][0]);
            Symbol expect = lat.apply(op, orig);
            CHECK(rc.class_rep[static_cast<std::size_t>(out)][0] == expect);
        }
}

TEST_CASE("recode refuses an unstabilized closure") {
    auto cl = affine_block_closure(quasigroup_shift(), 2);
    REQUIRE(!cl.stabilized);
    CHECK_THROWS_AS(recode(quasigroup_shift(), cl), precondition_error);
}

TEST_CASE("behavior search grows with depth on the groupoid") {
    FiniteAlgebra g = bottom_groupoid::algebra();
    std::vector<Word> tests{{0, 1, 2}, {1, 2, 2}, {0, 0, 1}};
    std::vector<Word> consts{{0, 0, 0}, {2, 2, 2}, {0, 1, 2}};
    auto d0 = behavior_closure(g, tests, consts, 0);
    auto d2 = behavior_closure(g, tests, consts, 2);
    CHECK(d0.by_depth_cumulative.size() <= d2.by_depth_cumulative.size());
    CHECK(d2.sizes.size() >= d0.sizes.size());
}
