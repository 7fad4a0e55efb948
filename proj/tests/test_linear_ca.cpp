#include "catch_amalgamated.hpp"

#include <cstdlib>

#include "algsh/fixtures.hpp"
#include "algsh/linear_ca.hpp"
#include "algsh/varieties.hpp"

using namespace algsh;

namespace {

LinearCA swap_ca() {
    auto c2 = chain_lattice(2);
    std::vector<Symbol> id{0, 1};
    return compose_linear_ca({c2, c2}, {{1, 2, id}, {0, 0, id}}, 1);
}

} // namespace

TEST_CASE("composed rules pass the linearity check, ad-hoc ones can fail") {
    CHECK(check_linear(swap_ca()).linear);

    LinearCA bad;
    bad.alg = chain_lattice(2);
    bad.radius = 1;
    bad.local_rule = [](const Word& w) -> Symbol {
        // majority is a lattice polynomial but NAND of the ends is not monotone
        return 1 - (w[0] & w[2]);
    };
    auto v = check_linear(bad);
    REQUIRE(!v.linear);
    CHECK(!v.violated_op.empty());
}

TEST_CASE("component swap has period two and stabilizes immediately") {
    LinearCA ca = swap_ca();
    auto rep = factorize_rule(ca);
    REQUIRE(rep.ok);
    CHECK(rep.dec.factors.size() == 2);
    auto ls = limit_structure(ca, rep);
    CHECK(ls.period == 2);
    CHECK(ls.stabilization == 0);
    CHECK(ls.verified_stable);
    CHECK(ls.verified_shift);
    CHECK(sofic_equal(ls.limit, Subshift::full_shift(4)));
}

TEST_CASE("a projection rule contracts the limit alphabet") {
    // on the 2x2 lattice keep only the first component: second becomes 0
    auto c2 = chain_lattice(2);
    std::vector<Symbol> id{0, 1};
    std::vector<Symbol> zero{0, 0};
    LinearCA ca = compose_linear_ca({c2, c2}, {{0, 0, id}, {1, 0, zero}}, 0);
    REQUIRE(check_linear(ca).linear);
    auto rep = factorize_rule(ca);
    REQUIRE(rep.ok);
    // limit alphabet only keeps symbols with a zero second component
    CHECK(rep.limit_elems == std::vector<Symbol>{0, 2});
    auto ls = limit_structure(ca, rep);
    CHECK(ls.period == 1);
    CHECK(ls.stabilization >= 1);
}

TEST_CASE("standard fixture battery analyzes cleanly") {
    auto fixtures = standard_lattice_ca_fixtures();
    CHECK(fixtures.size() >= 20);
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        INFO("fixture " << i);
        const auto& ca = fixtures[i];
        REQUIRE(check_linear(ca).linear);
        auto rep = factorize_rule(ca);
        REQUIRE(rep.ok);
        auto ls = limit_structure(ca, rep);
        CHECK(ls.period >= 1);
        CHECK(ls.verified_stable);
        CHECK(ls.verified_shift);
    }
}

TEST_CASE("boolean alphabets reduce to shifted atoms or constants") {
    FiniteAlgebra b4 = powerset_boolean(2);
    // swap the two atom streams, one of them shifted a cell to the right
    BooleanStructure st = powerset_structure(b4);
    LinearCA ca;
    ca.alg = b4;
    ca.radius = 1;
    auto mask_elem = st.mask_elem;
    auto elem_mask = st.elem_mask;
    ca.local_rule = [mask_elem, elem_mask](const Word& w) {
        const int a = (elem_mask[static_cast<std::size_t>(w[2])] >> 1) & 1;
        const int b = elem_mask[static_cast<std::size_t>(w[1])] & 1;
        return mask_elem[static_cast<std::size_t>((b << 1) | a)];
    };
    REQUIRE(check_linear(ca).linear);
    auto reports = boolean_atom_shift_check(ca);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].source_atom == 1);
    CHECK(std::abs(reports[0].shift) == 1);
    CHECK(reports[1].source_atom == 0);
    CHECK(reports[1].shift == 0);
}

TEST_CASE("diagonal congruence blocks the group product analysis") {
    LinearCA ca;
    ca.alg = group_product(cyclic_group(2), cyclic_group(2));
    ca.radius = 0;
    ca.local_rule = [](const Word& w) { return w[0]; };
    REQUIRE(check_linear(ca).linear);
    auto rep = factorize_rule(ca);
    CHECK(!rep.cpp.holds);
    CHECK(!rep.ok);
    CHECK(rep.failure.find("congruence-product") != std::string::npos);
}
