#include "catch_amalgamated.hpp"

#include "algsh/lattice_analysis.hpp"
#include "algsh/varieties.hpp"

using namespace algsh;

TEST_CASE("full shifts carry the cellwise lattice structure") {
    for (int n : {2, 3, 4}) {
        auto v = cellwise_lattice_check(Subshift::full_shift(n), chain_lattice(n));
        CHECK(v.yes);
    }
}

TEST_CASE("the no-11 shift escapes under cellwise join") {
    Subshift x = Subshift::from_forbidden(2, {{1, 1}});
    auto v = cellwise_lattice_check(x, chain_lattice(2));
    REQUIRE(!v.yes);
    CHECK(v.failing_op == "join");
    CHECK(v.witness == Word{1, 1});
}

TEST_CASE("extremal points of the binary full shift") {
    auto fam = compute_extremal(Subshift::full_shift(2), chain_lattice(2));
    CHECK(fam.m_points[0] == Epp::uniform(0));
    CHECK(fam.M_points[1] == Epp::uniform(1));
    Epp spike;      // least point with a 1 at the origin
    spike.left_period = {0};
    spike.right_tail = {1};
    spike.right_period = {0};
    spike.canonicalize();
    CHECK(fam.m_points[1] == spike);
    Epp dent;       // greatest point with a 0 at the origin
    dent.left_period = {1};
    dent.right_tail = {0};
    dent.right_period = {1};
    dent.canonicalize();
    CHECK(fam.M_points[0] == dent);
}

TEST_CASE("extremal constraints regenerate the shift they came from") {
    for (const Subshift& x :
         {Subshift::full_shift(2), Subshift::from_forbidden(2, {{0, 1}, {1, 0}})}) {
        auto fam = compute_extremal(x, chain_lattice(2));
        CHECK(sofic_equal(extremal_constraint_shift(fam), x));
    }
}

TEST_CASE("classification of passing binary subshifts") {
    BinaryClass c = classify_binary(Subshift::full_shift(2));
    CHECK(c.tag == BinaryClass::full);

    // constant rows of period 2: forbid 01 and 10 ... that is period 1 blocks;
    // use the even shift of 1-blocks instead: points are periodic with period 2
    Subshift per = subshift_from_class({BinaryClass::periodic, 2, {}});
    BinaryClass cp = classify_binary(per);
    CHECK(cp.tag == BinaryClass::periodic);
    CHECK(cp.n == 2);

    BinaryClass cone{BinaryClass::right_cone, 0, {1}};
    Subshift xr = subshift_from_class(cone);
    BinaryClass cr = classify_binary(xr);
    CHECK(cr.tag == BinaryClass::right_cone);
    CHECK(cr.P == std::vector<int>{1});
}

TEST_CASE("every class regenerates its own subshift") {
    std::vector<BinaryClass> classes{
        {BinaryClass::full, 0, {}},
        {BinaryClass::periodic, 1, {}},
        {BinaryClass::periodic, 3, {}},
        {BinaryClass::right_cone, 0, {1, 2}},
        {BinaryClass::left_cone, 0, {1}},
    };
    for (const auto& c : classes) {
        Subshift x = subshift_from_class(c);
        CHECK(cellwise_lattice_check(x, chain_lattice(2)).yes);
        BinaryClass back = classify_binary(x);
        CHECK(sofic_equal(subshift_from_class(back), x));
    }
}

TEST_CASE("complement-closed passing shifts are full or periodic") {
    CHECK(closed_under_complement(Subshift::full_shift(2)));
    Subshift per = subshift_from_class({BinaryClass::periodic, 2, {}});
    CHECK(closed_under_complement(per));
    Subshift cone = subshift_from_class({BinaryClass::right_cone, 0, {1}});
    CHECK(!closed_under_complement(cone));
}

TEST_CASE("non-lattice input is rejected with a precondition failure") {
    Subshift x = Subshift::from_forbidden(2, {{1, 1}});
    CHECK_THROWS_AS(classify_binary(x), precondition_error);
}

TEST_CASE("position rules without eventual periodicity are refuted") {
    auto powers = [](long long i) -> Symbol {
        if (i <= 0) return 0;
        long long a = i;
        while (a % 2 == 0) a /= 2;
        return a == 1 ? 1 : 0;
    };
    CHECK(!soficity_check_rule(powers, 64).certified);
    auto periodic = [](long long i) -> Symbol { return ((i % 3) + 3) % 3 == 0 ? 1 : 0; };
    CHECK(soficity_check_rule(periodic, 64).certified);
}
