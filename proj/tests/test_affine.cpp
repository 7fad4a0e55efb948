#include "catch_amalgamated.hpp"

#include "algsh/affine.hpp"
#include "algsh/varieties.hpp"

using namespace algsh;

TEST_CASE("affine closure grows monotonically and stabilizes on small lattices") {
    for (const FiniteAlgebra& a : {chain_lattice(2), chain_lattice(3), diamond_m3()}) {
        AffineClosure cl = affine_closure(a, 5);
        INFO(a.name);
        REQUIRE(cl.stabilized_at.has_value());
        for (std::size_t d = 1; d < cl.by_depth.size(); ++d) {
            // graded sets are cumulative
            for (const Word& f : cl.by_depth[d - 1]) CHECK(cl.by_depth[d].count(f));
        }
        // every member has a witness expression
        for (const Word& f : cl.by_depth.back()) CHECK(cl.witness.count(f));
    }
}

TEST_CASE("chain lattices are shallow") {
    // on the two-chain every affine map is already a constant or the identity
    CHECK(shallowness(chain_lattice(2)) == 0);
    // longer chains need clamps, which appear by depth two
    CHECK(shallowness(chain_lattice(3)) <= 2);
    CHECK(shallowness(chain_lattice(6)) <= 2);
}

TEST_CASE("distributive lattices stabilize by depth two") {
    for (const FiniteAlgebra& a : all_distributive_lattices(5)) CHECK(shallowness(a) <= 2);
}

TEST_CASE("boolean algebras and small groups stabilize by depth three") {
    CHECK(shallowness(powerset_boolean(1)) <= 3);
    CHECK(shallowness(powerset_boolean(2)) <= 3);
    CHECK(shallowness(cyclic_group(4)) <= 3);
    CHECK(shallowness(group_product(cyclic_group(2), cyclic_group(2))) <= 3);
}

TEST_CASE("closure members are closed under the oracle one-step expansion") {
    FiniteAlgebra a = powerset_boolean(2);
    AffineClosure cl = affine_closure(a, 6);
    REQUIRE(cl.stabilized_at.has_value());
    const auto& all = cl.by_depth.back();
    for (const Word& g : all) {
        for (std::size_t op = 0; op < a.sig.size(); ++op) {
            const int n = a.sig.arity(op);
            for (int slot = 0; slot < n; ++slot) {
                Word consts(static_cast<std::size_t>(n), 0);
                for (;;) {
                    Word f(static_cast<std::size_t>(a.carrier));
                    for (Symbol s = 0; s < a.carrier; ++s) {
                        Word args = consts;
                        args[static_cast<std::size_t>(slot)] = g[static_cast<std::size_t>(s)];
                        f[static_cast<std::size_t>(s)] = a.apply(op, args);
                    }
                    CHECK(all.count(f));
                    if (!next_tuple(consts, a.carrier)) break;
                }
            }
        }
    }
}
