#include "catch_amalgamated.hpp"

#include "algsh/algebra.hpp"
#include "algsh/varieties.hpp"

using namespace algsh;

namespace {

FiniteAlgebra xor_group() {
    FiniteAlgebra g;
    g.name = "z2xz2";
    g.carrier = 4;
    g.sig = Signature{{{"mul", 2}}};
    std::vector<Symbol> t;
    for (Symbol a = 0; a < 4; ++a)
        for (Symbol b = 0; b < 4; ++b) t.push_back(a ^ b);
    g.tables = {t};
    return g;
}

Partition norm(Partition p) {
    normalize_partition(p);
    return p;
}

// every partition tested directly against the closure property
std::vector<Partition> oracle_congruences(const FiniteAlgebra& a) {
    std::vector<Partition> found;
    // enumerate restricted growth strings by hand
    std::vector<int> rgs(static_cast<std::size_t>(a.carrier), 0);
    for (;;) {
        if (is_congruence(a, rgs)) found.push_back(norm(rgs));
        int i = a.carrier - 1;
        for (; i >= 1; --i) {
            int maxv = 0;
            for (int j = 0; j < i; ++j) maxv = std::max(maxv, rgs[static_cast<std::size_t>(j)]);
            if (rgs[static_cast<std::size_t>(i)] <= maxv) {
                ++rgs[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < a.carrier; ++j) rgs[static_cast<std::size_t>(j)] = 0;
                break;
            }
            rgs[static_cast<std::size_t>(i)] = 0;
        }
        if (i == 0) break;
    }
    return found;
}

} // namespace

TEST_CASE("congruence lattice of small algebras matches the direct enumeration") {
    for (const FiniteAlgebra& a :
         {chain_lattice(2), chain_lattice(4), xor_group(), diamond_m3(), pentagon_n5()}) {
        auto fast = congruences(a);
        auto slow = oracle_congruences(a);
        std::sort(fast.begin(), fast.end());
        std::sort(slow.begin(), slow.end());
        INFO(a.name);
        CHECK(fast == slow);
    }
}

TEST_CASE("xor on four elements has five congruences") {
    CHECK(congruences(xor_group()).size() == 5);
}

TEST_CASE("generated congruence is the smallest congruence containing the pair") {
    FiniteAlgebra a = chain_lattice(4);
    Partition c = principal_congruence(a, 1, 2);
    CHECK(is_congruence(a, c));
    CHECK(c[1] == c[2]);
    for (const Partition& d : congruences(a)) {
        if (d[1] != d[2]) continue;
        // c must be below every congruence joining 1 and 2
        CHECK(norm(congruence_meet(c, d)) == norm(c));
    }
}

TEST_CASE("product encode and decode are inverse") {
    std::vector<FiniteAlgebra> fs{chain_lattice(2), chain_lattice(3), chain_lattice(2)};
    for (Symbol s = 0; s < 12; ++s) {
        Word t = product_decode(fs, s);
        CHECK(product_encode(fs, t) == s);
    }
}

TEST_CASE("the four-element boolean lattice splits into two chains") {
    FiniteAlgebra p = direct_product({chain_lattice(2), chain_lattice(2)});
    Decomposition d = direct_decomposition(p);
    REQUIRE(d.factors.size() == 2);
    CHECK(d.factors[0].carrier == 2);
    CHECK(d.factors[1].carrier == 2);
    // iso must be a bijective homomorphism onto the factor product
    FiniteAlgebra q = direct_product(d.factors);
    std::vector<bool> seen(4, false);
    for (Symbol s = 0; s < 4; ++s) {
        Symbol img = product_encode(d.factors, d.iso[static_cast<std::size_t>(s)]);
        CHECK(!seen[static_cast<std::size_t>(img)]);
        seen[static_cast<std::size_t>(img)] = true;
    }
    for (std::size_t op = 0; op < p.sig.size(); ++op)
        for (Symbol a = 0; a < 4; ++a)
            for (Symbol b = 0; b < 4; ++b) {
                Symbol lhs = product_encode(d.factors, d.iso[static_cast<std::size_t>(p.apply(op, {a, b}))]);
                Symbol rhs = q.apply(op, {product_encode(d.factors, d.iso[static_cast<std::size_t>(a)]),
                                          product_encode(d.factors, d.iso[static_cast<std::size_t>(b)])});
                CHECK(lhs == rhs);
            }
}

TEST_CASE("a simple algebra does not decompose") {
    Decomposition d = direct_decomposition(diamond_m3());
    CHECK(d.factors.size() == 1);
}

TEST_CASE("congruence product property holds for chains, fails for xor pairs") {
    auto good = congruence_product_check({chain_lattice(2), chain_lattice(2)});
    CHECK(good.holds);
    CHECK(good.product_congruence_count == 4);

    FiniteAlgebra z2 = cyclic_group(2);
    auto bad = congruence_product_check({z2, z2});
    REQUIRE(!bad.holds);
    // the witness is the diagonal: 00 with 11, 01 with 10
    CHECK(norm(bad.counterexample) == Partition{0, 1, 1, 0});
}

TEST_CASE("quotient by a congruence has one element per block") {
    FiniteAlgebra a = chain_lattice(4);
    Partition c = generated_congruence(a, {{0, 1}});
    FiniteAlgebra q = quotient(a, c);
    CHECK(q.carrier == block_count(c));
    CHECK(check_identities(q, "lattice").pass);
}

TEST_CASE("isomorphism test distinguishes the two three-element lattice orders") {
    CHECK(is_isomorphic(chain_lattice(3), chain_lattice(3)));
    CHECK(!is_isomorphic(chain_lattice(4), direct_product({chain_lattice(2), chain_lattice(2)})));
}

TEST_CASE("variety catalog flags the right identities") {
    CHECK(check_identities(chain_lattice(3), "lattice").pass);
    CHECK(check_identities(chain_lattice(3), "distributive-lattice").pass);
    CHECK(check_identities(diamond_m3(), "modular-lattice").pass);
    CHECK(!check_identities(diamond_m3(), "distributive-lattice").pass);
    CHECK(!check_identities(pentagon_n5(), "modular-lattice").pass);
    CHECK(check_identities(powerset_boolean(2), "boolean-algebra").pass);
    CHECK(check_identities(cyclic_group(5), "group").pass);
    CHECK_THROWS_AS(find_variety("no-such-variety"), type_error);
}
