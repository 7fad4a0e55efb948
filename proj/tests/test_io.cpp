#include "catch_amalgamated.hpp"

#include <sstream>

#include "algsh/io.hpp"
#include "algsh/varieties.hpp"

using namespace algsh;

namespace {

FiniteAlgebra parse_alg(const std::string& text) {
    std::istringstream in(text);
    return parse_algebra(in);
}

NamedSubshift parse_sub(const std::string& text) {
    std::istringstream in(text);
    return parse_subshift(in);
}

} // namespace

TEST_CASE("algebra files parse with labels, comments, and split rows") {
    FiniteAlgebra a = parse_alg(
        "# two-element chain\n"
        "algebra c2\n"
        "carrier 2\n"
        "elem 0 bot\n"
        "elem 1 top\n"
        "op meet 2\n"
        "bot bot bot top\n"          // rows may be split or joined freely
        "op join 2\n"
        "bot\ntop\ntop\ntop\n");
    CHECK(a.name == "c2");
    CHECK(a.label(0) == "bot");
    CHECK(is_isomorphic(a, chain_lattice(2)));
}

TEST_CASE("malformed algebra files raise input errors") {
    CHECK_THROWS_AS(parse_alg("carrier 2\n"), type_error);
    CHECK_THROWS_AS(parse_alg("algebra a\ncarrier 0\n"), type_error);
    CHECK_THROWS_AS(parse_alg("algebra a\ncarrier 2\nop meet 2\n0 0 0\n"), type_error);
    CHECK_THROWS_AS(parse_alg("algebra a\ncarrier 2\nop meet 1\n0 7\n"), type_error);
    CHECK_THROWS_AS(parse_alg("algebra a\ncarrier 2\nop meet 1\n0 what\n"), type_error);
}

TEST_CASE("subshift files accept forbidden words with labels or indices") {
    NamedSubshift s = parse_sub(
        "subshift nogap\n"
        "alphabet 2\n"
        "sym 0 lo\n"
        "sym 1 hi\n"
        "forbidden\n"
        "hi 1\n");
    CHECK(s.label(1) == "hi");
    CHECK(sofic_equal(s.x, Subshift::from_forbidden(2, {{1, 1}})));
}

TEST_CASE("subshift files accept labeled graphs with free-form vertex names") {
    NamedSubshift s = parse_sub(
        "subshift walk\n"
        "alphabet 2\n"
        "graph\n"
        "edge idle idle 0\n"
        "edge idle busy 1\n"
        "edge busy idle 0\n");
    CHECK(sofic_equal(s.x, Subshift::from_forbidden(2, {{1, 1}})));
}

TEST_CASE("malformed subshift files raise input errors") {
    CHECK_THROWS_AS(parse_sub("subshift s\nalphabet 2\n"), type_error);
    CHECK_THROWS_AS(parse_sub("subshift s\nalphabet 2\nforbidden\n2\n"), type_error);
    CHECK_THROWS_AS(parse_sub("subshift s\nalphabet 2\ngraph\nedge a b\n"), type_error);
    CHECK_THROWS_AS(parse_sub("subshift s\nalphabet 2\nwords\n"), type_error);
}

TEST_CASE("emitted subshifts reparse to an equal shift, deterministically") {
    NamedSubshift s = parse_sub(
        "subshift even\nalphabet 2\nsym 1 one\nforbidden\n0 one 0\n");
    std::string text = emit_subshift(s);
    CHECK(text == emit_subshift(s));
    NamedSubshift back = parse_sub(text);
    CHECK(sofic_equal(back.x, s.x));
}

TEST_CASE("block map files parse and reject duplicates and ragged rows") {
    auto idx = [](const std::string& t) {
        return detail::resolve_symbol(t, 2, {}, "test");
    };
    std::istringstream ok("blockmap maj 1\n0 0 0 -> 0\n0 0 1 -> 0\n");
    ParsedBlockMap p = parse_blockmap(ok, idx, idx);
    CHECK(p.radius == 1);
    CHECK(p.arity == 1);
    CHECK(p.table.at({0, 0, 1}) == 0);

    std::istringstream dup("blockmap f 0\n0 -> 0\n0 -> 1\n");
    CHECK_THROWS_AS(parse_blockmap(dup, idx, idx), type_error);
    std::istringstream ragged("blockmap f 1\n0 0 0 -> 0\n0 0 -> 0\n");
    CHECK_THROWS_AS(parse_blockmap(ragged, idx, idx), type_error);
}

TEST_CASE("partial block map tables violate totality when applied") {
    auto idx = [](const std::string& t) {
        return detail::resolve_symbol(t, 2, {}, "test");
    };
    std::istringstream in("blockmap half 0\n0 -> 1\n");
    ParsedBlockMap p = parse_blockmap(in, idx, idx);
    BlockMap f = table_blockmap(p, 2, 2);
    CHECK(f.rule({0}) == 1);
    CHECK_THROWS_AS(f.rule({1}), precondition_error);
}
