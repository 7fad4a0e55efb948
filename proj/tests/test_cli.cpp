#include "catch_amalgamated.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "algsh/io.hpp"
#include "algsh/subshift.hpp"

using json = nlohmann::json;
using namespace algsh;

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(ALGSH_BIN) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int rc = pclose(p);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::string data(const std::string& file) { return std::string(ALGSH_DATA) + "/" + file; }

// Minimal validator for the published report schema: checks the required
// keys, their types, the command enum, and the digest pattern.
void check_against_schema(const json& rep) {
    std::ifstream in(ALGSH_SCHEMA);
    REQUIRE(in.good());
    json schema = json::parse(in);
    const auto& props = schema.at("properties");
    for (const auto& key : schema.at("required")) REQUIRE(rep.contains(key.get<std::string>()));
    for (auto it = rep.begin(); it != rep.end(); ++it) {
        REQUIRE(props.contains(it.key()));   // additionalProperties: false
        CHECK(it.value().type_name() == props.at(it.key()).at("type").get<std::string>());
    }
    bool command_ok = false;
    for (const auto& c : props.at("command").at("enum"))
        command_ok |= c.get<std::string>() == rep.at("command").get<std::string>();
    CHECK(command_ok);
    for (auto it = rep.at("inputs").begin(); it != rep.at("inputs").end(); ++it) {
        const std::string d = it.value().get<std::string>();
        CHECK(!d.empty());
        CHECK(d.size() <= 16);
        for (char c : d) CHECK(((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')));
    }
}

} // namespace

TEST_CASE("unknown subcommands and flags exit with the input-error code") {
    CHECK(run_cli("frobnicate").status == 2);
    CHECK(run_cli("classify-binary --no-such-flag x").status == 2);
    CHECK(run_cli("classify-binary").status == 2);
    CHECK(run_cli("congruences --algebra /no/such/file").status == 2);
    CHECK(run_cli("check-identities --algebra " + data("chain2.alg") + " --variety nonsense")
              .status == 2);
}

TEST_CASE("precondition violations exit with code three") {
    auto r = run_cli("classify-binary --subshift " + data("golden.txt"));
    CHECK(r.status == 3);
}

TEST_CASE("negative verdicts still exit zero") {
    auto r = run_cli("sofic-check --left " + data("golden.txt") + " --right " +
                     data("full2.sub") + " --report json");
    REQUIRE(r.status == 0);
    json rep = json::parse(r.out);
    CHECK(!rep["verdict"]["left_contains_right"].get<bool>());
    CHECK(rep["witnesses"]["in_right_not_left"] == "1 1");
}

TEST_CASE("json reports validate against the published schema") {
    for (const std::string& args :
         {std::string("check-identities --algebra ") + data("bool2.alg") +
              " --variety boolean-algebra",
          std::string("analyze-lattice --algebra ") + data("chain2.alg") + " --subshift " +
              data("full2.sub"),
          std::string("ca-limit --algebra ") + data("two_by_two.alg") + " --rule " +
              data("swap.bm")}) {
        auto r = run_cli(args + " --report json");
        REQUIRE(r.status == 0);
        check_against_schema(json::parse(r.out));
    }
}

TEST_CASE("the component-swap automaton reports period two, immediate stabilization") {
    auto r = run_cli("ca-limit --algebra " + data("two_by_two.alg") + " --rule " +
                     data("swap.bm") + " --report json");
    REQUIRE(r.status == 0);
    json rep = json::parse(r.out);
    CHECK(rep["verdict"]["p"] == 2);
    CHECK(rep["verdict"]["q"] == 0);
    // the emitted limit presentation round-trips through the parser
    std::istringstream lim(rep["verdict"]["limit_presentation"].get<std::string>());
    NamedSubshift back = parse_subshift(lim);
    CHECK(sofic_equal(back.x, Subshift::full_shift(4)));
}

TEST_CASE("reports are deterministic across runs") {
    const std::string args = "boolean-decompose --algebra " + data("bool2.alg") +
                             " --subshift " + data("full2.sub") + " --report json";
    auto a = run_cli(args);
    auto b = run_cli(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    auto t1 = run_cli("congruences --algebra " + data("z2z2.alg"));
    auto t2 = run_cli("congruences --algebra " + data("z2z2.alg"));
    CHECK(t1.out == t2.out);
}

TEST_CASE("declared symbol labels appear in the output instead of indices") {
    // the cellwise meet escapes this shift, and the witness must be printed
    // with the declared labels, not alphabet indices
    auto r = run_cli("analyze-lattice --algebra " + data("two_by_two.alg") + " --subshift " +
                     data("four_symbol.sub") + " --report json");
    REQUIRE(r.status == 0);
    json rep = json::parse(r.out);
    CHECK(!rep["verdict"]["is_lattice_subshift"].get<bool>());
    const std::string w = rep["witnesses"]["escaping_word"].get<std::string>();
    CHECK((w.find('+') != std::string::npos || w.find('-') != std::string::npos));
}

TEST_CASE("recode derives radius-zero tables for cellwise operations") {
    auto r = run_cli("recode --algebra " + data("chain2.alg") + " --subshift " +
                     data("full2.sub") + " --ops " + data("meet2.bm") + " --ops " +
                     data("join2.bm") + " --report json");
    REQUIRE(r.status == 0);
    json rep = json::parse(r.out);
    CHECK(rep["verdict"]["stabilized"] == true);
    CHECK(rep["verdict"]["radius"] == 0);
    CHECK(rep["verdict"]["classes"] == 2);
}
