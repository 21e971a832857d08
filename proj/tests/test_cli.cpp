#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "fixtures.hpp"
#include "word_parser.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("word parser accepts the documented forms") {
  const auto cartan = tnn::thicken(tnn::cartan_of_type(tnn::CartanFamily::A, 2), 3);
  CHECK(cli::parse_word(cartan, "e").empty());
  CHECK(cli::parse_word(cartan, "").empty());
  CHECK(cli::parse_word(cartan, "()").empty());
  CHECK(cli::parse_word(cartan, "(1,2,inf1)") == tnn::Word{0, 1, 2});
  CHECK(cli::parse_word(cartan, " 2 , inf2 ") == tnn::Word{1, 3});
  CHECK(cli::parse_word_list(cartan, "(1);(2,1)") == std::vector<tnn::Word>{{0}, {1, 0}});
  CHECK(cli::parse_word_list(cartan, "(1),e,(2)") == std::vector<tnn::Word>{{0}, {}, {1}});
  CHECK(cli::parse_word_list(cartan, "1;").size() == 2);
  const auto top = cli::parse_top_spec(cartan, "e;(1),(1)");
  CHECK(top.v.empty());
  CHECK(top.w == std::vector<tnn::Word>{{0}, {0}});
  CHECK(cli::parse_rationals("3/2,1,-4").size() == 3);
}

TEST_CASE("word parser reports positions") {
  const auto cartan = tnn::cartan_of_type(tnn::CartanFamily::A, 2);
  auto position = [&](auto&& f) -> long {
    try {
      f();
    } catch (const cli::ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  CHECK(position([&] { cli::parse_word(cartan, "(1,x)"); }) == 3);
  CHECK(position([&] { cli::parse_word(cartan, "(1,3)"); }) == 3);
  CHECK(position([&] { cli::parse_word(cartan, "(1,2"); }) == 4);
  CHECK(position([&] { cli::parse_word(cartan, "(inf1)"); }) == 1);
  CHECK(position([&] { cli::parse_top_spec(cartan, "(1),(1)"); }) == 3);
  CHECK(position([&] { cli::parse_rationals("1,2/x"); }) == 2);
}

TEST_CASE("poset command") {
  SUBCASE("SL2 triangle is a ball with 8 elements") {
    const auto r = run({"poset", "A", "1", "--n", "2", "--top", "e;(1),(1)", "--check", "ball"});
    CHECK(r.code == 0);
    const auto j = r.report();
    CHECK(j["schema"] == 1);
    CHECK(j["seed"] == 1);
    CHECK(j["poset"]["size"] == 8);
    CHECK(j["checks"][0]["check"] == "ball");
    CHECK(j["checks"][0]["status"] == "pass");
    CHECK(j["poset"]["f_vector"] == json::array({3, 3, 1}));
  }
  SUBCASE("S3 lower interval") {
    const auto r = run({"poset", "A", "2", "--n", "1", "--top", "e;(1,2,1)", "--check", "pure,thin,eulerian"});
    CHECK(r.code == 0);
    CHECK(r.report()["checks"].size() == 3);
  }
  SUBCASE("malformed top is a usage error with a position") {
    const auto r = run({"poset", "A", "2", "--n", "1", "--top", "e;(1,x)"});
    CHECK(r.code == 2);
    CHECK(r.err.find("position 5") != std::string::npos);
  }
  SUBCASE("top outside Q and wrong factor count") {
    CHECK(run({"poset", "A", "1", "--n", "1", "--top", "(1);e"}).code == 2);
    CHECK(run({"poset", "A", "1", "--n", "2", "--top", "e;(1)"}).code == 2);
    CHECK(run({"poset", "Z", "1", "--top", "e;(1)"}).code == 2);
    CHECK(run({"poset", "A", "1", "--top", "e;(1)", "--check", "bogus"}).code == 2);
  }
  SUBCASE("exhausted shelling budget is inconclusive and exits 0") {
    const auto r = run({"poset", "A", "1", "--n", "2", "--top", "e;(1),(1)", "--check", "shelling",
                        "--shelling-budget", "0"});
    CHECK(r.code == 0);
    CHECK(r.report()["checks"][0]["status"] == "inconclusive");
    CHECK(r.report()["checks"][0]["witness"].contains("budget"));
  }
  SUBCASE("dot and json outputs") {
    const std::string dot = "test_cli_poset.dot", js = "test_cli_poset.json";
    const auto r = run({"poset", "A", "1", "--n", "2", "--top", "e;(1),(1)", "--dot", dot, "--json", js});
    CHECK(r.code == 0);
    std::ifstream d(dot), f(js);
    std::stringstream ds;
    ds << d.rdbuf();
    CHECK(ds.str().find("digraph") == 0);
    CHECK(json::parse(f)["nodes"].size() == 8);
    std::remove(dot.c_str());
    std::remove(js.c_str());
  }
}

TEST_CASE("cell command") {
  SUBCASE("y(3/2) times sdot") {
    const auto r = run({"cell", "--k", "2", "--n", "2", "--v", "1", "--w", "(1);(1)", "--params", "3/2"});
    REQUIRE(r.code == 0);
    const auto j = r.report();
    CHECK(j["status"] == "pass");
    const auto& pt = j["points"][0];
    CHECK(pt["point"]["factors"][0] == json::array({json::array({"1", "0"}), json::array({"3/2", "1"})}));
    CHECK(pt["point"]["factors"][1] == json::array({json::array({"0", "1"}), json::array({"-1", "0"})}));
    CHECK(pt["stratum"]["v"] == json::array({1}));
    CHECK(pt["stratum"]["w"] == json::array({json::array({1}), json::array({1})}));
  }
  SUBCASE("random samples") {
    const auto r = run({"cell", "--k", "3", "--n", "2", "--v", "", "--w", "(1,2);(2,1)", "--random", "10", "--seed", "7"});
    CHECK(r.code == 0);
    const auto j = r.report();
    CHECK(j["seed"] == 7);
    CHECK(j["checks"].size() == 10);
    for (const auto& c : j["checks"]) CHECK(c["status"] == "pass");
    CHECK(run({"cell", "--k", "3", "--n", "2", "--v", "", "--w", "(1,2);(2,1)", "--random", "10", "--seed", "7"})
              .report()["points"] == j["points"]);
  }
  SUBCASE("invalid input exits 2") {
    CHECK(run({"cell", "--k", "2", "--n", "1", "--v", "e", "--w", "(1)", "--params", "-1"}).code == 2);
    CHECK(run({"cell", "--k", "2", "--n", "1", "--v", "e", "--w", "(1)", "--params", "0"}).code == 2);
    CHECK(run({"cell", "--k", "2", "--n", "1", "--v", "e", "--w", "(1)", "--params", "1,2"}).code == 2);
    CHECK(run({"cell", "--k", "2", "--n", "1", "--v", "(1)", "--w", "e", "--params", ""}).code == 2);
    CHECK(run({"cell", "--k", "2", "--n", "1", "--v", "e", "--w", "(1)"}).code == 2);
    CHECK(run({"cell", "--k", "9", "--n", "1", "--v", "e", "--w", "(1)", "--random", "1"}).code == 2);
  }
}

TEST_CASE("verify command") {
  const auto r = run({"verify", "demazure-oracle", "--seed", "3"});
  CHECK(r.code == 0);
  const auto j = r.report();
  CHECK(j["command"] == "verify");
  CHECK(j["seed"] == 3);
  CHECK(j["status"] == "pass");
  CHECK(j["checks"].size() == 4);
  CHECK(run({"verify", "nosuchsuite"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
