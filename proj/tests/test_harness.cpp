#include <doctest.h>

#include "theta_ran/error.hpp"
#include "theta_ran/harness.hpp"

using namespace theta_ran;

TEST_CASE("ordered Poincare oracle") {
  CHECK(ordered_poincare(2, 3, 3) == std::vector<std::uint64_t>{1, 3, 2, 0});
  CHECK(ordered_poincare(3, 2, 3) == std::vector<std::uint64_t>{1, 0, 1, 0});
  CHECK(ordered_poincare(1, 4, 1) == std::vector<std::uint64_t>{24, 0});
  CHECK(ordered_poincare(2, 4, 3) == std::vector<std::uint64_t>{1, 6, 11, 6});
  CHECK(ordered_poincare(4, 1, 3) == std::vector<std::uint64_t>{1, 0, 0, 0});
}

TEST_CASE("expected groups") {
  CHECK(*expected_homology("nord", 2, 3, 2) == std::vector<std::string>{"Z", "Z^3", "Z^2"});
  CHECK(*expected_homology("w_hlt", 3, 2, 3) == std::vector<std::string>{"Z", "Z/2", "0", "0"});
  CHECK(*expected_homology("w_hlt", 1, 4, 1) == std::vector<std::string>{"Z", "0"});
  CHECK_FALSE(expected_homology("w_hlt", 4, 4, 2));
  CHECK_FALSE(expected_homology("other", 2, 2, 2));
}

TEST_CASE("fixture tables") {
  const Json f = emit_fixture_tables();
  REQUIRE(f["ordered"].size() == 5);
  bool seen23 = false, seen32 = false;
  for (const auto& row : f["ordered"]) {
    if (row["n"] == 2 && row["k"] == 3) {
      seen23 = true;
      CHECK(row["betti"] == Json::parse("[1, 3, 2]"));
      CHECK(row["poincare"] == "(1 + 1 t)(1 + 2 t)");
    }
    if (row["n"] == 3 && row["k"] == 2) {
      seen32 = true;
      CHECK(row["betti"] == Json::parse("[1, 0, 1]"));
    }
    if (row["n"] == 1) CHECK(row["betti"][0] == (row["k"] == 2 ? 2 : 6));
  }
  CHECK(seen23);
  CHECK(seen32);
  REQUIRE(f["unordered"].size() == 3);
  CHECK(f["unordered"][2]["groups"] == Json::parse(R"(["Z", "Z/2", "0"])"));
}

TEST_CASE("minor-gcd check") {
  CHECK(check_minor_gcd({{2, 4}, {6, 8}}).empty());
  CHECK(check_minor_gcd({{0, 0}, {0, 0}}).empty());
  CHECK(check_minor_gcd({{9, -9, 3, 0, 1, 2, 7, 5}}).empty());
}

TEST_CASE("suite examples") {
  const SuiteReport h = run_suite("homology", Json{{"kind", "nord"}, {"n", 2}, {"k", 2}});
  CHECK(h.ok());
  CHECK(h.cases == 1);
  CHECK(h.params["cases"][0]["groups"] == Json::parse(R"(["Z", "Z", "0", "0"])"));
  const SuiteReport f = run_suite("functoriality", Json{{"n", 1}, {"k", 0}, {"cases", 20}});
  CHECK(f.ok());
  CHECK(f.cases == 20);
  const SuiteReport p = run_suite("pruning", Json{{"n", 2}, {"bound", 4}});
  CHECK(p.ok());
  CHECK(p.cases > 0);
  CHECK_FALSE(p.counterexample);
  CHECK(run_suite("roundtrip", Json{{"leaves", 4}, {"dead_ends", 1}}).ok());
  const SuiteReport d = run_suite("delta-laws", Json{{"max_rank", 3}, {"closure_rank", 3}});
  // constant maps [0] -> [1] share the null circle map
  REQUIRE(d.counterexample);
  CHECK((*d.counterexample)["law"] == "circle-injectivity");
  CHECK((*d.counterexample)["f"] == "(0)");
  CHECK((*d.counterexample)["g"] == "(1)");
  CHECK(d.cases - d.passed == 12);
  CHECK(run_suite("homology-engine", Json{{"matrices", 20}}).ok());
}

TEST_CASE("reports are reproducible and independent of execution") {
  SuiteOptions a;
  a.seed = 42;
  SuiteOptions b = a;
  b.exec = Execution::serial;
  const Json params = {{"cases", 60}};
  const std::string first = report_to_json(run_suite("functoriality", params, a)).dump();
  CHECK(first == report_to_json(run_suite("functoriality", params, a)).dump());
  CHECK(first == report_to_json(run_suite("functoriality", params, b)).dump());
  CHECK(first.find("wall_seconds") == std::string::npos);
  a.timing = true;
  CHECK(run_suite("delta-laws", Json{{"max_rank", 2}}, a).wall_seconds.has_value());
}

TEST_CASE("suite errors") {
  CHECK_THROWS_AS(run_suite("nonsense"), InvalidArgument);
  CHECK_THROWS_AS(run_suite("pruning", Json{{"bogus", 1}}), InvalidArgument);
  CHECK_THROWS_AS(run_suite("pruning", Json{{"n", "three"}}), InvalidArgument);
  CHECK_THROWS_AS(run_suite("homology", Json{{"kind", "w_hlt"}, {"n", 4}, {"k", 4}}), InvalidArgument);
  SuiteOptions tight;
  tight.chain_cap = 5;
  CHECK_THROWS_AS(run_suite("ordered-homology", Json{{"n", 2}, {"k", 3}}, tight), ResourceError);
}

TEST_CASE("the aggregate suite covers exactly the acceptance criteria") {
  std::vector<std::string> parts;
  for (const auto& s : suite_names()) {
    if (s != "homology" && s != "all") parts.push_back(s);
  }
  CHECK(parts == std::vector<std::string>{"ordered-homology", "unordered-homology", "functoriality", "pruning",
                                          "roundtrip", "delta-laws", "homology-engine"});
}
