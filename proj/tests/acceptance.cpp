// One line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "theta_ran/error.hpp"
#include "theta_ran/harness.hpp"

using namespace theta_ran;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string summary(const SuiteReport& r) {
  std::string s = std::to_string(r.passed) + "/" + std::to_string(r.cases) + " cases";
  if (r.counterexample) s += ", counterexample " + r.counterexample->dump();
  return s;
}

// Each homology case separately, each under its own time limit.
Outcome homology_cases(const std::string& suite, const std::vector<std::pair<int, int>>& cases, double limit) {
  Outcome o{true, ""};
  double worst = 0;
  int passed = 0;
  for (auto [n, k] : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteReport r = run_suite(suite, Json{{"n", n}, {"k", k}});
    const double t = seconds_since(t0);
    worst = std::max(worst, t);
    const bool ok = r.ok() && r.cases == 1 && t < limit;
    passed += ok;
    if (!ok) {
      o.pass = false;
      o.detail += " (" + std::to_string(n) + "," + std::to_string(k) + ") failed in " + std::to_string(t) + "s " +
                  summary(r) + ";";
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d/%zu cases, slowest %.3fs (limit %.0fs each)", passed, cases.size(), worst, limit);
  o.detail = buf + o.detail;
  return o;
}

Outcome whole_suite(const std::string& suite, double limit, std::uint64_t min_cases) {
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteReport r = run_suite(suite);
  const double t = seconds_since(t0);
  char buf[96];
  std::snprintf(buf, sizeof buf, ", %.3fs (limit %.0fs)", t, limit);
  Outcome o{r.ok() && r.cases >= min_cases && t < limit, summary(r) + buf};
  if (r.cases < min_cases) o.detail += ", fewer than " + std::to_string(min_cases) + " cases";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"ordered configuration homology",
       [] { return homology_cases("ordered-homology", {{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}}, 60); }},
      {"unordered configuration homology",
       [] { return homology_cases("unordered-homology", {{2, 2}, {2, 3}, {3, 2}}, 60); }},
      {"configuration functor respects composition", [] { return whole_suite("functoriality", 120, 1000); }},
      {"pruning adjunction", [] { return whole_suite("pruning", 300, 1); }},
      {"geometric round trip", [] { return whole_suite("roundtrip", 60, 1); }},
      {"simplicial circle laws", [] { return whole_suite("delta-laws", 10, 1); }},
      {"homology engine sanity", [] { return whole_suite("homology-engine", 30, 200); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const Error& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%s %d/%zu criteria\n", failures ? "FAIL" : "PASS", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures ? 1 : 0;
}
