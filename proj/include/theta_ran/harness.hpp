#pragma once

// Seeded property suites and their machine-readable reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "theta_ran/execution.hpp"
#include "theta_ran/io.hpp"

namespace theta_ran {

struct SuiteReport {
  std::string name;
  Json params = Json::object();
  std::uint64_t seed = 0;
  std::uint64_t cases = 0;
  std::uint64_t passed = 0;
  /// First failing case, present iff passed < cases.
  std::optional<Json> counterexample;
  /// Only filled when timing is requested, so that default reports are
  /// byte-identical across runs.
  std::optional<double> wall_seconds;
  /// Sub-reports of an aggregate suite.
  std::vector<SuiteReport> parts;

  bool ok() const { return passed == cases; }
};

Json report_to_json(const SuiteReport& r);

struct SuiteOptions {
  std::uint64_t seed = 1;
  bool timing = false;
  Execution exec = Execution::parallel;
  std::uint64_t hom_cap = 1'000'000;
  std::uint64_t chain_cap = 5'000'000;
  int max_degree = 3;
};

/// Suite names accepted by run_suite, `all` last.
const std::vector<std::string>& suite_names();

/// Runs one suite. `params` overrides the suite's defaults (see
/// docs/suites.md). Throws InvalidArgument on an unknown suite or parameter
/// and ResourceError when a cap is hit.
SuiteReport run_suite(const std::string& name, const Json& params = Json::object(),
                      const SuiteOptions& options = {});

/// Expected homology for a category, from closed-form or tabulated oracles:
/// per degree the group text ("Z", "Z^2", "Z + Z/2", "0").
std::optional<std::vector<std::string>> expected_homology(const std::string& kind, int n, int k,
                                                          int max_degree);

/// Betti numbers of prod_{i=1}^{k-1} (1 + i t^{n-1}) through max_degree.
std::vector<std::uint64_t> ordered_poincare(int n, int k, int max_degree);

/// The oracle tables behind the homology suites.
Json emit_fixture_tables();

/// Product of the invariant factors equals the gcd of the r x r minors,
/// checked for every r up to the rank. Returns a description of the first
/// mismatch, empty if none. Entries must be small enough that minors fit
/// in 128 bits.
std::string check_minor_gcd(const std::vector<std::vector<long>>& m);

}  // namespace theta_ran
