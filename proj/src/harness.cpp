#include "theta_ran/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "theta_ran/config.hpp"
#include "theta_ran/error.hpp"
#include "theta_ran/homology.hpp"
#include "theta_ran/rng.hpp"
#include "theta_ran/simplex.hpp"
#include "theta_ran/theta.hpp"

namespace theta_ran {

namespace {

using Check = std::function<std::optional<Json>(std::uint64_t)>;

// Runs check(0..n-1), possibly in parallel, and folds the results in index
// order. The first exception in index order is rethrown.
void fan_out(std::uint64_t n, Execution exec, const Check& check, SuiteReport& r) {
  std::vector<std::optional<Json>> failures(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  auto run = [&](std::uint64_t i) {
    try {
      failures[static_cast<std::size_t>(i)] = check(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  };
  const long count = static_cast<long>(n);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) run(static_cast<std::uint64_t>(i));
  } else {
    for (long i = 0; i < count; ++i) run(static_cast<std::uint64_t>(i));
  }
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    ++r.cases;
    if (failures[i]) {
      if (!r.counterexample) r.counterexample = std::move(failures[i]);
    } else {
      ++r.passed;
    }
  }
}

// Parameters with defaults; unknown keys are rejected.
class Params {
 public:
  Params(const std::string& suite, const Json& given, Json defaults) : suite_(suite), values_(std::move(defaults)) {
    if (!given.is_object()) throw InvalidArgument(suite + ": parameters must be a JSON object");
    for (const auto& [key, value] : given.items()) {
      if (!values_.contains(key)) throw InvalidArgument(suite + ": unknown parameter \"" + key + "\"");
      values_[key] = value;
    }
  }

  int integer(const char* key, int lo, int hi) const {
    const Json& v = values_.at(key);
    if (!v.is_number_integer()) throw InvalidArgument(suite_ + ": parameter \"" + key + "\" must be an integer");
    const long x = v.get<long>();
    if (x < lo || x > hi) {
      throw InvalidArgument(suite_ + ": parameter \"" + key + "\" must lie in [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
    }
    return static_cast<int>(x);
  }
  bool has(const char* key) const { return !values_.at(key).is_null(); }
  std::string text(const char* key) const { return values_.at(key).is_string() ? values_.at(key).get<std::string>() : ""; }
  const Json& json() const { return values_; }

 private:
  std::string suite_;
  Json values_;
};

SuiteReport make_report(std::string name, Json params, std::uint64_t seed) {
  SuiteReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.seed = seed;
  return r;
}

std::string group_of_betti(std::uint64_t b) {
  if (b == 0) return "0";
  if (b == 1) return "Z";
  return "Z^" + std::to_string(b);
}

// ---- delta-laws ----

struct DeltaHom {
  std::vector<MonotoneMap> maps;
  std::vector<PointedMap> circles;
};

SuiteReport delta_laws(const Json& given, const SuiteOptions& opt) {
  Params p("delta-laws", given, {{"max_rank", 5}, {"closure_rank", 4}});
  const int m = p.integer("max_rank", 0, 7);
  const int mc = std::min(p.integer("closure_rank", 0, 7), m);
  SuiteReport r = make_report("delta-laws", p.json(), opt.seed);
  std::vector<DeltaHom> homs(static_cast<std::size_t>((m + 1) * (m + 1)));
  auto hom = [&](int a, int b) -> DeltaHom& { return homs[static_cast<std::size_t>(a * (m + 1) + b)]; };
  for (int a = 0; a <= m; ++a) {
    for (int b = 0; b <= m; ++b) {
      for (auto& f : enumerate_delta_hom(a, b, false)) {
        hom(a, b).circles.push_back(simplicial_circle(f));
        hom(a, b).maps.push_back(std::move(f));
      }
    }
  }
  const int side = m + 1;
  // cases 0..side^3-1: functoriality on a triple of ranks; then one case per
  // hom-set for injectivity, one per hom-set for injectivity on non-constant
  // maps, one per hom-set for the active equivalence, then closure of active
  // maps on triples up to closure_rank.
  const std::uint64_t triples = static_cast<std::uint64_t>(side) * side * side;
  const std::uint64_t pairs = static_cast<std::uint64_t>(side) * side;
  auto check = [&](std::uint64_t i) -> std::optional<Json> {
    if (i < triples) {
      const int a = static_cast<int>(i / pairs), b = static_cast<int>(i / side % side), c = static_cast<int>(i % side);
      const DeltaHom& fs = hom(a, b);
      const DeltaHom& gs = hom(b, c);
      for (std::size_t x = 0; x < fs.maps.size(); ++x) {
        for (std::size_t y = 0; y < gs.maps.size(); ++y) {
          const PointedMap lhs = simplicial_circle(compose_delta(gs.maps[y], fs.maps[x]));
          const PointedMap rhs = compose(fs.circles[x], gs.circles[y]);
          if (lhs != rhs) {
            return Json{{"law", "circle-functoriality"},
                        {"f", fs.maps[x].to_string()},
                        {"g", gs.maps[y].to_string()},
                        {"circle(g.f)", lhs.to_string()},
                        {"circle(f).circle(g)", rhs.to_string()}};
          }
        }
      }
      return std::nullopt;
    }
    i -= triples;
    if (i < 2 * pairs) {
      // literal injectivity on the whole hom-set, then on non-constant maps
      const bool nonconstant_only = i >= pairs;
      const std::uint64_t cell = i % pairs;
      const DeltaHom& h = hom(static_cast<int>(cell / side), static_cast<int>(cell % side));
      std::map<std::vector<std::optional<int>>, std::size_t> seen;
      for (std::size_t x = 0; x < h.maps.size(); ++x) {
        const auto& v = h.maps[x].values();
        if (nonconstant_only && v.front() == v.back()) continue;
        auto [it, fresh] = seen.emplace(h.circles[x].assignment(), x);
        if (!fresh) {
          return Json{{"law", nonconstant_only ? "circle-injectivity-nonconstant" : "circle-injectivity"},
                      {"f", h.maps[it->second].to_string()},
                      {"g", h.maps[x].to_string()},
                      {"circle", h.circles[x].to_string()}};
        }
      }
      return std::nullopt;
    }
    i -= 2 * pairs;
    if (i < pairs) {
      const int a = static_cast<int>(i / side), b = static_cast<int>(i % side);
      const DeltaHom& h = hom(a, b);
      for (std::size_t x = 0; x < h.maps.size(); ++x) {
        const MonotoneMap& f = h.maps[x];
        const bool endpoints = f(0) == 0 && f(a) == b;
        if (is_active_delta(f) != endpoints || h.circles[x].is_total() != endpoints) {
          return Json{{"law", "active-equivalence"}, {"f", f.to_string()}, {"rank", {a, b}}};
        }
      }
      return std::nullopt;
    }
    i -= pairs;
    const int sc = mc + 1;
    const int a = static_cast<int>(i / (sc * sc)), b = static_cast<int>(i / sc % sc), c = static_cast<int>(i % sc);
    const auto fs = enumerate_delta_hom(a, b, true);
    const auto gs = enumerate_delta_hom(b, c, true);
    for (const auto& f : fs) {
      for (const auto& g : gs) {
        if (!is_active_delta(compose_delta(g, f))) {
          return Json{{"law", "active-closure"}, {"f", f.to_string()}, {"g", g.to_string()}};
        }
      }
    }
    return std::nullopt;
  };
  const std::uint64_t closure = static_cast<std::uint64_t>(mc + 1) * (mc + 1) * (mc + 1);
  fan_out(triples + 3 * pairs + closure, opt.exec, check, r);
  return r;
}

// ---- functoriality ----

std::vector<int> inverse_order(const Configuration& s) {
  const std::vector<int> order = leaf_order(s);
  std::vector<int> pos(order.size());
  for (std::size_t l = 0; l < order.size(); ++l) pos[static_cast<std::size_t>(order[l])] = static_cast<int>(l);
  return pos;
}

std::optional<std::string> check_exit_morphism(const ExitPath& path, const ThetaMorphism& m) {
  const auto& map = path.map();
  const std::vector<int> target_order = leaf_order(path.target());
  const std::vector<int> source_pos = inverse_order(path.source());
  const PointedMap lm = leaf_map(m);
  for (std::size_t l = 0; l < target_order.size(); ++l) {
    const int s = map[static_cast<std::size_t>(target_order[l])];
    if (lm.assignment()[l] != std::optional<int>(source_pos[static_cast<std::size_t>(s)] + 1)) {
      return "leaf map " + lm.to_string() + " disagrees with the point map";
    }
  }
  const Classification c = classify_morphism(m);
  if (!c.active) return "image is not active";
  std::vector<int> hits(static_cast<std::size_t>(path.source().size()), 0);
  for (int s : map) ++hits[static_cast<std::size_t>(s)];
  const bool bijective = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
  if (c.in_w != bijective) return "in_W flag disagrees with bijectivity of the point map";
  return std::nullopt;
}

SuiteReport functoriality(const Json& given, const SuiteOptions& opt) {
  Params p("functoriality", given, {{"cases", 1200}, {"n", nullptr}, {"k", nullptr}, {"max_points", 5}});
  const int cases = p.integer("cases", 0, 10'000'000);
  const std::optional<int> fixed_n = p.has("n") ? std::optional<int>(p.integer("n", 1, 6)) : std::nullopt;
  const std::optional<int> fixed_k = p.has("k") ? std::optional<int>(p.integer("k", 0, 12)) : std::nullopt;
  const int max_points = p.integer("max_points", 0, 12);
  SuiteReport r = make_report("functoriality", p.json(), opt.seed);
  auto check = [&](std::uint64_t i) -> std::optional<Json> {
    Rng rng(derive_seed(opt.seed, i));
    const int n = fixed_n ? *fixed_n : static_cast<int>(i % 3) + 1;
    const int k = fixed_k ? *fixed_k : static_cast<int>(rng.uniform(0, max_points));
    const Configuration s = random_configuration(n, k, rng.next());
    const ExitPath f = random_exit_path(s, rng.next());
    const ExitPath g = random_exit_path(f.target(), rng.next());
    const ExitData fg = compose_exit_data(f.data(), g.data());
    const ThetaMorphism mf = morphism_of_exit_path(f);
    const ThetaMorphism mg = morphism_of_exit_path(g);
    const ThetaMorphism lhs = morphism_of_exit_data(fg);
    const ThetaMorphism rhs = compose_theta(mg, mf);
    std::optional<std::string> why;
    if (lhs != rhs) why = "G(f.g) = " + lhs.to_string() + " but G(g)G(f) = " + rhs.to_string();
    if (!why) why = check_exit_morphism(f, mf);
    if (!why) why = check_exit_morphism(g, mg);
    if (!why) return std::nullopt;
    return Json{{"case", i}, {"first", exit_data_to_json(f.data())}, {"second", exit_data_to_json(g.data())},
                {"detail", *why}};
  };
  fan_out(static_cast<std::uint64_t>(cases), opt.exec, check, r);
  return r;
}

// ---- pruning and roundtrip ----

std::vector<Tree> trees_up_to_height(int n, int leaves, int dead_ends) {
  std::vector<Tree> out;
  for (int h = 1; h <= n; ++h) {
    auto ts = enumerate_trees(h, leaves, dead_ends);
    out.insert(out.end(), std::make_move_iterator(ts.begin()), std::make_move_iterator(ts.end()));
  }
  return out;
}

SuiteReport pruning(const Json& given, const SuiteOptions& opt) {
  Params p("pruning", given, {{"n", 3}, {"bound", 6}, {"dead_ends", 2}});
  const int n = p.integer("n", 1, 6);
  const int bound = p.integer("bound", 0, 12);
  const int dead = p.integer("dead_ends", 0, 12);
  SuiteReport r = make_report("pruning", p.json(), opt.seed);
  const std::vector<Tree> trees = trees_up_to_height(n, bound, dead);
  std::vector<std::unique_ptr<HomCache>> caches;
  const int workers = opt.exec == Execution::parallel ? omp_get_max_threads() : 1;
  for (int w = 0; w < workers; ++w) caches.push_back(std::make_unique<HomCache>());
  const EnumerationLimits limits{opt.hom_cap};
  auto check = [&](std::uint64_t i) -> std::optional<Json> {
    const Tree& t = trees[static_cast<std::size_t>(i)];
    HomCache& cache = *caches[static_cast<std::size_t>(opt.exec == Execution::parallel ? omp_get_thread_num() : 0)];
    const PruneResult pr = prune(t);
    std::optional<std::string> why;
    if (!is_healthy(pr.pruned)) why = "pruned tree " + pr.pruned.to_string() + " is not healthy";
    else if (!classify_morphism(pr.unit).in_w) why = "unit " + pr.unit.to_string() + " is not in W";
    else if (prune(pr.pruned).unit != ThetaMorphism::identity(pr.pruned)) why = "pruning is not idempotent";
    if (!why) {
      const InitialityReport ir = verify_initiality(t, bound, limits, Execution::serial, &cache);
      if (ir.passed) return std::nullopt;
      why = *ir.counterexample;
    }
    return Json{{"tree", t.to_string()}, {"detail", *why}};
  };
  fan_out(trees.size(), opt.exec, check, r);
  return r;
}

SuiteReport roundtrip(const Json& given, const SuiteOptions& opt) {
  Params p("roundtrip", given, {{"n", 3}, {"leaves", 8}, {"dead_ends", 2}});
  const int n = p.integer("n", 1, 6);
  const int leaves = p.integer("leaves", 0, 12);
  const int dead = p.integer("dead_ends", 0, 12);
  SuiteReport r = make_report("roundtrip", p.json(), opt.seed);
  const std::vector<Tree> trees = trees_up_to_height(n, leaves, dead);
  auto check = [&](std::uint64_t i) -> std::optional<Json> {
    const Tree& t = trees[static_cast<std::size_t>(i)];
    const Tree back = tree_of_configuration(realize_tree(t));
    const Tree pruned = prune(t).pruned;
    if (back == pruned && (!is_healthy(t) || back == t)) return std::nullopt;
    return Json{{"tree", t.to_string()}, {"realized", back.to_string()}, {"pruned", pruned.to_string()}};
  };
  fan_out(trees.size(), opt.exec, check, r);
  return r;
}

// ---- homology ----

struct HomologyCase {
  CategoryKind kind;
  int n;
  int k;
};

const std::vector<HomologyCase>& fixture_cases() {
  static const std::vector<HomologyCase> cases{
      {CategoryKind::nord, 1, 2},  {CategoryKind::nord, 1, 3},  {CategoryKind::nord, 2, 2},
      {CategoryKind::nord, 2, 3},  {CategoryKind::nord, 3, 2},  {CategoryKind::w_hlt, 2, 2},
      {CategoryKind::w_hlt, 2, 3}, {CategoryKind::w_hlt, 3, 2},
  };
  return cases;
}

struct UnorderedFixture {
  int n;
  int k;
  std::vector<std::string> groups;
  const char* note;
};

const std::vector<UnorderedFixture>& unordered_fixtures() {
  static const std::vector<UnorderedFixture> f{
      {2, 2, {"Z", "Z"}, "two unordered points in R^2 form a space homotopy equivalent to the circle RP^1"},
      {2, 3, {"Z", "Z", "0"}, "three unordered points in R^2: a K(B_3, 1), and B_3 has abelianization Z and H_2 = 0"},
      {3, 2, {"Z", "Z/2", "0"}, "two unordered points in R^3 form a space homotopy equivalent to RP^2"},
  };
  return f;
}

SuiteReport homology_suite(const std::string& name, const Json& given, const SuiteOptions& opt,
                           std::optional<CategoryKind> only) {
  Json defaults = {{"kind", nullptr}, {"n", nullptr}, {"k", nullptr}};
  if (only) defaults.erase("kind");
  Params p(name, given, defaults);
  std::optional<CategoryKind> kind = only;
  if (!only && p.has("kind")) {
    kind = parse_category_kind(p.text("kind"));
    if (!kind) throw InvalidArgument(name + ": kind must be nord or w_hlt");
  }
  std::vector<HomologyCase> cases;
  if (p.has("n") || p.has("k")) {
    if (!kind || !p.has("n") || !p.has("k")) throw InvalidArgument(name + ": a single case needs kind, n and k");
    cases.push_back({*kind, p.integer("n", 1, 6), p.integer("k", 0, 8)});
  } else {
    for (const auto& c : fixture_cases()) {
      if (!kind || c.kind == *kind) cases.push_back(c);
    }
  }
  SuiteReport r = make_report(name, p.json(), opt.seed);
  const CategoryLimits cl{opt.hom_cap, opt.chain_cap};
  const ChainLimits chl{opt.chain_cap};
  std::vector<Json> details(cases.size());
  auto check = [&](std::uint64_t i) -> std::optional<Json> {
    const HomologyCase& c = cases[static_cast<std::size_t>(i)];
    const auto expected = expected_homology(to_string(c.kind), c.n, c.k, opt.max_degree);
    if (!expected) {
      throw InvalidArgument(name + ": no oracle for " + std::string(to_string(c.kind)) + " n=" + std::to_string(c.n) +
                            " k=" + std::to_string(c.k));
    }
    const FiniteCategoryView cat = build_category(c.kind, c.n, c.k, cl, Execution::serial);
    const HomologyResult h = homology_of_category(cat, opt.max_degree, chl, Execution::serial);
    const auto got = h.groups();
    details[static_cast<std::size_t>(i)] = {{"kind", to_string(c.kind)},     {"n", c.n},
                                            {"k", c.k},                       {"objects", cat.object_count()},
                                            {"morphisms", cat.morphism_count()}, {"poset_like", cat.is_poset_like()},
                                            {"groups", got}};
    if (got == *expected && h.boundary_squares_vanish) return std::nullopt;
    return Json{{"kind", to_string(c.kind)}, {"n", c.n},     {"k", c.k},
                {"expected", *expected},     {"got", got},   {"boundary_squares_vanish", h.boundary_squares_vanish}};
  };
  fan_out(cases.size(), opt.exec, check, r);
  r.params["cases"] = details;
  return r;
}

// ---- homology-engine ----

FiniteCategoryView chain_poset(int p) {
  return poset_category(p + 1, [](int a, int b) { return a <= b; });
}

// Objects a, t; an idempotent e on a and a unique arrow a -> t. t is terminal,
// or initial in the opposite category.
FiniteCategoryView idempotent_cone(bool opposite) {
  FiniteCategoryView::Builder b;
  const int a = b.add_object("a");
  const int t = b.add_object("t");
  const int e = b.add_morphism(a, a, "e");
  const int u = opposite ? b.add_morphism(t, a, "u") : b.add_morphism(a, t, "u");
  b.set_composite(e, e, e);
  if (opposite) b.set_composite(e, u, u);
  else b.set_composite(u, e, u);
  return std::move(b).build();
}

FiniteCategoryView circle_poset() {
  // 0, 1 below 2, 3
  return poset_category(4, [](int x, int y) { return x == y || (x < 2 && y >= 2); });
}

std::vector<std::vector<long>> random_matrix(std::uint64_t seed) {
  Rng rng(seed);
  const auto rows = static_cast<std::size_t>(rng.uniform(1, 8));
  const auto cols = static_cast<std::size_t>(rng.uniform(1, 8));
  std::vector<std::vector<long>> m(rows, std::vector<long>(cols));
  for (auto& row : m) {
    for (auto& x : row) x = rng.uniform(-9, 9);
  }
  return m;
}

SuiteReport homology_engine(const Json& given, const SuiteOptions& opt) {
  Params p("homology-engine", given, {{"matrices", 200}, {"max_chain", 4}});
  const int matrices = p.integer("matrices", 0, 1'000'000);
  const int max_chain = p.integer("max_chain", 0, 8);
  SuiteReport r = make_report("homology-engine", p.json(), opt.seed);
  const CategoryLimits cl{opt.hom_cap, opt.chain_cap};
  const ChainLimits chl{opt.chain_cap};

  struct Named {
    std::string name;
    std::function<FiniteCategoryView()> build;
    std::optional<std::vector<std::string>> expected;  // groups through max_degree
  };
  std::vector<std::string> point(static_cast<std::size_t>(opt.max_degree + 1), "0");
  point[0] = "Z";
  std::vector<std::string> circle = point;
  if (opt.max_degree >= 1) circle[1] = "Z";
  std::vector<Named> cats;
  for (int q = 0; q <= max_chain; ++q) {
    cats.push_back({"chain poset [" + std::to_string(q) + "]", [q] { return chain_poset(q); }, point});
  }
  cats.push_back({"idempotent with terminal object", [] { return idempotent_cone(false); }, point});
  cats.push_back({"idempotent with initial object", [] { return idempotent_cone(true); }, point});
  cats.push_back({"four-element circle poset", circle_poset, circle});
  for (const auto& c : fixture_cases()) {
    cats.push_back({std::string(to_string(c.kind)) + " n=" + std::to_string(c.n) + " k=" + std::to_string(c.k),
                    [c, cl] { return build_category(c.kind, c.n, c.k, cl, Execution::serial); }, std::nullopt});
  }
  // per category: complex check, then permutation invariance
  const std::uint64_t category_cases = 2 * cats.size();
  auto check = [&](std::uint64_t i) -> std::optional<Json> {
    if (i < category_cases) {
      const Named& c = cats[static_cast<std::size_t>(i / 2)];
      const FiniteCategoryView view = c.build();
      const HomologyResult h = homology_of_category(view, opt.max_degree, chl, Execution::serial);
      if (i % 2 == 0) {
        if (!h.boundary_squares_vanish) return Json{{"category", c.name}, {"detail", "boundary of boundary is nonzero"}};
        if (c.expected && h.groups() != *c.expected) {
          return Json{{"category", c.name}, {"expected", *c.expected}, {"got", h.groups()}};
        }
        return std::nullopt;
      }
      const std::uint64_t pseed = derive_seed(opt.seed, i);
      const HomologyResult hp = homology_of_category(view.permuted(pseed), opt.max_degree, chl, Execution::serial);
      if (hp.degrees == h.degrees) return std::nullopt;
      return Json{{"category", c.name}, {"permutation_seed", pseed}, {"groups", h.groups()},
                  {"permuted_groups", hp.groups()}};
    }
    const auto m = random_matrix(derive_seed(opt.seed, i));
    const std::string why = check_minor_gcd(m);
    if (why.empty()) return std::nullopt;
    return Json{{"matrix", m}, {"detail", why}};
  };
  fan_out(category_cases + static_cast<std::uint64_t>(matrices), opt.exec, check, r);
  return r;
}

// ---- minors ----

using Int = __int128;

Int bareiss_det(std::vector<std::vector<Int>> a) {
  const std::size_t n = a.size();
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[s], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Int gcd128(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string int_to_string(Int v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  if (neg) v = -v;
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

}  // namespace

std::string check_minor_gcd(const std::vector<std::vector<long>>& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  if (rows > 16 || cols > 16) throw InvalidArgument("check_minor_gcd: at most 16 rows and columns");
  const SmithForm snf = smith_normal_form(IntegerMatrix::from_dense(m));
  for (std::size_t i = 0; i < snf.divisors.size(); ++i) {
    if (snf.divisors[i] <= 0) return "divisor " + snf.divisors[i].get_str() + " is not positive";
    if (i > 0 && snf.divisors[i] % snf.divisors[i - 1] != 0) {
      return "divisor " + snf.divisors[i - 1].get_str() + " does not divide " + snf.divisors[i].get_str();
    }
  }
  int rank = 0;
  mpz_class product = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    Int g = 0;
    for (unsigned rs = 0; rs < (1u << rows); ++rs) {
      if (static_cast<std::size_t>(std::popcount(rs)) != k) continue;
      for (unsigned cs = 0; cs < (1u << cols); ++cs) {
        if (static_cast<std::size_t>(std::popcount(cs)) != k) continue;
        std::vector<std::vector<Int>> sub;
        for (std::size_t i = 0; i < rows; ++i) {
          if (!(rs >> i & 1)) continue;
          sub.emplace_back();
          for (std::size_t j = 0; j < cols; ++j) {
            if (cs >> j & 1) sub.back().push_back(m[i][j]);
          }
        }
        g = gcd128(g, bareiss_det(std::move(sub)));
      }
    }
    if (g == 0) break;
    rank = static_cast<int>(k);
    if (k > snf.divisors.size()) return "minors of size " + std::to_string(k) + " are nonzero beyond the SNF rank";
    product *= snf.divisors[k - 1];
    if (product.get_str() != int_to_string(g)) {
      return "gcd of " + std::to_string(k) + "-minors is " + int_to_string(g) + " but the divisor product is " +
             product.get_str();
    }
  }
  if (rank != snf.rank()) return "rank " + std::to_string(rank) + " differs from SNF rank " + std::to_string(snf.rank());
  return {};
}

std::vector<std::uint64_t> ordered_poincare(int n, int k, int max_degree) {
  std::vector<std::uint64_t> poly(static_cast<std::size_t>(max_degree + 1), 0);
  poly[0] = 1;
  const int shift = n - 1;
  for (int i = 1; i < k; ++i) {
    std::vector<std::uint64_t> next = poly;
    if (shift == 0) {
      for (auto& c : next) c *= static_cast<std::uint64_t>(1 + i);
    } else {
      for (int d = max_degree; d >= shift; --d) {
        next[static_cast<std::size_t>(d)] += static_cast<std::uint64_t>(i) * poly[static_cast<std::size_t>(d - shift)];
      }
    }
    poly = std::move(next);
  }
  return poly;
}

std::optional<std::vector<std::string>> expected_homology(const std::string& kind, int n, int k, int max_degree) {
  std::vector<std::string> out;
  if (kind == "nord") {
    for (auto b : ordered_poincare(n, k, max_degree)) out.push_back(group_of_betti(b));
    return out;
  }
  if (kind != "w_hlt") return std::nullopt;
  out.assign(static_cast<std::size_t>(max_degree + 1), "0");
  out[0] = "Z";
  if (n == 1 || k <= 1) return out;
  for (const auto& f : unordered_fixtures()) {
    if (f.n != n || f.k != k) continue;
    for (std::size_t d = 0; d < f.groups.size() && d < out.size(); ++d) out[d] = f.groups[d];
    return out;
  }
  return std::nullopt;
}

Json emit_fixture_tables() {
  Json ordered = Json::array();
  for (const auto& c : fixture_cases()) {
    if (c.kind != CategoryKind::nord) continue;
    std::string poly;
    for (int i = 1; i < c.k; ++i) {
      poly += "(1 + " + std::to_string(i);
      if (c.n > 1) poly += c.n == 2 ? " t" : " t^" + std::to_string(c.n - 1);
      poly += ")";
    }
    if (poly.empty()) poly = "1";
    ordered.push_back({{"n", c.n},
                       {"k", c.k},
                       {"poincare", poly},
                       {"betti", ordered_poincare(c.n, c.k, (c.k - 1) * (c.n - 1))},
                       {"note", c.n == 1 ? "ordered configurations in R: k! contractible components"
                                         : "ordered configurations in R^n: fiber bundles of wedges of (n-1)-spheres"}});
  }
  Json unordered = Json::array();
  for (const auto& f : unordered_fixtures()) {
    unordered.push_back({{"n", f.n}, {"k", f.k}, {"groups", f.groups}, {"note", f.note}});
  }
  return {{"ordered", std::move(ordered)}, {"unordered", std::move(unordered)}};
}

Json report_to_json(const SuiteReport& r) {
  Json j;
  j["suite"] = r.name;
  j["params"] = r.params;
  j["seed"] = r.seed;
  j["cases"] = r.cases;
  j["passed"] = r.passed;
  j["ok"] = r.ok();
  if (r.counterexample) j["counterexample"] = *r.counterexample;
  if (r.wall_seconds) j["wall_seconds"] = *r.wall_seconds;
  if (!r.parts.empty()) {
    Json parts = Json::array();
    for (const auto& part : r.parts) parts.push_back(report_to_json(part));
    j["parts"] = std::move(parts);
  }
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"ordered-homology", "unordered-homology", "functoriality",
                                              "pruning",          "roundtrip",          "delta-laws",
                                              "homology-engine",  "homology",           "all"};
  return names;
}

SuiteReport run_suite(const std::string& name, const Json& params, const SuiteOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport r;
  if (name == "ordered-homology") {
    r = homology_suite(name, params, options, CategoryKind::nord);
  } else if (name == "unordered-homology") {
    r = homology_suite(name, params, options, CategoryKind::w_hlt);
  } else if (name == "homology") {
    r = homology_suite(name, params, options, std::nullopt);
  } else if (name == "functoriality") {
    r = functoriality(params, options);
  } else if (name == "pruning") {
    r = pruning(params, options);
  } else if (name == "roundtrip") {
    r = roundtrip(params, options);
  } else if (name == "delta-laws") {
    r = delta_laws(params, options);
  } else if (name == "homology-engine") {
    r = homology_engine(params, options);
  } else if (name == "all") {
    Params p("all", params, Json::object());
    r = make_report("all", p.json(), options.seed);
    for (const auto& part : suite_names()) {
      if (part == "homology" || part == "all") continue;
      r.parts.push_back(run_suite(part, Json::object(), options));
      r.cases += 1;
      if (r.parts.back().ok()) {
        ++r.passed;
      } else if (!r.counterexample) {
        r.counterexample = Json{{"suite", part}, {"counterexample", *r.parts.back().counterexample}};
      }
    }
  } else {
    throw InvalidArgument("unknown suite \"" + name + "\"");
  }
  if (options.timing) {
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

}  // namespace theta_ran
