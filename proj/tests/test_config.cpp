#include <doctest.h>

#include "theta_ran/config.hpp"
#include "theta_ran/error.hpp"
#include "theta_ran/rng.hpp"

using namespace theta_ran;

namespace {

Rational Q(const char* s) { return parse_rational(s); }

Configuration C(int n, std::vector<std::vector<const char*>> pts) {
  std::vector<Point> points;
  for (const auto& p : pts) {
    Point q;
    for (const char* x : p) q.push_back(Q(x));
    points.push_back(std::move(q));
  }
  return Configuration(n, std::move(points));
}

// Exact collision search by brute force over the candidate times where some
// coordinate of two strands agrees.
bool strands_meet(const Point& a0, const Point& a1, const Point& b0, const Point& b1, int k) {
  std::vector<Rational> candidates;
  for (int c = 0; c < k; ++c) {
    const Rational A = a0[static_cast<std::size_t>(c)] - b0[static_cast<std::size_t>(c)];
    const Rational B = (a1[static_cast<std::size_t>(c)] - a0[static_cast<std::size_t>(c)]) -
                       (b1[static_cast<std::size_t>(c)] - b0[static_cast<std::size_t>(c)]);
    if (B != 0) candidates.push_back(-A / B);
  }
  candidates.push_back(1);
  for (const auto& u : candidates) {
    if (u <= 0 || u > 1) continue;
    bool all = true;
    for (int c = 0; c < k; ++c) {
      const auto i = static_cast<std::size_t>(c);
      all &= (1 - u) * a0[i] + u * a1[i] == (1 - u) * b0[i] + u * b1[i];
    }
    if (all) return true;
  }
  return false;
}

bool oracle_valid(const Configuration& s, const Configuration& t, const std::vector<int>& f) {
  for (int k = 1; k <= s.dimension(); ++k) {
    for (int x = 0; x < t.size(); ++x) {
      for (int y = x + 1; y < t.size(); ++y) {
        const Point& tx = t.point(x);
        const Point& ty = t.point(y);
        const Point& sx = s.point(f[static_cast<std::size_t>(x)]);
        const Point& sy = s.point(f[static_cast<std::size_t>(y)]);
        const bool same = std::equal(tx.begin(), tx.begin() + k, ty.begin());
        if (same) {
          if (!std::equal(sx.begin(), sx.begin() + k, sy.begin())) return false;
        } else if (strands_meet(sx, tx, sy, ty, k)) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(to_string(Q("6/4")) == "3/2");
  CHECK(to_string(Q("-2")) == "-2");
  CHECK(to_string(Q("4/2")) == "2");
  CHECK_THROWS_AS(Q("1/0"), ParseError);
  CHECK_THROWS_AS(Q("abc"), ParseError);
  CHECK_THROWS_AS(Q(""), ParseError);
}

TEST_CASE("configurations reject bad input") {
  CHECK_THROWS_AS(C(2, {{"1", "1"}, {"1", "1"}}), InvalidArgument);
  CHECK_THROWS_AS(C(2, {{"1"}}), InvalidArgument);
  CHECK(C(2, {{"1", "1"}, {"2/2", "2"}}).size() == 2);
}

TEST_CASE("tree of a configuration") {
  CHECK(tree_of_configuration(C(2, {{"2", "1"}, {"2", "5/2"}})) == Tree::parse("[1]([2])"));
  CHECK(tree_of_configuration(C(2, {{"2", "1"}, {"23/2", "5/2"}})) == Tree::parse("[2]([1],[1])"));
  CHECK(tree_of_configuration(Configuration(2, {})) == Tree::empty(2));
  CHECK(tree_of_configuration(C(1, {{"3"}, {"-1"}, {"0"}})) == Tree::corolla(3));
  const Configuration s = C(2, {{"3", "0"}, {"1", "5"}, {"1", "2"}});
  CHECK(tree_of_configuration(s) == Tree::parse("[2]([2],[1])"));
  CHECK(leaf_order(s) == std::vector<int>{2, 1, 0});
}

TEST_CASE("realization") {
  CHECK(realize_tree(Tree::parse("[2]([1],[1])")) == C(2, {{"1", "1"}, {"2", "1"}}));
  CHECK(realize_tree(Tree::empty(2)).empty());
  const Configuration r = realize_tree(Tree::parse("[2]([0],[2])"));
  REQUIRE(r.size() == 2);
  CHECK(r.point(0)[0] == r.point(1)[0]);
  for (int h = 1; h <= 3; ++h) {
    for (const auto& t : enumerate_trees(h, 6, 1)) {
      const Configuration c = realize_tree(t);
      CHECK(tree_of_configuration(c) == prune(t).pruned);
      for (const auto& p : c.points()) {
        for (const auto& x : p) CHECK(x.get_den() == 1);
      }
    }
  }
}

TEST_CASE("exit path validation examples") {
  const auto one = validate_exit_path(C(1, {{"0"}}), C(1, {{"-1"}, {"1"}}), {0, 0});
  CHECK(one.valid);
  const Configuration s = C(1, {{"0"}, {"1"}});
  const auto swap = validate_exit_path(s, s, {1, 0});
  CHECK_FALSE(swap.valid);
  REQUIRE(swap.levels.size() == 1);
  CHECK_FALSE(swap.levels[0].strands_disjoint);
  REQUIRE(swap.levels[0].detail);
  CHECK(swap.levels[0].detail->find("1/2") != std::string::npos);
  CHECK(validate_exit_path(s, s, {0, 1}).valid);
  CHECK_THROWS_AS(validate_exit_path(s, C(2, {{"0", "0"}}), {0}), InvalidArgument);
  CHECK_THROWS_AS(validate_exit_path(s, s, {0, 2}), InvalidArgument);
  CHECK_THROWS_AS(validate_exit_path(s, s, {0}), InvalidArgument);
  // equal first coordinates must come from equal first coordinates
  const auto fiber = validate_exit_path(C(2, {{"0", "0"}, {"1", "0"}}), C(2, {{"1/2", "0"}, {"1/2", "1"}}), {0, 1});
  CHECK_FALSE(fiber.valid);
}

TEST_CASE("validation agrees with a brute-force collision search") {
  int valid = 0, invalid = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng(derive_seed(99, i));
    const int n = static_cast<int>(rng.uniform(1, 3));
    const Configuration s = random_configuration(n, static_cast<int>(rng.uniform(1, 4)), rng.next());
    const Configuration t = random_configuration(n, static_cast<int>(rng.uniform(0, 4)), rng.next());
    std::vector<int> f;
    for (int x = 0; x < t.size(); ++x) f.push_back(static_cast<int>(rng.uniform(0, s.size() - 1)));
    const bool v = validate_exit_path(s, t, f).valid;
    CHECK(v == oracle_valid(s, t, f));
    (v ? valid : invalid)++;
  }
  CHECK(valid > 10);
  CHECK(invalid > 10);
}

TEST_CASE("validation is invariant under rescaling") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(derive_seed(7, i));
    const int n = static_cast<int>(rng.uniform(1, 3));
    const Configuration s = random_configuration(n, static_cast<int>(rng.uniform(1, 4)), rng.next());
    const Configuration t = random_configuration(n, static_cast<int>(rng.uniform(0, 4)), rng.next());
    std::vector<int> f;
    for (int x = 0; x < t.size(); ++x) f.push_back(static_cast<int>(rng.uniform(0, s.size() - 1)));
    const Rational c(rng.uniform(1, 50), rng.uniform(1, 50));
    auto scale = [&](const Configuration& x) {
      std::vector<Point> pts = x.points();
      for (auto& p : pts) {
        for (auto& v : p) v *= c;
      }
      return Configuration(n, pts);
    };
    CHECK(validate_exit_path(s, t, f).valid == validate_exit_path(scale(s), scale(t), f).valid);
  }
}

TEST_CASE("morphisms of exit paths") {
  const Configuration s = C(1, {{"0"}, {"10"}, {"20"}});
  const Configuration t = C(1, {{"-1"}, {"1"}, {"10"}});
  const auto v = validate_exit_path(s, t, {0, 0, 1});
  REQUIRE(v.valid);
  const ThetaMorphism m = morphism_of_exit_path(*v.path);
  CHECK(m.base() == MonotoneMap(3, {0, 2, 3, 3}));
  CHECK(leaf_map(m) == PointedMap(3, {1, 1, 2}));

  const auto id = validate_exit_path(s, s, {0, 1, 2});
  CHECK(morphism_of_exit_path(*id.path) == ThetaMorphism::identity(Tree::corolla(3)));

  const Configuration s2 = C(2, {{"1", "1"}, {"2", "1"}});
  const Configuration t2 = C(2, {{"1", "1"}, {"1", "2"}, {"2", "1"}});
  const auto v2 = validate_exit_path(s2, t2, {0, 0, 1});
  REQUIRE(v2.valid);
  const ThetaMorphism m2 = morphism_of_exit_path(*v2.path);
  CHECK(m2.base() == MonotoneMap::identity(2));
  REQUIRE(m2.components().size() == 2);
  CHECK(m2.components()[0].base() == MonotoneMap(2, {0, 2}));
  CHECK(m2.components()[1] == ThetaMorphism::identity(Tree::corolla(1)));
  CHECK(m2.to_string() == "(0,1,2){1>1:(0,2);2>2:(0,1)}");
}

TEST_CASE("random sampling") {
  CHECK(random_configuration(2, 0, 5).empty());
  const Configuration c = random_configuration(2, 3, 7);
  CHECK(c.size() == 3);
  CHECK(c == random_configuration(2, 3, 7));
  const ExitPath e = random_exit_path(Configuration(2, {}), 3);
  CHECK(e.target().empty());
  CHECK(e.map().empty());
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Configuration s = random_configuration(static_cast<int>(i % 3) + 1, static_cast<int>(i % 6), i);
    const ExitPath p = random_exit_path(s, i);
    CHECK(validate_exit_path(p.source(), p.target(), p.map()).valid);
    const ThetaMorphism m = morphism_of_exit_path(p);
    const Classification cl = classify_morphism(m);
    CHECK(cl.active);
    CHECK(m.source() == tree_of_configuration(p.source()));
    CHECK(m.target() == tree_of_configuration(p.target()));
    // exit iff both nonempty and the point map is onto at every projection level
    bool onto = !p.source().empty() && !p.target().empty();
    for (int k = 1; k <= s.dimension() && onto; ++k) {
      for (const auto& sp : p.source().points()) {
        bool hit = false;
        for (int x : p.map()) hit |= std::equal(sp.begin(), sp.begin() + k, p.source().point(x).begin());
        onto &= hit;
      }
    }
    CHECK(cl.exit == onto);
  }
}

TEST_CASE("composition of exit data") {
  const Configuration s = C(1, {{"0"}});
  const Configuration t = C(1, {{"-1"}, {"1"}});
  const Configuration u = C(1, {{"-2"}, {"-1/2"}, {"1"}});
  const ExitData fg = compose_exit_data({s, t, {0, 0}}, {t, u, {0, 0, 1}});
  CHECK(fg.map == std::vector<int>{0, 0, 0});
  CHECK_THROWS_AS(compose_exit_data({s, t, {0, 0}}, {s, t, {0, 0}}), CompositionError);
  const Configuration two = C(1, {{"0"}, {"1"}});
  CHECK_THROWS_AS(morphism_of_exit_data({two, two, {1, 0}}), InvalidArgument);
}
