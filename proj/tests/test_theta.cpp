#include <doctest.h>

#include <set>

#include "theta_ran/error.hpp"
#include "theta_ran/theta.hpp"

using namespace theta_ran;

namespace {

Tree T(const char* s, int h = 0) { return h ? Tree::parse(s, h) : Tree::parse(s); }

// |Hom(S, T)| by direct recursion over every sequence in [0,q]^{p+1}.
std::uint64_t brute_count(const Tree& s, const Tree& t, bool active) {
  const int p = s.rank(), q = t.rank();
  std::uint64_t total = 0;
  std::vector<int> v(static_cast<std::size_t>(p + 1), 0);
  while (true) {
    const bool monotone = std::is_sorted(v.begin(), v.end());
    const bool ends = v.front() == 0 && v.back() == q;
    if (monotone && (!active || ends)) {
      std::uint64_t prod = 1;
      if (s.height() > 1) {
        for (int j = 1; j <= q; ++j) {
          for (int i = 1; i <= p; ++i) {
            if (v[static_cast<std::size_t>(i - 1)] < j && j <= v[static_cast<std::size_t>(i)]) {
              prod *= brute_count(s.child(i), t.child(j), active);
            }
          }
        }
      }
      total += prod;
    }
    std::size_t i = 0;
    while (i < v.size() && v[i] == q) v[i++] = 0;
    if (i == v.size()) break;
    ++v[i];
  }
  return total;
}

std::vector<Tree> sample_trees(int height) {
  if (height == 1) return {Tree::corolla(0), Tree::corolla(1), Tree::corolla(2)};
  if (height == 2) return {T("[1]([1])"), T("[2]([0],[2])"), T("[1]([2])"), T("[2]([1],[1])"), T("[0]", 2)};
  return {T("[1]([1]([1]))"), T("[2]([1]([1]),[0])"), T("[1]([2]([1],[0]))"), T("[1]([1]([2]))")};
}

}  // namespace

TEST_CASE("constructor validates the wreath datum") {
  const Tree s = T("[1]([1])");
  CHECK_NOTHROW(ThetaMorphism(s, s, MonotoneMap(1, {0, 1}),
                              {ThetaMorphism(Tree::corolla(1), Tree::corolla(1), MonotoneMap(1, {0, 1}), {})}));
  // missing component over j = 1
  CHECK_THROWS_AS(ThetaMorphism(s, s, MonotoneMap(1, {0, 1}), {}), InvalidArgument);
  // component over a basepoint fiber
  CHECK_THROWS_AS(ThetaMorphism(s, s, MonotoneMap(1, {0, 0}),
                                {ThetaMorphism(Tree::corolla(1), Tree::corolla(1), MonotoneMap(1, {0, 1}), {})}),
                  InvalidArgument);
  CHECK_THROWS_AS(ThetaMorphism(s, s, MonotoneMap(2, {0, 1}), {}), InvalidArgument);
}

TEST_CASE("hom-set sizes") {
  const Tree s = T("[1]([1])");
  CHECK(enumerate_theta_hom(s, s, HomFilter::all).size() == 5);
  const auto active = enumerate_theta_hom(s, s, HomFilter::active);
  REQUIRE(active.size() == 1);
  CHECK(active[0] == ThetaMorphism::identity(s));
  for (int h = 1; h <= 3; ++h) {
    for (const auto& a : sample_trees(h)) {
      for (const auto& b : sample_trees(h)) {
        const auto all = enumerate_theta_hom(a, b, HomFilter::all);
        CHECK(all.size() == brute_count(a, b, false));
        CHECK(enumerate_theta_hom(a, b, HomFilter::active).size() == brute_count(a, b, true));
        CHECK(projected_hom_size(a, b, HomFilter::all) == all.size());
        std::set<std::vector<int>> codes;
        for (const auto& m : all) codes.insert(m.encode());
        CHECK(codes.size() == all.size());
      }
      const auto self = enumerate_theta_hom(a, a, HomFilter::all);
      CHECK(std::find(self.begin(), self.end(), ThetaMorphism::identity(a)) != self.end());
    }
  }
}

TEST_CASE("filters agree with classification") {
  for (int h = 1; h <= 3; ++h) {
    for (const auto& a : sample_trees(h)) {
      for (const auto& b : sample_trees(h)) {
        const auto all = enumerate_theta_hom(a, b, HomFilter::all);
        std::vector<ThetaMorphism> active, exit, w;
        for (const auto& m : all) {
          const Classification c = classify_morphism(m);
          if (c.active) active.push_back(m);
          if (c.exit) exit.push_back(m);
          if (c.active && leaf_map(m).is_bijective()) w.push_back(m);
          CHECK(c.in_w == (c.active && leaf_map(m).is_bijective()));
        }
        auto sorted = [](std::vector<ThetaMorphism> v) {
          std::set<std::vector<int>> s;
          for (const auto& m : v) s.insert(m.encode());
          return s;
        };
        CHECK(sorted(enumerate_theta_hom(a, b, HomFilter::active)) == sorted(active));
        CHECK(sorted(enumerate_theta_hom(a, b, HomFilter::exit)) == sorted(exit));
        CHECK(sorted(enumerate_theta_hom(a, b, HomFilter::w)) == sorted(w));
      }
    }
  }
}

TEST_CASE("enumeration order does not depend on execution") {
  const Tree a = T("[2]([2]([1],[1]),[1]([2]))");
  const Tree b = T("[3]([1]([2]),[2]([1],[1]),[1]([1]))");
  for (auto f : {HomFilter::all, HomFilter::active, HomFilter::w}) {
    CHECK(enumerate_theta_hom(a, b, f, {}, Execution::serial) == enumerate_theta_hom(a, b, f, {}, Execution::parallel));
  }
}

TEST_CASE("hom enumeration refuses oversized inputs") {
  const Tree a = T("[3]([3]([3],[3],[3]),[3]([3],[3],[3]),[3]([3],[3],[3]))");
  CHECK_THROWS_AS(enumerate_theta_hom(a, a, HomFilter::all, {1000}), ResourceError);
  CHECK_THROWS_AS(enumerate_theta_hom(T("[1]([1])"), Tree::corolla(1), HomFilter::all), InvalidArgument);
}

TEST_CASE("composition laws on exhaustive small hom-sets") {
  const auto h1 = MonotoneMap(2, {0, 2});
  const auto f1 = MonotoneMap(1, {0, 1, 1});
  CHECK(compose_theta(ThetaMorphism(Tree::corolla(1), Tree::corolla(2), h1, {}),
                      ThetaMorphism(Tree::corolla(2), Tree::corolla(1), f1, {}))
            .base() == MonotoneMap(2, {0, 2, 2}));
  for (int h = 1; h <= 3; ++h) {
    const auto trees = sample_trees(h);
    for (const auto& a : trees) {
      for (const auto& b : trees) {
        const auto fs = enumerate_theta_hom(a, b, HomFilter::all);
        for (const auto& f : fs) {
          CHECK(compose_theta(ThetaMorphism::identity(b), f) == f);
          CHECK(compose_theta(f, ThetaMorphism::identity(a)) == f);
        }
        for (const auto& c : trees) {
          const auto gs = enumerate_theta_hom(b, c, HomFilter::all);
          std::size_t pairs = 0;
          for (const auto& f : fs) {
            for (const auto& g : gs) {
              if (++pairs > 400) break;
              const ThetaMorphism gf = compose_theta(g, f);
              CHECK(gf.source() == a);
              CHECK(gf.target() == c);
              CHECK(gf.base() == compose_delta(g.base(), f.base()));
              CHECK(leaf_map(gf) == compose(leaf_map(f), leaf_map(g)));
              const Classification cf = classify_morphism(f), cg = classify_morphism(g);
              const Classification cgf = classify_morphism(gf);
              if (cf.active && cg.active) {
                CHECK(cgf.active);
                for (int level = 1; level <= h; ++level) {
                  CHECK(truncate(gf, level) == compose_theta(truncate(g, level), truncate(f, level)));
                }
              }
              if (cf.in_w && cg.in_w) CHECK(cgf.in_w);
              if (cf.exit && cg.exit) CHECK(cgf.exit);
              for (const auto& d : trees) {
                const auto ks = enumerate_theta_hom(c, d, HomFilter::all);
                if (ks.empty()) continue;
                const auto& k = ks[pairs % ks.size()];
                CHECK(compose_theta(k, gf) == compose_theta(compose_theta(k, g), f));
              }
            }
          }
        }
      }
    }
  }
  CHECK_THROWS_AS(compose_theta(ThetaMorphism::identity(T("[1]([1])")), ThetaMorphism::identity(T("[1]([2])"))),
                  CompositionError);
}

TEST_CASE("layers and ladders") {
  const LayerDiagram d = leaves(T("[3]([1],[3],[0])"));
  CHECK(d.sizes == std::vector<int>{4, 3});
  REQUIRE(d.down.size() == 1);
  std::vector<int> fiber(3, 0);
  for (int v : d.down[0]) ++fiber[static_cast<std::size_t>(v - 1)];
  CHECK(fiber == std::vector<int>{1, 3, 0});
  const LayerDiagram e = leaves(Tree::empty(3));
  CHECK(e.sizes == std::vector<int>{0, 0, 0});
  const LayerDiagram b = leaves(T("[2]([1],[1])"));
  CHECK(b.sizes == std::vector<int>{2, 2});
  CHECK(b.down[0] == std::vector<int>{1, 2});
  for (int h = 2; h <= 3; ++h) {
    for (const auto& a : sample_trees(h)) {
      for (const auto& c : sample_trees(h)) {
        for (const auto& m : enumerate_theta_hom(a, c, HomFilter::active)) CHECK(ladder(m).commutes());
      }
    }
  }
}

TEST_CASE("classification examples") {
  const Tree t = T("[2]([1],[1])");
  const Classification id = classify_morphism(ThetaMorphism::identity(t));
  CHECK(id.active);
  CHECK(id.exit);
  CHECK(id.in_w);
  const auto w = enumerate_theta_hom(T("[2]([0],[2])"), T("[1]([2])"), HomFilter::w);
  REQUIRE(w.size() == 1);
  const Classification c = classify_morphism(w[0]);
  CHECK(c.active);
  CHECK(c.in_w);
  CHECK_FALSE(c.exit);
  const Tree s = T("[1]([2])");
  const ThetaMorphism merge(s, s, MonotoneMap(1, {0, 1}),
                            {ThetaMorphism(Tree::corolla(2), Tree::corolla(2), MonotoneMap(2, {0, 2, 2}), {})});
  const Classification m = classify_morphism(merge);
  CHECK(m.active);
  CHECK_FALSE(m.in_w);
  CHECK(leaf_map(merge) == PointedMap(2, {1, 1}));
}

TEST_CASE("truncation of morphisms") {
  const Tree t = T("[3]([1]([2]),[3]([0],[2],[0]),[0])");
  const ThetaMorphism id = ThetaMorphism::identity(t);
  CHECK(truncate(id, 2) == ThetaMorphism::identity(T("[3]([1],[3],[0])")));
  CHECK(truncate(id, 1) == ThetaMorphism::identity(Tree::corolla(3)));
  CHECK(truncate(id, 3) == id);
  CHECK_THROWS_AS(truncate(id, 4), InvalidArgument);
}

TEST_CASE("pruning") {
  const PruneResult a = prune(T("[2]([0],[2])"));
  CHECK(a.pruned == T("[1]([2])"));
  CHECK(a.unit.base() == MonotoneMap(1, {0, 0, 1}));
  CHECK(classify_morphism(a.unit).in_w);
  const PruneResult b = prune(T("[2]([1]([2]),[2]([0],[1]))"));
  CHECK(b.pruned == T("[2]([1]([2]),[1]([1]))"));
  const PruneResult e = prune(Tree::empty(3));
  CHECK(e.pruned == Tree::empty(3));
  for (int h = 1; h <= 3; ++h) {
    for (const auto& t : enumerate_trees(h, 5, 1)) {
      const PruneResult r = prune(t);
      CHECK(is_healthy(r.pruned));
      CHECK(r.pruned.leaf_count() == t.leaf_count());
      CHECK(r.unit.source() == t);
      CHECK(r.unit.target() == r.pruned);
      CHECK(classify_morphism(r.unit).in_w);
      CHECK(prune(r.pruned).unit == ThetaMorphism::identity(r.pruned));
      if (is_healthy(t)) CHECK(r.unit == ThetaMorphism::identity(t));
    }
  }
}

TEST_CASE("initiality of the pruning unit") {
  CHECK(verify_initiality(T("[2]([0],[2])"), 4).passed);
  CHECK(verify_initiality(T("[2]([1],[1])"), 4).passed);
  CHECK(verify_initiality(Tree::corolla(3), 4).passed);
  CHECK(verify_initiality(T("[3]([1]([0]),[2]([1],[0]),[1]([2]))"), 4).passed);
  CHECK_THROWS_AS(verify_initiality(T("[1]([5])"), 4), InvalidArgument);
  HomCache cache;
  for (const auto& t : enumerate_trees(2, 4, 2)) {
    const InitialityReport r = verify_initiality(t, 4, {}, Execution::serial, &cache);
    CHECK(r.passed);
  }
}
