#include <doctest.h>

#include <numeric>

#include "theta_ran/error.hpp"
#include "theta_ran/homology.hpp"
#include "theta_ran/rng.hpp"
#include "theta_ran/tree.hpp"

using namespace theta_ran;

namespace {

using Dense = std::vector<std::vector<long>>;

mpz_class laplace_det(const std::vector<std::vector<mpz_class>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  mpz_class det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      minor.emplace_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) minor.back().push_back(a[r][j]);
      }
    }
    const mpz_class term = a[0][c] * laplace_det(minor);
    det += c % 2 ? -term : term;
  }
  return det;
}

// gcd of all k x k minors, by cofactor expansion.
mpz_class minor_gcd(const Dense& m, std::size_t k) {
  const std::size_t rows = m.size(), cols = m[0].size();
  mpz_class g = 0;
  for (unsigned rs = 0; rs < (1u << rows); ++rs) {
    if (static_cast<std::size_t>(__builtin_popcount(rs)) != k) continue;
    for (unsigned cs = 0; cs < (1u << cols); ++cs) {
      if (static_cast<std::size_t>(__builtin_popcount(cs)) != k) continue;
      std::vector<std::vector<mpz_class>> sub;
      for (std::size_t i = 0; i < rows; ++i) {
        if (!(rs >> i & 1)) continue;
        sub.emplace_back();
        for (std::size_t j = 0; j < cols; ++j) {
          if (cs >> j & 1) sub.back().push_back(m[i][j]);
        }
      }
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), mpz_class(laplace_det(sub)).get_mpz_t());
    }
  }
  return g;
}

std::vector<std::uint64_t> betti(const FiniteCategoryView& c, int max_degree = 3) {
  return homology_of_category(c, max_degree).betti();
}

}  // namespace

TEST_CASE("smith normal form examples") {
  CHECK(smith_normal_form(IntegerMatrix::from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).divisors ==
        std::vector<mpz_class>{1, 1, 1});
  const SmithForm s = smith_normal_form(IntegerMatrix::from_dense({{2, 4}, {6, 8}}));
  CHECK(s.divisors == std::vector<mpz_class>{2, 4});
  CHECK(s.rank() == 2);
  CHECK(smith_normal_form(IntegerMatrix(3, 2)).rank() == 0);
  CHECK(smith_normal_form(IntegerMatrix(0, 0)).rank() == 0);
}

TEST_CASE("smith normal form against cofactor minors") {
  for (std::uint64_t i = 0; i < 150; ++i) {
    Rng rng(derive_seed(11, i));
    const auto rows = static_cast<std::size_t>(rng.uniform(1, 5));
    const auto cols = static_cast<std::size_t>(rng.uniform(1, 5));
    const long spread = i % 3 == 0 ? 1 : 9;
    Dense m(rows, std::vector<long>(cols));
    for (auto& r : m) {
      for (auto& x : r) x = rng.uniform(-spread, spread);
    }
    const SmithForm s = smith_normal_form(IntegerMatrix::from_dense(m));
    mpz_class prod = 1;
    std::size_t rank = 0;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
      const mpz_class g = minor_gcd(m, k);
      if (g == 0) break;
      rank = k;
      REQUIRE(s.divisors.size() >= k);
      prod *= s.divisors[k - 1];
      CHECK(prod == g);
    }
    CHECK(static_cast<std::size_t>(s.rank()) == rank);
    for (std::size_t k = 1; k < s.divisors.size(); ++k) CHECK(s.divisors[k] % s.divisors[k - 1] == 0);
  }
}

TEST_CASE("sparse matrices") {
  IntegerMatrix m(3, 2);
  m.set_column(0, {{2, 5}, {0, 1}, {1, 0}});
  CHECK(m.column(0).size() == 2);
  CHECK(m.at(2, 0) == 5);
  CHECK(m.at(1, 0) == 0);
  CHECK(m.nonzeros() == 2);
  const IntegerMatrix a = IntegerMatrix::from_dense({{1, 2}, {3, 4}});
  const IntegerMatrix b = IntegerMatrix::from_dense({{0, 1}, {1, 0}});
  CHECK((a * b).dense() == IntegerMatrix::from_dense({{2, 1}, {4, 3}}).dense());
}

TEST_CASE("category builder") {
  FiniteCategoryView::Builder b;
  const int x = b.add_object("x");
  const int y = b.add_object("y");
  const int f = b.add_morphism(x, y, "f");
  const int g = b.add_morphism(y, x, "g");
  b.set_composite(g, f, b.add_morphism(x, x, "gf"));
  CHECK_THROWS_AS(std::move(b).build(), InvalidArgument);

  const FiniteCategoryView arrow = poset_category(2, [](int a, int c) { return a <= c; });
  CHECK(arrow.object_count() == 2);
  CHECK(arrow.morphism_count() == 3);
  CHECK(arrow.check_laws().empty());
  CHECK(arrow.is_poset_like());
}

TEST_CASE("nerves and homology of small categories") {
  const FiniteCategoryView arrow = poset_category(2, [](int a, int c) { return a <= c; });
  const ChainComplex cx = nerve_chain_complex(arrow, 3);
  CHECK(cx.sizes == std::vector<std::uint64_t>{2, 1, 0, 0});
  CHECK(betti(arrow) == std::vector<std::uint64_t>{1, 0, 0, 0});
  const FiniteCategoryView circle = poset_category(4, [](int a, int c) { return a == c || (a < 2 && c >= 2); });
  CHECK(betti(circle) == std::vector<std::uint64_t>{1, 1, 0, 0});
  for (int p = 0; p <= 4; ++p) {
    const FiniteCategoryView chain = poset_category(p + 1, [](int a, int c) { return a <= c; });
    const HomologyResult h = homology_of_category(chain, 3);
    CHECK(h.groups() == std::vector<std::string>{"Z", "0", "0", "0"});
    CHECK(h.boundary_squares_vanish);
  }
  // the boundary of a triangle as the face poset of its vertices and edges
  const FiniteCategoryView triangle = poset_category(6, [](int a, int c) {
    if (a == c) return true;
    return a < 3 && c >= 3 && (c - 3 == a || (c - 2) % 3 == a);
  });
  CHECK(betti(triangle) == std::vector<std::uint64_t>{1, 1, 0, 0});
}

TEST_CASE("boundaries square to zero") {
  for (auto kind : {CategoryKind::nord, CategoryKind::w_hlt}) {
    const ChainComplex cx = nerve_chain_complex(build_category(kind, 2, 3), 4);
    for (std::size_t d = 1; d < cx.boundaries.size(); ++d) CHECK((cx.boundaries[d - 1] * cx.boundaries[d]).is_zero());
  }
}

TEST_CASE("categories of trees") {
  const FiniteCategoryView nord = build_category(CategoryKind::nord, 2, 3);
  CHECK(nord.object_count() == static_cast<int>(enumerate_healthy_trees(2, 3).size()) * 6);
  CHECK(nord.object_count() == 24);
  CHECK(nord.check_laws(200000).empty());
  CHECK(nord.is_poset_like());
  const FiniteCategoryView w = build_category(CategoryKind::w_hlt, 2, 3);
  REQUIRE(w.object_count() == 4);
  std::vector<std::string> names;
  for (int a = 0; a < 4; ++a) names.push_back(w.object_name(a));
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"[1]([3])", "[2]([1],[2])", "[2]([2],[1])", "[3]([1],[1],[1])"});
  CHECK(w.check_laws().empty());
  const FiniteCategoryView w3 = build_category(CategoryKind::w_hlt, 3, 2);
  CHECK(w3.object_count() == 3);
  CHECK_FALSE(w3.is_poset_like());
  CHECK_THROWS_AS(build_category(CategoryKind::nord, 2, 5, {1'000'000, 100}), ResourceError);
  CHECK(parse_category_kind("w_hlt") == CategoryKind::w_hlt);
  CHECK_FALSE(parse_category_kind("x"));
}

TEST_CASE("homology of the configuration categories") {
  CHECK(betti(build_category(CategoryKind::nord, 2, 2)) == std::vector<std::uint64_t>{1, 1, 0, 0});
  CHECK(betti(build_category(CategoryKind::nord, 1, 3)) == std::vector<std::uint64_t>{6, 0, 0, 0});
  const HomologyResult rp2 = homology_of_category(build_category(CategoryKind::w_hlt, 3, 2), 3);
  CHECK(rp2.groups() == std::vector<std::string>{"Z", "Z/2", "0", "0"});
  CHECK(rp2.degrees[1].torsion == std::vector<mpz_class>{2});
}

TEST_CASE("homology does not depend on indexing or execution") {
  const FiniteCategoryView c = build_category(CategoryKind::nord, 2, 3);
  const HomologyResult h = homology_of_category(c, 3);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const FiniteCategoryView p = c.permuted(seed);
    CHECK(p.check_laws(100000).empty());
    CHECK(homology_of_category(p, 3).degrees == h.degrees);
  }
  CHECK(homology_of_category(c, 3, {}, Execution::serial).degrees == h.degrees);
  const ChainComplex a = nerve_chain_complex(c, 3, {}, Execution::serial);
  const ChainComplex b = nerve_chain_complex(c, 3, {}, Execution::parallel);
  CHECK(a.sizes == b.sizes);
  for (std::size_t d = 0; d < a.boundaries.size(); ++d) CHECK(a.boundaries[d].dense() == b.boundaries[d].dense());
  CHECK_THROWS_AS(nerve_chain_complex(c, 3, {10}), ResourceError);
}

TEST_CASE("group text") {
  HomologyResult h;
  h.degrees = {{1, {}}, {2, {2}}, {0, {}}, {0, {2, 6}}};
  CHECK(h.groups() == std::vector<std::string>{"Z", "Z^2 + Z/2", "0", "Z/2 + Z/6"});
}
