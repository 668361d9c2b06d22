#include "theta_ran/config.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "theta_ran/error.hpp"
#include "theta_ran/rng.hpp"

namespace theta_ran {

Rational parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t k = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (k >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(k), t.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  if (!valid_int(s.substr(0, slash)) ||
      (slash != std::string::npos && !valid_int(s.substr(slash + 1)))) {
    throw ParseError("rational: cannot parse \"" + text + "\"");
  }
  auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
  mpz_class num(strip_plus(s.substr(0, slash)), 10);
  mpz_class den(1);
  if (slash != std::string::npos) den = mpz_class(strip_plus(s.substr(slash + 1)), 10);
  if (den == 0) throw ParseError("rational: zero denominator in \"" + text + "\"");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Configuration::Configuration(int dimension, std::vector<Point> points)
    : dimension_(dimension), points_(std::move(points)) {
  if (dimension_ < 1) throw InvalidArgument("configuration: dimension must be at least 1");
  for (const auto& p : points_) {
    if (static_cast<int>(p.size()) != dimension_) {
      throw InvalidArgument("configuration: point with " + std::to_string(p.size()) +
                            " coordinates in dimension " + std::to_string(dimension_));
    }
  }
  std::vector<const Point*> sorted;
  for (const auto& p : points_) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(), [](const Point* a, const Point* b) { return *a < *b; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (*sorted[i] == *sorted[i - 1]) {
      std::string coords;
      for (const auto& c : *sorted[i]) coords += (coords.empty() ? "" : ",") + c.get_str();
      throw InvalidArgument("configuration: repeated point (" + coords + ")");
    }
  }
}

std::string Configuration::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (i) out += ',';
    out += '(';
    for (std::size_t c = 0; c < points_[i].size(); ++c) {
      if (c) out += ',';
      out += points_[i][c].get_str();
    }
    out += ')';
  }
  return out + '}';
}

namespace {

// Points viewed from coordinate `offset` on; the fibers of the recursion.
struct View {
  const std::vector<Point>* points;
  std::vector<int> members;  // indices into *points
  int offset;
  int dimension;  // remaining coordinates
};

const Rational& coord(const View& v, int member, int c) {
  return (*v.points)[static_cast<std::size_t>(member)][static_cast<std::size_t>(v.offset + c)];
}

// Distinct first coordinates in increasing order, with each member's block index.
std::vector<Rational> first_coordinates(const View& v, std::vector<int>* block_of = nullptr) {
  std::vector<Rational> values;
  for (int m : v.members) values.push_back(coord(v, m, 0));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (block_of) {
    block_of->clear();
    for (int m : v.members) {
      auto it = std::lower_bound(values.begin(), values.end(), coord(v, m, 0));
      block_of->push_back(static_cast<int>(it - values.begin()));
    }
  }
  return values;
}

std::vector<View> fibers(const View& v, const std::vector<int>& block_of, std::size_t blocks) {
  std::vector<View> out(blocks, View{v.points, {}, v.offset + 1, v.dimension - 1});
  for (std::size_t k = 0; k < v.members.size(); ++k) {
    out[static_cast<std::size_t>(block_of[k])].members.push_back(v.members[k]);
  }
  return out;
}

Tree tree_of_view(const View& v) {
  if (v.dimension == 1) return Tree::corolla(static_cast<int>(v.members.size()));
  if (v.members.empty()) return Tree::empty(v.dimension);
  std::vector<int> block_of;
  const auto values = first_coordinates(v, &block_of);
  std::vector<Tree> kids;
  for (const auto& f : fibers(v, block_of, values.size())) kids.push_back(tree_of_view(f));
  return Tree::node(std::move(kids));
}

View whole(const Configuration& s) {
  View v{&s.points(), std::vector<int>(static_cast<std::size_t>(s.size())), 0, s.dimension()};
  std::iota(v.members.begin(), v.members.end(), 0);
  return v;
}

}  // namespace

Tree tree_of_configuration(const Configuration& s) { return tree_of_view(whole(s)); }

std::vector<int> leaf_order(const Configuration& s) {
  std::vector<int> order(static_cast<std::size_t>(s.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return s.point(a) < s.point(b); });
  return order;
}

namespace {

void realize_into(const Tree& t, Point& prefix, std::vector<Point>& out) {
  if (t.height() == 1) {
    for (int i = 1; i <= t.rank(); ++i) {
      prefix.emplace_back(i);
      out.push_back(prefix);
      prefix.pop_back();
    }
    return;
  }
  for (int i = 1; i <= t.rank(); ++i) {
    prefix.emplace_back(i);
    realize_into(t.child(i), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

Configuration realize_tree(const Tree& t) {
  std::vector<Point> pts;
  Point prefix;
  realize_into(t, prefix, pts);
  return Configuration(t.height(), std::move(pts));
}

namespace {

// Solutions u of A + uB = 0 over Q.
struct Solutions {
  enum Kind { all, none, single } kind = all;
  Rational u;
};

Solutions intersect(const Solutions& a, const Solutions& b) {
  if (a.kind == Solutions::none || b.kind == Solutions::none) return {Solutions::none, {}};
  if (a.kind == Solutions::all) return b;
  if (b.kind == Solutions::all) return a;
  if (a.u == b.u) return a;
  return {Solutions::none, {}};
}

Solutions solve_coordinate(const Rational& a, const Rational& b, const Rational& a2, const Rational& b2) {
  const Rational A = a - a2;
  const Rational B = (b - b2) - A;
  if (B == 0) return A == 0 ? Solutions{Solutions::all, {}} : Solutions{Solutions::none, {}};
  return {Solutions::single, -A / B};
}

bool prefix_equal(const Point& x, const Point& y, int k) {
  return std::equal(x.begin(), x.begin() + k, y.begin());
}

}  // namespace

ExitPathVerdict validate_exit_path(const Configuration& source, const Configuration& target,
                                   const std::vector<int>& map) {
  if (source.dimension() != target.dimension()) {
    throw InvalidArgument("exit path: source dimension " + std::to_string(source.dimension()) +
                          " differs from target dimension " + std::to_string(target.dimension()));
  }
  if (static_cast<int>(map.size()) != target.size()) {
    throw InvalidArgument("exit path: map has " + std::to_string(map.size()) + " entries for " +
                          std::to_string(target.size()) + " target points");
  }
  for (int s : map) {
    if (s < 0 || s >= source.size()) {
      throw InvalidArgument("exit path: map value " + std::to_string(s) + " is not a source point");
    }
  }
  const int n = source.dimension();
  ExitPathVerdict verdict;
  verdict.valid = true;
  for (int k = 1; k <= n; ++k) {
    LevelDiagnostic d;
    d.level = k;
    for (int t = 0; t < target.size(); ++t) {
      for (int t2 = t + 1; t2 < target.size(); ++t2) {
        const Point& x = target.point(t);
        const Point& x2 = target.point(t2);
        const Point& fx = source.point(map[static_cast<std::size_t>(t)]);
        const Point& fx2 = source.point(map[static_cast<std::size_t>(t2)]);
        if (prefix_equal(x, x2, k)) {
          if (d.fibers_preserved && !prefix_equal(fx, fx2, k)) {
            d.fibers_preserved = false;
            if (!d.detail) {
              d.detail = "target points " + std::to_string(t) + " and " + std::to_string(t2) +
                         " share their first " + std::to_string(k) +
                         " coordinates but their source points do not";
            }
          }
          continue;
        }
        Solutions sol;
        for (int c = 0; c < k && sol.kind != Solutions::none; ++c) {
          const auto cc = static_cast<std::size_t>(c);
          sol = intersect(sol, solve_coordinate(fx[cc], x[cc], fx2[cc], x2[cc]));
        }
        const bool meets = sol.kind == Solutions::all ||
                           (sol.kind == Solutions::single && sol.u > 0 && sol.u <= 1);
        if (meets && d.strands_disjoint) {
          d.strands_disjoint = false;
          if (!d.detail) {
            d.detail = "strands of target points " + std::to_string(t) + " and " + std::to_string(t2) +
                       " meet in the first " + std::to_string(k) + " coordinates" +
                       (sol.kind == Solutions::single ? " at u=" + sol.u.get_str() : "");
          }
        }
      }
    }
    if (!d.strands_disjoint || !d.fibers_preserved) verdict.valid = false;
    verdict.levels.push_back(std::move(d));
  }
  if (verdict.valid) verdict.path = ExitPath(ExitData{source, target, map}, verdict.levels);
  return verdict;
}

namespace {

ThetaMorphism morphism_of_views(const View& src, const View& tgt, const std::vector<int>& map) {
  const Tree s_tree = tree_of_view(src);
  const Tree t_tree = tree_of_view(tgt);
  std::vector<int> s_block, t_block;
  const auto s_values = first_coordinates(src, &s_block);
  const auto t_values = first_coordinates(tgt, &t_block);
  std::map<int, int> s_position;  // point index -> position in src.members
  for (std::size_t k = 0; k < src.members.size(); ++k) s_position[src.members[k]] = static_cast<int>(k);

  // level map on first coordinates, 0-based blocks
  std::vector<int> f1(t_values.size(), -1);
  for (std::size_t k = 0; k < tgt.members.size(); ++k) {
    const int s = map[static_cast<std::size_t>(tgt.members[k])];
    const auto it = s_position.find(s);
    if (it == s_position.end()) throw InvalidArgument("exit data: map leaves the matched fiber");
    const int block = s_block[static_cast<std::size_t>(it->second)];
    int& slot = f1[static_cast<std::size_t>(t_block[k])];
    if (slot != -1 && slot != block) {
      throw InvalidArgument("exit data: target points sharing first coordinates map to different source fibers");
    }
    slot = block;
  }
  const int p = static_cast<int>(s_values.size());
  const int q = static_cast<int>(t_values.size());
  std::vector<int> base(static_cast<std::size_t>(p) + 1, 0);
  for (int j = 0; j < q; ++j) base[static_cast<std::size_t>(f1[static_cast<std::size_t>(j)]) + 1] += 1;
  for (int i = 1; i <= p; ++i) base[static_cast<std::size_t>(i)] += base[static_cast<std::size_t>(i - 1)];
  MonotoneMap delta(q, std::move(base));
  const PointedMap circle = simplicial_circle(delta);
  for (int j = 1; j <= q; ++j) {
    if (circle(j) != f1[static_cast<std::size_t>(j - 1)] + 1) {
      throw InvalidArgument("exit data: the induced map on first coordinates is not monotone");
    }
  }
  if (src.dimension == 1) return ThetaMorphism(s_tree, t_tree, std::move(delta), {});
  const auto s_fibers = fibers(src, s_block, s_values.size());
  const auto t_fibers = fibers(tgt, t_block, t_values.size());
  std::vector<ThetaMorphism> comps;
  for (int j = 0; j < q; ++j) {
    comps.push_back(morphism_of_views(s_fibers[static_cast<std::size_t>(f1[static_cast<std::size_t>(j)])],
                                      t_fibers[static_cast<std::size_t>(j)], map));
  }
  return ThetaMorphism(s_tree, t_tree, std::move(delta), std::move(comps));
}

}  // namespace

ThetaMorphism morphism_of_exit_data(const ExitData& data) {
  if (data.source.dimension() != data.target.dimension()) {
    throw InvalidArgument("exit data: dimensions differ");
  }
  if (static_cast<int>(data.map.size()) != data.target.size()) {
    throw InvalidArgument("exit data: map is not total on the target");
  }
  for (int s : data.map) {
    if (s < 0 || s >= data.source.size()) throw InvalidArgument("exit data: map value out of range");
  }
  return morphism_of_views(whole(data.source), whole(data.target), data.map);
}

ThetaMorphism morphism_of_exit_path(const ExitPath& path) { return morphism_of_exit_data(path.data()); }

ExitData compose_exit_data(const ExitData& first, const ExitData& second) {
  if (!(first.target == second.source)) {
    throw CompositionError("exit data: target " + first.target.to_string() + " differs from source " +
                           second.source.to_string());
  }
  std::vector<int> map;
  map.reserve(second.map.size());
  for (int u : second.map) map.push_back(first.map[static_cast<std::size_t>(u)]);
  return {first.source, second.target, std::move(map)};
}

Configuration random_configuration(int n, int k, std::uint64_t seed, int budget) {
  if (n < 1 || k < 0) throw InvalidArgument("random_configuration: need n >= 1 and k >= 0");
  const int side = n == 1 ? k + 1 : std::max(2, k);
  Rng rng(seed);
  std::set<Point> seen;
  std::vector<Point> pts;
  int draws = 0;
  while (static_cast<int>(pts.size()) < k) {
    if (++draws > budget) {
      throw ResourceError("random_configuration: sampling budget " + std::to_string(budget) + " exhausted");
    }
    Point p;
    for (int c = 0; c < n; ++c) p.emplace_back(static_cast<long>(rng.uniform(1, side)));
    if (seen.insert(p).second) pts.push_back(std::move(p));
  }
  return Configuration(n, std::move(pts));
}

ExitPath random_exit_path(const Configuration& source, std::uint64_t seed, int budget) {
  const int n = source.dimension();
  Rational gap;
  bool have_gap = false;
  for (int c = 0; c < n; ++c) {
    std::vector<Rational> values;
    for (const auto& p : source.points()) values.push_back(p[static_cast<std::size_t>(c)]);
    std::sort(values.begin(), values.end());
    for (std::size_t i = 1; i < values.size(); ++i) {
      const Rational d = values[i] - values[i - 1];
      if (d > 0 && (!have_gap || d < gap)) {
        gap = d;
        have_gap = true;
      }
    }
  }
  if (!have_gap) gap = 1;
  const Rational step = gap / 4;
  Rng rng(seed);
  for (int attempt = 0; attempt < budget; ++attempt) {
    std::vector<Point> pts;
    std::vector<int> map;
    for (int s = 0; s < source.size(); ++s) {
      const auto action = rng.uniform(0, 3);
      const int copies = action == 0 ? 0 : action == 3 ? static_cast<int>(rng.uniform(2, 3)) : 1;
      for (int c = 0; c < copies; ++c) {
        Point p = source.point(s);
        for (auto& x : p) x += step * static_cast<long>(rng.uniform(-2, 2));
        pts.push_back(std::move(p));
        map.push_back(s);
      }
    }
    std::vector<int> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<Point> shuffled;
    std::vector<int> shuffled_map;
    for (int o : order) {
      shuffled.push_back(pts[static_cast<std::size_t>(o)]);
      shuffled_map.push_back(map[static_cast<std::size_t>(o)]);
    }
    std::set<Point> distinct(shuffled.begin(), shuffled.end());
    if (distinct.size() != shuffled.size()) continue;
    auto verdict = validate_exit_path(source, Configuration(n, std::move(shuffled)), shuffled_map);
    if (verdict.valid) return std::move(*verdict.path);
  }
  throw ResourceError("random_exit_path: no valid path within " + std::to_string(budget) + " attempts");
}

}  // namespace theta_ran
