#include "theta_ran/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "theta_ran/error.hpp"
#include "theta_ran/rng.hpp"

namespace theta_ran {

namespace {

std::uint64_t pair_key(int g, int f) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g)) << 32) | static_cast<std::uint32_t>(f);
}

}  // namespace

int FiniteCategoryView::compose(int g, int f) const {
  const Morphism& mf = morphism(f);
  const Morphism& mg = morphism(g);
  if (mf.target != mg.source) {
    throw CompositionError("category: cannot compose " + mg.name + " after " + mf.name);
  }
  if (is_identity(f)) return g;
  if (is_identity(g)) return f;
  return composition_.at(pair_key(g, f));
}

std::size_t FiniteCategoryView::max_hom_size() const {
  std::size_t m = 0;
  for (const auto& h : hom_) m = std::max(m, h.size());
  return m;
}

FiniteCategoryView FiniteCategoryView::permuted(std::uint64_t seed) const {
  Rng rng(seed);
  std::vector<int> obj(static_cast<std::size_t>(object_count()));
  std::iota(obj.begin(), obj.end(), 0);
  rng.shuffle(obj);  // new object i is old object obj[i]
  std::vector<int> new_obj(obj.size());
  for (std::size_t i = 0; i < obj.size(); ++i) new_obj[static_cast<std::size_t>(obj[i])] = static_cast<int>(i);

  std::vector<int> mor;
  for (int m = 0; m < morphism_count(); ++m) {
    if (!is_identity(m)) mor.push_back(m);
  }
  rng.shuffle(mor);

  Builder b;
  for (int old : obj) b.add_object(object_name(old));
  std::vector<int> new_id(static_cast<std::size_t>(morphism_count()), -1);
  // identities of the new view are numbered like the objects
  for (int a = 0; a < object_count(); ++a) new_id[static_cast<std::size_t>(identity(a))] = new_obj[static_cast<std::size_t>(a)];
  for (int m : mor) {
    const Morphism& x = morphism(m);
    new_id[static_cast<std::size_t>(m)] = b.add_morphism(new_obj[static_cast<std::size_t>(x.source)],
                                                         new_obj[static_cast<std::size_t>(x.target)], x.name);
  }
  for (const auto& [key, gf] : composition_) {
    const int g = static_cast<int>(key >> 32);
    const int f = static_cast<int>(key & 0xffffffffULL);
    b.set_composite(new_id[static_cast<std::size_t>(g)], new_id[static_cast<std::size_t>(f)],
                    new_id[static_cast<std::size_t>(gf)]);
  }
  return std::move(b).build();
}

std::string FiniteCategoryView::check_laws(std::size_t limit) const {
  std::size_t checked = 0;
  for (int f = 0; f < morphism_count(); ++f) {
    const Morphism& mf = morphism(f);
    if (compose(identity(mf.target), f) != f || compose(f, identity(mf.source)) != f) {
      return "identity law fails for " + mf.name;
    }
    for (int g : outgoing(mf.target)) {
      const int gf = compose(g, f);
      const Morphism& mgf = morphism(gf);
      if (mgf.source != mf.source || mgf.target != morphism(g).target) {
        return "composite of " + morphism(g).name + " and " + mf.name + " has wrong endpoints";
      }
      for (int h : outgoing(morphism(g).target)) {
        if (checked++ >= limit) return {};
        if (compose(h, gf) != compose(compose(h, g), f)) {
          return "associativity fails for " + morphism(h).name + ", " + morphism(g).name + ", " + mf.name;
        }
      }
    }
  }
  return {};
}

int FiniteCategoryView::Builder::add_object(std::string name) {
  const int a = view_.object_count();
  if (view_.morphism_count() != a) {
    throw InvalidArgument("category builder: add every object before any morphism");
  }
  view_.object_names_.push_back(std::move(name));
  view_.morphisms_.push_back({a, a, "id"});
  view_.identities_.push_back(a);
  return a;
}

int FiniteCategoryView::Builder::add_morphism(int source, int target, std::string name) {
  const int n = view_.object_count();
  if (source < 0 || source >= n || target < 0 || target >= n) {
    throw InvalidArgument("category builder: morphism endpoint out of range");
  }
  view_.morphisms_.push_back({source, target, std::move(name)});
  return view_.morphism_count() - 1;
}

void FiniteCategoryView::Builder::set_composite(int g, int f, int gf) {
  view_.composition_[pair_key(g, f)] = gf;
}

FiniteCategoryView FiniteCategoryView::Builder::build() && {
  FiniteCategoryView v = std::move(view_);
  const auto n = static_cast<std::size_t>(v.object_count());
  v.hom_.assign(n * n, {});
  v.outgoing_.assign(n, {});
  for (int m = 0; m < v.morphism_count(); ++m) {
    const Morphism& x = v.morphism(m);
    v.hom_[static_cast<std::size_t>(x.source) * n + static_cast<std::size_t>(x.target)].push_back(m);
    v.outgoing_[static_cast<std::size_t>(x.source)].push_back(m);
  }
  for (int f = 0; f < v.morphism_count(); ++f) {
    if (v.is_identity(f)) continue;
    for (int g : v.outgoing(v.morphism(f).target)) {
      if (v.is_identity(g)) continue;
      auto it = v.composition_.find(pair_key(g, f));
      if (it == v.composition_.end()) {
        throw InvalidArgument("category builder: no composite for " + v.morphism(g).name + " after " +
                              v.morphism(f).name);
      }
      const Morphism& c = v.morphism(it->second);
      if (c.source != v.morphism(f).source || c.target != v.morphism(g).target) {
        throw InvalidArgument("category builder: composite of " + v.morphism(g).name + " after " +
                              v.morphism(f).name + " has wrong endpoints");
      }
    }
  }
  return v;
}

FiniteCategoryView poset_category(int n, const std::function<bool(int, int)>& leq) {
  FiniteCategoryView::Builder b;
  for (int a = 0; a < n; ++a) b.add_object(std::to_string(a));
  std::map<std::pair<int, int>, int> arrow;
  for (int a = 0; a < n; ++a) arrow[{a, a}] = a;
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      if (a != c && leq(a, c)) arrow[{a, c}] = b.add_morphism(a, c, std::to_string(a) + "<=" + std::to_string(c));
    }
  }
  for (const auto& [ab, f] : arrow) {
    for (const auto& [bc, g] : arrow) {
      if (bc.first != ab.second || ab.first == ab.second || bc.first == bc.second) continue;
      auto it = arrow.find({ab.first, bc.second});
      if (it == arrow.end()) throw InvalidArgument("poset_category: relation is not transitive");
      b.set_composite(g, f, it->second);
    }
  }
  return std::move(b).build();
}

IntegerMatrix IntegerMatrix::from_dense(const std::vector<std::vector<long>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows.front().size()) : 0;
  IntegerMatrix m(r, c);
  for (int j = 0; j < c; ++j) {
    std::vector<std::pair<int, mpz_class>> col;
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) {
        throw InvalidArgument("matrix: ragged rows");
      }
      const long v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v) col.emplace_back(i, mpz_class(v));
    }
    m.columns_[static_cast<std::size_t>(j)] = std::move(col);
  }
  return m;
}

void IntegerMatrix::set_column(int c, std::vector<std::pair<int, mpz_class>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<int, mpz_class>> merged;
  for (auto& e : entries) {
    if (e.first < 0 || e.first >= rows_) throw InvalidArgument("matrix: row index out of range");
    if (!merged.empty() && merged.back().first == e.first) {
      merged.back().second += e.second;
    } else {
      merged.push_back(std::move(e));
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& e) { return e.second == 0; }),
               merged.end());
  columns_[static_cast<std::size_t>(c)] = std::move(merged);
}

mpz_class IntegerMatrix::at(int r, int c) const {
  for (const auto& [row, v] : column(c)) {
    if (row == r) return v;
  }
  return 0;
}

std::size_t IntegerMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

std::vector<std::vector<mpz_class>> IntegerMatrix::dense() const {
  std::vector<std::vector<mpz_class>> out(static_cast<std::size_t>(rows_),
                                          std::vector<mpz_class>(static_cast<std::size_t>(cols_)));
  for (int c = 0; c < cols_; ++c) {
    for (const auto& [r, v] : column(c)) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
  }
  return out;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix: dimension mismatch in product");
  IntegerMatrix out(a.rows(), b.cols());
  for (int c = 0; c < b.cols(); ++c) {
    std::map<int, mpz_class> acc;
    for (const auto& [k, v] : b.column(c)) {
      for (const auto& [r, w] : a.column(k)) acc[r] += w * v;
    }
    std::vector<std::pair<int, mpz_class>> col(acc.begin(), acc.end());
    out.set_column(c, std::move(col));
  }
  return out;
}

namespace {

int cmpabs(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Row-major working copy for elimination, with a column-to-rows index.
class Elimination {
 public:
  explicit Elimination(const IntegerMatrix& m)
      : rows_(static_cast<std::size_t>(m.rows())), cols_(static_cast<std::size_t>(m.cols())) {
    for (int c = 0; c < m.cols(); ++c) {
      for (const auto& [r, v] : m.column(c)) {
        rows_[static_cast<std::size_t>(r)].emplace(c, v);
        cols_[static_cast<std::size_t>(c)].insert(r);
      }
    }
  }

  std::vector<mpz_class> run() {
    std::vector<mpz_class> diag;
    for (std::size_t c = 0; c < cols_.size(); ++c) {
      while (!cols_[c].empty()) diag.push_back(eliminate(best_in_column(static_cast<int>(c)), static_cast<int>(c)));
    }
    return diag;
  }

 private:
  mpz_class& entry(int r, int c) { return rows_[static_cast<std::size_t>(r)].at(c); }

  void set(int r, int c, mpz_class v) {
    auto& row = rows_[static_cast<std::size_t>(r)];
    if (v == 0) {
      row.erase(c);
      cols_[static_cast<std::size_t>(c)].erase(r);
    } else {
      row[c] = std::move(v);
      cols_[static_cast<std::size_t>(c)].insert(r);
    }
  }

  int best_in_column(int c) {
    int best = -1;
    for (int r : cols_[static_cast<std::size_t>(c)]) {
      if (best < 0) {
        best = r;
        continue;
      }
      const int cmp = cmpabs(entry(r, c), entry(best, c));
      if (cmp < 0 || (cmp == 0 && rows_[static_cast<std::size_t>(r)].size() < rows_[static_cast<std::size_t>(best)].size())) {
        best = r;
      }
    }
    return best;
  }

  int best_in_row(int r) {
    int best = -1;
    for (const auto& [c, v] : rows_[static_cast<std::size_t>(r)]) {
      if (best < 0 || cmpabs(v, entry(r, best)) < 0) best = c;
    }
    return best;
  }

  // row dst -= q * row src
  void row_axpy(int dst, int src, const mpz_class& q) {
    for (const auto& [c, v] : rows_[static_cast<std::size_t>(src)]) {
      auto& row = rows_[static_cast<std::size_t>(dst)];
      auto it = row.find(c);
      mpz_class x = (it == row.end() ? mpz_class(0) : it->second) - q * v;
      set(dst, c, std::move(x));
    }
  }

  // Reduces the pivot's row and column to the pivot alone; returns |pivot|.
  mpz_class eliminate(int r, int c) {
    while (true) {
      const mpz_class p = entry(r, c);
      bool moved = false;
      const std::vector<int> others(cols_[static_cast<std::size_t>(c)].begin(), cols_[static_cast<std::size_t>(c)].end());
      for (int r2 : others) {
        if (r2 == r) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), entry(r2, c).get_mpz_t(), p.get_mpz_t());
        if (q != 0) row_axpy(r2, r, q);
        if (cols_[static_cast<std::size_t>(c)].count(r2)) moved = true;
      }
      if (moved) {
        r = best_in_column(c);
        continue;
      }
      // column c now holds only the pivot, so column operations touch row r only
      std::vector<std::pair<int, mpz_class>> rest;
      for (const auto& [c2, v] : rows_[static_cast<std::size_t>(r)]) {
        if (c2 != c) rest.emplace_back(c2, v);
      }
      for (auto& [c2, v] : rest) {
        mpz_class rem;
        mpz_tdiv_r(rem.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
        set(r, c2, rem);
        if (rem != 0) moved = true;
      }
      if (moved) {
        c = best_in_row(r);
        continue;
      }
      set(r, c, 0);
      return abs(p);
    }
  }

  std::vector<std::map<int, mpz_class>> rows_;
  std::vector<std::set<int>> cols_;
};

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& m) {
  std::vector<mpz_class> diag = Elimination(m).run();
  std::stable_sort(diag.begin(), diag.end(), [](const mpz_class& a, const mpz_class& b) { return a < b; });
  // (a, b) -> (gcd, lcm) over all pairs yields a divisibility chain
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] == 1) continue;
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      mpz_class g, l;
      mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
      diag[i] = g;
      diag[j] = l;
    }
  }
  return {std::move(diag)};
}

namespace {

struct ChainHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (int x : v) h = (h ^ static_cast<std::uint32_t>(x)) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

ChainComplex nerve_chain_complex(const FiniteCategoryView& cat, int max_dim, const ChainLimits& limits,
                                 Execution exec) {
  if (max_dim < 0) throw InvalidArgument("nerve: negative dimension");
  std::vector<std::vector<int>> nonidentity_out(static_cast<std::size_t>(cat.object_count()));
  for (int a = 0; a < cat.object_count(); ++a) {
    for (int m : cat.outgoing(a)) {
      if (!cat.is_identity(m)) nonidentity_out[static_cast<std::size_t>(a)].push_back(m);
    }
  }
  ChainComplex cx;
  cx.sizes.push_back(static_cast<std::uint64_t>(cat.object_count()));
  // chains[d] lists d-chains (m_1, ..., m_d); degree 0 is implicit
  std::vector<std::vector<std::vector<int>>> chains(static_cast<std::size_t>(max_dim) + 1);
  std::vector<std::unordered_map<std::vector<int>, int, ChainHash>> index(static_cast<std::size_t>(max_dim) + 1);
  for (int d = 1; d <= max_dim; ++d) {
    std::uint64_t projected = 0;
    auto extend_from = [&](int object) { return nonidentity_out[static_cast<std::size_t>(object)].size(); };
    if (d == 1) {
      for (int a = 0; a < cat.object_count(); ++a) projected += extend_from(a);
    } else {
      for (const auto& ch : chains[static_cast<std::size_t>(d - 1)]) projected += extend_from(cat.morphism(ch.back()).target);
    }
    if (projected > limits.chain_cap) {
      throw ResourceError("nerve: " + std::to_string(projected) + " chains in dimension " + std::to_string(d) +
                          " exceed cap " + std::to_string(limits.chain_cap));
    }
    auto& level = chains[static_cast<std::size_t>(d)];
    level.reserve(projected);
    if (d == 1) {
      for (int a = 0; a < cat.object_count(); ++a) {
        for (int m : nonidentity_out[static_cast<std::size_t>(a)]) level.push_back({m});
      }
    } else {
      for (const auto& ch : chains[static_cast<std::size_t>(d - 1)]) {
        for (int m : nonidentity_out[static_cast<std::size_t>(cat.morphism(ch.back()).target)]) {
          auto next = ch;
          next.push_back(m);
          level.push_back(std::move(next));
        }
      }
    }
    auto& idx = index[static_cast<std::size_t>(d)];
    idx.reserve(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) idx.emplace(level[i], static_cast<int>(i));
    cx.sizes.push_back(level.size());
  }

  for (int d = 1; d <= max_dim; ++d) {
    const auto& level = chains[static_cast<std::size_t>(d)];
    const auto& lower = index[static_cast<std::size_t>(d - 1)];
    IntegerMatrix m(static_cast<int>(cx.sizes[static_cast<std::size_t>(d - 1)]), static_cast<int>(level.size()));
    std::vector<std::vector<std::pair<int, mpz_class>>> columns(level.size());
    auto column_of = [&](std::size_t k) {
      const auto& ch = level[k];
      std::vector<std::pair<int, mpz_class>> col;
      if (d == 1) {
        col.emplace_back(cat.morphism(ch[0]).target, 1);
        col.emplace_back(cat.morphism(ch[0]).source, -1);
        return col;
      }
      std::vector<int> face;
      face.reserve(static_cast<std::size_t>(d - 1));
      for (int i = 0; i <= d; ++i) {
        face.clear();
        bool degenerate = false;
        if (i == 0) {
          face.assign(ch.begin() + 1, ch.end());
        } else if (i == d) {
          face.assign(ch.begin(), ch.end() - 1);
        } else {
          for (int t = 0; t < d; ++t) {
            if (t == i - 1) {
              const int composite = cat.compose(ch[static_cast<std::size_t>(i)], ch[static_cast<std::size_t>(i - 1)]);
              if (cat.is_identity(composite)) {
                degenerate = true;
                break;
              }
              face.push_back(composite);
              ++t;
            } else {
              face.push_back(ch[static_cast<std::size_t>(t)]);
            }
          }
        }
        if (degenerate) continue;
        col.emplace_back(lower.at(face), (i % 2 == 0) ? 1 : -1);
      }
      return col;
    };
    const long count = static_cast<long>(level.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
      for (long k = 0; k < count; ++k) columns[static_cast<std::size_t>(k)] = column_of(static_cast<std::size_t>(k));
    } else {
      for (long k = 0; k < count; ++k) columns[static_cast<std::size_t>(k)] = column_of(static_cast<std::size_t>(k));
    }
    for (long k = 0; k < count; ++k) m.set_column(static_cast<int>(k), std::move(columns[static_cast<std::size_t>(k)]));
    cx.boundaries.push_back(std::move(m));
  }
  return cx;
}

std::vector<std::uint64_t> HomologyResult::betti() const {
  std::vector<std::uint64_t> out;
  for (const auto& d : degrees) out.push_back(d.betti);
  return out;
}

std::vector<std::string> HomologyResult::groups() const {
  std::vector<std::string> out;
  for (const auto& d : degrees) {
    std::string s;
    if (d.betti == 1) s = "Z";
    if (d.betti > 1) s = "Z^" + std::to_string(d.betti);
    for (const auto& t : d.torsion) s += (s.empty() ? "" : " + ") + ("Z/" + t.get_str());
    out.push_back(s.empty() ? "0" : s);
  }
  return out;
}

HomologyResult homology_of_complex(const ChainComplex& cx, int max_degree, Execution exec) {
  if (static_cast<int>(cx.boundaries.size()) < max_degree + 1) {
    throw InvalidArgument("homology: complex must reach dimension " + std::to_string(max_degree + 1));
  }
  const int top = max_degree + 1;
  std::vector<SmithForm> snf(static_cast<std::size_t>(top));
  std::vector<char> squares(static_cast<std::size_t>(top), 1);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int d = 1; d <= top; ++d) {
      snf[static_cast<std::size_t>(d - 1)] = smith_normal_form(cx.boundaries[static_cast<std::size_t>(d - 1)]);
      if (d < top) squares[static_cast<std::size_t>(d - 1)] = (cx.boundaries[static_cast<std::size_t>(d - 1)] * cx.boundaries[static_cast<std::size_t>(d)]).is_zero();
    }
  } else {
    for (int d = 1; d <= top; ++d) {
      snf[static_cast<std::size_t>(d - 1)] = smith_normal_form(cx.boundaries[static_cast<std::size_t>(d - 1)]);
      if (d < top) squares[static_cast<std::size_t>(d - 1)] = (cx.boundaries[static_cast<std::size_t>(d - 1)] * cx.boundaries[static_cast<std::size_t>(d)]).is_zero();
    }
  }
  HomologyResult h;
  h.chain_sizes = cx.sizes;
  h.boundary_squares_vanish = std::all_of(squares.begin(), squares.end(), [](char c) { return c != 0; });
  auto rank = [&](int d) { return d == 0 ? 0 : snf[static_cast<std::size_t>(d - 1)].rank(); };
  for (int d = 0; d <= max_degree; ++d) {
    DegreeHomology dh;
    dh.betti = cx.sizes[static_cast<std::size_t>(d)] - static_cast<std::uint64_t>(rank(d)) -
               static_cast<std::uint64_t>(rank(d + 1));
    for (const auto& v : snf[static_cast<std::size_t>(d)].divisors) {
      if (v > 1) dh.torsion.push_back(v);
    }
    h.degrees.push_back(std::move(dh));
  }
  return h;
}

HomologyResult homology_of_category(const FiniteCategoryView& c, int max_degree, const ChainLimits& limits,
                                    Execution exec) {
  return homology_of_complex(nerve_chain_complex(c, max_degree + 1, limits, exec), max_degree, exec);
}

const char* to_string(CategoryKind k) { return k == CategoryKind::nord ? "nord" : "w_hlt"; }

std::optional<CategoryKind> parse_category_kind(const std::string& s) {
  if (s == "nord") return CategoryKind::nord;
  if (s == "w_hlt" || s == "w-hlt" || s == "whlt") return CategoryKind::w_hlt;
  return std::nullopt;
}

}  // namespace theta_ran
