#include "theta_ran/theta.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>
#include <set>
#include <unordered_map>
#include <utility>

#include "theta_ran/error.hpp"

namespace theta_ran {

namespace {

std::vector<int> circle_positions(const MonotoneMap& base) {
  // position of the component for each target vertex j, -1 for the basepoint
  const PointedMap circle = simplicial_circle(base);
  std::vector<int> pos(static_cast<std::size_t>(circle.source_size()), -1);
  int next = 0;
  for (int j = 1; j <= circle.source_size(); ++j) {
    if (circle(j)) pos[static_cast<std::size_t>(j - 1)] = next++;
  }
  return pos;
}

}  // namespace

// Builds morphisms whose wreath datum is valid by construction.
struct ThetaAccess {
  static ThetaMorphism make(Tree source, Tree target, MonotoneMap base, std::vector<ThetaMorphism> components) {
    return ThetaMorphism(ThetaMorphism::Unchecked{}, std::move(source), std::move(target), std::move(base),
                         std::move(components));
  }
};

ThetaMorphism::ThetaMorphism(Unchecked, Tree source, Tree target, MonotoneMap base,
                             std::vector<ThetaMorphism> components)
    : data_(std::make_shared<const Data>(
          Data{std::move(source), std::move(target), std::move(base), std::move(components)})) {}

ThetaMorphism::ThetaMorphism(Tree source, Tree target, MonotoneMap base,
                             std::vector<ThetaMorphism> components)
    : ThetaMorphism(Unchecked{}, std::move(source), std::move(target), std::move(base), std::move(components)) {
  const Data& d = *data_;
  if (d.source.height() != d.target.height()) {
    throw InvalidArgument("theta morphism: heights differ (" + std::to_string(d.source.height()) +
                          " vs " + std::to_string(d.target.height()) + ")");
  }
  if (d.base.source_rank() != d.source.rank() || d.base.target_rank() != d.target.rank()) {
    throw InvalidArgument("theta morphism: base " + d.base.to_string() + " is not a map [" +
                          std::to_string(d.source.rank()) + "] -> [" + std::to_string(d.target.rank()) +
                          "]");
  }
  if (height() == 1) {
    if (!d.components.empty()) throw InvalidArgument("theta morphism: height 1 takes no components");
    return;
  }
  const PointedMap circle = simplicial_circle(d.base);
  std::size_t next = 0;
  for (int j = 1; j <= circle.source_size(); ++j) {
    auto i = circle(j);
    if (!i) continue;
    if (next >= d.components.size()) {
      throw InvalidArgument("theta morphism: missing component over target vertex " + std::to_string(j));
    }
    const auto& c = d.components[next++];
    if (c.source() != d.source.child(*i) || c.target() != d.target.child(j)) {
      throw InvalidArgument("theta morphism: component over " + std::to_string(j) + " is not a map " +
                            d.source.child(*i).to_string() + " -> " + d.target.child(j).to_string());
    }
  }
  if (next != d.components.size()) {
    throw InvalidArgument("theta morphism: " + std::to_string(d.components.size()) +
                          " components given, base " + d.base.to_string() + " needs " +
                          std::to_string(next));
  }
}

ThetaMorphism ThetaMorphism::identity(const Tree& t) {
  std::vector<ThetaMorphism> comps;
  comps.reserve(t.children().size());
  for (const auto& c : t.children()) comps.push_back(identity(c));
  return ThetaAccess::make(t, t, MonotoneMap::identity(t.rank()), std::move(comps));
}

const ThetaMorphism* ThetaMorphism::component_at(int j) const {
  if (height() == 1) return nullptr;
  const PointedMap circle = simplicial_circle(base());
  if (!circle(j)) return nullptr;
  int pos = 0;
  for (int k = 1; k < j; ++k) {
    if (circle(k)) ++pos;
  }
  return &components()[static_cast<std::size_t>(pos)];
}

void ThetaMorphism::encode_into(std::vector<int>& out) const {
  out.insert(out.end(), base().values().begin(), base().values().end());
  for (const auto& c : components()) c.encode_into(out);
}

std::vector<int> ThetaMorphism::encode() const {
  std::vector<int> out;
  encode_into(out);
  return out;
}

std::size_t ThetaMorphism::hash() const {
  std::uint64_t h = 0x84222325cbf29ce4ULL ^ static_cast<std::uint64_t>(height());
  for (int v : base().values()) h = (h ^ static_cast<std::uint32_t>(v)) * 0x100000001b3ULL;
  for (const auto& c : components()) h = (h ^ c.hash()) * 0x100000001b3ULL;
  return static_cast<std::size_t>(h);
}

std::string ThetaMorphism::to_string() const {
  std::string out = base().to_string();
  if (height() == 1 || components().empty()) return out;
  const PointedMap circle = simplicial_circle(base());
  out += '{';
  std::size_t next = 0;
  for (int j = 1; j <= circle.source_size(); ++j) {
    auto i = circle(j);
    if (!i) continue;
    if (next) out += ';';
    out += std::to_string(*i) + ">" + std::to_string(j) + ":" + components()[next++].to_string();
  }
  return out + '}';
}

bool operator==(const ThetaMorphism& a, const ThetaMorphism& b) {
  if (a.data_ == b.data_) return true;
  return a.base() == b.base() && a.source() == b.source() && a.target() == b.target() &&
         a.components() == b.components();
}

ThetaMorphism compose_theta(const ThetaMorphism& g, const ThetaMorphism& f) {
  if (f.target() != g.source()) {
    throw CompositionError("compose_theta: target " + f.target().to_string() + " of " +
                           f.to_string() + " differs from source " + g.source().to_string() + " of " +
                           g.to_string());
  }
  MonotoneMap base = compose_delta(g.base(), f.base());
  std::vector<ThetaMorphism> comps;
  if (g.height() > 1) {
    const PointedMap g_circle = simplicial_circle(g.base());
    const PointedMap f_circle = simplicial_circle(f.base());
    const auto f_pos = circle_positions(f.base());
    std::size_t g_next = 0;
    for (int k = 1; k <= g_circle.source_size(); ++k) {
      auto j = g_circle(k);
      if (!j) continue;
      const ThetaMorphism& gk = g.components()[g_next++];
      if (!f_circle(*j)) continue;
      const ThetaMorphism& fj = f.components()[static_cast<std::size_t>(f_pos[static_cast<std::size_t>(*j - 1)])];
      comps.push_back(compose_theta(gk, fj));
    }
  }
  return ThetaAccess::make(f.source(), g.target(), std::move(base), std::move(comps));
}

PointedMap leaf_map(const ThetaMorphism& f) {
  if (f.height() == 1) return simplicial_circle(f.base());
  const Tree& src = f.source();
  const Tree& tgt = f.target();
  std::vector<int> src_offset(static_cast<std::size_t>(src.rank()) + 1, 0);
  for (int i = 1; i <= src.rank(); ++i) {
    src_offset[static_cast<std::size_t>(i)] = src_offset[static_cast<std::size_t>(i - 1)] + src.child(i).leaf_count();
  }
  std::vector<std::optional<int>> a;
  a.reserve(static_cast<std::size_t>(tgt.leaf_count()));
  const PointedMap circle = simplicial_circle(f.base());
  std::size_t next = 0;
  for (int j = 1; j <= tgt.rank(); ++j) {
    const int leaves_j = tgt.child(j).leaf_count();
    auto i = circle(j);
    if (!i) {
      a.insert(a.end(), static_cast<std::size_t>(leaves_j), std::nullopt);
      continue;
    }
    const PointedMap sub = leaf_map(f.components()[next++]);
    for (int l = 1; l <= leaves_j; ++l) {
      auto v = sub(l);
      a.push_back(v ? std::optional<int>(src_offset[static_cast<std::size_t>(*i - 1)] + *v) : std::nullopt);
    }
  }
  return PointedMap(src.leaf_count(), std::move(a));
}

ThetaMorphism truncate(const ThetaMorphism& f, int level) {
  if (level < 1 || level > f.height()) {
    throw InvalidArgument("truncate: level " + std::to_string(level) + " outside [1," +
                          std::to_string(f.height()) + "]");
  }
  if (level == f.height()) return f;
  std::vector<ThetaMorphism> comps;
  if (level > 1) {
    comps.reserve(f.components().size());
    for (const auto& c : f.components()) comps.push_back(truncate(c, level - 1));
  }
  return ThetaMorphism(truncate(f.source(), level), truncate(f.target(), level), f.base(),
                       std::move(comps));
}

bool is_active(const ThetaMorphism& f) {
  if (!is_active_delta(f.base())) return false;
  return std::all_of(f.components().begin(), f.components().end(),
                     [](const ThetaMorphism& c) { return is_active(c); });
}

LayerDiagram leaves(const Tree& t) {
  const TreeLayers layers = tree_layers(t);
  LayerDiagram d;
  d.sizes.assign(layers.sizes.rbegin(), layers.sizes.rend());
  d.down.assign(layers.parent.rbegin(), layers.parent.rend());
  return d;
}

bool MorphismLadder::commutes() const {
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    const auto& upper = rows[k];
    const auto& lower = rows[k + 1];
    const auto& t_down = target.down[k];
    const auto& s_down = source.down[k];
    for (int x = 1; x <= upper.source_size(); ++x) {
      auto via_upper = upper(x);
      std::optional<int> left = via_upper ? std::optional<int>(s_down[static_cast<std::size_t>(*via_upper - 1)]) : std::nullopt;
      std::optional<int> right = lower(t_down[static_cast<std::size_t>(x - 1)]);
      if (left != right) return false;
    }
  }
  return true;
}

MorphismLadder ladder(const ThetaMorphism& f) {
  MorphismLadder l;
  l.source = leaves(f.source());
  l.target = leaves(f.target());
  for (int level = f.height(); level >= 1; --level) l.rows.push_back(leaf_map(truncate(f, level)));
  return l;
}

Classification classify_morphism(const ThetaMorphism& f) {
  Classification c;
  c.active = is_active(f);
  c.ladder = ladder(f);
  if (!c.active) return c;
  c.in_w = c.ladder.rows.front().is_bijective();
  const bool objects_ok = f.source().leaf_count() > 0 && f.target().leaf_count() > 0 &&
                          is_healthy(f.source()) && is_healthy(f.target());
  c.exit = objects_ok && std::all_of(c.ladder.rows.begin(), c.ladder.rows.end(),
                                     [](const PointedMap& m) { return m.is_surjective(); });
  return c;
}

const char* to_string(HomFilter f) {
  switch (f) {
    case HomFilter::all: return "all";
    case HomFilter::active: return "active";
    case HomFilter::exit: return "exit";
    case HomFilter::w: return "W";
  }
  return "?";
}

std::optional<HomFilter> parse_hom_filter(const std::string& s) {
  if (s == "all") return HomFilter::all;
  if (s == "active" || s == "act") return HomFilter::active;
  if (s == "exit") return HomFilter::exit;
  if (s == "W" || s == "w") return HomFilter::w;
  return std::nullopt;
}

namespace {

// Enumeration modes. `injective` and `bijective` are active morphisms whose
// leaf map is injective (resp. bijective); bijective is exactly W.
enum class Mode { all, active, injective, bijective };

Mode child_mode(Mode m) { return m == Mode::bijective ? Mode::injective : m; }

Mode mode_for(HomFilter f) {
  switch (f) {
    case HomFilter::all: return Mode::all;
    case HomFilter::active: return Mode::active;
    case HomFilter::exit: return Mode::active;
    case HomFilter::w: return Mode::bijective;
  }
  return Mode::all;
}

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

struct DeltaEntry {
  MonotoneMap map;
  PointedMap circle;
};

// Base maps [p] -> [q] admissible in `mode`, with their simplicial circles.
// Shared by all callers; entries are never removed.
const std::vector<DeltaEntry>& delta_table(int p, int q, Mode mode, bool height1) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, Mode, bool>, std::vector<DeltaEntry>> tables;
  const auto key = std::make_tuple(p, q, mode, height1);
  std::lock_guard<std::mutex> lock(mutex);
  auto it = tables.find(key);
  if (it != tables.end()) return it->second;
  std::vector<DeltaEntry> out;
  for (auto& d : enumerate_delta_hom(p, q, mode != Mode::all)) {
    PointedMap circle = simplicial_circle(d);
    if (mode != Mode::all && !circle.is_total()) continue;
    if (height1 && mode == Mode::injective && !circle.is_injective()) continue;
    if (height1 && mode == Mode::bijective && !circle.is_bijective()) continue;
    out.push_back({std::move(d), std::move(circle)});
  }
  return tables.emplace(key, std::move(out)).first->second;
}

struct Entry {
  ThetaMorphism morphism;
  std::uint64_t image;  // leaf-map image as a mask over source leaves
};

using EntryList = std::shared_ptr<const std::vector<Entry>>;
using HomKey = std::tuple<Tree, Tree, Mode>;

struct HomKeyHash {
  std::size_t operator()(const HomKey& k) const {
    const std::size_t h = std::get<0>(k).hash() * 0x100000001b3ULL ^ std::get<1>(k).hash();
    return h * 31 + static_cast<std::size_t>(std::get<2>(k));
  }
};

// Hom-sets and counts already computed for subtrees during one session.
struct Session {
  std::unordered_map<HomKey, EntryList, HomKeyHash> homs;
  std::unordered_map<HomKey, std::uint64_t, HomKeyHash> counts;
};

std::uint64_t count_rec(const Tree& src, const Tree& tgt, Mode mode, Session& session) {
  const HomKey key{src, tgt, mode};
  if (auto it = session.counts.find(key); it != session.counts.end()) return it->second;
  std::uint64_t total = 0;
  for (const auto& [d, circle] : delta_table(src.rank(), tgt.rank(), mode, src.height() == 1)) {
    std::uint64_t prod = 1;
    if (src.height() > 1) {
      for (int j = 1; j <= tgt.rank() && prod; ++j) {
        if (auto i = circle(j)) prod = sat_mul(prod, count_rec(src.child(*i), tgt.child(j), child_mode(mode), session));
      }
    }
    total = sat_add(total, prod);
  }
  session.counts.emplace(key, total);
  return total;
}

std::uint64_t image_mask(const PointedMap& leafmap) {
  std::uint64_t m = 0;
  for (const auto& v : leafmap.assignment()) {
    if (v) m |= std::uint64_t{1} << (*v - 1);
  }
  return m;
}

EntryList enumerate_rec(const Tree& src, const Tree& tgt, Mode mode, Session& session);

// Morphisms with a fixed base δ, appended to `out`.
class ProductWalker {
 public:
  ProductWalker(const Tree& src, const Tree& tgt, Mode mode, const MonotoneMap& base,
                const std::vector<std::pair<int, const std::vector<Entry>*>>& slots,
                const std::vector<int>& src_offset)
      : src_(src), tgt_(tgt), mode_(mode), base_(base), slots_(slots), src_offset_(src_offset) {}

  void run(std::vector<Entry>& out) {
    chosen_.clear();
    walk(0, 0, out);
  }

 private:
  void walk(std::size_t k, std::uint64_t used, std::vector<Entry>& out) {
    if (k == slots_.size()) {
      if (mode_ == Mode::bijective) {
        const int n = src_.leaf_count();
        const std::uint64_t full = n == 64 ? kSaturated : ((std::uint64_t{1} << n) - 1);
        if (used != full) return;
      }
      std::vector<ThetaMorphism> comps;
      comps.reserve(chosen_.size());
      for (const Entry* e : chosen_) comps.push_back(e->morphism);
      out.push_back({ThetaAccess::make(src_, tgt_, base_, std::move(comps)), used});
      return;
    }
    const auto& [i, list] = slots_[k];
    const int shift = src_offset_[static_cast<std::size_t>(i - 1)];
    for (const Entry& e : *list) {
      const std::uint64_t shifted = e.image << shift;
      if ((mode_ == Mode::injective || mode_ == Mode::bijective) && (used & shifted)) continue;
      chosen_.push_back(&e);
      walk(k + 1, used | shifted, out);
      chosen_.pop_back();
    }
  }

  const Tree& src_;
  const Tree& tgt_;
  Mode mode_;
  const MonotoneMap& base_;
  const std::vector<std::pair<int, const std::vector<Entry>*>>& slots_;
  const std::vector<int>& src_offset_;
  std::vector<const Entry*> chosen_;
};

struct Plan {
  const std::vector<DeltaEntry>* bases = nullptr;
  std::map<std::pair<int, int>, EntryList> children;  // (i, j) -> Hom(src_i, tgt_j)
  std::vector<int> src_offset;
};

Plan make_plan(const Tree& src, const Tree& tgt, Mode mode, Session& session) {
  Plan plan;
  const bool needs_masks = mode == Mode::injective || mode == Mode::bijective;
  if (needs_masks && src.leaf_count() > 64) {
    throw ResourceError("enumerate_theta_hom: W enumeration supports at most 64 source leaves");
  }
  plan.bases = &delta_table(src.rank(), tgt.rank(), mode, src.height() == 1);
  plan.src_offset.assign(static_cast<std::size_t>(src.rank()) + 1, 0);
  if (src.height() == 1) return plan;
  for (int i = 1; i <= src.rank(); ++i) {
    plan.src_offset[static_cast<std::size_t>(i)] =
        plan.src_offset[static_cast<std::size_t>(i - 1)] + src.child(i).leaf_count();
  }
  for (const auto& [d, circle] : *plan.bases) {
    for (int j = 1; j <= tgt.rank(); ++j) {
      auto i = circle(j);
      if (!i) continue;
      auto key = std::make_pair(*i, j);
      if (!plan.children.count(key)) {
        plan.children.emplace(key, enumerate_rec(src.child(*i), tgt.child(j), child_mode(mode), session));
      }
    }
  }
  return plan;
}

void expand_base(const Tree& src, const Tree& tgt, Mode mode, const Plan& plan, const DeltaEntry& d,
                 std::vector<Entry>& out) {
  if (src.height() == 1) {
    out.push_back({ThetaAccess::make(src, tgt, d.map, {}), image_mask(d.circle)});
    return;
  }
  std::vector<std::pair<int, const std::vector<Entry>*>> slots;
  for (int j = 1; j <= tgt.rank(); ++j) {
    auto i = d.circle(j);
    if (!i) continue;
    slots.emplace_back(*i, plan.children.at({*i, j}).get());
  }
  ProductWalker(src, tgt, mode, d.map, slots, plan.src_offset).run(out);
}

EntryList enumerate_rec(const Tree& src, const Tree& tgt, Mode mode, Session& session) {
  const HomKey key{src, tgt, mode};
  if (auto it = session.homs.find(key); it != session.homs.end()) return it->second;
  const Plan plan = make_plan(src, tgt, mode, session);
  auto out = std::make_shared<std::vector<Entry>>();
  for (const auto& d : *plan.bases) expand_base(src, tgt, mode, plan, d, *out);
  EntryList list = std::move(out);
  session.homs.emplace(key, list);
  return list;
}

void check_heights(const Tree& source, const Tree& target) {
  if (source.height() != target.height()) {
    throw InvalidArgument("hom: heights differ (" + std::to_string(source.height()) + " vs " +
                          std::to_string(target.height()) + ")");
  }
}

std::vector<ThetaMorphism> enumerate_in_session(const Tree& source, const Tree& target, HomFilter filter,
                                                const EnumerationLimits& limits, Execution exec,
                                                Session& session) {
  check_heights(source, target);
  const Mode mode = mode_for(filter);
  const std::uint64_t projected = count_rec(source, target, mode, session);
  if (projected > limits.cap) {
    throw ResourceError("hom " + source.to_string() + " -> " + target.to_string() + " (" +
                        to_string(filter) + "): projected size " + std::to_string(projected) +
                        " exceeds cap " + std::to_string(limits.cap));
  }
  const Plan plan = make_plan(source, target, mode, session);
  const auto& bases = *plan.bases;
  std::vector<std::vector<Entry>> buckets(bases.size());
  const long n = static_cast<long>(bases.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n; ++k) {
      expand_base(source, target, mode, plan, bases[static_cast<std::size_t>(k)], buckets[static_cast<std::size_t>(k)]);
    }
  } else {
    for (long k = 0; k < n; ++k) {
      expand_base(source, target, mode, plan, bases[static_cast<std::size_t>(k)], buckets[static_cast<std::size_t>(k)]);
    }
  }
  std::vector<ThetaMorphism> out;
  for (auto& b : buckets) {
    for (auto& e : b) {
      if (filter == HomFilter::exit && !classify_morphism(e.morphism).exit) continue;
      out.push_back(std::move(e.morphism));
    }
  }
  return out;
}

}  // namespace

std::uint64_t projected_hom_size(const Tree& source, const Tree& target, HomFilter filter) {
  check_heights(source, target);
  Session session;
  return count_rec(source, target, mode_for(filter), session);
}

std::vector<ThetaMorphism> enumerate_theta_hom(const Tree& source, const Tree& target, HomFilter filter,
                                               const EnumerationLimits& limits, Execution exec) {
  Session session;
  return enumerate_in_session(source, target, filter, limits, exec, session);
}

PruneResult prune(const Tree& t) {
  if (t.height() == 1) return {t, ThetaMorphism::identity(t)};
  std::vector<Tree> kept;
  std::vector<ThetaMorphism> units;
  std::vector<int> base(static_cast<std::size_t>(t.rank()) + 1, 0);
  int count = 0;
  for (int i = 1; i <= t.rank(); ++i) {
    const Tree& c = t.child(i);
    if (c.leaf_count() > 0) {
      PruneResult sub = prune(c);
      kept.push_back(sub.pruned);
      units.push_back(std::move(sub.unit));
      ++count;
    }
    base[static_cast<std::size_t>(i)] = count;
  }
  Tree pruned = kept.empty() ? Tree::empty(t.height()) : Tree::node(kept);
  MonotoneMap alpha(count, std::move(base));
  return {pruned, ThetaMorphism(t, pruned, std::move(alpha), std::move(units))};
}

struct HomCache::Impl {
  Session session;
  std::map<std::pair<int, int>, std::vector<Tree>> healthy;

  const std::vector<Tree>& healthy_trees(int height, int leaves) {
    auto it = healthy.find({height, leaves});
    if (it == healthy.end()) it = healthy.emplace(std::make_pair(height, leaves), enumerate_healthy_trees(height, leaves)).first;
    return it->second;
  }
};

HomCache::HomCache() : impl_(std::make_unique<Impl>()) {}
HomCache::~HomCache() = default;

InitialityReport verify_initiality(const Tree& t, int bound, const EnumerationLimits& limits,
                                   Execution exec, HomCache* cache) {
  if (t.leaf_count() > bound) {
    throw InvalidArgument("verify_initiality: " + t.to_string() + " has more than " +
                          std::to_string(bound) + " leaves");
  }
  InitialityReport report;
  const PruneResult pr = prune(t);
  HomCache local;
  HomCache::Impl& c = (cache ? *cache : local).impl();
  Session& session = c.session;
  for (int leaves = 0; leaves <= bound; ++leaves) {
    for (const Tree& s : c.healthy_trees(t.height(), leaves)) {
      ++report.targets_checked;
      // A W-morphism is bijective on leaves, so other leaf counts have none.
      if (leaves != t.leaf_count()) continue;
      const auto from_t = enumerate_in_session(t, s, HomFilter::w, limits, exec, session);
      const auto from_p = enumerate_in_session(pr.pruned, s, HomFilter::w, limits, exec, session);
      std::unordered_multimap<std::size_t, std::size_t> by_hash;
      by_hash.reserve(from_t.size());
      for (std::size_t i = 0; i < from_t.size(); ++i) by_hash.emplace(from_t[i].hash(), i);
      std::vector<int> preimages(from_t.size(), 0);
      for (const auto& g : from_p) {
        const ThetaMorphism composite = compose_theta(g, pr.unit);
        const auto [lo, hi] = by_hash.equal_range(composite.hash());
        auto it = std::find_if(lo, hi, [&](const auto& e) { return from_t[e.second] == composite; });
        if (it == hi) {
          report.passed = false;
          report.counterexample = "T=" + t.to_string() + " S=" + s.to_string() + ": g=" + g.to_string() +
                                  " composes with the unit to a non-W morphism " + composite.to_string();
          return report;
        }
        ++preimages[it->second];
      }
      for (std::size_t i = 0; i < from_t.size(); ++i) {
        ++report.morphisms_checked;
        if (preimages[i] != 1) {
          report.passed = false;
          report.counterexample = "T=" + t.to_string() + " S=" + s.to_string() + ": f=" + from_t[i].to_string() +
                                  " has " + std::to_string(preimages[i]) + " factorizations through the unit";
          return report;
        }
      }
    }
  }
  return report;
}

}  // namespace theta_ran
