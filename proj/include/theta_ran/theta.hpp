#pragma once

// Morphisms of Θ_n as iterated wreath data over the simplex category:
// composition, hom enumeration, leaves/layers, classification, truncation and
// pruning.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "theta_ran/execution.hpp"
#include "theta_ran/simplex.hpp"
#include "theta_ran/tree.hpp"

namespace theta_ran {

/// A morphism source -> target of Θ_n.
///
/// At height 1 the datum is a monotone map [p] -> [q]. At height n > 1 it is
/// a base map δ: [p] -> [q] together with, for every j in {1..q} that the
/// simplicial circle of δ sends to some i, a height n-1 morphism
/// source.child(i) -> target.child(j). Components are stored in increasing j.
class ThetaMorphism {
 public:
  /// Validates the wreath datum against the objects; throws InvalidArgument.
  ThetaMorphism(Tree source, Tree target, MonotoneMap base, std::vector<ThetaMorphism> components);

  static ThetaMorphism identity(const Tree& t);

  int height() const { return data_->source.height(); }
  const Tree& source() const { return data_->source; }
  const Tree& target() const { return data_->target; }
  const MonotoneMap& base() const { return data_->base; }
  const std::vector<ThetaMorphism>& components() const { return data_->components; }

  /// Component over target vertex j (1-based), if j is not sent to the basepoint.
  const ThetaMorphism* component_at(int j) const;

  /// Canonical integer encoding of the datum; equal within a hom-set iff the
  /// morphisms are equal.
  std::vector<int> encode() const;
  void encode_into(std::vector<int>& out) const;

  /// Structural hash, consistent with ==.
  std::size_t hash() const;

  std::string to_string() const;

  friend bool operator==(const ThetaMorphism& a, const ThetaMorphism& b);

 private:
  struct Data {
    Tree source;
    Tree target;
    MonotoneMap base;
    std::vector<ThetaMorphism> components;
  };
  struct Unchecked {};
  ThetaMorphism(Unchecked, Tree source, Tree target, MonotoneMap base, std::vector<ThetaMorphism> components);
  friend struct ThetaAccess;

  std::shared_ptr<const Data> data_;
};

/// g ∘ f. Throws CompositionError unless f.target() == g.source().
ThetaMorphism compose_theta(const ThetaMorphism& g, const ThetaMorphism& f);

/// The assembly functor on a morphism: the pointed map from the leaves of the
/// target to the leaves of the source (leaves in depth-first planar order).
PointedMap leaf_map(const ThetaMorphism& f);

/// Truncation of a morphism to `level` (1 <= level <= height).
ThetaMorphism truncate(const ThetaMorphism& f, int level);

/// True iff every level of the wreath datum is active.
bool is_active(const ThetaMorphism& f);

/// The layer diagram of an object: level sizes from the top level down and
/// the maps from each level to the one below.
struct LayerDiagram {
  /// sizes[0] is the leaf count, sizes.back() the number of level-1 vertices.
  std::vector<int> sizes;
  /// down[k] maps level (n-k) to level (n-k-1), 1-based values; size n-1.
  std::vector<std::vector<int>> down;
};

LayerDiagram leaves(const Tree& t);

/// The ladder of a morphism T -> S: for every level from n down to 1 the
/// pointed map from the level set of S to the level set of T, together with
/// both objects' layer diagrams.
struct MorphismLadder {
  LayerDiagram source;
  LayerDiagram target;
  /// rows[0] is the leaf map, rows.back() the level-1 map.
  std::vector<PointedMap> rows;

  /// Every square commutes elementwise (basepoint absorbing).
  bool commutes() const;
};

MorphismLadder ladder(const ThetaMorphism& f);

struct Classification {
  bool active = false;
  bool exit = false;
  bool in_w = false;
  MorphismLadder ladder;
};

Classification classify_morphism(const ThetaMorphism& f);

enum class HomFilter { all, active, exit, w };

const char* to_string(HomFilter f);
std::optional<HomFilter> parse_hom_filter(const std::string& s);

struct EnumerationLimits {
  /// Refuse enumerations whose projected size exceeds this.
  std::uint64_t cap = 1'000'000;
};

/// Projected size of the candidate space walked by enumerate_theta_hom,
/// saturating. Exact for `all` and `active`; an upper bound for `w`.
std::uint64_t projected_hom_size(const Tree& source, const Tree& target, HomFilter filter);

/// Every morphism source -> target passing `filter`, duplicate free, in a
/// deterministic order that does not depend on `exec`. Throws ResourceError
/// when the projected size exceeds limits.cap.
std::vector<ThetaMorphism> enumerate_theta_hom(const Tree& source, const Tree& target,
                                               HomFilter filter, const EnumerationLimits& limits = {},
                                               Execution exec = Execution::parallel);

struct PruneResult {
  Tree pruned;
  ThetaMorphism unit;  // source -> pruned
};

/// Removes every subtree without leaves. The unit is active and bijective on
/// leaves; for healthy trees it is the identity.
PruneResult prune(const Tree& t);

struct InitialityReport {
  bool passed = true;
  std::uint64_t targets_checked = 0;
  std::uint64_t morphisms_checked = 0;
  /// Set on failure.
  std::optional<std::string> counterexample;
};

/// Hom-sets between subtrees and healthy target lists, reusable across
/// calls to verify_initiality. Not thread-safe.
class HomCache {
 public:
  HomCache();
  ~HomCache();
  HomCache(const HomCache&) = delete;
  HomCache& operator=(const HomCache&) = delete;

  struct Impl;
  Impl& impl() { return *impl_; }

 private:
  std::unique_ptr<Impl> impl_;
};

/// Checks that every W-morphism t -> s into a healthy tree s of the same
/// height with at most `bound` leaves factors uniquely through the pruning
/// unit of t.
InitialityReport verify_initiality(const Tree& t, int bound, const EnumerationLimits& limits = {},
                                   Execution exec = Execution::parallel, HomCache* cache = nullptr);

}  // namespace theta_ran
