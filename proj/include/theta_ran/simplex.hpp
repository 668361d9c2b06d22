#pragma once

// The simplex category: monotone maps [p] -> [q], the active condition and
// the simplicial circle into pointed finite sets.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace theta_ran {

/// A weakly increasing map [p] -> [q], stored as its values f(0), ..., f(p).
class MonotoneMap {
 public:
  /// Throws InvalidArgument unless values is nonempty, weakly increasing and
  /// bounded by target_rank.
  MonotoneMap(int target_rank, std::vector<int> values);

  static MonotoneMap identity(int rank);
  static MonotoneMap constant(int source_rank, int target_rank, int value);

  int source_rank() const { return static_cast<int>(values_.size()) - 1; }
  int target_rank() const { return target_rank_; }
  int operator()(int i) const { return values_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& values() const { return values_; }

  /// "(0,1,3)"
  std::string to_string() const;
  static MonotoneMap parse(std::string_view text, int target_rank);

  friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;
  friend auto operator<=>(const MonotoneMap&, const MonotoneMap&) = default;

 private:
  int target_rank_;
  std::vector<int> values_;
};

/// A pointed map {1..n}_* -> {1..m}_*. Index x in [1, source_size] maps to
/// an element of [1, target_size] or to the basepoint (nullopt).
class PointedMap {
 public:
  PointedMap(int target_size, std::vector<std::optional<int>> assignment);

  static PointedMap identity(int size);

  int source_size() const { return static_cast<int>(assignment_.size()); }
  int target_size() const { return target_size_; }
  std::optional<int> operator()(int x) const {
    return assignment_[static_cast<std::size_t>(x - 1)];
  }
  const std::vector<std::optional<int>>& assignment() const { return assignment_; }

  bool is_total() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_total() && is_injective() && is_surjective(); }

  std::string to_string() const;

  friend bool operator==(const PointedMap&, const PointedMap&) = default;

 private:
  int target_size_;
  std::vector<std::optional<int>> assignment_;
};

/// (after ∘ before)(x) = after(before(x)); the basepoint is absorbing.
PointedMap compose(const PointedMap& after, const PointedMap& before);

/// g ∘ f for f: [p] -> [q] and g: [q] -> [r].
MonotoneMap compose_delta(const MonotoneMap& g, const MonotoneMap& f);

/// All monotone maps [p] -> [q] in lexicographic order. With active_only,
/// only those with f(0) = 0 and f(p) = q.
std::vector<MonotoneMap> enumerate_delta_hom(int p, int q, bool active_only);

/// Number of monotone maps [p] -> [q] (all or active), saturating at UINT64_MAX.
unsigned long long count_delta_hom(int p, int q, bool active_only);

/// The simplicial circle on a morphism f: [p] -> [q]; a pointed map
/// {1..q}_* -> {1..p}_* sending j to the unique i with f(i-1) < j <= f(i).
PointedMap simplicial_circle(const MonotoneMap& f);

/// True when the simplicial circle of f pulls back only the basepoint to the
/// basepoint.
bool is_active_delta(const MonotoneMap& f);

}  // namespace theta_ran
