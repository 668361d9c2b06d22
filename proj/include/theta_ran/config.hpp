#pragma once

// Finite configurations in Q^n, the configuration-to-tree functor on objects,
// straight-line exit paths and their image morphisms.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "theta_ran/theta.hpp"
#include "theta_ran/tree.hpp"

namespace theta_ran {

using Rational = mpq_class;
using Point = std::vector<Rational>;

/// "p/q" or an integer string, canonicalized. Throws ParseError.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

/// Finite set of pairwise distinct points of Q^n, kept in input order.
class Configuration {
 public:
  /// Throws InvalidArgument on a wrong coordinate count or a repeated point.
  Configuration(int dimension, std::vector<Point> points);

  int dimension() const { return dimension_; }
  int size() const { return static_cast<int>(points_.size()); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& point(int i) const { return points_[static_cast<std::size_t>(i)]; }

  std::string to_string() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  int dimension_;
  std::vector<Point> points_;
};

/// The tree of nested projection layers: [|S|] in dimension 1, otherwise the
/// sorted distinct first coordinates with the fibers' trees as children.
Tree tree_of_configuration(const Configuration& s);

/// Point indices in lexicographic order; position l (0-based) holds the
/// point that is leaf l+1 of tree_of_configuration(s).
std::vector<int> leaf_order(const Configuration& s);

/// Integer configuration whose tree is prune(t).pruned.
Configuration realize_tree(const Tree& t);

struct LevelDiagnostic {
  int level = 0;
  bool strands_disjoint = true;  // distinct projections never meet for u in (0,1]
  bool fibers_preserved = true;  // equal projections have equal images
  std::optional<std::string> detail;
};

/// Combinatorial data of a straight-line exit path from `source` to `target`:
/// map[t] is the source point that target point t emanates from.
struct ExitData {
  Configuration source;
  Configuration target;
  std::vector<int> map;
};

struct ExitPathVerdict;

/// An exit path whose straight-line representative has been checked.
class ExitPath {
 public:
  const ExitData& data() const { return data_; }
  const Configuration& source() const { return data_.source; }
  const Configuration& target() const { return data_.target; }
  const std::vector<int>& map() const { return data_.map; }
  const std::vector<LevelDiagnostic>& certificate() const { return certificate_; }

 private:
  friend ExitPathVerdict validate_exit_path(const Configuration&, const Configuration&,
                                            const std::vector<int>&);
  ExitPath(ExitData d, std::vector<LevelDiagnostic> cert)
      : data_(std::move(d)), certificate_(std::move(cert)) {}
  ExitData data_;
  std::vector<LevelDiagnostic> certificate_;
};

struct ExitPathVerdict {
  bool valid = false;
  std::vector<LevelDiagnostic> levels;
  std::optional<ExitPath> path;  // set iff valid
};

/// Checks the strands p_t(u) = (1-u) f(t) + u t level by level in exact
/// arithmetic. Throws InvalidArgument on a dimension mismatch or a map that
/// is not total into the source.
ExitPathVerdict validate_exit_path(const Configuration& source, const Configuration& target,
                                   const std::vector<int>& map);

/// The active morphism G(source) -> G(target) of a validated path.
ThetaMorphism morphism_of_exit_path(const ExitPath& path);

/// Same construction on bare data. Throws InvalidArgument when some level
/// map fails to be well defined and monotone, which a valid path rules out.
ThetaMorphism morphism_of_exit_data(const ExitData& data);

/// (S, U, f∘g) for (S, T, f) and (T, U, g). Throws CompositionError unless
/// first.target == second.source.
ExitData compose_exit_data(const ExitData& first, const ExitData& second);

/// k distinct integer points in dimension n, deterministic in seed.
/// Throws ResourceError when the sampling budget runs out.
Configuration random_configuration(int n, int k, std::uint64_t seed, int budget = 10'000);

/// A valid exit path out of `source`: every point is deleted, kept, or split
/// into two or three nearby points, with offsets that are multiples of a
/// quarter of the smallest coordinate gap. Throws ResourceError when no
/// valid sample is found within `budget` attempts.
ExitPath random_exit_path(const Configuration& source, std::uint64_t seed, int budget = 1'000);

}  // namespace theta_ran
