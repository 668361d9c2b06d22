#pragma once

// Finite categories, their normalized nerves, Smith normal form over Z and
// integral homology.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "theta_ran/execution.hpp"

namespace theta_ran {

/// A finite category given by explicit tables. Objects and morphisms are
/// integer ids; names are for display only.
class FiniteCategoryView {
 public:
  struct Morphism {
    int source;
    int target;
    std::string name;
  };

  int object_count() const { return static_cast<int>(object_names_.size()); }
  int morphism_count() const { return static_cast<int>(morphisms_.size()); }
  const std::string& object_name(int a) const { return object_names_[static_cast<std::size_t>(a)]; }
  const Morphism& morphism(int m) const { return morphisms_[static_cast<std::size_t>(m)]; }
  const std::vector<int>& hom(int a, int b) const {
    return hom_[static_cast<std::size_t>(a) * object_names_.size() + static_cast<std::size_t>(b)];
  }
  /// Morphisms with the given source, in id order.
  const std::vector<int>& outgoing(int a) const { return outgoing_[static_cast<std::size_t>(a)]; }
  int identity(int a) const { return identities_[static_cast<std::size_t>(a)]; }
  bool is_identity(int m) const { return identity(morphism(m).source) == m; }

  /// g ∘ f; requires target(f) == source(g).
  int compose(int g, int f) const;

  /// Largest hom-set size.
  std::size_t max_hom_size() const;
  bool is_poset_like() const { return max_hom_size() <= 1; }

  /// The same category with objects and morphisms renumbered by seeded
  /// random permutations.
  FiniteCategoryView permuted(std::uint64_t seed) const;

  /// Checks identity laws and associativity on every composable triple
  /// (or the first `limit` of them). Returns a description of the first
  /// violation, empty if none.
  std::string check_laws(std::size_t limit = SIZE_MAX) const;

  class Builder;

 private:
  std::vector<std::string> object_names_;
  std::vector<Morphism> morphisms_;
  std::vector<int> identities_;
  std::vector<std::vector<int>> hom_;
  std::vector<std::vector<int>> outgoing_;
  std::unordered_map<std::uint64_t, int> composition_;
};

/// Incremental construction: add objects, then morphisms (identities are
/// added automatically with each object), then the composition of every
/// composable non-identity pair.
class FiniteCategoryView::Builder {
 public:
  int add_object(std::string name);
  int add_morphism(int source, int target, std::string name);
  void set_composite(int g, int f, int gf);
  /// Throws InvalidArgument when a composable pair has no composite.
  FiniteCategoryView build() &&;

 private:
  FiniteCategoryView view_;
};

/// Poset on {0..n-1} with a <= b iff leq(a, b).
FiniteCategoryView poset_category(int n, const std::function<bool(int, int)>& leq);

enum class CategoryKind { nord, w_hlt };

const char* to_string(CategoryKind k);
std::optional<CategoryKind> parse_category_kind(const std::string& s);

struct CategoryLimits {
  std::uint64_t hom_cap = 1'000'000;
  std::uint64_t morphism_cap = 2'000'000;
};

/// nord: healthy height-n trees with k leaves labeled bijectively by 1..k,
/// and the active morphisms whose leaf map carries labels to labels.
/// w_hlt: unlabeled healthy height-n trees with k leaves and the active
/// morphisms with bijective leaf map.
FiniteCategoryView build_category(CategoryKind kind, int n, int k, const CategoryLimits& limits = {},
                                  Execution exec = Execution::parallel);

/// Sparse integer matrix, column-major.
class IntegerMatrix {
 public:
  IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols), columns_(static_cast<std::size_t>(cols)) {}
  static IntegerMatrix from_dense(const std::vector<std::vector<long>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  /// Entries of column c as (row, value), rows increasing, values nonzero.
  const std::vector<std::pair<int, mpz_class>>& column(int c) const {
    return columns_[static_cast<std::size_t>(c)];
  }
  /// Replaces a column; entries are sorted and zeros dropped.
  void set_column(int c, std::vector<std::pair<int, mpz_class>> entries);
  mpz_class at(int r, int c) const;
  std::size_t nonzeros() const;
  std::vector<std::vector<mpz_class>> dense() const;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  bool is_zero() const { return nonzeros() == 0; }

 private:
  int rows_;
  int cols_;
  std::vector<std::vector<std::pair<int, mpz_class>>> columns_;
};

struct SmithForm {
  /// Nonzero invariant factors, positive, each dividing the next.
  std::vector<mpz_class> divisors;
  int rank() const { return static_cast<int>(divisors.size()); }
};

SmithForm smith_normal_form(const IntegerMatrix& m);

struct ChainLimits {
  std::uint64_t chain_cap = 5'000'000;
};

struct ChainComplex {
  /// sizes[d] = number of nondegenerate d-chains, d = 0..max_dim.
  std::vector<std::uint64_t> sizes;
  /// boundaries[d-1] = ∂_d : C_d -> C_{d-1}, d = 1..max_dim.
  std::vector<IntegerMatrix> boundaries;
};

/// Normalized nerve through dimension max_dim: d-chains are composable
/// strings of d non-identity morphisms; faces that compose to an identity
/// vanish. Throws ResourceError when a chain group exceeds the cap.
ChainComplex nerve_chain_complex(const FiniteCategoryView& c, int max_dim, const ChainLimits& limits = {},
                                 Execution exec = Execution::parallel);

struct DegreeHomology {
  std::uint64_t betti = 0;
  std::vector<mpz_class> torsion;  // divisors > 1, divisibility order
  friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;
};

struct HomologyResult {
  std::vector<DegreeHomology> degrees;  // d = 0..max_degree
  std::vector<std::uint64_t> chain_sizes;
  bool boundary_squares_vanish = true;

  std::vector<std::uint64_t> betti() const;
  /// "Z", "Z^2 + Z/2", "0" per degree.
  std::vector<std::string> groups() const;
};

/// H_d for d = 0..max_degree from the nerve through dimension max_degree+1.
HomologyResult homology_of_category(const FiniteCategoryView& c, int max_degree = 3,
                                    const ChainLimits& limits = {}, Execution exec = Execution::parallel);

/// Homology of an explicit complex; boundaries must cover dimension
/// (degrees + 1).
HomologyResult homology_of_complex(const ChainComplex& cx, int max_degree,
                                   Execution exec = Execution::parallel);

}  // namespace theta_ran
