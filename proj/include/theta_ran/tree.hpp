#pragma once

// Planar level trees of a fixed height: the objects of Θ_n in wreath form
// [p](T_1, ..., T_p).

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace theta_ran {

/// Immutable planar level tree. Copies share structure.
///
/// A tree of height 1 is [p]; a tree of height n > 1 is [p](T_1, ..., T_p)
/// with every child of height n - 1. The "leaves" of a tree are its vertices
/// at level n; vertices strictly below level n with no children are the
/// dead ends that make a tree unhealthy.
class Tree {
 public:
  /// Height-1 tree [rank].
  static Tree corolla(int rank);
  /// [p](children...). All children must share a height; their count is p.
  static Tree node(std::vector<Tree> children);
  /// [0] of the given height (no vertices above the root).
  static Tree empty(int height);

  /// Parse the text form `[3]([1],[3],[0])`. Empty subtrees `[0]` and
  /// `[0]()` take their height from context; when the whole tree's height is
  /// not pinned by its text, `height` (or else the smallest legal height) is
  /// used. Throws ParseError.
  static Tree parse(std::string_view text, std::optional<int> height = std::nullopt);

  int height() const { return node_->height; }
  int rank() const { return node_->rank; }
  int leaf_count() const { return node_->leaf_count; }
  bool is_empty() const { return node_->rank == 0; }
  /// Structural hash: equal trees hash equally.
  std::size_t hash() const { return node_->hash; }

  /// Children T_1..T_p (empty at height 1). child(i) is 1-based.
  const std::vector<Tree>& children() const { return node_->children; }
  const Tree& child(int i) const { return node_->children[static_cast<std::size_t>(i - 1)]; }

  /// Number of vertices at each level 1..height (index 0 is level 1).
  std::vector<int> level_sizes() const;

  std::string to_string() const;

  friend bool operator==(const Tree& a, const Tree& b);
  friend std::strong_ordering operator<=>(const Tree& a, const Tree& b);

 private:
  struct Node {
    int height = 1;
    int rank = 0;
    int leaf_count = 0;
    std::size_t hash = 0;
    std::vector<Tree> children;
  };
  explicit Tree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// True iff every vertex below the top level has at least one child. The
/// empty tree counts as healthy.
bool is_healthy(const Tree& t);

/// Vertices strictly below the top level (the root included) that have no
/// children. Zero exactly for healthy nonempty trees; the empty tree has one.
int dead_end_count(const Tree& t);

/// The layer sequence of a tree: vertex counts per level together with the
/// parent maps from level i+1 to level i, vertices in depth-first planar order.
struct TreeLayers {
  /// sizes[i] = number of vertices at level i+1.
  std::vector<int> sizes;
  /// parent[i][v] = 1-based index at level i+1 of the parent of the
  /// 1-based vertex v+1 at level i+2. Size height-1.
  std::vector<std::vector<int>> parent;
};

TreeLayers tree_layers(const Tree& t);

/// Truncation: forget every level above `level` (1 <= level <= height).
Tree truncate(const Tree& t, int level);

/// All trees of the given height whose leaf count is at most max_leaves and
/// with at most max_dead_ends dead ends, in a deterministic order.
std::vector<Tree> enumerate_trees(int height, int max_leaves, int max_dead_ends);

/// All healthy trees of the given height with exactly `leaves` leaves.
std::vector<Tree> enumerate_healthy_trees(int height, int leaves);

}  // namespace theta_ran

template <>
struct std::hash<theta_ran::Tree> {
  std::size_t operator()(const theta_ran::Tree& t) const noexcept { return t.hash(); }
};
