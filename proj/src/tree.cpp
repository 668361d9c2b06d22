#include "theta_ran/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "theta_ran/error.hpp"

namespace theta_ran {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Tree Tree::corolla(int rank) {
  if (rank < 0) throw InvalidArgument("tree: negative rank");
  auto n = std::make_shared<Node>();
  n->height = 1;
  n->rank = rank;
  n->leaf_count = rank;
  n->hash = mix(mix(0, 1), static_cast<std::size_t>(rank));
  return Tree(std::move(n));
}

Tree Tree::node(std::vector<Tree> children) {
  if (children.empty()) {
    throw InvalidArgument("tree: node() needs children; use Tree::empty(height) for [0]");
  }
  const int h = children.front().height();
  auto n = std::make_shared<Node>();
  n->height = h + 1;
  n->rank = static_cast<int>(children.size());
  n->hash = mix(mix(0, static_cast<std::size_t>(h + 1)), children.size());
  for (const auto& c : children) {
    if (c.height() != h) {
      throw InvalidArgument("tree: children of mixed heights in " + c.to_string());
    }
    n->leaf_count += c.leaf_count();
    n->hash = mix(n->hash, c.hash());
  }
  n->children = std::move(children);
  return Tree(std::move(n));
}

Tree Tree::empty(int height) {
  if (height < 1) throw InvalidArgument("tree: height must be at least 1");
  auto n = std::make_shared<Node>();
  n->height = height;
  n->hash = mix(mix(0, static_cast<std::size_t>(height)), 0);
  return Tree(std::move(n));
}

namespace {

struct Syntax {
  int rank = 0;
  bool parens = false;
  std::vector<Syntax> children;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Syntax parse_all() {
    Syntax t = parse_tree();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return t;
  }

 private:
  Syntax parse_tree() {
    expect('[');
    skip_ws();
    std::size_t start = pos_;
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1'000'000) fail("rank too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a natural number");
    expect(']');
    Syntax t;
    t.rank = static_cast<int>(v);
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      t.parens = true;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ')') {
        ++pos_;
      } else {
        while (true) {
          t.children.push_back(parse_tree());
          skip_ws();
          if (pos_ < s_.size() && s_[pos_] == ',') {
            ++pos_;
            continue;
          }
          expect(')');
          break;
        }
      }
    }
    if (t.parens && static_cast<int>(t.children.size()) != t.rank) {
      fail("[" + std::to_string(t.rank) + "] has " + std::to_string(t.children.size()) + " children");
    }
    return t;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("tree: " + what + " at offset " + std::to_string(pos_) + " in \"" +
                     std::string(s_) + "\"");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// Height constraint of a syntax node: either pinned or at least `min`.
struct HeightInfo {
  int min = 1;
  bool fixed = false;
};

HeightInfo infer(const Syntax& t) {
  if (t.children.empty()) {
    if (t.rank > 0) return {1, true};
    return {1, false};
  }
  std::optional<int> pinned;
  int min_child = 1;
  for (const auto& c : t.children) {
    HeightInfo h = infer(c);
    if (h.fixed) {
      if (pinned && *pinned != h.min) {
        throw ParseError("tree: children of mixed heights (" + std::to_string(*pinned) + " and " +
                         std::to_string(h.min) + ")");
      }
      pinned = h.min;
    }
    min_child = std::max(min_child, h.min);
  }
  if (pinned) {
    if (min_child > *pinned) throw ParseError("tree: children of mixed heights");
    return {*pinned + 1, true};
  }
  return {min_child + 1, false};
}

Tree build(const Syntax& t, int height) {
  if (t.rank == 0) return Tree::empty(height);
  if (height == 1) {
    if (!t.children.empty()) throw ParseError("tree: height-1 vertex cannot have subtrees");
    return Tree::corolla(t.rank);
  }
  if (t.children.empty()) {
    throw ParseError("tree: [" + std::to_string(t.rank) + "] needs subtrees at height " +
                     std::to_string(height));
  }
  std::vector<Tree> kids;
  kids.reserve(t.children.size());
  for (const auto& c : t.children) kids.push_back(build(c, height - 1));
  return Tree::node(std::move(kids));
}

}  // namespace

Tree Tree::parse(std::string_view text, std::optional<int> height) {
  Syntax s = Parser(text).parse_all();
  HeightInfo info = infer(s);
  int h = info.min;
  if (height) {
    if (*height < 1) throw ParseError("tree: height must be at least 1");
    if (info.fixed && *height != info.min) {
      throw ParseError("tree: text has height " + std::to_string(info.min) + ", expected " +
                       std::to_string(*height));
    }
    if (!info.fixed && *height < info.min) {
      throw ParseError("tree: text needs height at least " + std::to_string(info.min));
    }
    h = *height;
  }
  return build(s, h);
}

std::vector<int> Tree::level_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(height()), 0);
  std::function<void(const Tree&, int)> walk = [&](const Tree& t, int level) {
    sizes[static_cast<std::size_t>(level - 1)] += t.rank();
    for (const auto& c : t.children()) walk(c, level + 1);
  };
  walk(*this, 1);
  return sizes;
}

std::string Tree::to_string() const {
  std::string out = "[" + std::to_string(rank()) + "]";
  if (!children().empty()) {
    out += '(';
    for (std::size_t i = 0; i < children().size(); ++i) {
      if (i) out += ',';
      out += children()[i].to_string();
    }
    out += ')';
  }
  return out;
}

bool operator==(const Tree& a, const Tree& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.height() <=> b.height(); c != 0) return c;
  if (auto c = a.rank() <=> b.rank(); c != 0) return c;
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    if (auto c = a.children()[i] <=> b.children()[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool is_healthy(const Tree& t) { return t.is_empty() || dead_end_count(t) == 0; }

int dead_end_count(const Tree& t) {
  if (t.rank() == 0) return 1;
  int dead = 0;
  for (const auto& c : t.children()) dead += dead_end_count(c);
  return dead;
}

TreeLayers tree_layers(const Tree& t) {
  TreeLayers out;
  const int n = t.height();
  out.sizes.assign(static_cast<std::size_t>(n), 0);
  out.parent.assign(static_cast<std::size_t>(n - 1), {});
  // `current` holds the vertices one level below `level`, in planar order.
  std::vector<Tree> current{t};
  for (int level = 1; level <= n; ++level) {
    std::vector<Tree> next;
    int index = 0;
    for (const auto& v : current) {
      ++index;  // v sits at level-1; index is 1-based
      out.sizes[static_cast<std::size_t>(level - 1)] += v.rank();
      if (level < n) {
        for (const auto& c : v.children()) {
          next.push_back(c);
        }
      }
      if (level >= 2) {
        for (int k = 0; k < v.rank(); ++k) {
          out.parent[static_cast<std::size_t>(level - 2)].push_back(index);
        }
      }
    }
    current = std::move(next);
  }
  return out;
}

Tree truncate(const Tree& t, int level) {
  if (level < 1 || level > t.height()) {
    throw InvalidArgument("truncate: level " + std::to_string(level) + " outside [1," +
                          std::to_string(t.height()) + "]");
  }
  if (level == t.height()) return t;
  if (level == 1) return Tree::corolla(t.rank());
  if (t.is_empty()) return Tree::empty(level);
  std::vector<Tree> kids;
  kids.reserve(t.children().size());
  for (const auto& c : t.children()) kids.push_back(truncate(c, level - 1));
  return Tree::node(std::move(kids));
}

namespace {

struct Counted {
  Tree tree;
  int leaves;
  int dead;
};

std::vector<Counted> trees_bounded(int height, int max_leaves, int max_dead) {
  std::vector<Counted> out;
  if (height == 1) {
    if (max_dead >= 1) out.push_back({Tree::corolla(0), 0, 1});
    for (int p = 1; p <= max_leaves; ++p) out.push_back({Tree::corolla(p), p, 0});
    return out;
  }
  if (max_dead >= 1) out.push_back({Tree::empty(height), 0, 1});
  const auto kids = trees_bounded(height - 1, max_leaves, max_dead);
  std::vector<Tree> seq;
  std::function<void(int, int)> extend = [&](int leaves, int dead) {
    if (!seq.empty()) out.push_back({Tree::node(seq), leaves, dead});
    for (const auto& k : kids) {
      if (leaves + k.leaves > max_leaves || dead + k.dead > max_dead) continue;
      // a child contributes at least one leaf or one dead end, so this terminates
      seq.push_back(k.tree);
      extend(leaves + k.leaves, dead + k.dead);
      seq.pop_back();
    }
  };
  extend(0, 0);
  return out;
}

}  // namespace

std::vector<Tree> enumerate_trees(int height, int max_leaves, int max_dead_ends) {
  if (height < 1) throw InvalidArgument("enumerate_trees: height must be at least 1");
  std::vector<Tree> out;
  for (auto& c : trees_bounded(height, max_leaves, max_dead_ends)) out.push_back(std::move(c.tree));
  return out;
}

std::vector<Tree> enumerate_healthy_trees(int height, int leaves) {
  std::vector<Tree> out;
  for (auto& c : trees_bounded(height, leaves, 0)) {
    if (c.leaves == leaves) out.push_back(std::move(c.tree));
  }
  if (leaves == 0) out.push_back(Tree::empty(height));
  return out;
}

}  // namespace theta_ran
