#include <algorithm>
#include <map>
#include <numeric>

#include "theta_ran/error.hpp"
#include "theta_ran/homology.hpp"
#include "theta_ran/theta.hpp"

namespace theta_ran {

namespace {

struct Underlying {
  int source_tree;
  int target_tree;
  ThetaMorphism morphism;
  std::vector<int> leafmap;  // target leaf -> source leaf, 0-based
  bool identity;
};

std::string labels_to_string(const std::vector<int>& labels) {
  std::string s;
  for (int l : labels) s += (s.empty() ? "" : ",") + std::to_string(l + 1);
  return "{" + s + "}";
}

}  // namespace

FiniteCategoryView build_category(CategoryKind kind, int n, int k, const CategoryLimits& limits,
                                  Execution exec) {
  if (n < 1 || k < 0) throw InvalidArgument("build_category: need n >= 1 and k >= 0");
  const std::vector<Tree> trees = enumerate_healthy_trees(n, k);
  const int t_count = static_cast<int>(trees.size());

  // W-morphisms between every pair of trees
  std::vector<std::vector<ThetaMorphism>> homs(static_cast<std::size_t>(t_count * t_count));
  const EnumerationLimits enum_limits{limits.hom_cap};
  for (int a = 0; a < t_count; ++a) {
    for (int b = 0; b < t_count; ++b) {
      homs[static_cast<std::size_t>(a * t_count + b)] =
          enumerate_theta_hom(trees[static_cast<std::size_t>(a)], trees[static_cast<std::size_t>(b)], HomFilter::w,
                              enum_limits, exec);
    }
  }
  std::vector<Underlying> under;
  std::map<std::pair<int, std::vector<int>>, int> under_index;  // (source tree, encoding)
  for (int a = 0; a < t_count; ++a) {
    const ThetaMorphism id = ThetaMorphism::identity(trees[static_cast<std::size_t>(a)]);
    for (int b = 0; b < t_count; ++b) {
      for (auto& m : homs[static_cast<std::size_t>(a * t_count + b)]) {
        const PointedMap lmap = leaf_map(m);
        std::vector<int> lm;
        for (const auto& v : lmap.assignment()) lm.push_back(*v - 1);
        const bool is_id = a == b && m == id;
        under_index.emplace(std::make_pair(a, m.encode()), static_cast<int>(under.size()));
        under.push_back({a, b, std::move(m), std::move(lm), is_id});
      }
    }
  }

  std::vector<std::vector<int>> labelings;
  if (kind == CategoryKind::nord) {
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      labelings.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    labelings.emplace_back();
  }
  const int l_count = static_cast<int>(labelings.size());
  std::map<std::vector<int>, int> labeling_index;
  for (int i = 0; i < l_count; ++i) labeling_index[labelings[static_cast<std::size_t>(i)]] = i;

  std::uint64_t total = 0;
  for (const auto& u : under) total += u.identity ? 0 : static_cast<std::uint64_t>(l_count);
  if (total > limits.morphism_cap) {
    throw ResourceError("build_category: " + std::to_string(total) + " morphisms exceed cap " +
                        std::to_string(limits.morphism_cap));
  }

  FiniteCategoryView::Builder builder;
  auto object_id = [&](int tree, int labeling) { return tree * l_count + labeling; };
  for (int a = 0; a < t_count; ++a) {
    for (int l = 0; l < l_count; ++l) {
      std::string name = trees[static_cast<std::size_t>(a)].to_string();
      if (kind == CategoryKind::nord) name += " " + labels_to_string(labelings[static_cast<std::size_t>(l)]);
      builder.add_object(std::move(name));
    }
  }
  struct Arrow {
    int source;
    int target;
    int underlying;
  };
  std::vector<Arrow> arrows;  // indexed by morphism id
  std::map<std::pair<int, int>, int> ids;  // (source object, underlying) -> morphism id
  std::vector<std::vector<int>> out_of(static_cast<std::size_t>(t_count * l_count));
  for (int a = 0; a < t_count; ++a) {
    for (int l = 0; l < l_count; ++l) arrows.push_back({object_id(a, l), object_id(a, l), -1});
  }
  for (int ui = 0; ui < static_cast<int>(under.size()); ++ui) {
    const Underlying& u = under[static_cast<std::size_t>(ui)];
    for (int l = 0; l < l_count; ++l) {
      const int src = object_id(u.source_tree, l);
      if (u.identity) {
        ids[{src, ui}] = src;
        arrows[static_cast<std::size_t>(src)].underlying = ui;
        continue;
      }
      int tgt_label = 0;
      if (kind == CategoryKind::nord) {
        // target labels are pulled back along the leaf map
        const auto& lambda = labelings[static_cast<std::size_t>(l)];
        std::vector<int> mu;
        for (int s : u.leafmap) mu.push_back(lambda[static_cast<std::size_t>(s)]);
        tgt_label = labeling_index.at(mu);
      }
      const int tgt = object_id(u.target_tree, tgt_label);
      const int id = builder.add_morphism(src, tgt, u.morphism.to_string());
      ids[{src, ui}] = id;
      arrows.push_back({src, tgt, ui});
      out_of[static_cast<std::size_t>(src)].push_back(id);
    }
  }
  // composition, through the underlying theta morphisms
  std::map<std::pair<int, int>, int> under_composite;
  for (std::size_t f = 0; f < arrows.size(); ++f) {
    const Arrow& af = arrows[f];
    if (under[static_cast<std::size_t>(af.underlying)].identity) continue;
    for (int g : out_of[static_cast<std::size_t>(af.target)]) {
      const int ug = arrows[static_cast<std::size_t>(g)].underlying;
      auto it = under_composite.find({ug, af.underlying});
      if (it == under_composite.end()) {
        const ThetaMorphism c = compose_theta(under[static_cast<std::size_t>(ug)].morphism,
                                              under[static_cast<std::size_t>(af.underlying)].morphism);
        const int uc = under_index.at({under[static_cast<std::size_t>(af.underlying)].source_tree, c.encode()});
        it = under_composite.emplace(std::make_pair(ug, af.underlying), uc).first;
      }
      builder.set_composite(g, static_cast<int>(f), ids.at({af.source, it->second}));
    }
  }
  return std::move(builder).build();
}

}  // namespace theta_ran
