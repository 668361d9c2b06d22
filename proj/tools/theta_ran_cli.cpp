#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "theta_ran/config.hpp"
#include "theta_ran/error.hpp"
#include "theta_ran/harness.hpp"
#include "theta_ran/homology.hpp"
#include "theta_ran/io.hpp"
#include "theta_ran/theta.hpp"

using namespace theta_ran;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

struct Global {
  std::uint64_t seed = 1;
  bool json = false;
  int max_degree = 3;
  std::uint64_t cap = 1'000'000;
};

void emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw InvalidArgument("cannot write " + out);
  f << j.dump(2) << "\n";
}

Json layers_to_json(const LayerDiagram& d) { return {{"sizes", d.sizes}, {"down", d.down}}; }

int run_tree(const Global& g, const std::string& action, const std::string& text) {
  const Tree t = Tree::parse(text);
  if (action == "print") {
    if (g.json) {
      emit({{"tree", t.to_string()}, {"height", t.height()}, {"leaves", t.leaf_count()}, {"healthy", is_healthy(t)}},
           "");
    } else {
      std::cout << t.to_string() << "\n";
    }
  } else if (action == "prune") {
    const PruneResult pr = prune(t);
    if (g.json) {
      emit({{"tree", t.to_string()}, {"pruned", pr.pruned.to_string()}, {"unit", morphism_to_json(pr.unit)}}, "");
    } else {
      std::cout << pr.pruned.to_string() << "\nunit " << pr.unit.to_string() << "\n";
    }
  } else {
    const LayerDiagram d = leaves(t);
    if (g.json) {
      emit(layers_to_json(d), "");
    } else {
      for (std::size_t i = 0; i < d.sizes.size(); ++i) {
        std::cout << "level " << d.sizes.size() - i << ": " << d.sizes[i];
        if (i < d.down.size()) {
          std::cout << " ->";
          for (int v : d.down[i]) std::cout << " " << v;
        }
        std::cout << "\n";
      }
    }
  }
  return kPass;
}

int run_hom(const Global& g, const std::string& action, const std::string& src, const std::string& tgt,
            const std::string& filter_text) {
  const auto filter = parse_hom_filter(filter_text);
  if (!filter) throw InvalidArgument("unknown filter \"" + filter_text + "\" (all, active, exit, w)");
  const Tree s = Tree::parse(src);
  const Tree t = Tree::parse(tgt, s.height());
  const auto homs = enumerate_theta_hom(s, t, *filter, {g.cap});
  if (action == "count") {
    if (g.json) emit({{"source", s.to_string()}, {"target", t.to_string()}, {"filter", filter_text}, {"count", homs.size()}}, "");
    else std::cout << homs.size() << "\n";
    return kPass;
  }
  if (g.json) {
    Json arr = Json::array();
    for (const auto& m : homs) arr.push_back(morphism_to_json(m));
    emit(arr, "");
  } else {
    for (const auto& m : homs) {
      const Classification c = classify_morphism(m);
      std::cout << m.to_string() << "  leaves " << leaf_map(m).to_string() << (c.active ? " active" : "")
                << (c.exit ? " exit" : "") << (c.in_w ? " W" : "") << "\n";
    }
  }
  return kPass;
}

int run_config(const Global& g, const std::string& action, const std::string& points, const std::string& path) {
  if (action == "tree") {
    if (points.empty()) throw InvalidArgument("config tree needs --points");
    const Configuration s = configuration_from_json(read_json_file(points));
    const Tree t = tree_of_configuration(s);
    if (g.json) emit({{"tree", t.to_string()}, {"leaf_order", leaf_order(s)}}, "");
    else std::cout << t.to_string() << "\n";
    return kPass;
  }
  if (path.empty()) throw InvalidArgument("config " + action + " needs --path");
  const ExitData d = exit_data_from_json(read_json_file(path));
  const ExitPathVerdict v = validate_exit_path(d.source, d.target, d.map);
  Json levels = Json::array();
  for (const auto& l : v.levels) {
    Json lj = {{"level", l.level}, {"strands_disjoint", l.strands_disjoint}, {"fibers_preserved", l.fibers_preserved}};
    if (l.detail) lj["detail"] = *l.detail;
    levels.push_back(std::move(lj));
  }
  if (action == "validate") {
    if (g.json) {
      emit({{"valid", v.valid}, {"levels", levels}}, "");
    } else {
      std::cout << (v.valid ? "valid" : "invalid") << "\n";
      for (const auto& l : v.levels) {
        if (l.detail) std::cout << "level " << l.level << ": " << *l.detail << "\n";
      }
    }
    return v.valid ? kPass : kFail;
  }
  if (!v.valid) {
    if (g.json) emit({{"valid", false}, {"levels", levels}}, "");
    else std::cerr << "not a valid exit path\n";
    return kFail;
  }
  const ThetaMorphism m = morphism_of_exit_path(*v.path);
  const Classification c = classify_morphism(m);
  if (g.json) {
    emit({{"morphism", morphism_to_json(m)}, {"active", c.active}, {"exit", c.exit}, {"in_w", c.in_w}}, "");
  } else {
    std::cout << m.source().to_string() << " -> " << m.target().to_string() << "\n" << m.to_string() << "\n";
  }
  return kPass;
}

int run_homology(const Global& g, const std::string& kind_text, int n, int k, bool timing, const std::string& out) {
  const auto kind = parse_category_kind(kind_text);
  if (!kind) throw InvalidArgument("unknown category \"" + kind_text + "\" (nord, w_hlt)");
  const auto start = std::chrono::steady_clock::now();
  const FiniteCategoryView c = build_category(*kind, n, k, {g.cap});
  const HomologyResult h = homology_of_category(c, g.max_degree);
  Json j = {{"category", kind_text}, {"n", n}, {"k", k}, {"objects", c.object_count()},
            {"morphisms", c.morphism_count()}, {"poset_like", c.is_poset_like()}};
  j.update(homology_to_json(h));
  if (timing) j["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (g.json || !out.empty()) {
    emit(j, out);
  } else {
    const auto groups = h.groups();
    for (std::size_t d = 0; d < groups.size(); ++d) std::cout << "H_" << d << " = " << groups[d] << "\n";
  }
  return h.boundary_squares_vanish ? kPass : kFail;
}

int run_verify(const Global& g, const std::string& suite, const std::vector<std::string>& kv,
               const std::string& params_text, bool timing, bool fixtures, const std::string& out) {
  if (fixtures) {
    emit(emit_fixture_tables(), out);
    return kPass;
  }
  if (suite.empty()) throw InvalidArgument("verify needs a suite name or --fixtures");
  Json params = params_text.empty() ? Json::object() : Json::parse(params_text);
  for (const auto& item : kv) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--param expects key=value, got " + item);
    const std::string value = item.substr(eq + 1);
    Json v;
    try {
      v = Json::parse(value);
    } catch (const nlohmann::json::exception&) {
      v = value;
    }
    params[item.substr(0, eq)] = v;
  }
  SuiteOptions opt;
  opt.seed = g.seed;
  opt.timing = timing;
  opt.hom_cap = g.cap;
  opt.max_degree = g.max_degree;
  const SuiteReport r = run_suite(suite, params, opt);
  if (g.json || !out.empty()) {
    emit(report_to_json(r), out);
  } else {
    auto line = [](const SuiteReport& s) {
      std::cout << (s.ok() ? "PASS " : "FAIL ") << s.name << " " << s.passed << "/" << s.cases;
      if (s.wall_seconds) std::cout << " " << *s.wall_seconds << "s";
      std::cout << "\n";
      if (s.counterexample) std::cout << "  counterexample: " << s.counterexample->dump() << "\n";
    };
    for (const auto& p : r.parts) line(p);
    line(r);
  }
  return r.ok() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Θ_n trees, morphisms, configurations and nerve homology"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--seed", g.seed, "Seed for randomized suites");
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--max-degree", g.max_degree, "Highest homology degree")->check(CLI::Range(0, 8));
  app.add_option("--cap", g.cap, "Cap on enumeration and category sizes");

  std::string tree_action, tree_text;
  auto* tree = app.add_subcommand("tree", "Parse, print, prune or take leaves of a tree");
  tree->add_option("action", tree_action, "print, prune or leaves")->required()->check(CLI::IsMember({"print", "prune", "leaves"}));
  tree->add_option("tree", tree_text, "Tree text, e.g. [2]([1],[0])")->required();

  std::string hom_action, hom_src, hom_tgt, hom_filter = "all";
  auto* hom = app.add_subcommand("hom", "Count or list morphisms between trees");
  hom->add_option("action", hom_action, "count or list")->required()->check(CLI::IsMember({"count", "list"}));
  hom->add_option("source", hom_src)->required();
  hom->add_option("target", hom_tgt)->required();
  hom->add_option("--filter", hom_filter, "all, active, exit or w");

  std::string cfg_action, cfg_points, cfg_path;
  auto* cfg = app.add_subcommand("config", "Configurations and exit paths");
  cfg->add_option("action", cfg_action, "tree, morphism or validate")
      ->required()
      ->check(CLI::IsMember({"tree", "morphism", "validate"}));
  cfg->add_option("--points", cfg_points, "Point-set JSON file");
  cfg->add_option("--path", cfg_path, "Exit-path JSON file");

  std::string h_kind;
  int h_n = 0, h_k = 0;
  bool h_timing = false;
  std::string h_out;
  auto* homology = app.add_subcommand("homology", "Integral homology of a category's nerve");
  homology->add_option("--category", h_kind, "nord or w_hlt")->required();
  homology->add_option("--n", h_n, "Height")->required()->check(CLI::Range(1, 6));
  homology->add_option("--k", h_k, "Number of points")->required()->check(CLI::Range(0, 8));
  homology->add_flag("--timing", h_timing, "Include wall time");
  homology->add_option("--out", h_out, "Write the JSON report here");
  // the global option also works after the subcommand
  homology->add_option("--max-degree", g.max_degree)->check(CLI::Range(0, 8));

  std::string v_suite, v_params, v_out;
  std::vector<std::string> v_kv;
  bool v_timing = false, v_fixtures = false;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", v_suite, "Suite name")->check(CLI::IsMember(suite_names()));
  verify->add_option("--param", v_kv, "Suite parameter key=value");
  verify->add_option("--params", v_params, "Suite parameters as a JSON object");
  verify->add_flag("--timing", v_timing, "Include wall time");
  verify->add_flag("--fixtures", v_fixtures, "Print the oracle tables");
  verify->add_option("--out", v_out, "Write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*tree) return run_tree(g, tree_action, tree_text);
    if (*hom) return run_hom(g, hom_action, hom_src, hom_tgt, hom_filter);
    if (*cfg) return run_config(g, cfg_action, cfg_points, cfg_path);
    if (*homology) return run_homology(g, h_kind, h_n, h_k, h_timing, h_out);
    if (*verify) return run_verify(g, v_suite, v_kv, v_params, v_timing, v_fixtures, v_out);
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
