#include "theta_ran/io.hpp"

#include <fstream>
#include <sstream>

#include "theta_ran/error.hpp"

namespace theta_ran {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("json: missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("json: bad ") + what + ": " + j.dump());
  }
}

Tree tree_field(const Json& j, const char* key, int height) {
  return Tree::parse(get<std::string>(field(j, key), key), height);
}

}  // namespace

Json morphism_to_json(const ThetaMorphism& f) {
  Json j;
  j["height"] = f.height();
  j["source"] = f.source().to_string();
  j["target"] = f.target().to_string();
  j["base"] = f.base().values();
  Json comps = Json::array();
  if (f.height() > 1) {
    const PointedMap circle = simplicial_circle(f.base());
    std::size_t next = 0;
    for (int t = 1; t <= f.target().rank(); ++t) {
      auto s = circle(t);
      if (!s) continue;
      comps.push_back({{"from", *s}, {"to", t}, {"morphism", morphism_to_json(f.components()[next++])}});
    }
  }
  j["components"] = std::move(comps);
  return j;
}

ThetaMorphism morphism_from_json(const Json& j) {
  const int height = get<int>(field(j, "height"), "height");
  if (height < 1) throw ParseError("json: height must be at least 1");
  Tree source = tree_field(j, "source", height);
  Tree target = tree_field(j, "target", height);
  MonotoneMap base(target.rank(), get<std::vector<int>>(field(j, "base"), "base"));
  std::vector<ThetaMorphism> comps;
  const Json& cj = field(j, "components");
  if (!cj.is_array()) throw ParseError("json: components must be an array");
  int last_to = 0;
  for (const auto& c : cj) {
    const int to = get<int>(field(c, "to"), "to");
    const int from = get<int>(field(c, "from"), "from");
    if (to <= last_to) throw ParseError("json: components must have increasing \"to\"");
    last_to = to;
    ThetaMorphism m = morphism_from_json(field(c, "morphism"));
    if (to < 1 || to > target.rank() || from < 1 || from > source.rank() || m.source() != source.child(from) ||
        m.target() != target.child(to)) {
      throw ParseError("json: component " + std::to_string(from) + " -> " + std::to_string(to) +
                       " does not match the objects");
    }
    const PointedMap circle = simplicial_circle(base);
    if (circle(to) != from) {
      throw ParseError("json: component " + std::to_string(from) + " -> " + std::to_string(to) +
                       " is not over the base map");
    }
    comps.push_back(std::move(m));
  }
  return ThetaMorphism(std::move(source), std::move(target), std::move(base), std::move(comps));
}

Json configuration_to_json(const Configuration& s) {
  Json j = Json::array();
  for (const auto& p : s.points()) {
    Json pt = Json::array();
    for (const auto& x : p) pt.push_back(to_string(x));
    j.push_back(std::move(pt));
  }
  return j;
}

Configuration configuration_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("json: a configuration is an array of points");
  std::vector<Point> points;
  int dim = -1;
  for (const auto& pj : j) {
    if (!pj.is_array() || pj.empty()) throw ParseError("json: a point is a nonempty array of rationals");
    Point p;
    for (const auto& x : pj) {
      if (x.is_string()) {
        p.push_back(parse_rational(x.get<std::string>()));
      } else if (x.is_number_integer()) {
        p.push_back(parse_rational(x.dump()));
      } else {
        throw ParseError("json: bad coordinate " + x.dump());
      }
    }
    if (dim < 0) dim = static_cast<int>(p.size());
    points.push_back(std::move(p));
  }
  return Configuration(dim < 0 ? 1 : dim, std::move(points));
}

namespace {

Configuration configuration_with_dimension(const Json& j, int dimension) {
  Configuration c = configuration_from_json(j);
  if (c.empty()) return Configuration(dimension, {});
  return c;
}

}  // namespace

Json exit_data_to_json(const ExitData& d) {
  Json pairs = Json::array();
  for (std::size_t t = 0; t < d.map.size(); ++t) pairs.push_back({static_cast<int>(t), d.map[t]});
  return {{"dimension", d.source.dimension()},
          {"source", configuration_to_json(d.source)},
          {"target", configuration_to_json(d.target)},
          {"map", std::move(pairs)}};
}

ExitData exit_data_from_json(const Json& j) {
  int dimension = 1;
  if (j.is_object() && j.contains("dimension")) dimension = get<int>(j.at("dimension"), "dimension");
  const Json& sj = field(j, "source");
  const Json& tj = field(j, "target");
  if (!sj.empty()) dimension = static_cast<int>(sj.at(0).size());
  else if (!tj.empty()) dimension = static_cast<int>(tj.at(0).size());
  Configuration source = configuration_with_dimension(sj, dimension);
  Configuration target = configuration_with_dimension(tj, dimension);
  std::vector<int> map(static_cast<std::size_t>(target.size()), -1);
  const Json& mj = field(j, "map");
  if (!mj.is_array()) throw ParseError("json: map must be an array of [target, source] pairs");
  for (const auto& pair : mj) {
    auto v = get<std::vector<int>>(pair, "map entry");
    if (v.size() != 2 || v[0] < 0 || v[0] >= target.size()) throw ParseError("json: bad map entry " + pair.dump());
    if (map[static_cast<std::size_t>(v[0])] != -1) throw ParseError("json: target index repeated in map");
    map[static_cast<std::size_t>(v[0])] = v[1];
  }
  for (std::size_t t = 0; t < map.size(); ++t) {
    if (map[t] == -1) throw ParseError("json: target point " + std::to_string(t) + " missing from map");
  }
  return {std::move(source), std::move(target), std::move(map)};
}

Json homology_to_json(const HomologyResult& h) {
  Json degrees = Json::array();
  for (std::size_t d = 0; d < h.degrees.size(); ++d) {
    Json torsion = Json::array();
    for (const auto& t : h.degrees[d].torsion) torsion.push_back(t.get_str());
    degrees.push_back({{"degree", static_cast<int>(d)},
                       {"betti", h.degrees[d].betti},
                       {"torsion", std::move(torsion)},
                       {"group", h.groups()[d]}});
  }
  return {{"degrees", std::move(degrees)},
          {"chain_sizes", h.chain_sizes},
          {"boundary_squares_vanish", h.boundary_squares_vanish}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace theta_ran
