#pragma once

// JSON forms of trees, morphisms, configurations, exit paths and homology
// reports. The formats are described in docs/formats.md.

#include <json.hpp>

#include <string>

#include "theta_ran/config.hpp"
#include "theta_ran/homology.hpp"
#include "theta_ran/theta.hpp"
#include "theta_ran/tree.hpp"

namespace theta_ran {

using Json = nlohmann::ordered_json;

/// {"height", "source", "target", "base", "components": [{"from", "to", "morphism"}]}
Json morphism_to_json(const ThetaMorphism& f);
/// Inverse of morphism_to_json; validates the datum. Throws ParseError.
ThetaMorphism morphism_from_json(const Json& j);

/// Array of points, each an array of rational strings.
Json configuration_to_json(const Configuration& s);
/// Throws ParseError on malformed input, InvalidArgument on a bad configuration.
Configuration configuration_from_json(const Json& j);

/// {"source", "target", "map": [[target index, source index], ...]}, 0-based.
Json exit_data_to_json(const ExitData& d);
ExitData exit_data_from_json(const Json& j);

/// {"degrees": [{"degree", "betti", "torsion"}], "chain_sizes", "boundary_squares_vanish"}
Json homology_to_json(const HomologyResult& h);

/// Reads and parses a JSON file. Throws ParseError.
Json read_json_file(const std::string& path);

}  // namespace theta_ran
