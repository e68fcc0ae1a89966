#pragma once

#include <json.hpp>

#include "thresholdlab/certificate.hpp"
#include "thresholdlab/cover.hpp"
#include "thresholdlab/deviation.hpp"
#include "thresholdlab/family.hpp"
#include "thresholdlab/models.hpp"

namespace tlab {

using nlohmann::json;

json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);

json digraph_to_json(const Digraph& d);
Digraph digraph_from_json(const json& j);

json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

json fractional_certificate_to_json(const FractionalCertificate& c);

json cover_to_json(const CoverFamily& c);
CoverFamily cover_from_json(const json& j, bool relaxed = false);

// Family declarations: a named builtin ("triangle-free" with "n";
// "clique-free-r" is reserved), an explicit "members" list of bit-strings,
// or an up/down closure of "generators".
MonotoneFamily family_from_json(const json& j);

WeightedFamily weighted_family_from_json(const json& j);

// Named test shapes for H: matching, star, cycle, path, complete,
// random-bipartite, random, petersen, wagner.
Graph graph_from_shape(const std::string& shape, int n, int m, std::uint64_t shape_seed);

} // namespace tlab
