#include "thresholdlab/json_io.hpp"

namespace tlab {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    fail(errc::config_invalid, path + ": " + what);
}

int get_int(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) bad(path + "." + key, "missing");
    if (!j[key].is_number_integer()) bad(path + "." + key, "expected integer");
    return j[key].get<int>();
}

} // namespace

json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back(json::array({u, v}));
    return json{{"n", g.vertex_count()}, {"edges", edges}};
}

Graph graph_from_json(const json& j) {
    if (!j.is_object()) bad("graph", "expected object {n, edges}");
    int n = get_int(j, "n", "graph");
    Graph g(n);
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) bad("graph.edges", "expected array of [u,v]");
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2) bad("graph.edges", "expected [u,v] pairs");
            int u = e[0].get<int>(), v = e[1].get<int>();
            if (u < 0 || v < 0 || u >= n || v >= n) bad("graph.edges", "endpoint out of range");
            g.add_edge(u, v);
        }
    }
    return g;
}

json digraph_to_json(const Digraph& d) {
    json arcs = json::array();
    for (auto [u, v] : d.arcs()) arcs.push_back(json::array({u, v}));
    return json{{"n", d.vertex_count()}, {"arcs", arcs}, {"loops_allowed", d.loops_allowed()}};
}

Digraph digraph_from_json(const json& j) {
    if (!j.is_object()) bad("digraph", "expected object {n, arcs, loops_allowed}");
    int n = get_int(j, "n", "digraph");
    bool loops = j.value("loops_allowed", false);
    Digraph d(n, loops);
    if (j.contains("arcs")) {
        for (const auto& e : j["arcs"]) {
            if (!e.is_array() || e.size() != 2) bad("digraph.arcs", "expected [u,v] pairs");
            int u = e[0].get<int>(), v = e[1].get<int>();
            if (u < 0 || v < 0 || u >= n || v >= n) bad("digraph.arcs", "endpoint out of range");
            d.add_arc(u, v);
        }
    }
    return d;
}

json certificate_to_json(const Certificate& c) {
    json members = json::array();
    for (const auto& m : c.members) members.push_back(m.to_bitstring());
    json ground{{"size", c.ground.size}};
    if (!c.ground.label.empty()) ground["label"] = c.ground.label;
    return json{{"ground", ground}, {"members", members}};
}

Certificate certificate_from_json(const json& j) {
    if (!j.is_object() || !j.contains("ground")) bad("certificate", "expected {ground, members}");
    GroundSet ground{get_int(j["ground"], "size", "certificate.ground"),
                     j["ground"].value("label", "")};
    std::vector<SubsetMask> members;
    for (const auto& s : j.value("members", json::array())) {
        if (!s.is_string()) bad("certificate.members", "expected bit-strings");
        auto m = SubsetMask::from_bitstring(s.get<std::string>());
        if (m.ground_size() != ground.size) bad("certificate.members", "bit-string length != N");
        members.push_back(std::move(m));
    }
    return Certificate::make(std::move(ground), std::move(members));
}

json fractional_certificate_to_json(const FractionalCertificate& c) {
    json weights = json::object();
    for (std::size_t i = 0; i < c.support.size(); ++i)
        weights[c.support[i].to_bitstring()] = c.weight[i];
    json ground{{"size", c.ground.size}};
    if (!c.ground.label.empty()) ground["label"] = c.ground.label;
    return json{{"ground", ground}, {"weights", weights}};
}

json cover_to_json(const CoverFamily& c) {
    json members = json::array();
    for (const auto& g : c.members) {
        json edges = json::array();
        for (auto [u, v] : g.edges()) edges.push_back(json::array({u, v}));
        members.push_back(edges);
    }
    return json{{"n", c.n}, {"m", c.m}, {"members", members}};
}

CoverFamily cover_from_json(const json& j, bool relaxed) {
    if (!j.is_object()) bad("cover", "expected {n, m, members}");
    int n = get_int(j, "n", "cover");
    int m = get_int(j, "m", "cover");
    std::vector<Graph> members;
    for (const auto& edges : j.value("members", json::array())) {
        Graph g(n);
        for (const auto& e : edges) {
            if (!e.is_array() || e.size() != 2) bad("cover.members", "expected [u,v] pairs");
            g.add_edge(e[0].get<int>(), e[1].get<int>());
        }
        members.push_back(std::move(g));
    }
    return CoverFamily::make(n, m, std::move(members), relaxed);
}

MonotoneFamily family_from_json(const json& j) {
    if (!j.is_object()) bad("family", "expected object");
    if (j.contains("builtin")) {
        std::string name = j["builtin"].get<std::string>();
        if (name == "triangle-free") {
            int n = get_int(j, "n", "family");
            if (j.contains("direction") && j["direction"].get<std::string>() != "down")
                bad("family.direction", "triangle-free is a down-set");
            return MonotoneFamily::triangle_free(n);
        }
        if (name.rfind("clique-free", 0) == 0)
            bad("family.builtin", "'" + name + "' is reserved and not implemented");
        bad("family.builtin", "unknown builtin '" + name + "'");
    }
    if (!j.contains("ground")) bad("family.ground", "missing");
    GroundSet ground{get_int(j["ground"], "size", "family.ground"), j["ground"].value("label", "")};
    if (ground.size < 1) bad("family.ground.size", "must be >= 1");
    if (!j.contains("direction")) bad("family.direction", "missing");
    std::string dir_s = j["direction"].get<std::string>();
    if (dir_s != "up" && dir_s != "down") bad("family.direction", "expected \"up\" or \"down\"");
    Direction dir = dir_s == "up" ? Direction::Up : Direction::Down;

    auto parse_masks = [&](const json& arr, const char* where) {
        std::vector<SubsetMask> out;
        for (const auto& s : arr) {
            if (!s.is_string()) bad(where, "expected bit-strings");
            auto m = SubsetMask::from_bitstring(s.get<std::string>());
            if (m.ground_size() != ground.size) bad(where, "bit-string length != ground size");
            out.push_back(std::move(m));
        }
        return out;
    };

    if (j.contains("members"))
        return MonotoneFamily::from_members(ground, dir, parse_masks(j["members"], "family.members"));
    if (j.contains("generators"))
        return MonotoneFamily::from_generators(ground, dir,
                                               parse_masks(j["generators"], "family.generators"));
    bad("family", "needs one of builtin | members | generators");
}

WeightedFamily weighted_family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("members")) bad("wfamily", "expected {members: [...]}");
    std::vector<Graph> graphs;
    std::vector<double> weights;
    for (const auto& item : j["members"]) {
        if (!item.is_object() || !item.contains("graph"))
            bad("wfamily.members", "expected {graph, weight}");
        graphs.push_back(graph_from_json(item["graph"]));
        weights.push_back(item.value("weight", 1.0));
    }
    return WeightedFamily::make(std::move(graphs), std::move(weights));
}

Graph graph_from_shape(const std::string& shape, int n, int m, std::uint64_t shape_seed) {
    if (shape == "matching") return matching_graph(n, m);
    if (shape == "star") return star_graph(n, m);
    if (shape == "cycle") return cycle_graph(n);
    if (shape == "path") return path_graph(n);
    if (shape == "complete") return complete_graph(n);
    if (shape == "random-bipartite") return random_bipartite_graph(n, m, shape_seed);
    if (shape == "random") return random_graph_with_edges(n, m, shape_seed);
    if (shape == "petersen") return petersen_graph();
    if (shape == "wagner") return wagner_graph();
    fail(errc::config_invalid, "unknown shape '" + shape + "'");
}

} // namespace tlab
