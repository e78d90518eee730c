#include "planted/edgelist_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "planted/errors.hpp"

namespace planted {

namespace {

using nlohmann::json;

json spec_to_json(const PlantSpec& spec) {
    json j{{"variant", spec_variant(spec)}};
    if (const auto* l = std::get_if<Line>(&spec)) {
        j["K"] = l->K;
    } else if (const auto* s = std::get_if<Star>(&spec)) {
        j["K"] = s->K;
    } else {
        const auto& t = std::get<DaryTree>(spec);
        j["D"] = t.D;
        j["h"] = t.h;
    }
    return j;
}

PlantSpec spec_from_json(const json& j) {
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "line") return Line{j.at("K").get<std::uint32_t>()};
    if (variant == "star") return Star{j.at("K").get<std::uint32_t>()};
    if (variant == "dary")
        return DaryTree{j.at("D").get<std::uint32_t>(), j.at("h").get<std::uint32_t>()};
    throw parse_error("unknown plant variant in sidecar: " + variant);
}

// Strict "a b" line: two decimal integers, single space, nothing else.
std::pair<std::uint64_t, std::uint64_t> parse_int_pair(const std::string& line,
                                                       std::size_t lineno) {
    const auto fail = [&]() -> std::pair<std::uint64_t, std::uint64_t> {
        throw parse_error("line " + std::to_string(lineno) +
                          ": expected two integers");
    };
    const char* begin = line.data();
    const char* end = begin + line.size();
    std::uint64_t a = 0, b = 0;
    auto r1 = std::from_chars(begin, end, a);
    if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ' ') return fail();
    auto r2 = std::from_chars(r1.ptr + 1, end, b);
    if (r2.ec != std::errc{} || r2.ptr != end) return fail();
    return {a, b};
}

} // namespace

void save_edgelist(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path);
    out << inst.graph.vertex_count() << ' ' << inst.graph.edge_count() << '\n';
    for (const auto& [u, v] : inst.graph.edges()) out << u << ' ' << v << '\n';
    if (!out) throw io_error("write failed: " + path);
    out.close();

    json truth;
    if (inst.truth) {
        json edges = json::array();
        for (const auto& [u, v] : inst.truth->planted_edges)
            edges.push_back(json::array({u, v}));
        truth = json{{"spec", spec_to_json(inst.truth->spec)},
                     {"vertices", inst.truth->planted_vertices},
                     {"edges", edges},
                     {"seed", inst.seed},
                     {"lambda", inst.lambda}};
    } else {
        truth = json{{"spec", nullptr},
                     {"vertices", nullptr},
                     {"edges", nullptr},
                     {"seed", inst.seed},
                     {"lambda", inst.lambda}};
    }
    std::ofstream side(path + ".truth.json", std::ios::binary);
    if (!side) throw io_error("cannot write " + path + ".truth.json");
    side << truth.dump(2) << '\n';
    if (!side) throw io_error("write failed: " + path + ".truth.json");
}

Instance load_edgelist(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot read " + path);

    std::string line;
    if (!std::getline(in, line)) throw parse_error("line 1: missing header");
    const auto [n64, m] = parse_int_pair(line, 1);
    if (n64 > 0xFFFFFFFFull) throw parse_error("line 1: n too large");
    const auto n = static_cast<Vertex>(n64);

    std::vector<Edge> edges;
    edges.reserve(m);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(m * 2);
    for (std::uint64_t i = 0; i < m; ++i) {
        const std::size_t lineno = i + 2;
        if (!std::getline(in, line))
            throw parse_error("line " + std::to_string(lineno) + ": missing edge");
        const auto [u, v] = parse_int_pair(line, lineno);
        if (u == v)
            throw parse_error("line " + std::to_string(lineno) + ": self-loop");
        if (u > v)
            throw parse_error("line " + std::to_string(lineno) +
                              ": endpoints not in u < v order");
        if (v >= n)
            throw parse_error("line " + std::to_string(lineno) +
                              ": vertex index out of range");
        if (!seen.insert(u << 32 | v).second)
            throw parse_error("line " + std::to_string(lineno) + ": duplicate edge");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (std::getline(in, line) && !line.empty())
        throw parse_error("line " + std::to_string(m + 2) + ": trailing content");

    Instance inst;
    inst.graph = Graph(n, std::move(edges));

    std::ifstream side(path + ".truth.json", std::ios::binary);
    if (side) {
        json truth;
        try {
            side >> truth;
        } catch (const json::exception& e) {
            throw parse_error(std::string("bad truth sidecar: ") + e.what());
        }
        try {
            inst.seed = truth.at("seed").get<std::uint64_t>();
            inst.lambda = truth.at("lambda").get<double>();
            if (!truth.at("spec").is_null()) {
                GroundTruth gt;
                gt.spec = spec_from_json(truth.at("spec"));
                gt.planted_vertices = truth.at("vertices").get<std::vector<Vertex>>();
                for (const auto& e : truth.at("edges")) {
                    const auto u = e.at(0).get<Vertex>();
                    const auto v = e.at(1).get<Vertex>();
                    if (!inst.graph.has_edge(u, v))
                        throw parse_error("sidecar edge missing from graph");
                    gt.planted_edges.emplace_back(u, v);
                }
                if (gt.planted_vertices.size() != spec_vertex_count(gt.spec))
                    throw parse_error("sidecar vertex list inconsistent with spec");
                inst.truth = std::move(gt);
            }
        } catch (const json::exception& e) {
            throw parse_error(std::string("bad truth sidecar: ") + e.what());
        }
    }
    return inst;
}

} // namespace planted
