#include "planted/plant.hpp"

#include <algorithm>
#include <unordered_map>

#include "planted/errors.hpp"
#include "planted/rng.hpp"

namespace planted {

namespace {

// Internal node count of a complete D-ary tree of height h.
std::uint64_t dary_internal_count(std::uint32_t D, std::uint32_t h) {
    if (D == 1) return h;
    std::uint64_t total = 0, level = 1;
    for (std::uint32_t d = 0; d < h; ++d) {
        total += level;
        if (level > (1ull << 62) / D) throw usage_error("d-ary tree too large");
        level *= D;
    }
    return total;
}

} // namespace

std::uint64_t spec_vertex_count(const PlantSpec& spec) {
    struct V {
        std::uint64_t operator()(const Line& l) const {
            if (l.K < 2) throw usage_error("line needs K >= 2");
            return l.K;
        }
        std::uint64_t operator()(const Star& s) const {
            if (s.K < 1) throw usage_error("star needs K >= 1");
            return static_cast<std::uint64_t>(s.K) + 1;
        }
        std::uint64_t operator()(const DaryTree& t) const {
            if (t.D < 1) throw usage_error("d-ary tree needs D >= 1");
            return dary_internal_count(t.D, t.h + 1);
        }
    };
    return std::visit(V{}, spec);
}

std::uint64_t spec_edge_count(const PlantSpec& spec) {
    return spec_vertex_count(spec) - 1; // every variant is a tree
}

std::string spec_variant(const PlantSpec& spec) {
    if (std::holds_alternative<Line>(spec)) return "line";
    if (std::holds_alternative<Star>(spec)) return "star";
    return "dary";
}

std::vector<Edge> spec_edges(const PlantSpec& spec) {
    const std::uint64_t kv = spec_vertex_count(spec);
    std::vector<Edge> out;
    out.reserve(kv);
    if (const auto* l = std::get_if<Line>(&spec)) {
        for (Vertex i = 0; i + 1 < l->K; ++i) out.emplace_back(i, i + 1);
    } else if (const auto* s = std::get_if<Star>(&spec)) {
        for (Vertex i = 1; i <= s->K; ++i) out.emplace_back(0, i);
    } else {
        const auto& t = std::get<DaryTree>(spec);
        const std::uint64_t internal = dary_internal_count(t.D, t.h);
        for (std::uint64_t i = 0; i < internal; ++i)
            for (std::uint32_t c = 1; c <= t.D; ++c)
                out.emplace_back(static_cast<Vertex>(i),
                                 static_cast<Vertex>(i * t.D + c));
    }
    return out;
}

PlantSpec parse_plant_spec(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw usage_error("plant spec must be line:K, star:K or dary:D,h");
    const std::string kind = text.substr(0, colon);
    const std::string args = text.substr(colon + 1);
    const auto field = [&text](const std::string& s) -> std::uint32_t {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(s, &used);
        } catch (const std::logic_error&) {
            throw usage_error("bad plant spec argument: " + text);
        }
        if (used != s.size() || v > 0xFFFFFFFFul)
            throw usage_error("bad plant spec argument: " + text);
        return static_cast<std::uint32_t>(v);
    };
    if (kind == "line") {
        const Line spec{field(args)};
        if (spec.K < 2) throw usage_error("line needs K >= 2");
        return spec;
    }
    if (kind == "star") {
        const Star spec{field(args)};
        if (spec.K < 1) throw usage_error("star needs K >= 1");
        return spec;
    }
    if (kind == "dary") {
        const auto comma = args.find(',');
        if (comma == std::string::npos)
            throw usage_error("dary spec needs D,h");
        const DaryTree spec{field(args.substr(0, comma)),
                            field(args.substr(comma + 1))};
        if (spec.D < 1) throw usage_error("dary needs D >= 1");
        return spec;
    }
    throw usage_error("unknown plant variant: " + kind);
}

Instance plant(const Graph& base, const PlantSpec& spec, std::uint64_t seed,
               double lambda) {
    const std::uint64_t kv = spec_vertex_count(spec);
    const Vertex n = base.vertex_count();
    if (kv > n) throw usage_error("planted structure larger than graph");

    // Uniform injective sigma: partial Fisher-Yates over a sparse view of
    // the identity permutation (only touched slots are materialized).
    Rng rng(seed);
    std::unordered_map<std::uint64_t, Vertex> slot;
    auto slot_value = [&](std::uint64_t i) {
        const auto it = slot.find(i);
        return it == slot.end() ? static_cast<Vertex>(i) : it->second;
    };
    std::vector<Vertex> sigma(kv);
    for (std::uint64_t i = 0; i < kv; ++i) {
        const std::uint64_t j = i + rng.below(n - i);
        sigma[i] = slot_value(j);
        slot[j] = slot_value(i);
    }

    std::vector<Edge> planted;
    planted.reserve(spec_edge_count(spec));
    for (const auto& [a, b] : spec_edges(spec)) {
        Vertex u = sigma[a], v = sigma[b];
        if (u > v) std::swap(u, v);
        planted.emplace_back(u, v);
    }

    std::vector<Edge> all = base.edges();
    all.insert(all.end(), planted.begin(), planted.end());
    Instance inst;
    inst.graph = Graph(n, std::move(all));
    inst.truth = GroundTruth{spec, std::move(sigma), std::move(planted)};
    inst.seed = seed;
    inst.lambda = lambda;
    return inst;
}

} // namespace planted
