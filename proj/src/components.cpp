#include "planted/components.hpp"

#include <numeric>

namespace planted {

namespace {

struct Dsu {
    std::vector<Vertex> parent;
    explicit Dsu(Vertex n) : parent(n) {
        std::iota(parent.begin(), parent.end(), Vertex{0});
    }
    Vertex find(Vertex x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(Vertex a, Vertex b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b); // root = smallest vertex of the component
        parent[b] = a;
    }
};

} // namespace

std::vector<Component> connected_components(const Graph& g) {
    const Vertex n = g.vertex_count();
    Dsu dsu(n);
    for (const auto& [u, v] : g.edges()) dsu.unite(u, v);

    std::vector<std::int64_t> comp_index(n, -1);
    std::vector<Component> out;
    for (Vertex v = 0; v < n; ++v) {
        const Vertex root = dsu.find(v);
        if (comp_index[root] < 0) {
            comp_index[root] = static_cast<std::int64_t>(out.size());
            out.emplace_back();
        }
        out[comp_index[root]].vertices.push_back(v);
    }
    for (const auto& [u, v] : g.edges())
        ++out[comp_index[dsu.find(u)]].edge_count;
    for (auto& c : out) c.acyclic = (c.edge_count == c.vertices.size() - 1);
    return out;
}

ComponentSummary component_summary(const Graph& g) {
    const Vertex n = g.vertex_count();
    Dsu dsu(n);
    for (const auto& [u, v] : g.edges()) dsu.unite(u, v);

    std::vector<std::int64_t> comp_index(n, -1);
    ComponentSummary s;
    for (Vertex v = 0; v < n; ++v) {
        const Vertex root = dsu.find(v);
        if (comp_index[root] < 0) {
            comp_index[root] = static_cast<std::int64_t>(s.size.size());
            s.size.push_back(0);
            s.edges.push_back(0);
        }
        ++s.size[comp_index[root]];
    }
    for (const auto& [u, v] : g.edges()) ++s.edges[comp_index[dsu.find(u)]];
    return s;
}

} // namespace planted
