#include "planted/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "planted/detect.hpp"
#include "planted/errors.hpp"
#include "planted/rng.hpp"

namespace planted {

std::uint64_t overlap(const std::vector<Vertex>& a,
                      const std::vector<Vertex>& b) {
    std::vector<Vertex> sa(a), sb(b);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::vector<Vertex> both;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                          std::back_inserter(both));
    return both.size();
}

namespace {

struct PeelReport {
    std::vector<Vertex> survivors; // ascending
    std::uint64_t isolated_removed = 0;
};

// One removal set per round, computed before anything is deleted; vertices of
// induced degree 0 go too (they cannot sit on the surviving path and would
// otherwise pollute padding).
PeelReport peel_report(const std::vector<Vertex>& vertices, const Graph& g,
                       std::uint64_t rounds) {
    PeelReport rep;
    std::vector<char> alive(g.vertex_count(), 0);
    std::vector<Vertex> cur(vertices);
    std::sort(cur.begin(), cur.end());
    cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
    for (const Vertex v : cur) alive[v] = 1;

    std::vector<Vertex> doomed;
    for (std::uint64_t r = 0; r < rounds; ++r) {
        doomed.clear();
        for (const Vertex v : cur) {
            std::uint64_t deg = 0;
            for (const Vertex w : g.neighbors(v)) deg += alive[w];
            if (deg <= 1) {
                doomed.push_back(v);
                if (deg == 0) ++rep.isolated_removed;
            }
        }
        if (doomed.empty()) break; // fixed point, further rounds are no-ops
        for (const Vertex v : doomed) alive[v] = 0;
        std::erase_if(cur, [&](Vertex v) { return !alive[v]; });
    }
    rep.survivors = std::move(cur);
    return rep;
}

std::vector<Vertex> component_of(const Graph& g, Vertex src) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Vertex> queue{src};
    seen[src] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (const Vertex w : g.neighbors(queue[head]))
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
    std::sort(queue.begin(), queue.end());
    return queue;
}

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex src) {
    std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
    std::vector<Vertex> queue{src};
    dist[src] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex u = queue[head];
        for (const Vertex w : g.neighbors(u))
            if (dist[w] == kUnreached) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

std::uint64_t ceil_sqrt(std::uint64_t k) {
    std::uint64_t r = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(k))));
    while (r > 0 && (r - 1) * (r - 1) >= k) --r;
    while (r * r < k) ++r;
    return r;
}

} // namespace

std::vector<Vertex> peel(const std::vector<Vertex>& vertices, const Graph& g,
                         std::uint64_t rounds) {
    return peel_report(vertices, g, rounds).survivors;
}

ReconstructionResult reconstruct_line(const Graph& g, std::uint64_t K,
                                      std::uint64_t budget) {
    if (K < 2) throw usage_error("line reconstruction needs K >= 2");

    ReconstructionResult res;
    res.method = "line";
    const std::uint64_t rounds = ceil_sqrt(K);
    res.diagnostics["peel_rounds"] = static_cast<double>(rounds);

    if (g.vertex_count() == 0) {
        for (std::uint64_t v = 0; v < K; ++v)
            res.estimated.push_back(static_cast<Vertex>(v));
        res.diagnostics["component_size"] = 0;
        res.diagnostics["trim_count"] = 0;
        res.diagnostics["pad_count"] = static_cast<double>(K);
        res.diagnostics["degenerate"] = 1;
        res.diagnostics["exact"] = 1;
        return res;
    }

    const LongestPathResult lp = longest_path(g, budget);
    const std::vector<Vertex>& path = lp.witness;
    const std::vector<Vertex> comp = component_of(g, path.front());
    const PeelReport rep = peel_report(comp, g, rounds);

    std::vector<char> survived(g.vertex_count(), 0);
    for (const Vertex v : rep.survivors) survived[v] = 1;

    // Longest contiguous run of path vertices that outlived the peel
    // (earliest run on ties). Peeling a path eats it from the ends, so this
    // is normally the whole middle.
    std::size_t best_a = 0, best_len = 0;
    for (std::size_t i = 0; i < path.size();) {
        if (!survived[path[i]]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < path.size() && survived[path[j]]) ++j;
        if (j - i > best_len) {
            best_len = j - i;
            best_a = i;
        }
        i = j;
    }
    const bool segment_empty = best_len == 0;
    const std::size_t mid_idx =
        segment_empty ? path.size() / 2 : best_a + (best_len - 1) / 2;
    const Vertex mid = path[mid_idx];
    const std::vector<std::uint32_t> dist = bfs_distances(g, mid);

    std::vector<Vertex> chosen = rep.survivors;
    std::uint64_t trim_count = 0, pad_count = 0;
    if (chosen.size() > K) {
        trim_count = chosen.size() - K;
        std::sort(chosen.begin(), chosen.end(), [&](Vertex x, Vertex y) {
            if (dist[x] != dist[y]) return dist[x] < dist[y];
            return x < y;
        });
        chosen.resize(K);
    } else if (chosen.size() < K) {
        pad_count = K - chosen.size();
        std::vector<char> present(g.vertex_count(), 0);
        for (const Vertex v : chosen) present[v] = 1;
        const auto take = [&](Vertex v) {
            if (present[v]) return;
            present[v] = 1;
            chosen.push_back(v);
        };

        // First continue along the longest path itself, nearest end vertex
        // first, alternating sides of the surviving segment.
        std::ptrdiff_t left, right;
        if (segment_empty) {
            take(mid);
            left = static_cast<std::ptrdiff_t>(mid_idx) - 1;
            right = static_cast<std::ptrdiff_t>(mid_idx) + 1;
        } else {
            left = static_cast<std::ptrdiff_t>(best_a) - 1;
            right = static_cast<std::ptrdiff_t>(best_a + best_len);
        }
        const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(path.size());
        while (chosen.size() < K && (left >= 0 || right < len)) {
            if (left >= 0) take(path[static_cast<std::size_t>(left--)]);
            if (chosen.size() < K && right < len)
                take(path[static_cast<std::size_t>(right++)]);
        }

        // Then the rest of the component, closest to the midpoint first.
        if (chosen.size() < K) {
            std::vector<Vertex> rest;
            for (const Vertex v : comp)
                if (!present[v]) rest.push_back(v);
            std::sort(rest.begin(), rest.end(), [&](Vertex x, Vertex y) {
                if (dist[x] != dist[y]) return dist[x] < dist[y];
                return x < y;
            });
            for (const Vertex v : rest) {
                if (chosen.size() >= K) break;
                take(v);
            }
        }

        // Finally lowest free indices, running past the vertex range if the
        // graph itself is too small to supply K vertices.
        for (std::uint64_t v = 0; chosen.size() < K; ++v) {
            if (v < present.size() && present[v]) continue;
            chosen.push_back(static_cast<Vertex>(v));
        }
    }

    std::sort(chosen.begin(), chosen.end());
    res.estimated = std::move(chosen);
    res.diagnostics["component_size"] = static_cast<double>(comp.size());
    res.diagnostics["survivor_count"] = static_cast<double>(rep.survivors.size());
    res.diagnostics["isolated_removed"] = static_cast<double>(rep.isolated_removed);
    res.diagnostics["trim_count"] = static_cast<double>(trim_count);
    res.diagnostics["pad_count"] = static_cast<double>(pad_count);
    res.diagnostics["degenerate"] = segment_empty ? 1 : 0;
    res.diagnostics["exact"] = lp.exact ? 1 : 0;
    return res;
}

ReconstructionResult reconstruct_star(const Graph& g, std::uint64_t K,
                                      std::uint64_t seed) {
    if (K < 1) throw usage_error("star reconstruction needs K >= 1");

    ReconstructionResult res;
    res.method = "star";
    const std::uint64_t n = g.vertex_count();
    if (n == 0) {
        for (std::uint64_t v = 0; v <= K; ++v)
            res.estimated.push_back(static_cast<Vertex>(v));
        res.diagnostics["center"] = 0;
        res.diagnostics["center_degree"] = 0;
        res.diagnostics["pad_count"] = static_cast<double>(K);
        return res;
    }

    Vertex center = 0;
    for (Vertex v = 1; v < n; ++v)
        if (g.degree(v) > g.degree(center)) center = v;

    const auto nbrs = g.neighbors(center);
    std::vector<Vertex> chosen(nbrs.begin(), nbrs.end());
    std::uint64_t pad_count = 0;
    if (chosen.size() > K) {
        // K distinct neighbors uniformly at random: partial Fisher-Yates.
        Rng rng(seed);
        for (std::uint64_t i = 0; i < K; ++i) {
            const std::uint64_t j = i + rng.below(chosen.size() - i);
            std::swap(chosen[i], chosen[j]);
        }
        chosen.resize(K);
    } else if (chosen.size() < K) {
        pad_count = K - chosen.size();
        for (std::uint64_t v = 0; chosen.size() < K; ++v) {
            if (v == center) continue;
            if (v < n && g.has_edge(center, static_cast<Vertex>(v))) continue;
            chosen.push_back(static_cast<Vertex>(v));
        }
    }
    chosen.push_back(center);
    std::sort(chosen.begin(), chosen.end());

    res.estimated = std::move(chosen);
    res.diagnostics["center"] = static_cast<double>(center);
    res.diagnostics["center_degree"] = static_cast<double>(nbrs.size());
    res.diagnostics["pad_count"] = static_cast<double>(pad_count);
    return res;
}

} // namespace planted
