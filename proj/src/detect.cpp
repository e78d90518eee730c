#include "planted/detect.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "planted/components.hpp"
#include "planted/errors.hpp"

namespace planted {

std::string to_string(TestKind t) {
    switch (t) {
        case TestKind::components: return "components";
        case TestKind::kpath: return "kpath";
        case TestKind::star: return "star";
        case TestKind::dary: return "dary";
    }
    return "?";
}

std::string to_string(Decision d) { return d == Decision::H0 ? "H0" : "H1"; }

DetectionResult component_count_test(const Graph& g, std::uint64_t K) {
    const Vertex n = g.vertex_count();
    if (n < 1) throw usage_error("n must be >= 1");
    if (K < 1) throw usage_error("K must be >= 1");

    const auto summary = component_summary(g);
    double a1 = 0, a2 = 0, a3 = 0;
    for (std::size_t i = 0; i < summary.size.size(); ++i) {
        switch (summary.size[i]) {
            case 1: ++a1; break;
            case 2: ++a2; break;
            case 3: ++a3; break; // connected by construction: path or triangle
            default: break;
        }
    }

    DetectionResult res;
    res.test = TestKind::components;
    double lambda_hat;
    if (a1 * a2 > 0) {
        lambda_hat = static_cast<double>(n) * a3 / (a1 * a2);
    } else {
        lambda_hat = 2.0 * static_cast<double>(g.edge_count()) / n;
        res.stats["fallback"] = 1;
    }
    const double k_hat = static_cast<double>(n) - std::exp(lambda_hat) * a1;
    const double t_n = std::sqrt(static_cast<double>(K) * std::sqrt(n));
    res.decision = k_hat >= t_n ? Decision::H1 : Decision::H0;
    res.stats["A1"] = a1;
    res.stats["A2"] = a2;
    res.stats["A3"] = a3;
    res.stats["lambda_hat"] = lambda_hat;
    res.stats["k_hat"] = k_hat;
    res.stats["t_n"] = t_n;
    return res;
}

namespace {

// BFS scratch shared across components: O(n) allocated once, epoch-marked so
// per-component work stays O(component).
struct FarSearch {
    const Graph& g;
    std::vector<std::uint64_t> dist;
    std::vector<Vertex> parent;
    std::vector<std::uint32_t> mark;
    std::vector<Vertex> queue;
    std::uint32_t epoch = 0;

    explicit FarSearch(const Graph& graph)
        : g(graph), dist(graph.vertex_count()), parent(graph.vertex_count()),
          mark(graph.vertex_count(), 0) {}

    // Farthest vertex from src in its component, ties to the lowest index.
    // parent links stay valid until the next run.
    Vertex run(Vertex src, std::uint64_t& far_dist) {
        ++epoch;
        queue.clear();
        queue.push_back(src);
        mark[src] = epoch;
        dist[src] = 0;
        parent[src] = src;
        Vertex far = src;
        far_dist = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex u = queue[head];
            if (dist[u] > far_dist || (dist[u] == far_dist && u < far)) {
                far_dist = dist[u];
                far = u;
            }
            for (const Vertex w : g.neighbors(u)) {
                if (mark[w] == epoch) continue;
                mark[w] = epoch;
                parent[w] = u;
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
        return far;
    }
};

// Exhaustive DFS over simple paths within one cyclic component; the on_path
// buffer is shared across components.
struct PathSearch {
    const Graph& g;
    std::uint64_t budget;
    std::uint64_t target;
    std::uint64_t steps = 0;
    bool exhausted = false;
    std::vector<bool>& on_path;
    std::vector<Vertex> path;
    std::vector<Vertex> best;

    PathSearch(const Graph& graph, std::uint64_t b, std::uint64_t t,
               std::vector<bool>& scratch)
        : g(graph), budget(b), target(t), on_path(scratch) {}

    bool done() const {
        return exhausted || (target > 0 && best.size() >= target);
    }

    void dfs(Vertex v) {
        if (done()) return;
        if (++steps > budget) {
            exhausted = true;
            return;
        }
        on_path[v] = true;
        path.push_back(v);
        if (path.size() > best.size()) best = path;
        if (!done())
            for (const Vertex w : g.neighbors(v))
                if (!on_path[w]) dfs(w);
        path.pop_back();
        on_path[v] = false;
    }
};

} // namespace

LongestPathResult longest_path(const Graph& g, std::uint64_t budget,
                               std::uint64_t target) {
    LongestPathResult res;
    if (g.vertex_count() == 0) return res;

    const auto comps = connected_components(g);
    FarSearch far(g);
    std::vector<bool> dfs_scratch(g.vertex_count(), false);
    for (const auto& comp : comps) {
        if (target > 0 && res.length >= target) break;
        if (comp.vertices.size() <= res.length) continue; // cannot improve
        if (comp.acyclic) {
            // Tree diameter: two BFS sweeps; the second's endpoint chain is
            // the witness.
            std::uint64_t d0 = 0, d1 = 0;
            const Vertex a = far.run(comp.vertices.front(), d0);
            const Vertex b = far.run(a, d1);
            if (d1 + 1 > res.length) {
                res.length = d1 + 1;
                res.witness.clear();
                for (Vertex v = b;; v = far.parent[v]) {
                    res.witness.push_back(v);
                    if (far.parent[v] == v) break;
                }
            }
        } else {
            PathSearch search(g, budget, target, dfs_scratch);
            for (const Vertex s : comp.vertices) {
                if (search.done()) break;
                search.dfs(s);
            }
            if (search.best.size() > res.length) {
                res.length = search.best.size();
                res.witness = std::move(search.best);
            }
            if (search.exhausted) res.exact = false;
        }
    }
    if (target > 0 && res.length >= target) res.exact = true;
    return res;
}

DetectionResult k_path_test(const Graph& g, std::uint64_t K, std::uint64_t budget) {
    if (K < 2) throw usage_error("K must be >= 2");
    const auto lp = longest_path(g, budget, K);
    DetectionResult res;
    res.test = TestKind::kpath;
    res.decision = lp.length >= K ? Decision::H1 : Decision::H0;
    res.exact = lp.exact;
    res.stats["longest_path_len"] = static_cast<double>(lp.length);
    res.stats["threshold"] = static_cast<double>(K);
    return res;
}

DetectionResult star_test(const Graph& g, std::uint64_t K) {
    if (K < 1) throw usage_error("K must be >= 1");
    std::uint64_t best = 0;
    Vertex arg = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) > best) {
            best = g.degree(v);
            arg = v;
        }
    }
    DetectionResult res;
    res.test = TestKind::star;
    res.decision = best >= K ? Decision::H1 : Decision::H0;
    res.stats["max_degree"] = static_cast<double>(best);
    res.stats["argmax"] = static_cast<double>(arg);
    res.stats["threshold"] = static_cast<double>(K);
    return res;
}

namespace {

// D-th largest of sorted-descending values with one instance of exclude
// removed; 0-based index D-1. Returns -1 when fewer than D values remain.
std::int64_t dth_largest_excluding(const std::vector<std::uint32_t>& sorted,
                                   std::uint32_t exclude, std::uint32_t D) {
    const std::size_t d = sorted.size();
    if (d < static_cast<std::size_t>(D) + 1) return -1;
    if (exclude >= sorted[D - 1]) return sorted[D];
    return sorted[D - 1];
}

// True iff the induced subgraph on the radius-h ball around v is acyclic.
bool ball_acyclic(const Graph& g, Vertex v, std::uint32_t h,
                  std::vector<std::uint32_t>& mark, std::uint32_t epoch,
                  std::vector<Vertex>& ball, std::vector<std::uint32_t>& depth) {
    ball.clear();
    ball.push_back(v);
    mark[v] = epoch;
    depth[v] = 0;
    for (std::size_t head = 0; head < ball.size(); ++head) {
        const Vertex u = ball[head];
        if (depth[u] == h) continue;
        for (const Vertex w : g.neighbors(u)) {
            if (mark[w] == epoch) continue;
            mark[w] = epoch;
            depth[w] = depth[u] + 1;
            ball.push_back(w);
        }
    }
    std::uint64_t edges2 = 0; // induced edges, counted from both endpoints
    for (const Vertex u : ball)
        for (const Vertex w : g.neighbors(u))
            if (mark[w] == epoch) ++edges2;
    return edges2 / 2 == ball.size() - 1;
}

} // namespace

DaryHeights dary_height_messages(const Graph& g, std::uint32_t D,
                                 std::uint32_t h_max) {
    if (D < 1) throw usage_error("D must be >= 1");
    const Vertex n = g.vertex_count();
    const std::size_t slots = 2 * g.edge_count();

    // msg[offset(v) + j] = H(adj(v)[j] -> v), i.e. messages INTO v, so the
    // update for v's outgoing messages reads one contiguous range. rev maps
    // v's j-th incoming slot to the slot of v in that neighbor's range.
    std::vector<std::size_t> offset(static_cast<std::size_t>(n) + 1, 0);
    for (Vertex v = 0; v < n; ++v) offset[v + 1] = offset[v] + g.degree(v);
    std::vector<std::uint32_t> rev(slots);
    for (Vertex v = 0; v < n; ++v) {
        const auto nb = g.neighbors(v);
        for (std::size_t j = 0; j < nb.size(); ++j) {
            const Vertex w = nb[j];
            const auto wn = g.neighbors(w);
            const std::size_t pos =
                std::lower_bound(wn.begin(), wn.end(), v) - wn.begin();
            rev[offset[v] + j] = static_cast<std::uint32_t>(offset[w] + pos);
        }
    }

    std::vector<std::uint32_t> msg(slots, 0), next(slots, 0), sorted;
    for (std::uint32_t t = 0; t < h_max; ++t) {
        for (Vertex v = 0; v < n; ++v) {
            const std::size_t deg = g.degree(v);
            sorted.assign(msg.begin() + offset[v], msg.begin() + offset[v] + deg);
            std::sort(sorted.begin(), sorted.end(), std::greater<>());
            for (std::size_t j = 0; j < deg; ++j) {
                const auto kth =
                    dth_largest_excluding(sorted, msg[offset[v] + j], D);
                next[rev[offset[v] + j]] =
                    kth < 0 ? 0 : static_cast<std::uint32_t>(kth) + 1;
            }
        }
        std::swap(msg, next);
    }

    DaryHeights out;
    out.height.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        const std::size_t deg = g.degree(v);
        if (deg < D) continue;
        sorted.assign(msg.begin() + offset[v], msg.begin() + offset[v] + deg);
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        out.height[v] = sorted[D - 1] + 1;
    }

    // Exactness: every h_max-ball acyclic. Vertices of acyclic components
    // pass for free; the first cyclic ball found settles the flag.
    const auto comps = connected_components(g);
    std::vector<std::uint32_t> mark(n, 0), depth(n, 0);
    std::vector<Vertex> ball;
    std::uint32_t epoch = 0;
    for (const auto& comp : comps) {
        if (comp.acyclic) continue;
        for (const Vertex v : comp.vertices) {
            ++epoch;
            if (!ball_acyclic(g, v, h_max, mark, epoch, ball, depth)) {
                out.exact = false;
                return out;
            }
        }
    }
    return out;
}

DetectionResult dary_test(const Graph& g, std::uint32_t D, std::uint32_t h) {
    if (D < 2) throw usage_error("D must be >= 2");
    if (h < 1) throw usage_error("h must be >= 1");
    const auto heights = dary_height_messages(g, D, h);
    const std::uint32_t max_h =
        heights.height.empty()
            ? 0
            : *std::max_element(heights.height.begin(), heights.height.end());
    DetectionResult res;
    res.test = TestKind::dary;
    res.decision = max_h >= h ? Decision::H1 : Decision::H0;
    res.exact = heights.exact;
    res.stats["max_dheight"] = max_h;
    res.stats["threshold"] = h;
    res.stats["D"] = D;
    return res;
}

} // namespace planted
