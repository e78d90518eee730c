#include "planted/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "planted/errors.hpp"
#include "planted/numeric.hpp"

namespace planted {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > UINT64_MAX / b)
        throw budget_error("automorphism count overflows 64 bits");
    return a * b;
}

std::uint64_t factorial_u64(std::uint64_t k) {
    std::uint64_t f = 1;
    for (std::uint64_t i = 2; i <= k; ++i) f = checked_mul(f, i);
    return f;
}

// Parent of each structure label; labels are ordered so parent(i) < i.
std::vector<Vertex> spec_parents(const PlantSpec& spec) {
    std::vector<Vertex> parent(spec_vertex_count(spec), 0);
    for (const auto& [a, b] : spec_edges(spec)) parent[b] = a;
    return parent;
}

struct EmbedCounter {
    const Graph& g;
    const std::vector<Vertex>& parent;
    std::uint64_t budget;
    std::uint64_t steps = 0;
    std::vector<Vertex> image;
    std::vector<bool> used;
    std::uint64_t count = 0;

    EmbedCounter(const Graph& graph, const std::vector<Vertex>& par,
                 std::uint64_t work_budget)
        : g(graph), parent(par), budget(work_budget),
          image(par.size()), used(graph.vertex_count(), false) {}

    void extend(std::size_t label) {
        if (++steps > budget) throw budget_error("embedding budget exceeded");
        if (label == image.size()) {
            ++count;
            return;
        }
        if (label == 0) {
            for (Vertex v = 0; v < g.vertex_count(); ++v) place(label, v);
        } else {
            // Labels are ordered parent-first, so the only embedded neighbor
            // of `label` is its parent; candidates are its image's neighbors.
            for (const Vertex v : g.neighbors(image[parent[label]])) place(label, v);
        }
    }

    void place(std::size_t label, Vertex v) {
        if (used[v]) return;
        used[v] = true;
        image[label] = v;
        extend(label + 1);
        used[v] = false;
    }
};

struct PathCounter {
    const Graph& g;
    std::uint32_t K;
    std::uint64_t budget;
    std::uint64_t steps = 0;
    std::vector<bool> used;
    std::uint64_t count = 0;
    std::vector<std::uint64_t>* scores = nullptr; // per-vertex path counts
    std::vector<Vertex> path;

    PathCounter(const Graph& graph, std::uint32_t k, std::uint64_t work_budget)
        : g(graph), K(k), budget(work_budget), used(graph.vertex_count(), false) {}

    void run() {
        for (Vertex v = 0; v < g.vertex_count(); ++v) step(v, 1);
    }

    void step(Vertex v, std::uint32_t depth) {
        if (++steps > budget) throw budget_error("path enumeration budget exceeded");
        used[v] = true;
        if (scores) path.push_back(v);
        if (depth == K) {
            ++count;
            if (scores)
                for (const Vertex u : path) ++(*scores)[u];
        } else {
            for (const Vertex w : g.neighbors(v))
                if (!used[w]) step(w, depth + 1);
        }
        if (scores) path.pop_back();
        used[v] = false;
    }
};

double falling_factorial(double n, std::uint64_t k) {
    double f = 1;
    for (std::uint64_t i = 0; i < k; ++i) f *= n - static_cast<double>(i);
    return f;
}

} // namespace

std::uint64_t aut_size(const PlantSpec& spec) {
    if (std::holds_alternative<Line>(spec)) return 2;
    if (const auto* s = std::get_if<Star>(&spec)) return factorial_u64(s->K);
    const auto& t = std::get<DaryTree>(spec);
    if (t.h == 0) return 1;
    if (t.D == 1) return 2;
    const std::uint64_t internal = (spec_vertex_count(spec) - 1) / t.D;
    const std::uint64_t dfact = factorial_u64(t.D);
    std::uint64_t a = 1;
    for (std::uint64_t i = 0; i < internal; ++i) a = checked_mul(a, dfact);
    return a;
}

CopyCount count_copies(const Graph& g, const PlantSpec& spec, std::uint64_t budget) {
    const auto parent = spec_parents(spec);
    EmbedCounter ec(g, parent, budget);
    if (spec_vertex_count(spec) <= g.vertex_count()) ec.extend(0);
    CopyCount cc;
    cc.embeddings = ec.count;
    cc.aut_size = aut_size(spec);
    if (cc.embeddings % cc.aut_size != 0)
        throw error("internal: embeddings not divisible by automorphism count");
    cc.copies = cc.embeddings / cc.aut_size;
    return cc;
}

std::uint64_t count_k_paths(const Graph& g, std::uint32_t K, std::uint64_t budget) {
    if (K == 0) throw usage_error("K must be positive");
    PathCounter pc(g, K, budget);
    pc.run();
    return pc.count;
}

double exact_likelihood_ratio(const Graph& g, const PlantSpec& spec, double lambda,
                              std::uint64_t budget) {
    const auto n = g.vertex_count();
    if (lambda <= 0 || lambda >= static_cast<double>(n))
        throw usage_error("lambda must lie in (0, n)");
    const double p = lambda / static_cast<double>(n);
    const auto copies = count_copies(g, spec, budget).copies;
    const double m = falling_factorial(static_cast<double>(n), spec_vertex_count(spec)) /
                     static_cast<double>(aut_size(spec));
    const double e0x = m * std::pow(p, static_cast<double>(spec_edge_count(spec)));
    return static_cast<double>(copies) / e0x;
}

IdentityReport exact_identity_check(Vertex n, const PlantSpec& spec, double lambda) {
    if (n > 6) throw budget_error("identity check enumerates 2^C(n,2) graphs; n <= 6");
    if (lambda <= 0 || lambda >= static_cast<double>(n))
        throw usage_error("lambda must lie in (0, n)");
    const std::uint64_t kv = spec_vertex_count(spec);
    if (kv > n) throw usage_error("planted structure larger than graph");

    // Pair index table.
    const std::uint32_t C = n * (n - 1) / 2;
    std::vector<std::vector<std::uint32_t>> pair_bit(n, std::vector<std::uint32_t>(n));
    {
        std::uint32_t next = 0;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) {
                pair_bit[u][v] = pair_bit[v][u] = next;
                ++next;
            }
    }

    // All placements of the structure: injective label->vertex maps, each
    // reduced to its edge bitmask. Distinct masks are the copies; every mask
    // must occur exactly |Aut| times.
    const auto edges = spec_edges(spec);
    std::vector<std::uint32_t> masks;
    std::vector<Vertex> image(kv);
    std::vector<bool> used(n, false);
    const std::uint64_t aut = aut_size(spec);
    auto enumerate = [&](auto&& self, std::size_t label) -> void {
        if (label == kv) {
            std::uint32_t mask = 0;
            for (const auto& [a, b] : edges)
                mask |= 1u << pair_bit[image[a]][image[b]];
            masks.push_back(mask);
            return;
        }
        for (Vertex v = 0; v < n; ++v) {
            if (used[v]) continue;
            used[v] = true;
            image[label] = v;
            self(self, label + 1);
            used[v] = false;
        }
    };
    enumerate(enumerate, 0);
    std::sort(masks.begin(), masks.end());
    std::vector<std::uint32_t> distinct;
    for (std::size_t i = 0; i < masks.size();) {
        std::size_t j = i;
        while (j < masks.size() && masks[j] == masks[i]) ++j;
        if (j - i != aut)
            throw error("internal: placement multiplicity differs from |Aut|");
        distinct.push_back(masks[i]);
        i = j;
    }
    const double m = static_cast<double>(distinct.size());

    const double p = lambda / static_cast<double>(n);
    const double q = 1 - p;
    std::vector<double> ppow(C + 1, 1), qpow(C + 1, 1);
    for (std::uint32_t i = 1; i <= C; ++i) {
        ppow[i] = ppow[i - 1] * p;
        qpow[i] = qpow[i - 1] * q;
    }
    const auto eg = static_cast<std::uint32_t>(spec_edge_count(spec));

    IdentityReport rep;
    KahanSum sum_p1, sum_lp0;
    for (std::uint32_t g = 0; g < (1u << C); ++g) {
        const auto e = static_cast<std::uint32_t>(std::popcount(g));
        std::uint32_t x = 0;
        for (const std::uint32_t cm : distinct)
            if ((cm & g) == cm) ++x;
        const double p0 = ppow[e] * qpow[C - e];
        const double l = static_cast<double>(x) / (m * ppow[eg]);
        const double p1 = x == 0 ? 0.0
                                 : static_cast<double>(x) / m * ppow[e - eg] * qpow[C - e];
        rep.max_abs_error = std::max(rep.max_abs_error, std::abs(p1 - l * p0));
        sum_p1.add(p1);
        sum_lp0.add(l * p0);
    }
    rep.sum_p1 = sum_p1.value();
    rep.e0_l = sum_lp0.value();
    return rep;
}

double exact_e0_l2_line(Vertex n, std::uint32_t K, double lambda,
                        std::uint64_t budget) {
    if (K < 2 || K > n) throw usage_error("need 2 <= K <= n");
    if (lambda <= 0 || lambda >= static_cast<double>(n))
        throw usage_error("lambda must lie in (0, n)");
    const double tuples = falling_factorial(static_cast<double>(n), K);
    if (tuples > static_cast<double>(budget))
        throw budget_error("ordered tuple enumeration exceeds budget");

    const double x = static_cast<double>(n) / lambda;
    std::vector<double> xpow(K, 1);
    for (std::uint32_t i = 1; i < K; ++i) xpow[i] = xpow[i - 1] * x;

    // S = shared undirected edges with the fixed path 0-1-...-(K-1).
    const auto fixed_edge = [K](Vertex a, Vertex b) {
        const auto [lo, hi] = std::minmax(a, b);
        return hi < K && hi - lo == 1;
    };
    KahanSum total;
    std::vector<Vertex> tuple(K);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, std::uint32_t depth, std::uint32_t shared) -> void {
        if (depth == K) {
            total.add(xpow[shared]);
            return;
        }
        for (Vertex v = 0; v < n; ++v) {
            if (used[v]) continue;
            used[v] = true;
            tuple[depth] = v;
            const std::uint32_t s2 =
                shared + (depth > 0 && fixed_edge(tuple[depth - 1], v) ? 1 : 0);
            self(self, depth + 1, s2);
            used[v] = false;
        }
    };
    rec(rec, 0, 0);
    return total.value() / tuples;
}

MapPosterior map_posterior_line(const Graph& g, std::uint32_t K, std::uint64_t budget) {
    const Vertex n = g.vertex_count();
    if (K == 0 || K > n) throw usage_error("need 1 <= K <= n");
    MapPosterior mp;
    mp.scores.assign(n, 0);
    PathCounter pc(g, K, budget);
    pc.scores = &mp.scores;
    pc.run();

    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        if (mp.scores[a] != mp.scores[b]) return mp.scores[a] > mp.scores[b];
        return a < b;
    });
    mp.top.assign(order.begin(), order.begin() + K);
    std::sort(mp.top.begin(), mp.top.end());
    return mp;
}

} // namespace planted
