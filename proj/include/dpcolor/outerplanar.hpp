#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "dpcolor/cover.hpp"
#include "dpcolor/graph.hpp"
#include "dpcolor/oracle.hpp"

namespace dpcolor {

/// A two-terminal outerplanar graph with its outer path from x to y.
struct TwoTerminal {
    Graph graph;
    Vertex x = 0;
    Vertex y = 1;
    std::vector<Vertex> outer_path;
    bool broken = true;

    int order() const { return graph.order(); }
    bool trivial() const { return graph.order() == 2; }

    /// Position of each vertex on the outer path.
    std::vector<int> positions() const {
        std::vector<int> pos(static_cast<std::size_t>(graph.order()), -1);
        for (std::size_t i = 0; i < outer_path.size(); ++i) pos[outer_path[i]] = static_cast<int>(i);
        return pos;
    }

    std::vector<Edge> path_edges() const {
        std::vector<Edge> out;
        for (std::size_t i = 0; i + 1 < outer_path.size(); ++i) out.emplace_back(outer_path[i], outer_path[i + 1]);
        return out;
    }
};

namespace detail {

/// All Hamiltonian paths from x to y, stopping after `limit` are found.
inline std::vector<std::vector<Vertex>> hamiltonian_paths(const Graph& g, Vertex x, Vertex y, int limit) {
    std::vector<std::vector<Vertex>> out;
    const int n = g.order();
    std::vector<Vertex> path{x};
    Mask used = bit(x);
    auto go = [&](auto&& self) -> void {
        if (static_cast<int>(out.size()) >= limit) return;
        Vertex v = path.back();
        if (static_cast<int>(path.size()) == n) {
            if (v == y) out.push_back(path);
            return;
        }
        if (v == y) return;
        for_each_bit(g.neighbours(v) & ~used, [&](int w) {
            if (w == y && static_cast<int>(path.size()) != n - 1) return;
            path.push_back(w);
            used |= bit(w);
            self(self);
            used &= ~bit(w);
            path.pop_back();
        });
    };
    go(go);
    return out;
}

} // namespace detail

/// Recognize g as a two-terminal outerplanar graph with terminals x, y.
/// Outerplanarity of g + xy is decided by excluding K_4 and K_{2,3} minors.
inline std::optional<TwoTerminal> recognize(const Graph& g, Vertex x, Vertex y) {
    if (x == y || x < 0 || y < 0 || x >= g.order() || y >= g.order()) return std::nullopt;
    if (!g.is_simple()) return std::nullopt;
    if (g.order() == 2) {
        if (!g.adjacent(x, y)) return std::nullopt;
        return TwoTerminal{g, x, y, {x, y}, true};
    }
    Graph h = g;
    bool broken = !g.adjacent(x, y);
    if (broken) h.add_edge(x, y);
    if (connectivity(h) < 2 || !is_outerplanar(h)) return std::nullopt;
    Graph p = g;
    p.remove_edge(x, y);
    auto paths = detail::hamiltonian_paths(p, x, y, 2);
    if (paths.size() != 1) return std::nullopt;
    return TwoTerminal{g, x, y, paths.front(), broken};
}

/// Interior vertex of degree 2 with the smallest outer-path index.
inline Vertex interior_degree2_vertex(const TwoTerminal& t) {
    for (std::size_t i = 1; i + 1 < t.outer_path.size(); ++i)
        if (t.graph.degree(t.outer_path[i]) == 2) return t.outer_path[i];
    throw InvariantBreach("no interior vertex of degree 2");
}

struct ReduceStepResult {
    TwoTerminal reduced;
    std::vector<Vertex> origin;  // reduced id -> id before the step
    bool edge_existed = false;
    Vertex u = 0, u1 = 0, u2 = 0;  // ids before the step; u1 lies toward x
};

/// Suppress the interior degree-2 vertex u: G' = G - u + u1u2.
inline ReduceStepResult reduce_step(const TwoTerminal& t, Vertex u) {
    const auto pos = t.positions();
    if (u == t.x || u == t.y || t.graph.degree(u) != 2) throw InvalidParams("reduce_step needs an interior degree-2 vertex");
    auto nb = t.graph.neighbour_list(u);
    Vertex u1 = nb[0], u2 = nb[1];
    if (pos[u1] > pos[u2]) std::swap(u1, u2);
    ReduceStepResult r;
    r.u = u;
    r.u1 = u1;
    r.u2 = u2;
    r.edge_existed = t.graph.adjacent(u1, u2);
    std::vector<Vertex> keep;
    std::vector<int> fwd(static_cast<std::size_t>(t.order()), -1);
    for (int v = 0; v < t.order(); ++v)
        if (v != u) {
            fwd[v] = static_cast<int>(keep.size());
            keep.push_back(v);
        }
    Graph g = t.graph.induced(keep);
    if (!r.edge_existed) g.add_edge(fwd[u1], fwd[u2]);
    std::vector<Vertex> path;
    for (Vertex v : t.outer_path)
        if (v != u) path.push_back(fwd[v]);
    r.reduced = TwoTerminal{g, fwd[t.x], fwd[t.y], path, t.broken};
    r.origin = keep;
    return r;
}

/// Random two-terminal outerplanar graph on n vertices: a polygon with a
/// random set of non-crossing chords, xy on the boundary, labels shuffled.
inline TwoTerminal random_two_terminal(int n, std::uint64_t seed, bool broken = true) {
    if (n < 2) throw InvalidParams("two-terminal graph needs n >= 2");
    std::mt19937_64 rng(seed);
    if (n == 2) {
        Graph g(2);
        g.add_edge(0, 1);
        return TwoTerminal{g, 0, 1, {0, 1}, true};
    }
    // Polygon 0..n-1 with terminals 0 and n-1.
    std::vector<std::pair<int, int>> chords;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double keep = unit(rng);
    auto split = [&](auto&& self, int i, int j) -> void {
        if (j - i < 2) return;
        std::uniform_int_distribution<int> pick(i + 1, j - 1);
        int k = pick(rng);
        if (k > i + 1 && unit(rng) < keep) chords.emplace_back(i, k);
        if (j > k + 1 && unit(rng) < keep) chords.emplace_back(k, j);
        self(self, i, k);
        self(self, k, j);
    };
    split(split, 0, n - 1);
    std::vector<Vertex> label(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) label[i] = i;
    std::shuffle(label.begin(), label.end(), rng);
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(label[i], label[i + 1]);
    for (auto [a, b] : chords) g.add_edge(label[a], label[b]);
    if (!broken) g.add_edge(label[0], label[n - 1]);
    std::vector<Vertex> path(label.begin(), label.end());
    return TwoTerminal{g, label[0], label[n - 1], path, broken};
}

/// Random cover that is valid for the gadget under the strict rule. Bundle
/// shapes are drawn first, then lists grow to meet the size conditions;
/// `slack` extra nodes are added with probability 1/4 per vertex.
inline Cover random_valid_cover(const TwoTerminal& t, std::uint64_t seed, bool slack = true) {
    std::mt19937_64 rng(seed);
    const int n = t.order();
    std::uniform_int_distribution<int> small(1, 3);
    std::vector<int> sizes(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) sizes[v] = small(rng);
    auto pe = t.path_edges();
    std::set<Edge> path(pe.begin(), pe.end());
    KindPolicy kinds = [&](const Edge& e) {
        if (t.trivial()) return std::vector<BundleKind>{BundleKind::K22Part};
        if (path.count(e)) return std::vector<BundleKind>{BundleKind::Matching, BundleKind::K22Part, BundleKind::Union};
        return std::vector<BundleKind>{BundleKind::Matching};
    };
    Cover c = random_cover(t.graph, sizes, kinds, rng());
    for (int v = 0; v < n; ++v) c.list_sizes[v] = std::max(c.list_sizes[v], ell(c, v));
    for (const Edge& e : pe) {
        const LinkBundle& b = c.bundles.at(e);
        for (Vertex side : {e.u, e.v})
            for (int i = 0; i < c.list_sizes[side]; ++i)
                if (b.degree(side, i) >= 3) c.list_sizes[e.other(side)] = std::max(c.list_sizes[e.other(side)], 5);
    }
    if (slack) {
        std::uniform_int_distribution<int> coin(0, 3);
        for (int v = 0; v < n; ++v)
            if (coin(rng) == 0) ++c.list_sizes[v];
    }
    return c;
}

} // namespace dpcolor
