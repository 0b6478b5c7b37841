#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dpcolor/errors.hpp"

namespace dpcolor {

using Vertex = int;
using Mask = std::uint64_t;

inline constexpr int kMaxOrder = 64;

inline Mask bit(int i) { return Mask{1} << i; }

template <class F>
inline void for_each_bit(Mask m, F&& f) {
    while (m) {
        int i = std::countr_zero(m);
        f(i);
        m &= m - 1;
    }
}

inline std::vector<int> bits_of(Mask m) {
    std::vector<int> out;
    for_each_bit(m, [&](int i) { out.push_back(i); });
    return out;
}

/// Unordered vertex pair, stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

    Vertex other(Vertex w) const { return w == u ? v : u; }
    bool has(Vertex w) const { return w == u || w == v; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected graph on vertices 0..n-1 with optional edge multiplicities.
///
/// Multiplicity is an edge attribute; the simple view ignores it. Loops are
/// rejected. Order is capped at 64 so adjacency fits one machine word.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : adj_(static_cast<std::size_t>(n), 0) {
        if (n < 0 || n > kMaxOrder) throw InvalidParams("graph order out of range: " + std::to_string(n));
    }

    Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) : Graph(n) {
        for (auto [a, b] : edges) add_edge(a, b);
    }

    int order() const { return static_cast<int>(adj_.size()); }
    std::size_t size() const { return mult_.size(); }

    void add_edge(Vertex a, Vertex b, int multiplicity = 1) {
        check_vertex(a);
        check_vertex(b);
        if (a == b) throw InvalidParams("loops are not allowed");
        if (multiplicity < 1) throw InvalidParams("multiplicity must be positive");
        Edge e(a, b);
        adj_[a] |= bit(b);
        adj_[b] |= bit(a);
        mult_[e] = multiplicity;
    }

    void remove_edge(Vertex a, Vertex b) {
        Edge e(a, b);
        if (mult_.erase(e) == 0) return;
        adj_[a] &= ~bit(b);
        adj_[b] &= ~bit(a);
    }

    bool adjacent(Vertex a, Vertex b) const { return (adj_[a] >> b) & 1U; }

    int multiplicity(Vertex a, Vertex b) const {
        auto it = mult_.find(Edge(a, b));
        return it == mult_.end() ? 0 : it->second;
    }

    void set_multiplicity(Vertex a, Vertex b, int m) {
        auto it = mult_.find(Edge(a, b));
        if (it == mult_.end()) throw InvalidParams("no such edge");
        if (m < 1) throw InvalidParams("multiplicity must be positive");
        it->second = m;
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(mult_.size());
        for (const auto& [e, m] : mult_) out.push_back(e);
        return out;
    }

    const std::map<Edge, int>& multiplicities() const { return mult_; }

    Mask neighbours(Vertex v) const { return adj_[v]; }
    std::vector<Vertex> neighbour_list(Vertex v) const { return bits_of(adj_[v]); }
    int degree(Vertex v) const { return std::popcount(adj_[v]); }

    int multi_degree(Vertex v) const {
        int d = 0;
        for_each_bit(adj_[v], [&](int w) { d += multiplicity(v, w); });
        return d;
    }

    Mask all_vertices() const { return order() == 64 ? ~Mask{0} : bit(order()) - 1; }

    bool is_simple() const {
        return std::all_of(mult_.begin(), mult_.end(), [](const auto& kv) { return kv.second == 1; });
    }

    Graph simple_view() const {
        Graph g(order());
        for (const auto& [e, m] : mult_) g.add_edge(e.u, e.v);
        return g;
    }

    /// Subgraph induced by `keep`; new vertex i is old vertex keep[i].
    Graph induced(const std::vector<Vertex>& keep) const {
        Graph g(static_cast<int>(keep.size()));
        std::vector<int> pos(adj_.size(), -1);
        for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
        for (const auto& [e, m] : mult_)
            if (pos[e.u] >= 0 && pos[e.v] >= 0) g.add_edge(pos[e.u], pos[e.v], m);
        return g;
    }

    /// Relabel by `perm` (old vertex v becomes perm[v]).
    Graph permuted(const std::vector<Vertex>& perm) const {
        Graph g(order());
        for (const auto& [e, m] : mult_) g.add_edge(perm[e.u], perm[e.v], m);
        return g;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_ && a.mult_ == b.mult_; }

private:
    void check_vertex(Vertex v) const {
        if (v < 0 || v >= order()) throw InvalidParams("vertex out of range: " + std::to_string(v));
    }

    std::vector<Mask> adj_;
    std::map<Edge, int> mult_;
};

// ---------------------------------------------------------------------------
// Named graphs used across the library and its tests.

inline Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline Graph cycle_graph(int n) {
    Graph g = path_graph(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

inline Graph complete_bipartite(int a, int b) {
    Graph g(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
    return g;
}

/// Wheel W_n: rim 0..n-1, hub n.
inline Graph wheel_graph(int n) {
    Graph g(n + 1);
    for (int i = 0; i < n; ++i) {
        g.add_edge(i, (i + 1) % n);
        g.add_edge(i, n);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Connectivity.

/// Connectedness of the subgraph induced by `within`.
inline bool is_connected(const Graph& g, Mask within) {
    if (within == 0) return true;
    Mask seen = bit(std::countr_zero(within));
    Mask frontier = seen;
    while (frontier) {
        Mask next = 0;
        for_each_bit(frontier, [&](int v) { next |= g.neighbours(v); });
        next &= within & ~seen;
        seen |= next;
        frontier = next;
    }
    return seen == within;
}

inline bool is_connected(const Graph& g) { return is_connected(g, g.all_vertices()); }

/// Connected components of the subgraph induced by `within`, as masks in
/// increasing order of their smallest vertex.
inline std::vector<Mask> components(const Graph& g, Mask within) {
    std::vector<Mask> out;
    Mask left = within;
    while (left) {
        Mask comp = bit(std::countr_zero(left));
        Mask frontier = comp;
        while (frontier) {
            Mask next = 0;
            for_each_bit(frontier, [&](int v) { next |= g.neighbours(v); });
            next &= left & ~comp;
            comp |= next;
            frontier = next;
        }
        out.push_back(comp);
        left &= ~comp;
    }
    return out;
}

inline bool is_complete(const Graph& g) {
    int n = g.order();
    return g.size() == static_cast<std::size_t>(n) * (n - 1) / 2;
}

inline bool is_cycle(const Graph& g) {
    if (g.order() < 3 || g.size() != static_cast<std::size_t>(g.order())) return false;
    for (int v = 0; v < g.order(); ++v)
        if (g.degree(v) != 2) return false;
    return is_connected(g);
}

/// min(vertex connectivity, 3). Complete graphs K_n report n-1 (capped).
inline int connectivity(const Graph& g) {
    const int n = g.order();
    if (n <= 1 || !is_connected(g)) return 0;
    if (is_complete(g)) return std::min(n - 1, 3);
    const Mask all = g.all_vertices();
    for (int v = 0; v < n; ++v)
        if (!is_connected(g, all & ~bit(v))) return 1;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!is_connected(g, all & ~bit(a) & ~bit(b))) return 2;
    return 3;
}

// ---------------------------------------------------------------------------
// Blocks.

struct BlockTree {
    std::vector<std::vector<Vertex>> blocks;  // sorted vertex sets
    std::vector<Vertex> cut_vertices;         // sorted
};

/// Biconnected components via the usual DFS low-point recursion.
inline BlockTree block_tree(const Graph& g) {
    const int n = g.order();
    if (!is_connected(g)) throw DisconnectedInput();
    BlockTree bt;
    if (n == 1) {
        bt.blocks.push_back({0});
        return bt;
    }
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<Edge> stack;
    std::vector<bool> is_cut(n, false);
    int timer = 0;

    auto dfs = [&](auto&& self, Vertex v, Vertex parent) -> void {
        disc[v] = low[v] = timer++;
        int children = 0;
        for (Vertex w : g.neighbour_list(v)) {
            if (w == parent) continue;
            if (disc[w] == -1) {
                ++children;
                stack.emplace_back(v, w);
                self(self, w, v);
                low[v] = std::min(low[v], low[w]);
                if (low[w] >= disc[v]) {
                    if (parent != -1 || children > 1) is_cut[v] = true;
                    Mask block = 0;
                    while (true) {
                        Edge e = stack.back();
                        stack.pop_back();
                        block |= bit(e.u) | bit(e.v);
                        if (e == Edge(v, w)) break;
                    }
                    bt.blocks.push_back(bits_of(block));
                }
            } else if (disc[w] < disc[v]) {
                low[v] = std::min(low[v], disc[w]);
                stack.emplace_back(v, w);
            }
        }
        if (parent == -1 && children > 1) is_cut[v] = true;
    };
    dfs(dfs, 0, -1);
    for (int v = 0; v < n; ++v)
        if (is_cut[v]) bt.cut_vertices.push_back(v);
    std::sort(bt.blocks.begin(), bt.blocks.end());
    return bt;
}

namespace detail {

inline bool block_is_complete(const Graph& g, const std::vector<Vertex>& block) {
    for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = i + 1; j < block.size(); ++j)
            if (!g.adjacent(block[i], block[j])) return false;
    return true;
}

/// A 2-connected block with k >= 3 vertices is a cycle iff it has k edges.
inline bool block_is_cycle(const Graph& g, const std::vector<Vertex>& block) {
    if (block.size() < 3) return false;
    std::size_t edges = 0;
    for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = i + 1; j < block.size(); ++j)
            if (g.adjacent(block[i], block[j])) ++edges;
    return edges == block.size();
}

} // namespace detail

/// Every block is a complete graph or a cycle.
inline bool is_gdp_tree(const Graph& g) {
    if (!is_connected(g)) return false;
    for (const auto& b : block_tree(g).blocks)
        if (!detail::block_is_complete(g, b) && !detail::block_is_cycle(g, b)) return false;
    return true;
}

/// Every block is a complete graph or an odd cycle.
inline bool is_gallai_tree(const Graph& g) {
    if (!is_connected(g)) return false;
    for (const auto& b : block_tree(g).blocks) {
        if (detail::block_is_complete(g, b)) continue;
        if (detail::block_is_cycle(g, b) && b.size() % 2 == 1) continue;
        return false;
    }
    return true;
}

/// True iff every block of the multigraph is K_n^k or C_n^k, i.e. the
/// multigraph is NOT degree DP-colourable.
inline bool degree_dp_blockers(const Graph& g) {
    if (!is_connected(g)) return false;
    for (const auto& b : block_tree(g).blocks) {
        if (b.size() == 1) continue;
        int k = -1;
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j) {
                int m = g.multiplicity(b[i], b[j]);
                if (m == 0) continue;
                if (k == -1) k = m;
                if (m != k) return false;
            }
        if (!detail::block_is_complete(g, b) && !detail::block_is_cycle(g, b)) return false;
    }
    return true;
}

/// Replace every edge of `subdivided` by a path of length two. New vertices
/// are appended in the order of `subdivided`.
inline Graph subdivide(const Graph& g, const std::vector<Edge>& subdivided) {
    Graph h(g.order() + static_cast<int>(subdivided.size()));
    for (const Edge& e : g.edges())
        if (std::find(subdivided.begin(), subdivided.end(), e) == subdivided.end()) h.add_edge(e.u, e.v);
    int next = g.order();
    for (const Edge& e : subdivided) {
        h.add_edge(e.u, next);
        h.add_edge(next, e.v);
        ++next;
    }
    return h;
}

} // namespace dpcolor
