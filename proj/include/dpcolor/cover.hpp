#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "dpcolor/graph.hpp"

namespace dpcolor {

inline constexpr int kMaxListSize = 64;

struct NodeRef {
    Vertex vertex = 0;
    int index = 0;
    friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

/// A link between node `a` of L(edge.u) and node `b` of L(edge.v).
struct Link {
    int a = 0;
    int b = 0;
    friend auto operator<=>(const Link&, const Link&) = default;
};

enum class BundleKind { Matching, K22Part, Union };

inline const char* kind_name(BundleKind k) {
    switch (k) {
        case BundleKind::Matching: return "matching";
        case BundleKind::K22Part: return "k22";
        case BundleKind::Union: return "union";
    }
    return "?";
}

namespace detail {

inline void sort_unique(std::vector<Link>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline int max_degree_side(const std::vector<Link>& links, bool u_side) {
    std::map<int, int> deg;
    int best = 0;
    for (const Link& l : links) best = std::max(best, ++deg[u_side ? l.a : l.b]);
    return best;
}

inline int distinct_side(const std::vector<Link>& links, bool u_side) {
    std::set<int> s;
    for (const Link& l : links) s.insert(u_side ? l.a : l.b);
    return static_cast<int>(s.size());
}

inline bool is_matching_shape(const std::vector<Link>& links) {
    return max_degree_side(links, true) <= 1 && max_degree_side(links, false) <= 1;
}

inline bool is_k22_shape(const std::vector<Link>& links) {
    return distinct_side(links, true) <= 2 && distinct_side(links, false) <= 2;
}

/// λ of a link set that is a matching or a subgraph of K_{2,2}, at the u
/// side when `u_side`.
inline int shape_lambda(const std::vector<Link>& links, bool u_side) {
    if (is_matching_shape(links)) return 1;
    // Δ = 2: a K_{1,2} with its centre on this side gives 1.
    if (links.size() == 2 && distinct_side(links, u_side) == 1) return 1;
    return 2;
}

} // namespace detail

/// The link set M_e of one edge, with its decomposition tag.
struct LinkBundle {
    Edge edge;
    BundleKind kind = BundleKind::Matching;
    std::vector<Link> matching_links;
    std::vector<Link> k22_links;

    std::vector<Link> all_links() const {
        std::vector<Link> out = matching_links;
        out.insert(out.end(), k22_links.begin(), k22_links.end());
        detail::sort_unique(out);
        return out;
    }

    std::size_t link_count() const { return matching_links.size() + k22_links.size(); }

    bool has_link(int a, int b) const {
        Link l{a, b};
        return std::binary_search(matching_links.begin(), matching_links.end(), l) ||
               std::binary_search(k22_links.begin(), k22_links.end(), l);
    }

    /// λ_{M_e}(side).
    int lambda(Vertex side) const {
        bool u_side = side == edge.u;
        switch (kind) {
            case BundleKind::Matching: return 1;
            case BundleKind::K22Part: return detail::shape_lambda(k22_links, u_side);
            case BundleKind::Union: return 1 + detail::shape_lambda(k22_links, u_side);
        }
        return 1;
    }

    /// Indices on the far side linked to node `index` of L(side).
    Mask neighbours(Vertex side, int index) const {
        Mask m = 0;
        bool u_side = side == edge.u;
        auto scan = [&](const std::vector<Link>& v) {
            for (const Link& l : v) {
                if (u_side && l.a == index) m |= bit(l.b);
                if (!u_side && l.b == index) m |= bit(l.a);
            }
        };
        scan(matching_links);
        scan(k22_links);
        return m;
    }

    /// Link degree of node `index` of L(side).
    int degree(Vertex side, int index) const { return std::popcount(neighbours(side, index)); }

    bool well_formed() const {
        auto disjoint = [&] {
            for (const Link& l : matching_links)
                if (std::binary_search(k22_links.begin(), k22_links.end(), l)) return false;
            return true;
        };
        switch (kind) {
            case BundleKind::Matching: return k22_links.empty() && detail::is_matching_shape(matching_links);
            case BundleKind::K22Part: return matching_links.empty() && detail::is_k22_shape(k22_links);
            case BundleKind::Union: {
                if (!detail::is_matching_shape(matching_links) || !detail::is_k22_shape(k22_links) || !disjoint())
                    return false;
                auto all = all_links();
                return !detail::is_matching_shape(all) && !detail::is_k22_shape(all);
            }
        }
        return false;
    }

    /// Reclassify to the weakest legal kind: Matching if the whole link set is
    /// a matching, else K22Part if it fits K_{2,2}, else keep the given split.
    LinkBundle normalized() const {
        LinkBundle b{edge, kind, matching_links, k22_links};
        detail::sort_unique(b.matching_links);
        detail::sort_unique(b.k22_links);
        std::vector<Link> all = b.all_links();
        if (detail::is_matching_shape(all)) {
            b.kind = BundleKind::Matching;
            b.matching_links = all;
            b.k22_links.clear();
        } else if (detail::is_k22_shape(all)) {
            b.kind = BundleKind::K22Part;
            b.k22_links = all;
            b.matching_links.clear();
        } else {
            b.kind = BundleKind::Union;
            // Links in both parts belong to the K_{2,2} part.
            std::vector<Link> m;
            for (const Link& l : b.matching_links)
                if (!std::binary_search(b.k22_links.begin(), b.k22_links.end(), l)) m.push_back(l);
            b.matching_links = std::move(m);
        }
        return b;
    }

    friend bool operator==(const LinkBundle&, const LinkBundle&) = default;
};

inline LinkBundle make_matching(Edge e, std::vector<Link> links) {
    detail::sort_unique(links);
    return LinkBundle{e, BundleKind::Matching, std::move(links), {}};
}

inline LinkBundle make_k22(Edge e, std::vector<Link> links) {
    detail::sort_unique(links);
    return LinkBundle{e, BundleKind::K22Part, {}, std::move(links)};
}

inline LinkBundle make_union(Edge e, std::vector<Link> matching, std::vector<Link> k22) {
    detail::sort_unique(matching);
    detail::sort_unique(k22);
    return LinkBundle{e, BundleKind::Union, std::move(matching), std::move(k22)};
}

/// A cover (L, M): list sizes per vertex and one bundle per edge.
struct Cover {
    Graph graph;
    std::vector<int> list_sizes;
    std::map<Edge, LinkBundle> bundles;

    Cover() = default;

    /// Cover of `g` with the given list sizes and empty matchings everywhere.
    Cover(Graph g, std::vector<int> sizes) : graph(std::move(g)), list_sizes(std::move(sizes)) {
        if (static_cast<int>(list_sizes.size()) != graph.order()) throw InvalidParams("list size count mismatch");
        for (const Edge& e : graph.edges()) bundles.emplace(e, LinkBundle{e, BundleKind::Matching, {}, {}});
    }

    int order() const { return graph.order(); }
    const LinkBundle& bundle(Vertex a, Vertex b) const { return bundles.at(Edge(a, b)); }
    LinkBundle& bundle(Vertex a, Vertex b) { return bundles.at(Edge(a, b)); }

    void set_bundle(LinkBundle b) {
        auto it = bundles.find(b.edge);
        if (it == bundles.end()) throw InvalidParams("bundle on a non-edge");
        it->second = std::move(b);
    }

    /// Every link endpoint in range, every bundle well formed, bundles keyed
    /// exactly by the edge set.
    bool well_formed() const {
        if (static_cast<int>(list_sizes.size()) != graph.order()) return false;
        for (int s : list_sizes)
            if (s < 0 || s > kMaxListSize) return false;
        if (bundles.size() != graph.size()) return false;
        for (const auto& [e, b] : bundles) {
            if (!graph.adjacent(e.u, e.v) || !(b.edge == e) || !b.well_formed()) return false;
            for (const Link& l : b.all_links())
                if (l.a < 0 || l.b < 0 || l.a >= list_sizes[e.u] || l.b >= list_sizes[e.v]) return false;
        }
        return true;
    }

    friend bool operator==(const Cover& x, const Cover& y) {
        return x.graph == y.graph && x.list_sizes == y.list_sizes && x.bundles == y.bundles;
    }
};

/// φ(v) is an index into L(v); -1 means uncoloured.
using Colouring = std::vector<int>;

inline int lambda_edge(const LinkBundle& b, Vertex side) { return b.lambda(side); }

inline int lambda_vertex(const Cover& c, Vertex v) {
    int s = 0;
    for_each_bit(c.graph.neighbours(v), [&](int w) { s += c.bundle(v, w).lambda(v); });
    return s;
}

inline int ell(const Cover& c, Vertex v) { return std::min(5, lambda_vertex(c, v)); }

inline bool is_simple(const Cover& c) {
    return std::all_of(c.bundles.begin(), c.bundles.end(), [](const auto& kv) {
        return detail::is_matching_shape(kv.second.all_links());
    });
}

/// Full identity matching between equal-sized lists.
inline bool is_perfect_matching(const Cover& c, const LinkBundle& b) {
    if (!detail::is_matching_shape(b.all_links())) return false;
    int su = c.list_sizes[b.edge.u], sv = c.list_sizes[b.edge.v];
    return su == sv && static_cast<int>(b.all_links().size()) == su;
}

/// Every coloured vertex has an in-range node and no coloured edge picks a
/// linked pair. Uncoloured vertices (-1) are only accepted when `partial`.
inline bool check_colouring(const Cover& c, const Colouring& phi, bool partial = false) {
    if (static_cast<int>(phi.size()) != c.order()) return false;
    for (int v = 0; v < c.order(); ++v) {
        if (phi[v] == -1 && partial) continue;
        if (phi[v] < 0 || phi[v] >= c.list_sizes[v]) return false;
    }
    for (const auto& [e, b] : c.bundles) {
        if (phi[e.u] < 0 || phi[e.v] < 0) continue;
        if (b.has_link(phi[e.u], phi[e.v])) return false;
    }
    return true;
}

/// How terminal vertices are treated by the degree-3 clause of validity.
/// Strict applies it everywhere; Relaxed skips it when the far end is a
/// terminal (terminals are never reduced, so the clause is never used there).
enum class TerminalRule { Strict, Relaxed };

/// Validity of a cover of a broken x-y-outerplanar graph with outer path
/// `outer` (conditions 1-4).
inline bool is_valid_two_terminal(const Cover& c, Vertex x, Vertex y, const std::vector<Vertex>& outer,
                                  TerminalRule rule = TerminalRule::Relaxed) {
    const Graph& g = c.graph;
    if (static_cast<int>(outer.size()) != g.order() || outer.empty() || outer.front() != x || outer.back() != y)
        throw NotTwoTerminal("outer path does not span x..y");
    Mask seen = 0;
    for (Vertex v : outer) seen |= bit(v);
    if (seen != g.all_vertices()) throw NotTwoTerminal("outer path is not a permutation of the vertices");
    std::set<Edge> path_edges;
    for (std::size_t i = 0; i + 1 < outer.size(); ++i) {
        if (!g.adjacent(outer[i], outer[i + 1])) throw NotTwoTerminal("outer path uses a non-edge");
        path_edges.insert(Edge(outer[i], outer[i + 1]));
    }
    if (!c.well_formed()) return false;
    for (const auto& [e, b] : c.bundles) {
        if (!path_edges.count(e) && b.kind != BundleKind::Matching) return false;  // cond. 2
    }
    for (int v = 0; v < g.order(); ++v)
        if (c.list_sizes[v] < ell(c, v)) return false;  // cond. 3
    for (const Edge& e : path_edges) {
        const LinkBundle& b = c.bundles.at(e);
        for (Vertex side : {e.u, e.v}) {
            Vertex far = e.other(side);
            if (rule == TerminalRule::Relaxed && (far == x || far == y)) continue;
            for (int i = 0; i < c.list_sizes[side]; ++i)
                if (b.degree(side, i) >= 3 && c.list_sizes[far] < 5) return false;
        }
    }
    if (g.order() == 2) {  // cond. 4
        const LinkBundle& b = c.bundles.begin()->second;
        if (!detail::is_k22_shape(b.all_links())) return false;
    }
    return true;
}

/// F-valid cover of a 3-connected core (conditions 1-4).
/// `require_non_perfect` = false skips condition 4.
inline bool is_f_valid(const Cover& c, const std::vector<Edge>& F, bool require_non_perfect = true) {
    if (!c.well_formed()) return false;
    std::set<Edge> fs(F.begin(), F.end());
    for (const auto& [e, b] : c.bundles)
        if (!fs.count(e) && !detail::is_matching_shape(b.all_links())) return false;
    for (const Edge& e : fs)
        if (!c.graph.adjacent(e.u, e.v)) return false;
    for (int v = 0; v < c.order(); ++v)
        if (c.list_sizes[v] < ell(c, v)) return false;
    if (require_non_perfect && is_complete(c.graph)) {
        bool some = std::any_of(c.bundles.begin(), c.bundles.end(),
                                [&](const auto& kv) { return !is_perfect_matching(c, kv.second); });
        if (!some) return false;
    }
    return true;
}

struct DeletionResult {
    Cover cover;
    /// order_map[v][new index] = old index.
    std::vector<std::vector<int>> order_map;
    bool emptied = false;
};

/// Delete nodes; surviving indices are re-packed in their old order and
/// every touched bundle is reclassified.
inline DeletionResult delete_nodes(const Cover& c, const std::vector<NodeRef>& dead) {
    const int n = c.order();
    std::vector<Mask> kill(static_cast<std::size_t>(n), 0);
    for (const NodeRef& r : dead) {
        if (r.vertex < 0 || r.vertex >= n || r.index < 0 || r.index >= c.list_sizes[r.vertex])
            throw InvalidParams("node to delete does not exist");
        kill[r.vertex] |= bit(r.index);
    }
    DeletionResult res;
    res.order_map.resize(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> fwd(static_cast<std::size_t>(n));
    std::vector<int> sizes(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        fwd[v].assign(static_cast<std::size_t>(c.list_sizes[v]), -1);
        for (int i = 0; i < c.list_sizes[v]; ++i) {
            if ((kill[v] >> i) & 1U) continue;
            fwd[v][i] = static_cast<int>(res.order_map[v].size());
            res.order_map[v].push_back(i);
        }
        sizes[v] = static_cast<int>(res.order_map[v].size());
        if (sizes[v] == 0) res.emptied = true;
    }
    res.cover = Cover(c.graph, sizes);
    for (const auto& [e, b] : c.bundles) {
        auto remap = [&](const std::vector<Link>& v) {
            std::vector<Link> out;
            for (const Link& l : v) {
                int a = fwd[e.u][l.a], bb = fwd[e.v][l.b];
                if (a >= 0 && bb >= 0) out.push_back({a, bb});
            }
            return out;
        };
        LinkBundle nb{e, b.kind, remap(b.matching_links), remap(b.k22_links)};
        res.cover.set_bundle(nb.normalized());
    }
    return res;
}

/// Restriction to the subgraph induced by `keep`; new vertex i is keep[i].
inline Cover restrict(const Cover& c, const std::vector<Vertex>& keep) {
    std::vector<int> pos(static_cast<std::size_t>(c.order()), -1);
    std::vector<int> sizes;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        pos[keep[i]] = static_cast<int>(i);
        sizes.push_back(c.list_sizes[keep[i]]);
    }
    Cover out(c.graph.induced(keep), sizes);
    for (const auto& [e, b] : c.bundles) {
        if (pos[e.u] < 0 || pos[e.v] < 0) continue;
        Edge ne(pos[e.u], pos[e.v]);
        LinkBundle nb = b;
        nb.edge = ne;
        if (pos[e.u] > pos[e.v]) {  // orientation flips
            for (auto& l : nb.matching_links) std::swap(l.a, l.b);
            for (auto& l : nb.k22_links) std::swap(l.a, l.b);
            detail::sort_unique(nb.matching_links);
            detail::sort_unique(nb.k22_links);
        }
        out.set_bundle(nb);
    }
    return out;
}

/// Restriction to a spanning subgraph with the given edges (vertex ids kept).
inline Cover restrict_edges(const Cover& c, const std::vector<Edge>& edges) {
    Graph h(c.order());
    for (const Edge& e : edges) h.add_edge(e.u, e.v);
    Cover out(h, c.list_sizes);
    for (const Edge& e : edges) out.set_bundle(c.bundles.at(e));
    return out;
}

/// Remove from the lists of the neighbours of v everything linked to node
/// `idx` of L(v), then drop v: the standard "colour v, pass to G - v" step.
/// Returns the cover on the remaining vertices (ids preserved, v isolated
/// with an empty edge set) together with the order map.
inline DeletionResult colour_and_strip(const Cover& c, Vertex v, int idx) {
    std::vector<NodeRef> dead;
    for_each_bit(c.graph.neighbours(v), [&](int w) {
        for_each_bit(c.bundle(v, w).neighbours(v, idx), [&](int j) { dead.push_back({w, j}); });
    });
    DeletionResult r = delete_nodes(c, dead);
    std::vector<Edge> keep;
    for (const Edge& e : r.cover.graph.edges())
        if (!e.has(v)) keep.push_back(e);
    r.cover = restrict_edges(r.cover, keep);
    return r;
}

// ---------------------------------------------------------------------------
// Random covers.

namespace detail {

inline std::vector<Link> random_matching(int su, int sv, std::mt19937_64& rng) {
    std::vector<int> pu(static_cast<std::size_t>(su)), pv(static_cast<std::size_t>(sv));
    for (int i = 0; i < su; ++i) pu[i] = i;
    for (int i = 0; i < sv; ++i) pv[i] = i;
    std::shuffle(pu.begin(), pu.end(), rng);
    std::shuffle(pv.begin(), pv.end(), rng);
    int m = std::min(su, sv);
    std::uniform_int_distribution<int> coin(0, 9);
    bool full = coin(rng) < 7;
    std::vector<Link> out;
    for (int i = 0; i < m; ++i)
        if (full || coin(rng) < 6) out.push_back({pu[i], pv[i]});
    sort_unique(out);
    return out;
}

inline std::vector<Link> random_k22(int su, int sv, std::mt19937_64& rng) {
    std::vector<int> pu(static_cast<std::size_t>(su)), pv(static_cast<std::size_t>(sv));
    for (int i = 0; i < su; ++i) pu[i] = i;
    for (int i = 0; i < sv; ++i) pv[i] = i;
    std::shuffle(pu.begin(), pu.end(), rng);
    std::shuffle(pv.begin(), pv.end(), rng);
    std::vector<Link> cand;
    for (int i = 0; i < std::min(2, su); ++i)
        for (int j = 0; j < std::min(2, sv); ++j) cand.push_back({pu[i], pv[j]});
    std::vector<Link> out;
    std::uniform_int_distribution<int> coin(0, 3);
    for (const Link& l : cand)
        if (coin(rng) != 0) out.push_back(l);
    sort_unique(out);
    return out;
}

} // namespace detail

/// Per-edge kind chooser for random_cover: returns the kinds allowed on e.
using KindPolicy = std::function<std::vector<BundleKind>(const Edge&)>;

inline KindPolicy matchings_only() {
    return [](const Edge&) { return std::vector<BundleKind>{BundleKind::Matching}; };
}

/// A random bundle of kind `k` between lists of the given sizes, normalized.
inline LinkBundle random_bundle(Edge e, BundleKind k, int su, int sv, std::mt19937_64& rng) {
    LinkBundle b{e, k, {}, {}};
    switch (k) {
        case BundleKind::Matching: b.matching_links = detail::random_matching(su, sv, rng); break;
        case BundleKind::K22Part: b.k22_links = detail::random_k22(su, sv, rng); break;
        case BundleKind::Union: {
            b.k22_links = detail::random_k22(su, sv, rng);
            for (const Link& l : detail::random_matching(su, sv, rng))
                if (!std::binary_search(b.k22_links.begin(), b.k22_links.end(), l)) b.matching_links.push_back(l);
            break;
        }
    }
    return b.normalized();
}

/// Reproducible random cover with the given list sizes.
inline Cover random_cover(const Graph& g, const std::vector<int>& sizes, const KindPolicy& kinds, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Cover c(g.simple_view(), sizes);
    for (const Edge& e : g.edges()) {
        auto allowed = kinds(e);
        if (allowed.empty()) throw InvalidParams("no bundle kind allowed");
        std::uniform_int_distribution<std::size_t> pick(0, allowed.size() - 1);
        BundleKind k = allowed[pick(rng)];
        c.set_bundle(random_bundle(e, k, sizes[e.u], sizes[e.v], rng));
    }
    return c;
}

/// f(v) = min(k, d(v)).
inline std::vector<int> truncated_degree(const Graph& g, int k = 5) {
    std::vector<int> f(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v) f[v] = std::min(k, g.degree(v));
    return f;
}

} // namespace dpcolor
