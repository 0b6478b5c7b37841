#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "dpcolor/cover.hpp"
#include "dpcolor/graph.hpp"
#include "dpcolor/isomorphism.hpp"

namespace dpcolor {

// ---------------------------------------------------------------------------
// Exhaustive DP-colouring.

enum class OracleStatus { Colourable, None, Budget };

struct OracleResult {
    OracleStatus status = OracleStatus::None;
    Colouring colouring;
    std::uint64_t states = 0;
};

inline constexpr std::uint64_t kDefaultOracleBudget = 1'000'000'000ULL;

/// Depth-first search with forward checking on node bitmasks. `allowed`
/// optionally restricts each vertex to a subset of its list (used to pin
/// terminals). Vertices are picked by fewest remaining nodes.
inline OracleResult solve_exhaustive(const Cover& c, std::uint64_t budget = kDefaultOracleBudget,
                                     const std::vector<Mask>* allowed = nullptr) {
    const int n = c.order();
    OracleResult res;
    std::vector<Mask> dom(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        dom[v] = c.list_sizes[v] >= 64 ? ~Mask{0} : bit(c.list_sizes[v]) - 1;
        if (allowed) dom[v] &= (*allowed)[v];
        if (dom[v] == 0) return res;
    }
    // table[v] = list of (w, per-node neighbour masks in L(w)).
    struct Arc {
        int w;
        std::vector<Mask> nb;
    };
    std::vector<std::vector<Arc>> arcs(static_cast<std::size_t>(n));
    for (const auto& [e, b] : c.bundles) {
        Arc au{e.v, std::vector<Mask>(static_cast<std::size_t>(c.list_sizes[e.u]), 0)};
        Arc av{e.u, std::vector<Mask>(static_cast<std::size_t>(c.list_sizes[e.v]), 0)};
        for (const Link& l : b.all_links()) {
            au.nb[l.a] |= bit(l.b);
            av.nb[l.b] |= bit(l.a);
        }
        arcs[e.u].push_back(std::move(au));
        arcs[e.v].push_back(std::move(av));
    }
    Colouring phi(static_cast<std::size_t>(n), -1);
    bool out_of_budget = false;

    auto dfs = [&](auto&& self, std::vector<Mask>& d, int remaining) -> bool {
        if (remaining == 0) return true;
        if (++res.states > budget) {
            out_of_budget = true;
            return false;
        }
        int best = -1, best_count = 1 << 30;
        for (int v = 0; v < n; ++v) {
            if (phi[v] != -1) continue;
            int cnt = std::popcount(d[v]);
            if (cnt < best_count) {
                best = v;
                best_count = cnt;
            }
        }
        if (best_count == 0) return false;
        Mask options = d[best];
        while (options) {
            int i = std::countr_zero(options);
            options &= options - 1;
            std::vector<Mask> nd = d;
            bool dead = false;
            for (const Arc& a : arcs[best]) {
                if (phi[a.w] != -1) continue;
                nd[a.w] &= ~a.nb[i];
                if (nd[a.w] == 0) {
                    dead = true;
                    break;
                }
            }
            if (dead) continue;
            phi[best] = i;
            if (self(self, nd, remaining - 1)) return true;
            phi[best] = -1;
            if (out_of_budget) return false;
        }
        return false;
    };
    if (dfs(dfs, dom, n)) {
        res.status = OracleStatus::Colourable;
        res.colouring = phi;
    } else {
        res.status = out_of_budget ? OracleStatus::Budget : OracleStatus::None;
    }
    return res;
}

/// Colouring with φ(x)=a and φ(y)=b, if one exists.
inline OracleResult solve_pinned(const Cover& c, Vertex x, int a, Vertex y, int b,
                                 std::uint64_t budget = kDefaultOracleBudget) {
    std::vector<Mask> allowed(static_cast<std::size_t>(c.order()), ~Mask{0});
    allowed[x] = bit(a);
    allowed[y] = bit(b);
    return solve_exhaustive(c, budget, &allowed);
}

// ---------------------------------------------------------------------------
// Minor containment.

struct MinorQuery {
    Graph host;
    Graph pattern;
};

namespace detail {

/// Connected vertex sets of size <= max_size, as masks.
inline std::vector<Mask> connected_sets(const Graph& g, int max_size) {
    std::vector<Mask> out;
    const int n = g.order();
    // Sets whose minimum vertex is v, grown only through vertices > v.
    for (int v = 0; v < n; ++v) {
        Mask allowed = v == 63 ? 0 : g.all_vertices() & ~((bit(v) << 1) - 1);
        auto grow = [&](auto&& self, Mask set, Mask frontier, Mask excluded) -> void {
            out.push_back(set);
            if (std::popcount(set) >= max_size) return;
            Mask cand = frontier & ~excluded;
            Mask excl = excluded;
            while (cand) {
                int w = std::countr_zero(cand);
                cand &= cand - 1;
                Mask nset = set | bit(w);
                Mask nfront = (frontier | g.neighbours(w)) & allowed & ~nset;
                self(self, nset, nfront, excl);
                excl |= bit(w);
            }
        };
        grow(grow, bit(v), g.neighbours(v) & allowed, 0);
    }
    return out;
}

inline Mask open_neighbourhood(const Graph& g, Mask s) {
    Mask m = 0;
    for_each_bit(s, [&](int v) { m |= g.neighbours(v); });
    return m & ~s;
}

/// Maximum number of vertex-disjoint S-T paths inside `within` (a vertex in
/// S and T counts as a path), stopping early at `need`.
inline int disjoint_paths(const Graph& g, Mask within, Mask S, Mask T, int need) {
    S &= within;
    T &= within;
    const int n = g.order();
    // Split each vertex v into v_in = 2v, v_out = 2v+1; source 2n, sink 2n+1.
    const int N = 2 * n + 2, src = 2 * n, snk = 2 * n + 1;
    std::vector<std::vector<int>> cap(static_cast<std::size_t>(N), std::vector<int>(static_cast<std::size_t>(N), 0));
    for_each_bit(within, [&](int v) {
        cap[2 * v][2 * v + 1] = 1;
        for_each_bit(g.neighbours(v) & within, [&](int w) { cap[2 * v + 1][2 * w] = 1; });
    });
    for_each_bit(S, [&](int v) { cap[src][2 * v] = 1; });
    for_each_bit(T, [&](int v) { cap[2 * v + 1][snk] = 1; });
    int flow = 0;
    std::vector<int> prev(static_cast<std::size_t>(N));
    while (flow < need) {
        std::fill(prev.begin(), prev.end(), -1);
        prev[src] = src;
        std::vector<int> queue{src};
        for (std::size_t qi = 0; qi < queue.size() && prev[snk] == -1; ++qi) {
            int x = queue[qi];
            for (int y = 0; y < N; ++y)
                if (prev[y] == -1 && cap[x][y] > 0) {
                    prev[y] = x;
                    queue.push_back(y);
                }
        }
        if (prev[snk] == -1) break;
        for (int y = snk; y != src; y = prev[y]) {
            --cap[prev[y]][y];
            ++cap[y][prev[y]];
        }
        ++flow;
    }
    return flow;
}

/// K_{2,t} minor: disjoint connected A, B and t disjoint N(A)-N(B) paths
/// in G - A - B.
inline bool has_k2t_minor(const Graph& g, int t) {
    const int n = g.order();
    if (n < t + 2) return false;
    int deg_ok = 0;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) >= 2) ++deg_ok;
    if (deg_ok < t) return false;
    auto sets = connected_sets(g, n - t - 1);
    std::vector<Mask> nbh(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) nbh[i] = open_neighbourhood(g, sets[i]);
    std::vector<std::size_t> good;
    for (std::size_t i = 0; i < sets.size(); ++i)
        if (std::popcount(nbh[i]) >= t) good.push_back(i);
    const Mask all = g.all_vertices();
    for (std::size_t ii = 0; ii < good.size(); ++ii) {
        std::size_t i = good[ii];
        Mask A = sets[i];
        int lowA = std::countr_zero(A);
        for (std::size_t jj = 0; jj < good.size(); ++jj) {
            std::size_t j = good[jj];
            Mask B = sets[j];
            if (A & B) continue;
            if (std::countr_zero(B) < lowA) continue;  // unordered pair
            if (std::popcount(A) + std::popcount(B) > n - t) continue;
            Mask NA = nbh[i] & ~B, NB = nbh[j] & ~A;
            if (std::popcount(NA) < t || std::popcount(NB) < t) continue;
            if (disjoint_paths(g, all & ~A & ~B, NA, NB, t) >= t) return true;
        }
    }
    return false;
}

/// Series-parallel reduction: a simple graph has no K_4 minor iff deleting
/// vertices of degree <= 1 and suppressing degree-2 vertices empties it.
inline bool has_k4_minor(const Graph& g) {
    const int n = g.order();
    std::vector<Mask> adj(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) adj[v] = g.neighbours(v);
    Mask alive = g.all_vertices();
    bool progress = true;
    while (alive && progress) {
        progress = false;
        for_each_bit(alive, [&](int v) {
            if (!((alive >> v) & 1U)) return;
            int d = std::popcount(adj[v]);
            if (d <= 1) {
                for_each_bit(adj[v], [&](int w) { adj[w] &= ~bit(v); });
                adj[v] = 0;
                alive &= ~bit(v);
                progress = true;
            } else if (d == 2) {
                int a = std::countr_zero(adj[v]);
                int b = 63 - std::countl_zero(adj[v]);
                adj[a] &= ~bit(v);
                adj[b] &= ~bit(v);
                adj[a] |= bit(b);
                adj[b] |= bit(a);
                adj[v] = 0;
                alive &= ~bit(v);
                progress = true;
            }
        });
    }
    return alive != 0;
}

/// Pattern is a subgraph of host (not necessarily induced).
inline bool has_subgraph(const Graph& host, const Graph& pattern) {
    const int n = host.order(), p = pattern.order();
    if (p > n) return false;
    std::vector<int> order;
    {
        // Pattern vertices in BFS order from the highest degree vertex.
        Mask seen = 0;
        while (static_cast<int>(order.size()) < p) {
            int start = -1;
            for (int v = 0; v < p; ++v)
                if (!((seen >> v) & 1U) && (start == -1 || pattern.degree(v) > pattern.degree(start))) start = v;
            seen |= bit(start);
            std::size_t head = order.size();
            order.push_back(start);
            while (head < order.size()) {
                int v = order[head++];
                for_each_bit(pattern.neighbours(v) & ~seen, [&](int w) {
                    seen |= bit(w);
                    order.push_back(w);
                });
            }
        }
    }
    std::vector<int> img(static_cast<std::size_t>(p), -1);
    Mask used = 0;
    auto go = [&](auto&& self, std::size_t k) -> bool {
        if (k == order.size()) return true;
        int v = order[k];
        for (int w = 0; w < n; ++w) {
            if ((used >> w) & 1U) continue;
            if (host.degree(w) < pattern.degree(v)) continue;
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j) {
                int u = order[j];
                if (pattern.adjacent(u, v) && !host.adjacent(img[u], w)) ok = false;
            }
            if (!ok) continue;
            img[v] = w;
            used |= bit(w);
            if (self(self, k + 1)) return true;
            used &= ~bit(w);
        }
        img[v] = -1;
        return false;
    };
    return go(go, 0);
}

inline Graph contract_edge(const Graph& g, Vertex a, Vertex b) {
    // b merges into a; vertices above b shift down.
    std::vector<Vertex> map(static_cast<std::size_t>(g.order()));
    for (int v = 0, k = 0; v < g.order(); ++v) map[v] = v == b ? -1 : k++;
    map[b] = map[a];
    Graph h(g.order() - 1);
    for (const Edge& e : g.edges()) {
        int x = map[e.u], y = map[e.v];
        if (x != y) h.add_edge(x, y);
    }
    return h;
}

/// Generic delete/contract search with memoization on canonical codes.
inline bool generic_minor(const Graph& host, const Graph& pattern, std::set<std::vector<Mask>>& failed) {
    if (host.order() < pattern.order() || host.size() < pattern.size()) return false;
    // Drop isolated vertices not needed: keep it simple, delete degree-0 when surplus.
    for (int v = 0; v < host.order(); ++v) {
        if (host.degree(v) == 0 && host.order() > pattern.order()) {
            std::vector<Vertex> keep;
            for (int w = 0; w < host.order(); ++w)
                if (w != v) keep.push_back(w);
            return generic_minor(host.induced(keep), pattern, failed);
        }
    }
    if (has_subgraph(host, pattern)) return true;
    auto code = canonical_form(host).code;
    code.push_back(static_cast<Mask>(host.order()));
    if (failed.count(code)) return false;
    for (const Edge& e : host.edges()) {
        Graph d = host;
        d.remove_edge(e.u, e.v);
        if (generic_minor(d, pattern, failed)) return true;
        if (host.order() > pattern.order() && generic_minor(contract_edge(host, e.u, e.v), pattern, failed)) return true;
    }
    failed.insert(code);
    return false;
}

inline std::optional<int> k2t_parameter(const Graph& p) {
    const int n = p.order();
    if (n < 3) return std::nullopt;
    if (are_isomorphic(p, complete_bipartite(2, n - 2))) return n - 2;
    return std::nullopt;
}

} // namespace detail

inline constexpr int kMaxMinorHost = 20;

inline bool has_minor(const MinorQuery& q) {
    const Graph host = q.host.simple_view();
    const Graph& pat = q.pattern;
    if (!is_connected(pat)) throw InvalidParams("pattern must be connected");
    if (host.order() > kMaxMinorHost) throw TooLarge("minor test host above 16 vertices");
    if (pat.order() == 4 && is_complete(pat)) return detail::has_k4_minor(host);
    if (auto t = detail::k2t_parameter(pat)) {
        // Components can be tested separately since the pattern is connected.
        for (Mask comp : components(host, host.all_vertices())) {
            Graph h = host.induced(bits_of(comp));
            if (detail::has_k2t_minor(h, *t)) return true;
        }
        return false;
    }
    if (host.order() > 10) throw TooLarge("generic minor test limited to 10 host vertices");
    std::set<std::vector<Mask>> failed;
    return detail::generic_minor(host, pat, failed);
}

inline bool has_minor(const Graph& host, const Graph& pattern) { return has_minor(MinorQuery{host, pattern}); }

inline const Graph& k24() {
    static const Graph g = complete_bipartite(2, 4);
    return g;
}

inline bool is_k24_minor_free(const Graph& g) { return !has_minor(g, k24()); }

inline bool is_outerplanar(const Graph& g) {
    return !has_minor(g, complete_graph(4)) && !has_minor(g, complete_bipartite(2, 3));
}

// ---------------------------------------------------------------------------
// Enumeration.

struct EnumFilter {
    int min_connectivity = 0;
    std::optional<Graph> minor_free_of;
    bool exclude_cycles = false;
    bool exclude_complete = false;
};

/// All graphs on n vertices passing the filter, one per isomorphism class,
/// in canonical form, sorted by (edge count, canonical code).
///
/// Graphs are grown one edge at a time from the empty graph. Minor-freeness
/// is hereditary under edge deletion, so non-free graphs are pruned early.
inline std::vector<Graph> enumerate_graphs(int n, const EnumFilter& filter) {
    if (n > 10) throw TooLarge("enumeration limited to 10 vertices");
    if (n <= 0) return {};
    std::map<std::vector<Mask>, Graph> level;
    level.emplace(std::vector<Mask>(static_cast<std::size_t>(n), 0), Graph(n));
    std::vector<Graph> all;
    while (!level.empty()) {
        std::map<std::vector<Mask>, Graph> next;
        for (const auto& [code, g] : level) {
            all.push_back(g);
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    if (g.adjacent(a, b)) continue;
                    Graph h = g;
                    h.add_edge(a, b);
                    auto cf = canonical_form(h);
                    if (next.count(cf.code)) continue;
                    Graph hc = h.permuted(cf.perm);
                    if (filter.minor_free_of && has_minor(hc, *filter.minor_free_of)) continue;
                    next.emplace(std::move(cf.code), std::move(hc));
                }
        }
        level = std::move(next);
    }
    std::vector<Graph> out;
    for (Graph& g : all) {
        if (filter.min_connectivity > 0 && connectivity(g) < filter.min_connectivity) continue;
        if (filter.exclude_cycles && is_cycle(g)) continue;
        if (filter.exclude_complete && is_complete(g)) continue;
        out.push_back(std::move(g));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subdividable edge sets.

inline bool is_subdividable(const Graph& g, const std::vector<Edge>& F) { return is_k24_minor_free(subdivide(g, F)); }

/// All inclusion-maximal subdividable sets (raw, not reduced by symmetry),
/// each sorted, the list sorted.
inline std::vector<std::vector<Edge>> maximal_subdividable_sets(const Graph& g) {
    const auto E = g.edges();
    const int m = static_cast<int>(E.size());
    if (m > 40) throw TooLarge("too many edges for subdividable search");
    std::map<std::uint64_t, bool> memo;
    auto ok = [&](std::uint64_t s) {
        auto it = memo.find(s);
        if (it != memo.end()) return it->second;
        std::vector<Edge> F;
        for (int i = 0; i < m; ++i)
            if ((s >> i) & 1U) F.push_back(E[i]);
        Graph h = subdivide(g, F);
        if (h.order() > kMaxMinorHost) throw TooLarge("subdivided graph too large for the minor test");
        bool r = is_k24_minor_free(h);
        memo[s] = r;
        return r;
    };
    std::vector<std::uint64_t> family;
    auto dfs = [&](auto&& self, std::uint64_t s, int from) -> void {
        family.push_back(s);
        for (int i = from; i < m; ++i) {
            std::uint64_t t = s | (std::uint64_t{1} << i);
            // Every subset one smaller must already be subdividable.
            bool subsets_ok = true;
            for (int j = 0; j < m && subsets_ok; ++j)
                if (((t >> j) & 1U) && j != i) {
                    std::uint64_t r = t & ~(std::uint64_t{1} << j);
                    auto it = memo.find(r);
                    if (it != memo.end() && !it->second) subsets_ok = false;
                }
            if (!subsets_ok) {
                memo[t] = false;
                continue;
            }
            if (ok(t)) self(self, t, i + 1);
        }
    };
    if (!ok(0)) return {};
    dfs(dfs, 0, 0);
    std::set<std::uint64_t> fam(family.begin(), family.end());
    std::vector<std::vector<Edge>> out;
    for (std::uint64_t s : fam) {
        bool maximal = true;
        for (int i = 0; i < m && maximal; ++i)
            if (!((s >> i) & 1U) && fam.count(s | (std::uint64_t{1} << i))) maximal = false;
        if (!maximal) continue;
        std::vector<Edge> F;
        for (int i = 0; i < m; ++i)
            if ((s >> i) & 1U) F.push_back(E[i]);
        out.push_back(std::move(F));
    }
    std::sort(out.begin(), out.end());
    if (out.size() == 1 && out.front().empty()) out.clear();  // no subdividable edge at all
    return out;
}

/// Image of an edge set under a vertex permutation, sorted.
inline std::vector<Edge> map_edges(const std::vector<Edge>& F, const std::vector<Vertex>& perm) {
    std::vector<Edge> out;
    for (const Edge& e : F) out.emplace_back(perm[e.u], perm[e.v]);
    std::sort(out.begin(), out.end());
    return out;
}

/// One representative (lexicographically least image) per automorphism orbit.
inline std::vector<std::vector<Edge>> reduce_by_automorphism(const Graph& g, const std::vector<std::vector<Edge>>& sets) {
    auto autos = automorphisms(g);
    std::set<std::vector<Edge>> reps;
    for (const auto& F : sets) {
        std::vector<Edge> best = map_edges(F, autos.front());
        for (const auto& a : autos) best = std::min(best, map_edges(F, a));
        reps.insert(best);
    }
    return {reps.begin(), reps.end()};
}

/// Closure of `sets` under all automorphisms, sorted.
inline std::vector<std::vector<Edge>> expand_by_automorphism(const Graph& g, const std::vector<std::vector<Edge>>& sets) {
    auto autos = automorphisms(g);
    std::set<std::vector<Edge>> all;
    for (const auto& F : sets)
        for (const auto& a : autos) all.insert(map_edges(F, a));
    return {all.begin(), all.end()};
}

} // namespace dpcolor
