#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "dpcolor/graph.hpp"

namespace dpcolor {

inline constexpr int kMaxIsoOrder = 16;

/// Canonical labelling of a simple graph. `perm[v]` is the canonical
/// position of v; `code` is the adjacency rows in canonical order.
struct CanonicalForm {
    std::vector<int> perm;
    std::vector<Mask> code;
};

namespace detail {

using Partition = std::vector<std::vector<Vertex>>;

/// Colour refinement. Cells are split by neighbour counts into every cell
/// and the pieces ordered by their signature, so the result is invariant
/// under relabelling.
inline void refine(const Graph& g, Partition& p) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Mask> cell_mask(p.size(), 0);
        for (std::size_t i = 0; i < p.size(); ++i)
            for (Vertex v : p[i]) cell_mask[i] |= bit(v);
        Partition next;
        next.reserve(p.size());
        for (const auto& cell : p) {
            if (cell.size() == 1) {
                next.push_back(cell);
                continue;
            }
            std::vector<std::pair<std::vector<int>, Vertex>> sig;
            sig.reserve(cell.size());
            for (Vertex v : cell) {
                std::vector<int> s(p.size());
                for (std::size_t i = 0; i < p.size(); ++i) s[i] = std::popcount(g.neighbours(v) & cell_mask[i]);
                sig.emplace_back(std::move(s), v);
            }
            std::stable_sort(sig.begin(), sig.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            std::size_t start = 0;
            for (std::size_t i = 1; i <= sig.size(); ++i) {
                if (i == sig.size() || sig[i].first != sig[start].first) {
                    std::vector<Vertex> piece;
                    for (std::size_t j = start; j < i; ++j) piece.push_back(sig[j].second);
                    std::sort(piece.begin(), piece.end());
                    next.push_back(std::move(piece));
                    start = i;
                }
            }
        }
        if (next.size() != p.size()) changed = true;
        p = std::move(next);
    }
}

inline std::vector<Mask> code_for(const Graph& g, const std::vector<int>& perm) {
    std::vector<Mask> rows(static_cast<std::size_t>(g.order()), 0);
    for (const Edge& e : g.edges()) {
        rows[perm[e.u]] |= bit(perm[e.v]);
        rows[perm[e.v]] |= bit(perm[e.u]);
    }
    return rows;
}

inline bool twins(const Graph& g, Vertex a, Vertex b) {
    Mask na = g.neighbours(a) & ~bit(b);
    Mask nb = g.neighbours(b) & ~bit(a);
    return na == nb;
}

inline void canon_search(const Graph& g, Partition p, std::optional<CanonicalForm>& best) {
    refine(g, p);
    std::size_t target = p.size();
    std::size_t best_size = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].size() > 1 && (target == p.size() || p[i].size() < best_size)) {
            target = i;
            best_size = p[i].size();
        }
    }
    if (target == p.size()) {
        std::vector<int> perm(static_cast<std::size_t>(g.order()));
        for (std::size_t i = 0; i < p.size(); ++i) perm[p[i][0]] = static_cast<int>(i);
        auto code = code_for(g, perm);
        if (!best || code < best->code) best = CanonicalForm{std::move(perm), std::move(code)};
        return;
    }
    std::vector<Vertex> tried;
    for (Vertex v : p[target]) {
        // Swapping twins is an automorphism, so one representative suffices.
        if (std::any_of(tried.begin(), tried.end(), [&](Vertex w) { return twins(g, v, w); })) continue;
        tried.push_back(v);
        Partition q;
        q.reserve(p.size() + 1);
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i != target) {
                q.push_back(p[i]);
                continue;
            }
            q.push_back({v});
            std::vector<Vertex> rest;
            for (Vertex w : p[i])
                if (w != v) rest.push_back(w);
            q.push_back(std::move(rest));
        }
        canon_search(g, std::move(q), best);
    }
}

} // namespace detail

inline CanonicalForm canonical_form(const Graph& g) {
    if (g.order() > kMaxIsoOrder) throw TooLarge("isomorphism limited to 16 vertices");
    if (g.order() == 0) return {};
    detail::Partition p;
    // Start from a degree partition to cut the search early.
    std::map<int, std::vector<Vertex>> by_degree;
    for (int v = 0; v < g.order(); ++v) by_degree[g.degree(v)].push_back(v);
    for (auto& [d, cell] : by_degree) p.push_back(std::move(cell));
    std::optional<CanonicalForm> best;
    detail::canon_search(g, std::move(p), best);
    return *best;
}

/// Graph relabelled to canonical order.
inline Graph canonical_graph(const Graph& g) { return g.simple_view().permuted(canonical_form(g).perm); }

/// Isomorphism test. On success the mapping sends vertices of g1 to g2.
inline std::optional<std::vector<Vertex>> find_isomorphism(const Graph& g1, const Graph& g2) {
    if (g1.order() != g2.order() || g1.size() != g2.size()) return std::nullopt;
    auto c1 = canonical_form(g1);
    auto c2 = canonical_form(g2);
    if (c1.code != c2.code) return std::nullopt;
    std::vector<Vertex> inv2(c2.perm.size());
    for (std::size_t v = 0; v < c2.perm.size(); ++v) inv2[c2.perm[v]] = static_cast<Vertex>(v);
    std::vector<Vertex> map(c1.perm.size());
    for (std::size_t v = 0; v < c1.perm.size(); ++v) map[v] = inv2[c1.perm[v]];
    return map;
}

inline bool are_isomorphic(const Graph& g1, const Graph& g2) { return find_isomorphism(g1, g2).has_value(); }

/// All automorphisms as vertex permutations, by plain backtracking.
inline std::vector<std::vector<Vertex>> automorphisms(const Graph& g) {
    const int n = g.order();
    if (n > kMaxIsoOrder) throw TooLarge("automorphism search limited to 16 vertices");
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> img(static_cast<std::size_t>(n), -1);
    Mask used = 0;
    auto go = [&](auto&& self, int v) -> void {
        if (v == n) {
            out.push_back(img);
            return;
        }
        for (int w = 0; w < n; ++w) {
            if ((used >> w) & 1U) continue;
            if (g.degree(w) != g.degree(v)) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                if (g.adjacent(u, v) != g.adjacent(img[u], w)) ok = false;
            if (!ok) continue;
            img[v] = w;
            used |= bit(w);
            self(self, v + 1);
            used &= ~bit(w);
        }
        img[v] = -1;
    };
    go(go, 0);
    return out;
}

} // namespace dpcolor
