#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpcolor/families.hpp"
#include "dpcolor/oracle.hpp"
#include "dpcolor/outerplanar.hpp"

namespace dpcolor {

// ---------------------------------------------------------------------------
// Maximal subdividable sets.

namespace detail {

inline std::vector<Edge> edges_of(const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    std::vector<Edge> out;
    for (auto [a, b] : pairs) out.emplace_back(a, b);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Edge> path_edges_of(const std::vector<Vertex>& p) {
    std::vector<Edge> out;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) out.emplace_back(p[i], p[i + 1]);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::vector<Edge>> sporadic_sets(SporadicName s) {
    switch (s) {
        case SporadicName::K5: return {};
        case SporadicName::K5minus:
            return {edges_of({{0, 1}, {0, 3}, {1, 2}, {1, 4}}), edges_of({{0, 1}, {0, 3}, {1, 2}, {3, 4}})};
        case SporadicName::K33:
        case SporadicName::A: return {edges_of({{0, 3}, {0, 4}, {0, 5}})};
        case SporadicName::K3boxK2: return {edges_of({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}})};
        case SporadicName::Aplus: return {edges_of({{0, 5}})};
        case SporadicName::B:
        case SporadicName::Bplus: return {edges_of({{2, 5}, {3, 4}})};
        case SporadicName::C:
        case SporadicName::Cplus: return {edges_of({{0, 7}, {3, 6}, {4, 5}})};
        case SporadicName::D: return {edges_of({{0, 1}, {0, 2}, {3, 4}, {5, 6}})};
    }
    return {};
}

} // namespace detail

/// Maximal subdividable sets of a family member, one per automorphism class
/// (pass `expand` to get the full closure), in the labelling of gen_family.
inline std::vector<std::vector<Edge>> known_subdividable_sets(const FamilyId& id, bool expand = false) {
    if (!is_family_member(id)) throw InvalidParams(id.name() + " is not a family member");
    std::vector<std::vector<Edge>> sets;
    const LabelledGraph lg = gen_family(id);
    switch (id.kind) {
        case FamilyKind::Wheel: {
            const int n = id.n;
            std::vector<Edge> rim_spoke;
            for (int i = 0; i < n; ++i) rim_spoke.emplace_back(i, (i + 1) % n);
            rim_spoke.emplace_back(0, n);
            std::sort(rim_spoke.begin(), rim_spoke.end());
            sets.push_back(rim_spoke);
            if (n == 4) {
                sets.push_back(detail::edges_of({{0, 1}, {0, 3}, {0, 4}, {2, 4}}));
                sets.push_back(detail::edges_of({{0, 1}, {0, 4}, {2, 3}, {2, 4}}));
            }
            break;
        }
        case FamilyKind::Gnrs: {
            const int n = id.n;
            if (id.r > id.s) {
                // v_i -> v_{n+1-i} carries G_{n,s,r} onto G_{n,r,s}.
                std::vector<Vertex> mirror(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) mirror[i] = n - 1 - i;
                for (const auto& F : known_subdividable_sets(FamilyId::gnrs(n, id.s, id.r, id.plus)))
                    sets.push_back(map_edges(F, mirror));
                break;
            }
            sets.push_back(detail::path_edges_of(lg.spine));
            const bool second = (!id.plus && id.r == 2 && id.s == n - 3) || (id.plus && id.r == 2 && id.s == n - 4 && n >= 7);
            if (second) sets.push_back(detail::path_edges_of(lg.second_spine));
            if (!id.plus && n == 7 && id.r == 2 && id.s == 3)
                sets.push_back(detail::edges_of({{0, 1}, {3, 4}, {5, 6}, {2, 6}}));
            break;
        }
        case FamilyKind::Sporadic: sets = detail::sporadic_sets(id.sporadic); break;
    }
    std::sort(sets.begin(), sets.end());
    if (expand) return expand_by_automorphism(lg.graph, sets);
    return sets;
}

/// F ⊆ some maximal subdividable set of the member (labels of gen_family).
inline bool is_known_subdividable(const FamilyId& id, const std::vector<Edge>& F) {
    if (F.empty()) return true;
    std::vector<Edge> f = F;
    std::sort(f.begin(), f.end());
    for (const auto& S : known_subdividable_sets(id, true))
        if (std::includes(S.begin(), S.end(), f.begin(), f.end())) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Core classification.

struct CoreMatch {
    FamilyId id;
    std::vector<Vertex> to_family;  // vertex of g -> vertex of gen_family(id)
};

/// Identify a 3-connected graph as a member of W ∪ G ∪ G'.
inline std::optional<CoreMatch> classify_core(const Graph& g) {
    const int n = g.order();
    if (n < 4 || !g.is_simple() || connectivity(g) < 3) return std::nullopt;
    if (n > kMaxIsoOrder) throw TooLarge("core classification is limited to " + std::to_string(kMaxIsoOrder) + " vertices");
    const int m = static_cast<int>(g.edges().size());
    std::vector<FamilyId> cands;
    // hub: one vertex adjacent to all others, the rest of degree 3
    int hubs = 0, cubic = 0;
    for (int v = 0; v < n; ++v) {
        if (g.degree(v) == n - 1) ++hubs;
        if (g.degree(v) == 3) ++cubic;
    }
    if ((hubs >= 1 && cubic >= n - 1) || n == 4) cands.push_back(FamilyId::wheel(n - 1));
    for (int r = 2; r <= n - 3; ++r)
        for (int s = r; s <= n - 3; ++s)
            if (gnrs_in_family(n, r, s))
                for (bool plus : {false, true}) cands.push_back(FamilyId::gnrs(n, r, s, plus));
    for (SporadicName s : all_sporadics())
        if (detail::sporadic_order(s) == n) cands.push_back(FamilyId::named(s));
    for (const FamilyId& id : cands) {
        Graph h = gen_family(id).graph;
        if (static_cast<int>(h.edges().size()) != m) continue;
        if (auto iso = find_isomorphism(g, h)) return CoreMatch{id, *iso};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Decomposition of a 2-connected K_{2,4}-minor-free graph.

enum class DecompositionKind { Outerplanar, ThreeGadget, CoreGadgets };

inline const char* decomposition_kind_name(DecompositionKind k) {
    switch (k) {
        case DecompositionKind::Outerplanar: return "outerplanar";
        case DecompositionKind::ThreeGadget: return "three-gadget";
        case DecompositionKind::CoreGadgets: return "core-gadgets";
    }
    return "?";
}

/// A gadget as an induced subgraph of the input: `vertices[i]` is the input
/// id of local vertex i.
struct GadgetPart {
    std::vector<Vertex> vertices;
    TwoTerminal gadget;

    Vertex x() const { return vertices[gadget.x]; }
    Vertex y() const { return vertices[gadget.y]; }
};

struct Decomposition {
    DecompositionKind kind = DecompositionKind::Outerplanar;
    int order = 0;
    // Outerplanar and ThreeGadget: terminals in input ids.
    Vertex x = -1, y = -1;
    bool has_xy = false;
    std::vector<GadgetPart> parts;
    // CoreGadgets
    Graph core;
    std::vector<Vertex> core_vertices;  // core id -> input id
    FamilyId family;
    std::vector<Vertex> core_to_family;
    std::vector<Edge> F;                // core ids
    std::vector<GadgetPart> gadgets;    // parallel to F
};

namespace detail {

inline std::optional<GadgetPart> gadget_on(const Graph& g, const std::vector<Vertex>& vertices, Vertex x, Vertex y,
                                           bool drop_xy) {
    std::vector<Vertex> vs = vertices;
    std::sort(vs.begin(), vs.end());
    Graph h = g.induced(vs);
    auto loc = [&](Vertex v) { return static_cast<Vertex>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
    if (drop_xy && h.adjacent(loc(x), loc(y))) h.remove_edge(loc(x), loc(y));
    auto t = recognize(h, loc(x), loc(y));
    if (!t) return std::nullopt;
    return GadgetPart{vs, *t};
}

inline std::vector<Vertex> members(Mask m) {
    std::vector<Vertex> out;
    for_each_bit(m, [&](int v) { out.push_back(v); });
    return out;
}

inline std::optional<Decomposition> try_outerplanar(const Graph& g) {
    if (!is_outerplanar(g)) return std::nullopt;
    const int n = g.order();
    Vertex x = 0;
    for (int v = 1; v < n; ++v)
        if (g.degree(v) > g.degree(x)) x = v;
    std::vector<Vertex> all;
    for (int v = 0; v < n; ++v) all.push_back(v);
    for (Vertex w : g.neighbour_list(x)) {
        auto part = gadget_on(g, all, x, w, true);
        if (!part) continue;
        Decomposition d;
        d.kind = DecompositionKind::Outerplanar;
        d.order = n;
        d.x = x;
        d.y = w;
        d.has_xy = true;
        d.parts.push_back(*part);
        return d;
    }
    return std::nullopt;
}

inline std::optional<Decomposition> try_three_gadget(const Graph& g) {
    const int n = g.order();
    const Mask all = g.all_vertices();
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y) {
            auto comps = components(g, all & ~bit(x) & ~bit(y));
            if (comps.size() != 3) continue;
            Decomposition d;
            d.kind = DecompositionKind::ThreeGadget;
            d.order = n;
            d.x = x;
            d.y = y;
            d.has_xy = g.adjacent(x, y);
            bool ok = true;
            for (Mask c : comps) {
                auto part = gadget_on(g, members(c | bit(x) | bit(y)), x, y, true);
                if (!part || !part->gadget.broken || part->vertices.size() < 3) {
                    ok = false;
                    break;
                }
                d.parts.push_back(*part);
            }
            if (ok) return d;
        }
    return std::nullopt;
}

inline std::optional<Decomposition> try_core(const Graph& g) {
    const int n = g.order();
    Graph cur = g;
    Mask alive = g.all_vertices();
    std::map<Edge, Mask> virt;  // virtual edge -> absorbed input vertices
    auto absorbed = [&](Mask within) {
        Mask out = within;
        for (const auto& [e, m] : virt)
            if ((within >> e.u & 1U) && (within >> e.v & 1U)) out |= m;
        return out;
    };
    while (true) {
        if (std::popcount(alive) <= 4 || connectivity(cur.induced(members(alive))) >= 3) break;
        struct Cand {
            int size;
            Vertex x, y;
            Mask comp, span;
        };
        std::optional<Cand> best;
        for_each_bit(alive, [&](int x) {
            for_each_bit(alive & ~(bit(x + 1) - 1), [&](int y) {
                for (Mask c : components(cur, alive & ~bit(x) & ~bit(y))) {
                    if ((alive & ~c & ~bit(x) & ~bit(y)) == 0) continue;
                    Mask span = absorbed(c | bit(x) | bit(y));
                    int size = std::popcount(span);
                    if (best && size <= best->size) continue;
                    if (!gadget_on(g, members(span), x, y, false)) continue;
                    best = Cand{size, x, y, c, span};
                }
            });
        });
        if (!best) break;
        for (auto it = virt.begin(); it != virt.end();)
            it = (best->comp >> it->first.u & 1U) || (best->comp >> it->first.v & 1U) ? virt.erase(it) : std::next(it);
        Edge e(best->x, best->y);
        virt[e] = best->span & ~bit(best->x) & ~bit(best->y);
        alive &= ~best->comp;
        for_each_bit(best->comp, [&](int v) {
            for (Vertex w : cur.neighbour_list(v)) cur.remove_edge(v, w);
        });
        if (!cur.adjacent(e.u, e.v)) cur.add_edge(e.u, e.v);
    }
    const auto core_vs = members(alive);
    Graph core = cur.induced(core_vs);
    auto match = classify_core(core);
    if (!match) return std::nullopt;
    Decomposition d;
    d.kind = DecompositionKind::CoreGadgets;
    d.order = n;
    d.core = core;
    d.core_vertices = core_vs;
    d.family = match->id;
    d.core_to_family = match->to_family;
    auto cid = [&](Vertex v) { return static_cast<Vertex>(std::find(core_vs.begin(), core_vs.end(), v) - core_vs.begin()); };
    std::vector<Edge> fam_F;
    for (const auto& [e, m] : virt) {
        auto part = gadget_on(g, members(m | bit(e.u) | bit(e.v)), e.u, e.v, false);
        if (!part) return std::nullopt;
        d.F.emplace_back(cid(e.u), cid(e.v));
        d.gadgets.push_back(*part);
    }
    for (const Edge& e : d.F) fam_F.emplace_back(d.core_to_family[e.u], d.core_to_family[e.v]);
    if (!is_known_subdividable(d.family, fam_F)) return std::nullopt;
    return d;
}

} // namespace detail

/// Structural witness for a 2-connected K_{2,4}-minor-free graph; nullopt
/// when g has a K_{2,4} minor (or is not 2-connected).
inline std::optional<Decomposition> decompose(const Graph& g) {
    if (!g.is_simple() || g.order() < 3 || connectivity(g) < 2) return std::nullopt;
    if (auto d = detail::try_outerplanar(g)) return d;
    if (auto d = detail::try_three_gadget(g)) return d;
    return detail::try_core(g);
}

/// Rebuild the input graph from a decomposition.
inline Graph reassemble(const Decomposition& d) {
    Graph g(d.order);
    auto add_part = [&](const GadgetPart& p) {
        for (const Edge& e : p.gadget.graph.edges()) {
            Vertex a = p.vertices[e.u], b = p.vertices[e.v];
            if (!g.adjacent(a, b)) g.add_edge(a, b);
        }
    };
    if (d.kind == DecompositionKind::CoreGadgets) {
        std::set<Edge> fs(d.F.begin(), d.F.end());
        for (const Edge& e : d.core.edges())
            if (!fs.count(e)) g.add_edge(d.core_vertices[e.u], d.core_vertices[e.v]);
        for (const auto& p : d.gadgets) add_part(p);
    } else {
        for (const auto& p : d.parts) add_part(p);
        if (d.has_xy && !g.adjacent(d.x, d.y)) g.add_edge(d.x, d.y);
    }
    return g;
}

/// Human-readable decomposition tree.
inline std::string describe(const Decomposition& d) {
    auto list = [](const std::vector<Vertex>& vs) {
        std::string s;
        for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + std::to_string(vs[i]);
        return s;
    };
    auto path = [&](const GadgetPart& p) {
        std::vector<Vertex> out;
        for (Vertex v : p.gadget.outer_path) out.push_back(p.vertices[v]);
        return list(out);
    };
    std::string s = std::string("case ") + decomposition_kind_name(d.kind) + "\n";
    if (d.kind == DecompositionKind::CoreGadgets) {
        s += "core " + d.family.name() + " on " + list(d.core_vertices) + "\n";
        const auto lg = gen_family(d.family);
        for (std::size_t i = 0; i < d.core_vertices.size(); ++i)
            s += "  " + std::to_string(d.core_vertices[i]) + " = " + lg.labels[d.core_to_family[i]] + "\n";
        for (std::size_t i = 0; i < d.F.size(); ++i) {
            const auto& p = d.gadgets[i];
            s += "gadget " + std::to_string(p.x()) + "-" + std::to_string(p.y()) + (p.gadget.broken ? " broken" : " unbroken") +
                 " path " + path(p) + "\n";
        }
    } else {
        s += "terminals " + std::to_string(d.x) + " " + std::to_string(d.y) + (d.has_xy ? " edge" : " no-edge") + "\n";
        for (const auto& p : d.parts) s += "gadget path " + path(p) + "\n";
    }
    return s;
}

} // namespace dpcolor
