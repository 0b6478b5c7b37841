#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "dpcolor/coding.hpp"
#include "dpcolor/cover.hpp"
#include "dpcolor/oracle.hpp"
#include "dpcolor/structure.hpp"

namespace dpcolor {

// ---------------------------------------------------------------------------
// Working state: surviving nodes per vertex plus a partial colouring.

struct WorkState {
    const Cover* cover = nullptr;
    std::vector<Mask> avail;
    Colouring phi;
    Mask alive = 0;  // uncoloured vertices still in play
    std::vector<std::pair<Vertex, int>> order;

    explicit WorkState(const Cover& c) : cover(&c), phi(static_cast<std::size_t>(c.order()), -1) {
        for (int v = 0; v < c.order(); ++v) avail.push_back(c.list_sizes[v] >= 64 ? ~Mask{0} : bit(c.list_sizes[v]) - 1);
        alive = c.graph.all_vertices();
    }

    int size(Vertex v) const { return std::popcount(avail[v]); }

    /// Nodes of L(w) linked to node a of L(v).
    Mask hits(Vertex v, int a, Vertex w) const { return cover->bundle(v, w).neighbours(v, a); }

    void colour(Vertex v, int a) {
        if (!(alive >> v & 1U) || !(avail[v] >> a & 1U)) throw InvariantBreach("colouring a dead vertex or node");
        phi[v] = a;
        alive &= ~bit(v);
        order.emplace_back(v, a);
        for_each_bit(cover->graph.neighbours(v) & alive, [&](int w) { avail[w] &= ~hits(v, a, w); });
    }

    /// λ at `side` of the bundle on side-w restricted to surviving nodes.
    int live_lambda(Vertex side, Vertex w) const {
        const LinkBundle& b = cover->bundle(side, w);
        const Edge& e = b.edge;
        auto keep = [&](const std::vector<Link>& v) {
            std::vector<Link> out;
            for (const Link& l : v)
                if ((avail[e.u] >> l.a & 1U) && (avail[e.v] >> l.b & 1U)) out.push_back(l);
            return out;
        };
        LinkBundle r{e, b.kind, keep(b.matching_links), keep(b.k22_links)};
        return r.normalized().lambda(side);
    }

    int residual_lambda(Vertex v, Mask within) const {
        int s = 0;
        for_each_bit(cover->graph.neighbours(v) & within & ~bit(v), [&](int w) { s += live_lambda(v, w); });
        return s;
    }
};

/// Maximal removable sequence, lowest id first at every step.
inline std::vector<Vertex> greedy_removals(const WorkState& ws) {
    std::vector<Vertex> seq;
    Mask rest = ws.alive;
    bool progress = true;
    while (progress && rest) {
        progress = false;
        for (int v : bits_of(rest))
            if (ws.size(v) > ws.residual_lambda(v, rest)) {
                seq.push_back(v);
                rest &= ~bit(v);
                progress = true;
                break;
            }
    }
    return seq;
}

inline std::vector<Vertex> greedy_removals(const Cover& c) { return greedy_removals(WorkState(c)); }

namespace detail {

inline int lowest(Mask m) { return m ? std::countr_zero(m) : -1; }

/// Colour a removable sequence back to front.
inline void colour_removed(WorkState& ws, const std::vector<Vertex>& seq) {
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
        int a = lowest(ws.avail[*it]);
        if (a < 0) throw InvariantBreach("removable vertex has no node left");
        ws.colour(*it, a);
    }
}

/// Vertices of `m` in path order if they induce a path (or a single vertex).
inline std::optional<std::vector<Vertex>> as_path(const Graph& g, Mask m) {
    auto vs = bits_of(m);
    if (vs.empty()) return std::vector<Vertex>{};
    int edges = 0;
    Vertex start = vs.front();
    for (Vertex v : vs) {
        int d = std::popcount(g.neighbours(v) & m);
        if (d > 2) return std::nullopt;
        edges += d;
        if (d <= 1) start = v;
    }
    if (edges / 2 != static_cast<int>(vs.size()) - 1 || !is_connected(g, m)) return std::nullopt;
    std::vector<Vertex> p{start};
    Mask seen = bit(start);
    while (p.size() < vs.size()) {
        Mask nx = g.neighbours(p.back()) & m & ~seen;
        p.push_back(std::countr_zero(nx));
        seen |= bit(p.back());
    }
    return p;
}

inline bool path_hypotheses(const WorkState& ws, const std::vector<Vertex>& p) {
    const int k = static_cast<int>(p.size());
    if (k == 0) return true;
    if (k == 1) return ws.size(p[0]) >= 1;
    Mask pm = 0;
    for (Vertex v : p) pm |= bit(v);
    if (ws.size(p[0]) < 2 || ws.size(p[k - 1]) < 2) return false;
    if (ws.size(p[0]) == 2 && ws.live_lambda(p[0], p[1]) != 1) return false;
    for (int i = 1; i + 1 < k; ++i)
        if (ws.size(p[i]) < std::min(4, ws.residual_lambda(p[i], pm))) return false;
    return true;
}

inline void colour_path_rec(WorkState& ws, std::vector<Vertex> p) {
    const int k = static_cast<int>(p.size());
    if (k == 0) return;
    const Vertex u1 = p[0];
    if (k == 1) {
        int a = lowest(ws.avail[u1]);
        if (a < 0) throw InvariantBreach("path vertex has no node left");
        ws.colour(u1, a);
        return;
    }
    const Vertex u2 = p[1];
    if (k == 2) {
        // a node of u1 with at most one link into L(u2)
        for_each_bit(ws.avail[u1], [&](int a) {
            if (ws.phi[u1] >= 0) return;
            if (std::popcount(ws.hits(u1, a, u2) & ws.avail[u2]) <= 1) ws.colour(u1, a);
        });
        if (ws.phi[u1] < 0) throw InvariantBreach("no low-degree node at the path end");
        colour_path_rec(ws, {u2});
        return;
    }
    std::vector<Vertex> rest(p.begin() + 1, p.end());
    if (ws.live_lambda(u1, u2) <= 2 || ws.size(u1) == 2) {
        colour_path_rec(ws, rest);
        int a = lowest(ws.avail[u1]);
        if (a < 0) throw InvariantBreach("path end lost all nodes");
        ws.colour(u1, a);
        return;
    }
    // λ(u1) = 3: colour u1 first with a node hitting at most one node of u2
    for_each_bit(ws.avail[u1], [&](int a) {
        if (ws.phi[u1] >= 0) return;
        if (std::popcount(ws.hits(u1, a, u2) & ws.avail[u2]) <= 1) ws.colour(u1, a);
    });
    if (ws.phi[u1] < 0) throw InvariantBreach("no node of degree at most one");
    colour_path_rec(ws, rest);
}

} // namespace detail

/// Colour the path p (vertex order) inside the working state, following the
/// recursion of the path lemma. Tries both orientations.
inline void colour_path(WorkState& ws, const std::vector<Vertex>& p) {
    std::vector<Vertex> rev(p.rbegin(), p.rend());
    if (detail::path_hypotheses(ws, p)) return detail::colour_path_rec(ws, p);
    if (detail::path_hypotheses(ws, rev)) return detail::colour_path_rec(ws, rev);
    throw HypothesisViolated("path list sizes below the path lemma bounds");
}

inline Colouring colour_path(const Cover& c, const std::vector<Vertex>& p) {
    WorkState ws(c);
    Mask m = 0;
    for (Vertex v : p) m |= bit(v);
    ws.alive = m;
    colour_path(ws, p);
    return ws.phi;
}

/// Finish the state by removals plus at most one residual path.
inline bool close_state(WorkState& ws) {
    for (int v : bits_of(ws.alive))
        if (ws.avail[v] == 0) return false;
    auto seq = greedy_removals(ws);
    Mask rest = ws.alive;
    for (Vertex v : seq) rest &= ~bit(v);
    WorkState trial = ws;
    if (rest) {
        auto p = detail::as_path(ws.cover->graph, rest);
        if (!p) return false;
        if (!detail::path_hypotheses(trial, *p) &&
            !detail::path_hypotheses(trial, std::vector<Vertex>(p->rbegin(), p->rend())))
            return false;
        colour_path(trial, *p);
    }
    detail::colour_removed(trial, seq);
    ws = trial;
    return true;
}

// ---------------------------------------------------------------------------
// Tight covers.

struct TightInstance {
    Cover cover;                                  // trimmed
    Graph multigraph;                             // m(e) = λ'
    std::vector<std::vector<int>> order_map;      // trimmed index -> input index
    bool blocked = false;                         // every block K_n^k / C_n^k and every bundle perfect
};

/// All-tight normalization: trim one leaf of every K_{1,2} part until λ is
/// symmetric, then read off multiplicities. nullopt if some vertex is not
/// tight (including |L(v)| = 5 < λ(v)).
inline std::optional<TightInstance> normalize_tight_cover(const Cover& c) {
    for (int v = 0; v < c.order(); ++v)
        if (c.list_sizes[v] != lambda_vertex(c, v)) return std::nullopt;
    TightInstance ti;
    ti.cover = c;
    for (int v = 0; v < c.order(); ++v) {
        std::vector<int> id;
        for (int i = 0; i < c.list_sizes[v]; ++i) id.push_back(i);
        ti.order_map.push_back(id);
    }
    while (true) {
        std::optional<NodeRef> dead;
        for (const auto& [e, b] : ti.cover.bundles) {
            const auto& k = b.k22_links;
            if (b.kind == BundleKind::Matching || k.size() != 2) continue;
            if (k[0].a == k[1].a) dead = NodeRef{e.v, std::min(k[0].b, k[1].b)};       // centre in L(e.u)
            else if (k[0].b == k[1].b) dead = NodeRef{e.u, std::min(k[0].a, k[1].a)};  // centre in L(e.v)
            if (dead) break;
        }
        if (!dead) break;
        auto r = delete_nodes(ti.cover, {*dead});
        for (int v = 0; v < c.order(); ++v) {
            std::vector<int> m;
            for (int i : r.order_map[v]) m.push_back(ti.order_map[v][i]);
            ti.order_map[v] = m;
        }
        ti.cover = r.cover;
    }
    Graph mg(c.order());
    bool perfect = true;
    for (const auto& [e, b] : ti.cover.bundles) {
        int lu = b.lambda(e.u), lv = b.lambda(e.v);
        if (lu != lv) return std::nullopt;
        mg.add_edge(e.u, e.v, lu);
        if (ti.cover.list_sizes[e.u] != ti.cover.list_sizes[e.v]) perfect = false;
        for (int i = 0; i < ti.cover.list_sizes[e.u] && perfect; ++i)
            if (b.degree(e.u, i) != lu) perfect = false;
    }
    ti.multigraph = mg;
    ti.blocked = degree_dp_blockers(mg) && perfect;
    return ti;
}

// ---------------------------------------------------------------------------
// Guided search for a colouring of a whole cover.

struct SolveOptions {
    std::uint64_t oracle_budget = kDefaultOracleBudget;
    int backtrack_depth = 3;
    bool allow_oracle = true;
};

struct GuidedResult {
    Colouring phi;
    std::string method;  // reduction | degree-dp | probe | backtrack | oracle
    std::vector<std::pair<Vertex, int>> order;
};

namespace detail {

/// Vertex order for probes: |L| = 5 below λ first, then by λ - |L| and id.
inline std::vector<Vertex> probe_vertices(const WorkState& ws) {
    std::vector<std::pair<std::pair<int, int>, Vertex>> keyed;
    for (int v : bits_of(ws.alive)) {
        int lam = ws.residual_lambda(v, ws.alive);
        int heavy = ws.size(v) == 5 && lam > 5 ? 0 : 1;
        keyed.push_back({{heavy, ws.size(v) - lam}, v});
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<Vertex> out;
    for (auto& k : keyed) out.push_back(k.second);
    return out;
}

/// Nodes of v ordered by preference: those that leave some neighbour with
/// slack first, then by total damage.
inline std::vector<int> probe_nodes(const WorkState& ws, Vertex v) {
    std::vector<std::pair<std::pair<int, int>, int>> keyed;
    const Mask nb = ws.cover->graph.neighbours(v) & ws.alive;
    for_each_bit(ws.avail[v], [&](int a) {
        int damage = 0, saves = 0;
        for_each_bit(nb, [&](int w) {
            int lost = std::popcount(ws.hits(v, a, w) & ws.avail[w]);
            damage += lost;
            if (lost < ws.live_lambda(w, v)) ++saves;
        });
        keyed.push_back({{-saves, damage}, a});
    });
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> out;
    for (auto& k : keyed) out.push_back(k.second);
    return out;
}

inline bool single_probes(WorkState& ws) {
    for (Vertex v : probe_vertices(ws))
        for (int a : probe_nodes(ws, v)) {
            WorkState t = ws;
            t.colour(v, a);
            if (close_state(t)) {
                ws = t;
                return true;
            }
        }
    return false;
}

/// Two non-adjacent neighbours u, w of some v coloured so that v loses at
/// most one node.
inline bool pair_probes(WorkState& ws) {
    const Graph& g = ws.cover->graph;
    for (int v : bits_of(ws.alive)) {
        auto nb = bits_of(g.neighbours(v) & ws.alive);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                Vertex u = nb[i], w = nb[j];
                if (g.adjacent(u, w)) continue;
                for (int a : bits_of(ws.avail[u]))
                    for (int b : bits_of(ws.avail[w])) {
                        Mask hu = ws.hits(u, a, v) & ws.avail[v], hw = ws.hits(w, b, v) & ws.avail[v];
                        if (std::popcount(hu | hw) > 1) continue;
                        WorkState t = ws;
                        t.colour(u, a);
                        if (!(t.avail[w] >> b & 1U)) continue;
                        t.colour(w, b);
                        if (close_state(t)) {
                            ws = t;
                            return true;
                        }
                    }
            }
    }
    return false;
}

inline bool backtrack(WorkState& ws, int depth) {
    if (close_state(ws)) return true;
    if (depth == 0 || !ws.alive) return false;
    for (Vertex v : probe_vertices(ws))
        for (int a : probe_nodes(ws, v)) {
            WorkState t = ws;
            t.colour(v, a);
            bool empty = false;
            for_each_bit(t.alive, [&](int w) { empty |= t.avail[w] == 0; });
            if (empty) continue;
            if (backtrack(t, depth - 1)) {
                ws = t;
                return true;
            }
        }
    return false;
}

} // namespace detail

/// Colour the whole cover: reductions, tight normalization, probes, bounded
/// backtracking, then the exhaustive oracle.
inline GuidedResult colour_guided(const Cover& c, const SolveOptions& opt = {}) {
    GuidedResult res;
    {
        WorkState ws(c);
        if (close_state(ws)) return {ws.phi, "reduction", ws.order};
    }
    if (auto ti = normalize_tight_cover(c); ti && !ti->blocked) {
        WorkState ws(ti->cover);
        if (detail::single_probes(ws) || detail::pair_probes(ws)) {
            Colouring phi(static_cast<std::size_t>(c.order()), -1);
            std::vector<std::pair<Vertex, int>> ord;
            for (auto [v, a] : ws.order) {
                phi[v] = ti->order_map[v][a];
                ord.emplace_back(v, phi[v]);
            }
            return {phi, "degree-dp", ord};
        }
    }
    {
        WorkState ws(c);
        if (detail::single_probes(ws)) return {ws.phi, "probe", ws.order};
        if (detail::pair_probes(ws)) return {ws.phi, "probe", ws.order};
    }
    {
        WorkState ws(c);
        if (detail::backtrack(ws, opt.backtrack_depth)) return {ws.phi, "backtrack", ws.order};
    }
    if (!opt.allow_oracle) throw InvariantBreach("guided search failed and the oracle is disabled");
    auto o = solve_exhaustive(c, opt.oracle_budget);
    if (o.status == OracleStatus::Budget) throw OracleBudget();
    if (o.status == OracleStatus::None) throw InvariantBreach("cover has no colouring");
    res.phi = o.colouring;
    res.method = "oracle";
    for (int v = 0; v < c.order(); ++v) res.order.emplace_back(v, o.colouring[v]);
    return res;
}

/// F-valid, or F-valid except for condition 4 with some vertex whose list
/// exceeds its weighted degree. The second form arises from K_4 cores whose
/// four vertices all lie on gadgets.
inline bool core_cover_usable(const Cover& c, const std::vector<Edge>& F) {
    if (is_f_valid(c, F)) return true;
    if (!is_f_valid(c, F, false)) return false;
    for (int v = 0; v < c.order(); ++v)
        if (c.list_sizes[v] > lambda_vertex(c, v)) return true;
    return false;
}

/// Colouring of an F-valid cover of a 3-connected core.
inline GuidedResult solve_core(const Graph& g0, const std::vector<Edge>& F, const Cover& c, const SolveOptions& opt = {}) {
    if (!(c.graph == g0)) throw PreconditionViolated("cover graph differs from the core");
    if (!core_cover_usable(c, F)) throw PreconditionViolated("cover is not F-valid");
    auto r = colour_guided(c, opt);
    if (!check_colouring(c, r.phi)) throw InvariantBreach("core colouring fails the check");
    return r;
}

// ---------------------------------------------------------------------------
// End to end.

struct GadgetTrace {
    Vertex x = 0, y = 0;               // input ids
    std::vector<Vertex> vertices;
    std::vector<Link> coding;          // a in L(x), b in L(y)
    int steps = 0;
    int deleted = 0;
};

struct SolveTrace {
    DecompositionKind kind = DecompositionKind::Outerplanar;
    std::string decomposition;
    std::optional<FamilyId> family;
    std::vector<Edge> F;               // input ids
    std::vector<GadgetTrace> gadgets;
    std::string method;                // coding-pair, or the core method
    std::vector<std::pair<Vertex, int>> assignments;  // in colouring order
    std::vector<std::string> log;
};

struct SolveResult {
    Colouring colouring;
    SolveTrace trace;
};

namespace detail {

struct GadgetRun {
    GadgetPart part;
    CodingResult coding;
};

/// Coding of the broken part of a gadget, with the cover restricted to it.
inline GadgetRun run_gadget(const Cover& c, const GadgetPart& part) {
    Cover local = restrict(c, part.vertices);
    TwoTerminal t = part.gadget;
    if (!t.broken) {
        t.graph.remove_edge(t.x, t.y);
        t.broken = true;
        std::vector<Edge> keep;
        for (const Edge& e : local.graph.edges())
            if (!(e == Edge(t.x, t.y))) keep.push_back(e);
        local = restrict_edges(local, keep);
    }
    GadgetRun run{part, compute_coding(t, local)};
    run.part.gadget = t;
    return run;
}

/// Coding links expressed with a in L(p) and b in L(q) for input ids p, q.
inline std::vector<Link> coding_between(const GadgetRun& r, Vertex p) {
    std::vector<Link> out = r.coding.coding.links;
    if (r.part.vertices[r.coding.coding.x] != p)
        for (auto& l : out) std::swap(l.a, l.b);
    std::sort(out.begin(), out.end());
    return out;
}

inline void replay_gadget(const GadgetRun& r, Colouring& phi, std::vector<std::pair<Vertex, int>>& order) {
    const auto& cd = r.coding.coding;
    int a = phi[r.part.vertices[cd.x]], b = phi[r.part.vertices[cd.y]];
    if (cd.blocks(a, b)) throw InvariantBreach("terminal pair is blocked by the coding");
    Colouring local = extend_colouring(r.coding.stack, a, b);
    for (auto it = r.coding.stack.steps.rbegin(); it != r.coding.stack.steps.rend(); ++it) {
        Vertex v = r.part.vertices[it->u];
        phi[v] = local[it->u];
        order.emplace_back(v, phi[v]);
    }
}

inline GadgetTrace trace_of(const GadgetRun& r) {
    GadgetTrace gt;
    gt.x = r.part.vertices[r.coding.coding.x];
    gt.y = r.part.vertices[r.coding.coding.y];
    gt.vertices = r.part.vertices;
    gt.coding = r.coding.coding.links;
    gt.steps = static_cast<int>(r.coding.stack.steps.size());
    for (const auto& s : r.coding.stack.steps) gt.deleted += static_cast<int>(s.deleted.size());
    return gt;
}

inline std::string pair_text(Vertex v, int a) { return std::to_string(v) + ":" + std::to_string(a); }

} // namespace detail

/// Check the top-level preconditions; throws PreconditionViolated.
inline void check_solve_preconditions(const Cover& c) {
    const Graph& g = c.graph;
    if (!g.is_simple()) throw PreconditionViolated("graph is not simple");
    if (g.order() < 3 || connectivity(g) < 2) throw PreconditionViolated("graph is not 2-connected");
    if (is_cycle(g)) throw PreconditionViolated("graph is a cycle");
    if (is_complete(g)) throw PreconditionViolated("graph is complete");
    if (!c.well_formed()) throw PreconditionViolated("cover is malformed");
    if (!is_simple(c)) throw PreconditionViolated("cover is not simple");
    for (int v = 0; v < g.order(); ++v)
        if (c.list_sizes[v] < std::min(5, g.degree(v)))
            throw PreconditionViolated("list of vertex " + std::to_string(v) + " is below min(5, degree)");
}

/// Colouring of a simple min(5,d)-cover of a 2-connected K_{2,4}-minor-free
/// graph that is neither a cycle nor complete.
inline SolveResult solve(const Cover& c, const SolveOptions& opt = {}) {
    check_solve_preconditions(c);
    const Graph& g = c.graph;
    auto dec = decompose(g);
    if (!dec) throw PreconditionViolated("graph has a K_{2,4} minor");
    SolveResult out;
    SolveTrace& tr = out.trace;
    tr.kind = dec->kind;
    tr.decomposition = describe(*dec);
    Colouring phi(static_cast<std::size_t>(g.order()), -1);

    auto pick_pair = [&](Vertex x, Vertex y, const std::vector<detail::GadgetRun>& runs) {
        std::set<Link> blocked;
        for (const auto& r : runs)
            for (const Link& l : detail::coding_between(r, x)) blocked.insert(l);
        if (g.adjacent(x, y)) {
            const LinkBundle& b = c.bundle(x, y);
            for (const Link& l : b.all_links()) blocked.insert(b.edge.u == x ? l : Link{l.b, l.a});
        }
        const int total = c.list_sizes[x] * c.list_sizes[y];
        if (static_cast<int>(blocked.size()) >= total) throw InvariantBreach("terminal pairs all blocked");
        tr.log.push_back("blocked " + std::to_string(blocked.size()) + " of " + std::to_string(total) + " terminal pairs");
        for (int a = 0; a < c.list_sizes[x]; ++a)
            for (int b = 0; b < c.list_sizes[y]; ++b)
                if (!blocked.count({a, b})) return std::pair<int, int>{a, b};
        throw InvariantBreach("unreachable");
    };

    auto finish_gadgets = [&](Vertex x, Vertex y, const std::vector<GadgetPart>& parts) {
        std::vector<detail::GadgetRun> runs;
        for (const auto& p : parts) runs.push_back(detail::run_gadget(c, p));
        auto [a, b] = pick_pair(x, y, runs);
        phi[x] = a;
        phi[y] = b;
        tr.assignments = {{x, a}, {y, b}};
        tr.method = "coding-pair";
        tr.log.push_back("terminals " + detail::pair_text(x, a) + " " + detail::pair_text(y, b));
        for (const auto& r : runs) {
            tr.gadgets.push_back(detail::trace_of(r));
            detail::replay_gadget(r, phi, tr.assignments);
        }
    };

    if (dec->kind == DecompositionKind::Outerplanar) {
        if (g.degree(dec->x) >= 5) {
            finish_gadgets(dec->x, dec->y, dec->parts);
        } else {
            // maximum degree at most 4: the cover is a degree cover
            auto r = colour_guided(c, opt);
            phi = r.phi;
            tr.method = r.method;
            tr.assignments = r.order;
        }
    } else if (dec->kind == DecompositionKind::ThreeGadget) {
        finish_gadgets(dec->x, dec->y, dec->parts);
    } else {
        const auto& cv = dec->core_vertices;
        tr.family = dec->family;
        std::vector<detail::GadgetRun> runs;
        for (const auto& p : dec->gadgets) runs.push_back(detail::run_gadget(c, p));
        Cover core = restrict(c, cv);
        // Broken gadgets add core edges that do not exist in the input.
        Cover full(dec->core, core.list_sizes);
        for (const auto& [e, b] : core.bundles) full.set_bundle(b);
        for (std::size_t i = 0; i < dec->F.size(); ++i) {
            const Edge& fe = dec->F[i];
            Vertex px = cv[fe.u];
            tr.F.emplace_back(cv[fe.u], cv[fe.v]);
            auto cod = detail::coding_between(runs[i], px);  // a in L(fe.u), b in L(fe.v)
            if (dec->gadgets[i].gadget.broken) {
                full.set_bundle(make_k22(fe, cod).normalized());
            } else {
                const LinkBundle& me = core.bundle(fe.u, fe.v);
                full.set_bundle(make_union(fe, me.all_links(), cod).normalized());
            }
            for (Vertex side : {fe.u, fe.v}) {
                const auto& gp = dec->gadgets[i];
                Vertex local = static_cast<Vertex>(std::find(gp.vertices.begin(), gp.vertices.end(), cv[side]) - gp.vertices.begin());
                int dh = gp.gadget.graph.degree(local);
                if (full.bundle(fe.u, fe.v).lambda(side) > dh) throw InvariantBreach("coding weight exceeds gadget degree");
            }
        }
        if (!core_cover_usable(full, dec->F)) throw InvariantBreach("core cover is not F-valid");
        if (!is_f_valid(full, dec->F)) tr.log.push_back("core cover misses condition 4 but has a slack vertex");
        auto r = solve_core(dec->core, dec->F, full, opt);
        tr.method = r.method;
        for (auto [v, a] : r.order) {
            phi[cv[v]] = a;
            tr.assignments.emplace_back(cv[v], a);
        }
        for (const auto& run : runs) {
            tr.gadgets.push_back(detail::trace_of(run));
            detail::replay_gadget(run, phi, tr.assignments);
        }
    }
    tr.log.push_back("method " + tr.method);
    if (!check_colouring(c, phi)) throw InvariantBreach("assembled colouring fails the check");
    out.colouring = phi;
    return out;
}

/// Rebuild the colouring from a trace.
inline Colouring replay_trace(const SolveTrace& tr, int order) {
    Colouring phi(static_cast<std::size_t>(order), -1);
    for (auto [v, a] : tr.assignments) phi[v] = a;
    return phi;
}

} // namespace dpcolor
