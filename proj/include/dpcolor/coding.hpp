#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "dpcolor/cover.hpp"
#include "dpcolor/outerplanar.hpp"

namespace dpcolor {

/// A K_{2,2}-shaped conflict summary between L(x) and L(y). Link.a indexes
/// L(x) and Link.b indexes L(y), whatever the vertex ids.
struct Coding {
    Vertex x = 0, y = 1;
    int size_x = 0, size_y = 0;
    std::vector<Link> links;
    int lambda_x = 1, lambda_y = 1;

    bool blocks(int a, int b) const { return std::binary_search(links.begin(), links.end(), Link{a, b}); }

    /// As a bundle on the edge xy of some host graph.
    LinkBundle as_bundle() const {
        Edge e(x, y);
        std::vector<Link> ls = links;
        if (e.u != x)
            for (auto& l : ls) std::swap(l.a, l.b);
        return make_k22(e, std::move(ls)).normalized();
    }
};

/// One suppression of an interior degree-2 vertex, in original vertex ids
/// and original node indices.
struct ReplayStep {
    Vertex u = 0, u1 = 0, u2 = 0;
    std::vector<int> alive_u;     // surviving nodes of L(u) at this step
    std::vector<Link> links_u1u;  // (node of u1, node of u)
    std::vector<Link> links_uu2;  // (node of u, node of u2)
    std::vector<NodeRef> deleted; // the set B, if any
    int star_case = 1;
    bool edge_existed = false;
};

struct ReplayStack {
    int order = 0;
    Vertex x = 0, y = 1;
    std::vector<ReplayStep> steps;
};

// ---------------------------------------------------------------------------
// Star product and its shape.

/// M* = {ab : N_{e1}(a) ∪ N_{e2}(b) = L(u)}, a in L(u1), b in L(u2).
/// `b1` joins u1 and u, `b2` joins u and u2.
inline std::vector<Link> star_product(const LinkBundle& b1, Vertex u1, const LinkBundle& b2, Vertex u2, int size_u1,
                                      int size_u2, int size_u) {
    const Mask full = size_u >= 64 ? ~Mask{0} : bit(size_u) - 1;
    std::vector<Link> out;
    for (int a = 0; a < size_u1; ++a) {
        Mask na = b1.neighbours(u1, a);
        for (int b = 0; b < size_u2; ++b)
            if ((na | b2.neighbours(u2, b)) == full) out.push_back({a, b});
    }
    return out;
}

enum class StarShape { Matching, K12AtU1, K12AtU2, K22 };

inline const char* star_shape_name(StarShape s) {
    switch (s) {
        case StarShape::Matching: return "matching";
        case StarShape::K12AtU1: return "k12@u1";
        case StarShape::K12AtU2: return "k12@u2";
        case StarShape::K22: return "k22";
    }
    return "?";
}

/// Case number from the λ values of the two bundles at u1 and u2.
inline int star_case(int lambda1, int lambda2) {
    if (lambda1 == 1 && lambda2 == 1) return 1;
    if (lambda1 == 1 || lambda2 == 1) return 2;
    return 3;
}

/// Check the shape the case analysis predicts for M*; `low_is_u1` names
/// the λ=1 side in Case 2.
inline StarShape classify_star(const std::vector<Link>& star, int lambda1, int lambda2) {
    int cs = star_case(lambda1, lambda2);
    auto fail = [&](const std::string& why) {
        throw ShapeViolation("star product breaks case " + std::to_string(cs) + ": " + why);
    };
    const bool matching = detail::is_matching_shape(star);
    const bool k22 = detail::is_k22_shape(star);
    StarShape shape = StarShape::K22;
    if (matching) shape = StarShape::Matching;
    else if (star.size() == 2 && detail::distinct_side(star, true) == 1) shape = StarShape::K12AtU1;
    else if (star.size() == 2 && detail::distinct_side(star, false) == 1) shape = StarShape::K12AtU2;
    switch (cs) {
        case 1:
            if (!matching || star.size() > 2) fail("expected a matching of at most two links");
            break;
        case 2: {
            if (star.size() > 2) fail("expected at most two links");
            bool low_u1 = lambda1 == 1;
            if (shape == StarShape::K12AtU2 && low_u1) fail("K_{1,2} centred on the wrong side");
            if (shape == StarShape::K12AtU1 && !low_u1) fail("K_{1,2} centred on the wrong side");
            break;
        }
        default:
            if (!k22) fail("expected a subgraph of K_{2,2}");
    }
    return shape;
}

// ---------------------------------------------------------------------------
// One reduction step on (gadget, cover).

struct ReduceCoverResult {
    TwoTerminal reduced;
    Cover cover;
    std::vector<Vertex> origin;                 // new id -> id before the step
    std::vector<std::vector<int>> index_origin; // per new id: new index -> index before
    ReplayStep step;                            // in ids/indices before the step
};

namespace detail {

inline bool is_terminal(const TwoTerminal& t, Vertex v) { return v == t.x || v == t.y; }

} // namespace detail

/// Suppress the first interior degree-2 vertex u and merge its two bundles
/// into one bundle on u1u2, deleting the nodes B on a short list when the
/// merge would break validity. Terminals are never shortened: when the short
/// side is a terminal the merge is kept as a union.
inline ReduceCoverResult reduce_cover(const TwoTerminal& t, const Cover& c) {
    const Vertex u = interior_degree2_vertex(t);
    auto rs = reduce_step(t, u);
    const Vertex u1 = rs.u1, u2 = rs.u2;
    const LinkBundle& b1 = c.bundle(u1, u);
    const LinkBundle& b2 = c.bundle(u, u2);
    const int lam1 = b1.lambda(u1), lam2 = b2.lambda(u2);
    auto star = star_product(b1, u1, b2, u2, c.list_sizes[u1], c.list_sizes[u2], c.list_sizes[u]);
    classify_star(star, lam1, lam2);
    const int cs = star_case(lam1, lam2);

    ReplayStep step;
    step.u = u;
    step.u1 = u1;
    step.u2 = u2;
    step.star_case = cs;
    step.edge_existed = rs.edge_existed;
    for (int i = 0; i < c.list_sizes[u]; ++i) step.alive_u.push_back(i);
    for (int a = 0; a < c.list_sizes[u1]; ++a)
        for_each_bit(b1.neighbours(u1, a), [&](int j) { step.links_u1u.push_back({a, j}); });
    for (int j = 0; j < c.list_sizes[u]; ++j)
        for_each_bit(b2.neighbours(u, j), [&](int b) { step.links_uu2.push_back({j, b}); });

    // Decide where (if anywhere) to delete B.
    Vertex shorten = -1;
    if (rs.edge_existed) {
        auto eligible = [&](Vertex s) { return c.list_sizes[s] <= 4 && !detail::is_terminal(t, s); };
        if (cs == 2) {
            Vertex high = lam1 == 1 ? u2 : u1;
            if (eligible(high)) shorten = high;
        } else if (cs == 3) {
            bool e1 = eligible(u1), e2 = eligible(u2);
            if (e1 && e2) shorten = c.list_sizes[u1] < c.list_sizes[u2] ? u1 : u2;
            else if (e2) shorten = u2;
            else if (e1) shorten = u1;
        }
    }

    // Star links oriented on the edge u1u2 of the reduced graph.
    const Edge e(u1, u2);
    auto orient = [&](const std::vector<Link>& ls) {
        std::vector<Link> out = ls;
        if (e.u != u1)
            for (auto& l : out) std::swap(l.a, l.b);
        return out;
    };

    // Build the merged cover on the old ids first, then relabel.
    Cover merged = c;
    LinkBundle nb;
    if (!rs.edge_existed) {
        nb = LinkBundle{e, BundleKind::K22Part, {}, orient(star)}.normalized();
    } else if (shorten == -1) {
        const LinkBundle& me = c.bundle(u1, u2);
        std::vector<Link> extra;
        for (const Link& l : orient(star))
            if (!std::binary_search(me.matching_links.begin(), me.matching_links.end(), l)) extra.push_back(l);
        nb = make_union(e, me.matching_links, extra).normalized();
    } else {
        nb = c.bundle(u1, u2);  // B removes every star link
    }
    // Drop u from the graph, put the merged bundle on u1u2.
    std::vector<Edge> keep;
    for (const Edge& f : c.graph.edges())
        if (!f.has(u)) keep.push_back(f);
    if (!rs.edge_existed) keep.push_back(e);
    Graph g(c.order());
    for (const Edge& f : keep) g.add_edge(f.u, f.v);
    merged.graph = g;
    merged.bundles.clear();
    for (const Edge& f : keep) merged.bundles.emplace(f, f == e ? nb : c.bundles.at(f));

    std::vector<std::vector<int>> idx_map(static_cast<std::size_t>(c.order()));
    for (int v = 0; v < c.order(); ++v)
        for (int i = 0; i < c.list_sizes[v]; ++i) idx_map[v].push_back(i);
    if (shorten != -1) {
        std::vector<NodeRef> dead;
        std::set<int> seen;
        for (const Link& l : star) {
            int idx = shorten == u2 ? l.b : l.a;
            if (seen.insert(idx).second) dead.push_back({shorten, idx});
        }
        step.deleted = dead;
        auto del = delete_nodes(merged, dead);
        merged = del.cover;
        idx_map = del.order_map;
    }

    ReduceCoverResult out;
    out.reduced = rs.reduced;
    out.origin = rs.origin;
    out.cover = restrict(merged, rs.origin);
    for (Vertex old : rs.origin) out.index_origin.push_back(idx_map[old]);
    out.step = step;

    if (!is_valid_two_terminal(out.cover, out.reduced.x, out.reduced.y, out.reduced.outer_path, TerminalRule::Relaxed))
        throw ValidityLost("reduced cover is not valid");
    for (std::size_t nv = 0; nv < rs.origin.size(); ++nv)
        if (lambda_vertex(out.cover, static_cast<Vertex>(nv)) > lambda_vertex(c, rs.origin[nv]))
            throw ValidityLost("weighted degree increased");
    return out;
}

// ---------------------------------------------------------------------------
// Coding and replay.

struct CodingResult {
    Coding coding;
    ReplayStack stack;
};

/// Coding of a valid cover of a broken x-y-outerplanar gadget, by repeated
/// reduce_cover down to K_2.
inline CodingResult compute_coding(const TwoTerminal& t, const Cover& c) {
    if (!t.broken) throw NotTwoTerminal("coding needs a broken gadget");
    if (!is_valid_two_terminal(c, t.x, t.y, t.outer_path, TerminalRule::Relaxed))
        throw PreconditionViolated("cover is not valid for the gadget");
    CodingResult res;
    res.stack.order = t.order();
    res.stack.x = t.x;
    res.stack.y = t.y;

    TwoTerminal cur = t;
    Cover cov = c;
    std::vector<Vertex> vorig(static_cast<std::size_t>(t.order()));
    std::vector<std::vector<int>> iorig(static_cast<std::size_t>(t.order()));
    for (int v = 0; v < t.order(); ++v) {
        vorig[v] = v;
        for (int i = 0; i < c.list_sizes[v]; ++i) iorig[v].push_back(i);
    }
    while (cur.order() > 2) {
        auto r = reduce_cover(cur, cov);
        // Translate the step into original ids and indices.
        ReplayStep s = r.step;
        auto io = [&](Vertex v, int i) { return iorig[v][i]; };
        ReplayStep o;
        o.u = vorig[s.u];
        o.u1 = vorig[s.u1];
        o.u2 = vorig[s.u2];
        o.star_case = s.star_case;
        o.edge_existed = s.edge_existed;
        for (int i : s.alive_u) o.alive_u.push_back(io(s.u, i));
        for (const Link& l : s.links_u1u) o.links_u1u.push_back({io(s.u1, l.a), io(s.u, l.b)});
        for (const Link& l : s.links_uu2) o.links_uu2.push_back({io(s.u, l.a), io(s.u2, l.b)});
        for (const NodeRef& d : s.deleted) o.deleted.push_back({vorig[d.vertex], io(d.vertex, d.index)});
        res.stack.steps.push_back(std::move(o));

        std::vector<Vertex> nv;
        std::vector<std::vector<int>> ni;
        for (std::size_t k = 0; k < r.origin.size(); ++k) {
            Vertex old = r.origin[k];
            nv.push_back(vorig[old]);
            std::vector<int> m;
            for (int oi : r.index_origin[k]) m.push_back(iorig[old][oi]);
            ni.push_back(std::move(m));
        }
        vorig = std::move(nv);
        iorig = std::move(ni);
        cur = r.reduced;
        cov = r.cover;
    }
    const LinkBundle& last = cov.bundles.begin()->second;
    auto links = last.all_links();
    if (!detail::is_k22_shape(links)) throw ShapeViolation("final bundle is not a subgraph of K_{2,2}");
    Coding& cd = res.coding;
    cd.x = t.x;
    cd.y = t.y;
    cd.size_x = c.list_sizes[t.x];
    cd.size_y = c.list_sizes[t.y];
    // Terminal lists are never shortened, so indices are original already.
    const bool x_is_u = vorig[last.edge.u] == t.x;
    for (const Link& l : links) {
        int a = x_is_u ? iorig[last.edge.u][l.a] : iorig[last.edge.v][l.b];
        int b = x_is_u ? iorig[last.edge.v][l.b] : iorig[last.edge.u][l.a];
        cd.links.push_back({a, b});
    }
    std::sort(cd.links.begin(), cd.links.end());
    cd.lambda_x = detail::shape_lambda(cd.links, true);
    cd.lambda_y = detail::shape_lambda(cd.links, false);
    if (cd.lambda_x > lambda_vertex(c, t.x) || cd.lambda_y > lambda_vertex(c, t.y))
        throw ValidityLost("coding weight exceeds terminal weight");
    return res;
}

/// Extend φ(x)=a, φ(y)=b back through the replay stack. Each suppressed
/// vertex gets its lowest surviving node not linked to its two neighbours.
inline Colouring extend_colouring(const ReplayStack& st, int a, int b) {
    Colouring phi(static_cast<std::size_t>(st.order), -1);
    phi[st.x] = a;
    phi[st.y] = b;
    for (auto it = st.steps.rbegin(); it != st.steps.rend(); ++it) {
        const ReplayStep& s = *it;
        int c1 = phi[s.u1], c2 = phi[s.u2];
        if (c1 < 0 || c2 < 0) throw InvariantBreach("replay reached an uncoloured neighbour");
        int pick = -1;
        for (int cand : s.alive_u) {
            bool bad = std::binary_search(s.links_u1u.begin(), s.links_u1u.end(), Link{c1, cand}) ||
                       std::binary_search(s.links_uu2.begin(), s.links_uu2.end(), Link{cand, c2});
            if (!bad) {
                pick = cand;
                break;
            }
        }
        if (pick < 0) throw NoAdmissibleNode("no free node for vertex " + std::to_string(s.u));
        phi[s.u] = pick;
    }
    return phi;
}

} // namespace dpcolor
