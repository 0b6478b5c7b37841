#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dpcolor/cover.hpp"
#include "dpcolor/errors.hpp"
#include "dpcolor/graph.hpp"

// Text formats. Blank lines and lines starting with '#' are ignored.
//
//   vertices <n>
//   list <v> <size>                      (cover files: one per vertex)
//   edge <u> <v> [<mult>]                (graph files)
//   edge <u> <v> <kind> <links>          (cover files)
//   terminals <x> <y>                    (optional)
//
// <kind> is matching, k22 or union; links are a:b with a in L(u) and b in
// L(v); a union lists its matching links, then '|', then the K_{2,2} links.
// A colouring is a single line: COLOURING <phi(0)> <phi(1)> ...

namespace dpcolor {

struct GraphFile {
    Graph graph;
    std::optional<std::pair<Vertex, Vertex>> terminals;
};

struct CoverFile {
    Cover cover;
    std::optional<std::pair<Vertex, Vertex>> terminals;
};

namespace detail {

struct Line {
    int number;
    std::vector<std::string> tok;
};

inline std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        Line l{no, {}};
        for (std::string t; ls >> t;) l.tok.push_back(t);
        if (!l.tok.empty()) out.push_back(std::move(l));
    }
    return out;
}

inline int to_int(const Line& l, std::size_t i, int lo, int hi, const char* what) {
    if (i >= l.tok.size()) throw ParseError(l.number, std::string("missing ") + what);
    const std::string& t = l.tok[i];
    if (t.empty() || t.size() > 9 || t.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(l.number, std::string("bad ") + what + " '" + t + "'");
    int v = std::stoi(t);
    if (v < lo || v > hi) throw ParseError(l.number, std::string(what) + " out of range: " + t);
    return v;
}

inline Link parse_link(const Line& l, const std::string& t, int su, int sv) {
    auto colon = t.find(':');
    if (colon == std::string::npos) throw ParseError(l.number, "link must be a:b, got '" + t + "'");
    Line one{l.number, {t.substr(0, colon), t.substr(colon + 1)}};
    int a = to_int(one, 0, 0, kMaxListSize, "link end"), b = to_int(one, 1, 0, kMaxListSize, "link end");
    if (a >= su || b >= sv) throw ParseError(l.number, "link " + t + " refers past the end of a list");
    return {a, b};
}

inline std::string links_text(const std::vector<Link>& ls) {
    std::string s;
    for (const Link& l : ls) s += " " + std::to_string(l.a) + ":" + std::to_string(l.b);
    return s;
}

} // namespace detail

inline GraphFile parse_graph_file(const std::string& text) {
    GraphFile out;
    int n = -1;
    for (const auto& l : detail::tokenize(text)) {
        const std::string& d = l.tok[0];
        if (d == "vertices") {
            if (n >= 0) throw ParseError(l.number, "duplicate vertices line");
            n = detail::to_int(l, 1, 1, kMaxOrder, "vertex count");
            out.graph = Graph(n);
            if (l.tok.size() > 2) throw ParseError(l.number, "trailing tokens");
        } else if (d == "edge") {
            if (n < 0) throw ParseError(l.number, "edge before vertices");
            int u = detail::to_int(l, 1, 0, n - 1, "vertex"), v = detail::to_int(l, 2, 0, n - 1, "vertex");
            int m = l.tok.size() > 3 ? detail::to_int(l, 3, 1, 1000, "multiplicity") : 1;
            if (l.tok.size() > 4) throw ParseError(l.number, "trailing tokens");
            if (u == v) throw ParseError(l.number, "loop");
            if (out.graph.adjacent(u, v)) throw ParseError(l.number, "duplicate edge");
            out.graph.add_edge(u, v, m);
        } else if (d == "terminals") {
            if (n < 0) throw ParseError(l.number, "terminals before vertices");
            out.terminals = {detail::to_int(l, 1, 0, n - 1, "vertex"), detail::to_int(l, 2, 0, n - 1, "vertex")};
        } else {
            throw ParseError(l.number, "unknown directive '" + d + "'");
        }
    }
    if (n < 0) throw ParseError(0, "missing vertices line");
    return out;
}

inline std::string emit_graph_file(const Graph& g, std::optional<std::pair<Vertex, Vertex>> terminals = std::nullopt) {
    std::string s = "vertices " + std::to_string(g.order()) + "\n";
    for (const Edge& e : g.edges()) {
        s += "edge " + std::to_string(e.u) + " " + std::to_string(e.v);
        if (g.multiplicity(e.u, e.v) != 1) s += " " + std::to_string(g.multiplicity(e.u, e.v));
        s += "\n";
    }
    if (terminals) s += "terminals " + std::to_string(terminals->first) + " " + std::to_string(terminals->second) + "\n";
    return s;
}

inline CoverFile parse_cover_file(const std::string& text) {
    const auto lines = detail::tokenize(text);
    int n = -1;
    std::vector<int> sizes;
    std::vector<int> seen_list;
    struct PendingEdge {
        detail::Line line;
    };
    std::vector<PendingEdge> edges;
    CoverFile out;
    int last_line = 0;
    for (const auto& l : lines) {
        last_line = l.number;
        const std::string& d = l.tok[0];
        if (d == "vertices") {
            if (n >= 0) throw ParseError(l.number, "duplicate vertices line");
            n = detail::to_int(l, 1, 1, kMaxOrder, "vertex count");
            sizes.assign(static_cast<std::size_t>(n), 0);
            seen_list.assign(static_cast<std::size_t>(n), 0);
        } else if (d == "list") {
            if (n < 0) throw ParseError(l.number, "list before vertices");
            int v = detail::to_int(l, 1, 0, n - 1, "vertex");
            if (seen_list[v]) throw ParseError(l.number, "duplicate list for vertex " + std::to_string(v));
            seen_list[v] = 1;
            sizes[v] = detail::to_int(l, 2, 0, kMaxListSize, "list size");
            if (l.tok.size() > 3) throw ParseError(l.number, "trailing tokens");
        } else if (d == "edge") {
            if (n < 0) throw ParseError(l.number, "edge before vertices");
            edges.push_back({l});
        } else if (d == "terminals") {
            if (n < 0) throw ParseError(l.number, "terminals before vertices");
            out.terminals = {detail::to_int(l, 1, 0, n - 1, "vertex"), detail::to_int(l, 2, 0, n - 1, "vertex")};
            if (l.tok.size() > 3) throw ParseError(l.number, "trailing tokens");
        } else {
            throw ParseError(l.number, "unknown directive '" + d + "'");
        }
    }
    if (n < 0) throw ParseError(last_line, "missing vertices line");
    for (int v = 0; v < n; ++v)
        if (!seen_list[v]) throw ParseError(last_line, "missing list line for vertex " + std::to_string(v));
    Graph g(n);
    for (const auto& pe : edges) {
        const auto& l = pe.line;
        int u = detail::to_int(l, 1, 0, n - 1, "vertex"), v = detail::to_int(l, 2, 0, n - 1, "vertex");
        if (u == v) throw ParseError(l.number, "loop");
        if (g.adjacent(u, v)) throw ParseError(l.number, "duplicate edge");
        g.add_edge(u, v);
    }
    Cover c(g, sizes);
    for (const auto& pe : edges) {
        const auto& l = pe.line;
        int u = std::stoi(l.tok[1]), v = std::stoi(l.tok[2]);
        if (l.tok.size() < 4) throw ParseError(l.number, "missing bundle kind");
        const std::string& kind = l.tok[3];
        std::vector<Link> first, second;
        bool bar = false;
        for (std::size_t i = 4; i < l.tok.size(); ++i) {
            if (l.tok[i] == "|") {
                if (bar || kind != "union") throw ParseError(l.number, "unexpected '|'");
                bar = true;
                continue;
            }
            Link k = detail::parse_link(l, l.tok[i], sizes[u], sizes[v]);
            if (u > v) std::swap(k.a, k.b);
            (bar ? second : first).push_back(k);
        }
        Edge e(u, v);
        LinkBundle b;
        if (kind == "matching") b = make_matching(e, first);
        else if (kind == "k22") b = make_k22(e, first);
        else if (kind == "union") {
            if (!bar) throw ParseError(l.number, "union needs '|' between its parts");
            b = make_union(e, first, second);
        } else throw ParseError(l.number, "unknown bundle kind '" + kind + "'");
        if (!b.well_formed()) throw ParseError(l.number, "links do not fit bundle kind " + kind);
        c.set_bundle(b);
    }
    out.cover = std::move(c);
    return out;
}

inline std::string emit_cover_file(const Cover& c, std::optional<std::pair<Vertex, Vertex>> terminals = std::nullopt) {
    std::string s = "vertices " + std::to_string(c.order()) + "\n";
    for (int v = 0; v < c.order(); ++v) s += "list " + std::to_string(v) + " " + std::to_string(c.list_sizes[v]) + "\n";
    for (const auto& [e, b] : c.bundles) {
        s += "edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " " + kind_name(b.kind);
        switch (b.kind) {
            case BundleKind::Matching: s += detail::links_text(b.matching_links); break;
            case BundleKind::K22Part: s += detail::links_text(b.k22_links); break;
            case BundleKind::Union: s += detail::links_text(b.matching_links) + " |" + detail::links_text(b.k22_links); break;
        }
        s += "\n";
    }
    if (terminals) s += "terminals " + std::to_string(terminals->first) + " " + std::to_string(terminals->second) + "\n";
    return s;
}

inline std::string emit_colouring(const Colouring& phi) {
    std::string s = "COLOURING";
    for (int a : phi) s += " " + std::to_string(a);
    return s + "\n";
}

inline Colouring parse_colouring(const std::string& text) {
    auto lines = detail::tokenize(text);
    if (lines.size() != 1 || lines[0].tok[0] != "COLOURING")
        throw ParseError(lines.empty() ? 0 : lines[0].number, "expected one COLOURING line");
    Colouring phi;
    for (std::size_t i = 1; i < lines[0].tok.size(); ++i) {
        const std::string& t = lines[0].tok[i];
        if (t == "-1") phi.push_back(-1);
        else phi.push_back(detail::to_int(lines[0], i, 0, kMaxListSize, "node index"));
    }
    return phi;
}

} // namespace dpcolor
