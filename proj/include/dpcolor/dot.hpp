#pragma once

#include <string>

#include "dpcolor/cover.hpp"
#include "dpcolor/graph.hpp"
#include "dpcolor/structure.hpp"

namespace dpcolor {

inline std::string export_dot(const Graph& g, const std::string& name = "G") {
    std::string s = "graph " + name + " {\n";
    for (int v = 0; v < g.order(); ++v) s += "  v" + std::to_string(v) + " [label=\"" + std::to_string(v) + "\"];\n";
    for (const Edge& e : g.edges()) {
        s += "  v" + std::to_string(e.u) + " -- v" + std::to_string(e.v);
        if (g.multiplicity(e.u, e.v) > 1) s += " [label=\"x" + std::to_string(g.multiplicity(e.u, e.v)) + "\"]";
        s += ";\n";
    }
    return s + "}\n";
}

/// One cluster per vertex holding its list nodes; links are the edges.
/// K_{2,2}-part links are dashed.
inline std::string export_dot(const Cover& c, const std::string& name = "cover") {
    auto node = [](int v, int i) { return "n" + std::to_string(v) + "_" + std::to_string(i); };
    std::string s = "graph " + name + " {\n  node [shape=circle, width=0.3];\n";
    for (int v = 0; v < c.order(); ++v) {
        s += "  subgraph cluster_" + std::to_string(v) + " {\n    label=\"L(" + std::to_string(v) + ")\";\n";
        for (int i = 0; i < c.list_sizes[v]; ++i) s += "    " + node(v, i) + " [label=\"" + std::to_string(i) + "\"];\n";
        s += "  }\n";
    }
    for (const auto& [e, b] : c.bundles) {
        for (const Link& l : b.matching_links) s += "  " + node(e.u, l.a) + " -- " + node(e.v, l.b) + ";\n";
        for (const Link& l : b.k22_links) s += "  " + node(e.u, l.a) + " -- " + node(e.v, l.b) + " [style=dashed];\n";
    }
    return s + "}\n";
}

/// Input graph with one cluster per gadget interior; core or terminals bold.
inline std::string export_dot(const Decomposition& d, const Graph& g, const std::string& name = "decomposition") {
    std::string s = "graph " + name + " {\n";
    std::vector<int> owner(static_cast<std::size_t>(g.order()), -1);
    const auto& parts = d.kind == DecompositionKind::CoreGadgets ? d.gadgets : d.parts;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        s += "  subgraph cluster_" + std::to_string(i) + " {\n    label=\"gadget " + std::to_string(parts[i].x()) + "-" +
             std::to_string(parts[i].y()) + "\";\n";
        for (Vertex v : parts[i].vertices)
            if (v != parts[i].x() && v != parts[i].y()) {
                owner[v] = static_cast<int>(i);
                s += "    v" + std::to_string(v) + ";\n";
            }
        s += "  }\n";
    }
    for (int v = 0; v < g.order(); ++v)
        if (owner[v] < 0) s += "  v" + std::to_string(v) + " [style=bold];\n";
    for (const Edge& e : g.edges()) s += "  v" + std::to_string(e.u) + " -- v" + std::to_string(e.v) + ";\n";
    return s + "}\n";
}

} // namespace dpcolor
