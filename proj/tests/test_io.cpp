#include <gtest/gtest.h>

#include "dpcolor/dot.hpp"
#include "dpcolor/io.hpp"
#include "dpcolor/suite.hpp"

using namespace dpcolor;

namespace {

int count(const std::string& s, const std::string& what) {
    int n = 0;
    for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
    return n;
}

int parse_error_line(const std::string& text) {
    try {
        parse_cover_file(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

} // namespace

TEST(Io, CoverRoundTrip) {
    KindPolicy any = [](const Edge&) {
        return std::vector<BundleKind>{BundleKind::Matching, BundleKind::K22Part, BundleKind::Union};
    };
    for (std::uint64_t s = 0; s < 100; ++s) {
        Graph g = wheel_graph(3 + static_cast<int>(s % 5));
        std::vector<int> sizes(static_cast<std::size_t>(g.order()), 2 + static_cast<int>(s % 4));
        Cover c = random_cover(g, sizes, any, s);
        std::string text = emit_cover_file(c);
        auto back = parse_cover_file(text);
        EXPECT_EQ(back.cover, c);
        EXPECT_EQ(emit_cover_file(back.cover), text);
    }
}

TEST(Io, TerminalsAndReversedEdges) {
    auto cf = parse_cover_file("vertices 2\nlist 0 2\nlist 1 3\nedge 1 0 k22 0:1 1:1\nterminals 0 1\n");
    ASSERT_TRUE(cf.terminals);
    // links are relative to the listed u = 1
    EXPECT_TRUE(cf.cover.bundle(0, 1).has_link(1, 0));
    EXPECT_TRUE(cf.cover.bundle(0, 1).has_link(1, 1));
}

TEST(Io, Errors) {
    EXPECT_EQ(parse_error_line("vertices 2\nlist 0 2\nedge 0 1 matching\n"), 3);
    EXPECT_EQ(parse_error_line("vertices 2\nlist 0 2\nlist 1 2\nedge 0 1 matching 0:2\n"), 4);
    EXPECT_EQ(parse_error_line("vertices 2\nbogus 1\n"), 2);
    EXPECT_EQ(parse_error_line("vertices 2\nlist 0 2\nlist 1 2\nedge 0 1 matching 0:0 0:1\n"), 4);
    EXPECT_EQ(parse_error_line("vertices 2\nlist 0 2\nlist 1 2\nedge 0 1 weird\n"), 4);
}

TEST(Io, GraphAndColouring) {
    Graph g = wheel_graph(4);
    auto gf = parse_graph_file(emit_graph_file(g));
    EXPECT_EQ(gf.graph, g);
    Colouring phi{0, 3, -1, 2};
    EXPECT_EQ(parse_colouring(emit_colouring(phi)), phi);
}

TEST(Dot, Shapes) {
    Graph k2(2);
    k2.add_edge(0, 1);
    Cover c(k2, {2, 2});
    c.set_bundle(make_k22(Edge(0, 1), {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
    std::string d = export_dot(c);
    EXPECT_EQ(count(d, "[label="), 4);
    EXPECT_EQ(count(d, " -- "), 4);
    EXPECT_EQ(export_dot(c), d);

    std::string w = export_dot(wheel_graph(4));
    EXPECT_EQ(count(w, "[label="), 5);

    // theta graph of three length-3 paths
    Graph t(8);
    for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 2}, {2, 3}, {3, 1}, {0, 4}, {4, 5}, {5, 1}, {0, 6}, {6, 7}, {7, 1}})
        t.add_edge(a, b);
    auto dec = decompose(t);
    ASSERT_TRUE(dec);
    EXPECT_EQ(count(export_dot(*dec, t), "subgraph cluster_"), 3);
}

TEST(Suite, DeterministicReports) {
    RunConfig cfg;
    cfg.instances = 40;
    cfg.max_n = 6;
    EXPECT_EQ(run_suite("coding", cfg).text(), run_suite("coding", cfg).text());
    RunConfig par = cfg;
    par.jobs = 4;
    EXPECT_EQ(run_suite("coding", cfg).text(), run_suite("coding", par).text());
    EXPECT_THROW(run_suite("nope", cfg), InvalidParams);
}

TEST(Suite, TheoremMainSmall) {
    RunConfig cfg;
    cfg.max_n = 6;
    cfg.instances = 5;
    auto rep = run_suite("theorem-main", cfg);
    EXPECT_TRUE(rep.ok()) << rep.text();
    EXPECT_EQ(rep.stats["oracle-free.permille"], 1000);
}

TEST(Suite, GdpBadCoverUncolourable) {
    for (Graph g : {complete_graph(4), cycle_graph(6), cycle_graph(5), path_graph(4)}) {
        Cover c = gdp_bad_cover(g);
        EXPECT_EQ(solve_exhaustive(c).status, OracleStatus::None);
        for (int v = 0; v < g.order(); ++v) EXPECT_EQ(c.list_sizes[v], g.degree(v));
    }
}
