#include <gtest/gtest.h>

#include "dpcolor/cover.hpp"
#include "dpcolor/oracle.hpp"

using namespace dpcolor;

namespace {

Graph single_edge() {
    Graph g(2);
    g.add_edge(0, 1);
    return g;
}

std::vector<Link> full_k22() { return {{0, 0}, {0, 1}, {1, 0}, {1, 1}}; }

} // namespace

TEST(Graph, BasicShapes) {
    EXPECT_TRUE(is_cycle(cycle_graph(5)));
    EXPECT_TRUE(is_complete(complete_graph(4)));
    EXPECT_EQ(connectivity(complete_graph(5)), 3);  // capped at 3
    EXPECT_EQ(connectivity(cycle_graph(6)), 2);
    EXPECT_EQ(connectivity(path_graph(4)), 1);
    EXPECT_EQ(block_tree(path_graph(4)).blocks.size(), 3u);
}

TEST(Graph, GdpAndGallaiTrees) {
    EXPECT_TRUE(is_gdp_tree(cycle_graph(4)));
    EXPECT_FALSE(is_gallai_tree(cycle_graph(4)));
    EXPECT_TRUE(is_gallai_tree(cycle_graph(5)));
    EXPECT_TRUE(is_gdp_tree(complete_graph(5)));
    EXPECT_FALSE(is_gdp_tree(wheel_graph(4)));
    EXPECT_TRUE(is_gdp_tree(path_graph(5)));
}

TEST(Lambda, MatchingIsOneOnBothSides) {
    auto b = make_matching(Edge(0, 1), {{0, 0}, {1, 1}, {2, 2}});
    EXPECT_EQ(lambda_edge(b, 0), 1);
    EXPECT_EQ(lambda_edge(b, 1), 1);
}

TEST(Lambda, K12CentreSideIsOne) {
    // node 0 of L(0) has degree 2
    auto b = make_k22(Edge(0, 1), {{0, 0}, {0, 1}});
    EXPECT_EQ(lambda_edge(b, 0), 1);
    EXPECT_EQ(lambda_edge(b, 1), 2);
}

TEST(Lambda, UnionOfLinkAndFullK22IsThree) {
    auto b = make_union(Edge(0, 1), {{2, 2}}, full_k22());
    EXPECT_TRUE(b.well_formed());
    EXPECT_EQ(lambda_edge(b, 0), 3);
    EXPECT_EQ(lambda_edge(b, 1), 3);
}

TEST(Lambda, VertexSumsAndCap) {
    // star K_{1,3}: centre 0
    Graph g(4);
    for (int v = 1; v <= 3; ++v) g.add_edge(0, v);
    Cover c(g, {6, 3, 3, 3});
    EXPECT_EQ(lambda_vertex(c, 0), 3);
    EXPECT_EQ(ell(c, 0), 3);
    c.set_bundle(make_union(Edge(0, 1), {{2, 2}}, full_k22()));
    EXPECT_EQ(lambda_vertex(c, 0), 5);
    EXPECT_EQ(ell(c, 0), 5);

    Graph h(5);
    for (int v = 1; v <= 4; ++v) h.add_edge(0, v);
    Cover d(h, {6, 2, 2, 2, 2});
    d.set_bundle(make_k22(Edge(0, 1), full_k22()));
    d.set_bundle(make_k22(Edge(0, 2), full_k22()));
    EXPECT_EQ(lambda_vertex(d, 0), 6);
    EXPECT_EQ(ell(d, 0), 5);
}

TEST(Cover, IsSimple) {
    Graph g = cycle_graph(4);
    Cover c = random_cover(g, {3, 3, 3, 3}, matchings_only(), 4);
    EXPECT_TRUE(is_simple(c));
    EXPECT_TRUE(is_simple(Cover(g, {2, 2, 2, 2})));
    c.set_bundle(make_k22(Edge(0, 1), {{0, 0}, {0, 1}}));
    EXPECT_FALSE(is_simple(c));
}

TEST(Cover, ValidTwoTerminalExamples) {
    Cover k2(single_edge(), {2, 2});
    k2.set_bundle(make_k22(Edge(0, 1), full_k22()));
    EXPECT_TRUE(is_valid_two_terminal(k2, 0, 1, {0, 1}));

    Cover p3(path_graph(3), {1, 2, 1});
    EXPECT_TRUE(is_valid_two_terminal(p3, 0, 2, {0, 1, 2}));

    // fan x=0 .. y=3 with chord 0-2; the chord must carry a matching
    Graph f = path_graph(4);
    f.add_edge(0, 2);
    Cover fc(f, {4, 4, 4, 4});
    EXPECT_TRUE(is_valid_two_terminal(fc, 0, 3, {0, 1, 2, 3}));
    fc.set_bundle(make_k22(Edge(0, 2), {{0, 0}, {0, 1}}));
    EXPECT_FALSE(is_valid_two_terminal(fc, 0, 3, {0, 1, 2, 3}));
}

TEST(Cover, FValidExamples) {
    Graph w = wheel_graph(4);
    Cover c = random_cover(w, truncated_degree(w), matchings_only(), 1);
    EXPECT_TRUE(is_f_valid(c, {}));

    // K_4, perfect identity matchings, lists of size 3
    Graph k4 = complete_graph(4);
    Cover p(k4, {3, 3, 3, 3});
    for (const Edge& e : k4.edges()) p.set_bundle(make_matching(e, {{0, 0}, {1, 1}, {2, 2}}));
    EXPECT_FALSE(is_f_valid(p, {}));
    EXPECT_TRUE(is_f_valid(p, {}, false));

    Cover u = c;
    const Edge e = w.edges().front();
    u.list_sizes[e.u] = u.list_sizes[e.v] = 5;
    u.set_bundle(make_union(e, {{2, 2}}, full_k22()));
    EXPECT_FALSE(is_f_valid(u, {}));
}

TEST(Cover, CheckColouring) {
    Graph tri = complete_graph(3);
    Cover empty(tri, {1, 1, 1});
    EXPECT_TRUE(check_colouring(empty, {0, 0, 0}));

    Cover k2(single_edge(), {2, 2});
    k2.set_bundle(make_k22(Edge(0, 1), full_k22()));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) EXPECT_FALSE(check_colouring(k2, {a, b}));

    Cover id(tri, {3, 3, 3});
    for (const Edge& e : tri.edges()) id.set_bundle(make_matching(e, {{0, 0}, {1, 1}, {2, 2}}));
    EXPECT_TRUE(check_colouring(id, {0, 1, 2}));
    EXPECT_FALSE(check_colouring(id, {0, 0, 2}));
}

TEST(Cover, DeleteNodesReclassifies) {
    Cover c(single_edge(), {3, 3});
    c.set_bundle(make_union(Edge(0, 1), {{2, 2}}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
    // kill both K_{2,2} nodes on side 0
    auto r = delete_nodes(c, {{0, 0}, {0, 1}});
    EXPECT_EQ(r.cover.bundle(0, 1).kind, BundleKind::Matching);
    EXPECT_EQ(r.cover.list_sizes[0], 1);
    EXPECT_EQ(r.order_map[0], std::vector<int>{2});

    EXPECT_EQ(delete_nodes(c, {}).cover, c);
}

TEST(Cover, RestrictTriangleToEdge) {
    Cover c = random_cover(complete_graph(3), {2, 2, 2}, matchings_only(), 3);
    Cover r = restrict(c, {0, 2});
    EXPECT_EQ(r.order(), 2);
    EXPECT_EQ(r.bundles.size(), 1u);
    EXPECT_EQ(r.bundle(0, 1), [&] {
        LinkBundle b = c.bundle(0, 2);
        b.edge = Edge(0, 1);
        return b;
    }());
}

TEST(Cover, RandomCoverDeterministic) {
    Graph w = wheel_graph(5);
    KindPolicy any = [](const Edge&) {
        return std::vector<BundleKind>{BundleKind::Matching, BundleKind::K22Part, BundleKind::Union};
    };
    EXPECT_EQ(random_cover(w, {5, 5, 5, 5, 5, 5}, any, 9), random_cover(w, {5, 5, 5, 5, 5, 5}, any, 9));
    Cover c = random_cover(w, truncated_degree(w), matchings_only(), 9);
    EXPECT_TRUE(is_simple(c));
    EXPECT_TRUE(c.well_formed());
    for (int v = 0; v < w.order(); ++v) EXPECT_GE(c.list_sizes[v], ell(c, v));
}

// Removing a vertex whose list beats its weighted degree never changes
// colourability; checked against the oracle on random mixed covers.
TEST(Cover, RemovableVertexPreservesColourability) {
    std::mt19937_64 rng(17);
    KindPolicy any = [](const Edge&) {
        return std::vector<BundleKind>{BundleKind::Matching, BundleKind::K22Part, BundleKind::Union};
    };
    int checked = 0;
    for (int it = 0; it < 300; ++it) {
        Graph g = wheel_graph(4 + static_cast<int>(rng() % 3));
        std::vector<int> sizes;
        for (int v = 0; v < g.order(); ++v) sizes.push_back(1 + static_cast<int>(rng() % (g.degree(v) + 2)));
        Cover c = random_cover(g, sizes, any, rng());
        for (int v = 0; v < g.order(); ++v) {
            if (c.list_sizes[v] <= lambda_vertex(c, v)) continue;
            std::vector<Vertex> rest;
            for (int w = 0; w < g.order(); ++w)
                if (w != v) rest.push_back(w);
            EXPECT_EQ(solve_exhaustive(c).status, solve_exhaustive(restrict(c, rest)).status);
            ++checked;
            break;
        }
    }
    EXPECT_GT(checked, 50);
}
