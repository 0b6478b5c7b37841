#include <gtest/gtest.h>

#include "dpcolor/coding.hpp"
#include "dpcolor/oracle.hpp"

using namespace dpcolor;

namespace {

// path v1..v5 plus v1v3, v1v4 (0-indexed)
Graph fan5() {
    Graph g = path_graph(5);
    g.add_edge(0, 2);
    g.add_edge(0, 3);
    return g;
}

Graph single_edge() {
    Graph g(2);
    g.add_edge(0, 1);
    return g;
}

} // namespace

TEST(Outerplanar, RecognizeExamples) {
    auto k2 = recognize(single_edge(), 0, 1);
    ASSERT_TRUE(k2);
    EXPECT_TRUE(k2->trivial());
    EXPECT_TRUE(k2->broken);

    auto f = recognize(fan5(), 0, 4);
    ASSERT_TRUE(f);
    EXPECT_EQ(f->outer_path, (std::vector<Vertex>{0, 1, 2, 3, 4}));
    EXPECT_TRUE(f->broken);

    for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y) EXPECT_FALSE(recognize(complete_graph(4), x, y));
}

TEST(Outerplanar, InteriorDegree2) {
    EXPECT_EQ(interior_degree2_vertex(*recognize(path_graph(3), 0, 2)), 1);
    EXPECT_EQ(interior_degree2_vertex(*recognize(fan5(), 0, 4)), 1);
    Graph tri = complete_graph(3);  // x-u-y plus the terminal edge
    EXPECT_EQ(interior_degree2_vertex(*recognize(tri, 0, 2)), 1);
}

TEST(Outerplanar, ReduceStep) {
    auto p3 = reduce_step(*recognize(path_graph(3), 0, 2), 1);
    EXPECT_TRUE(p3.reduced.trivial());
    EXPECT_FALSE(p3.edge_existed);

    auto f = reduce_step(*recognize(fan5(), 0, 4), 1);
    EXPECT_EQ(f.reduced.order(), 4);
    EXPECT_TRUE(f.edge_existed);
    EXPECT_EQ(f.reduced.graph.size(), fan5().size() - 2);
    EXPECT_TRUE(recognize(f.reduced.graph, f.reduced.x, f.reduced.y));
}

TEST(Outerplanar, RandomTwoTerminal) {
    EXPECT_TRUE(random_two_terminal(2, 1).trivial());
    for (std::uint64_t s = 0; s < 50; ++s) {
        auto t = random_two_terminal(3 + static_cast<int>(s % 7), s);
        EXPECT_EQ(t.graph, random_two_terminal(3 + static_cast<int>(s % 7), s).graph);
        auto r = recognize(t.graph, t.x, t.y);
        ASSERT_TRUE(r);
        EXPECT_EQ(r->outer_path, t.outer_path);
    }
}

TEST(Star, ComplementaryMatchingsOnTwoNodes) {
    // u1=0, u=1, u2=2; |L(u)| = 2
    auto b1 = make_matching(Edge(0, 1), {{0, 0}, {1, 1}});
    auto b2 = make_matching(Edge(1, 2), {{0, 1}, {1, 0}});
    auto star = star_product(b1, 0, b2, 2, 2, 2, 2);
    EXPECT_EQ(star, (std::vector<Link>{{0, 0}, {1, 1}}));
    EXPECT_EQ(classify_star(star, 1, 1), StarShape::Matching);
}

TEST(Star, MatchingAndK12) {
    auto b1 = make_matching(Edge(0, 1), {{0, 0}});
    // node 0 of L(u2) joined to nodes 1 and 2 of L(u)
    auto b2 = make_k22(Edge(1, 2), {{1, 0}, {2, 0}});
    auto star = star_product(b1, 0, b2, 2, 3, 3, 3);
    EXPECT_LE(star.size(), 1u);
    EXPECT_NO_THROW(classify_star(star, b1.lambda(0), b2.lambda(2)));
}

TEST(Star, LargeListEmpty) {
    auto b1 = make_matching(Edge(0, 1), {{0, 0}, {1, 1}, {2, 2}});
    auto b2 = make_matching(Edge(1, 2), {{0, 0}, {1, 1}, {2, 2}});
    EXPECT_TRUE(star_product(b1, 0, b2, 2, 3, 3, 3).empty());
}

TEST(Star, ShapeViolationDetected) {
    std::vector<Link> three{{0, 0}, {1, 1}, {2, 2}};
    EXPECT_THROW(classify_star(three, 1, 1), ShapeViolation);
    std::vector<Link> k12_u2{{0, 0}, {1, 0}};  // centre 0 on the u2 side
    EXPECT_THROW(classify_star(k12_u2, 1, 2), ShapeViolation);
    EXPECT_EQ(classify_star(k12_u2, 2, 1), StarShape::K12AtU2);
}

TEST(ReduceCover, P3ComplementaryMatchings) {
    auto t = *recognize(path_graph(3), 0, 2);
    Cover c(t.graph, {2, 2, 2});
    c.set_bundle(make_matching(Edge(0, 1), {{0, 0}, {1, 1}}));
    c.set_bundle(make_matching(Edge(1, 2), {{0, 1}, {1, 0}}));
    auto r = reduce_cover(t, c);
    EXPECT_TRUE(r.reduced.trivial());
    const auto& b = r.cover.bundles.begin()->second;
    EXPECT_EQ(b.kind, BundleKind::Matching);
    EXPECT_EQ(b.all_links(), (std::vector<Link>{{0, 0}, {1, 1}}));
}

TEST(Coding, K2FullK22) {
    auto t = *recognize(single_edge(), 0, 1);
    Cover c(t.graph, {2, 2});
    c.set_bundle(make_k22(Edge(0, 1), {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
    auto r = compute_coding(t, c);
    EXPECT_EQ(r.coding.links.size(), 4u);
    EXPECT_EQ(r.coding.lambda_x, 2);
    EXPECT_EQ(r.coding.lambda_y, 2);
}

TEST(Coding, P3EmptyBundles) {
    auto t = *recognize(path_graph(3), 0, 2);
    Cover c(t.graph, {1, 2, 1});
    auto r = compute_coding(t, c);
    EXPECT_TRUE(r.coding.links.empty());
    EXPECT_EQ(extend_colouring(r.stack, 0, 0), (Colouring{0, 0, 0}));
}

TEST(Coding, ReplayPicksFreeMiddleNode) {
    auto t = *recognize(path_graph(3), 0, 2);
    Cover c(t.graph, {2, 2, 2});
    c.set_bundle(make_matching(Edge(0, 1), {{0, 0}, {1, 1}}));
    c.set_bundle(make_matching(Edge(1, 2), {{0, 0}, {1, 1}}));
    auto r = compute_coding(t, c);
    // phi(x)=0 forbids node 0 of L(u); phi(y)=1 forbids node 1: blocked
    EXPECT_TRUE(r.coding.blocks(0, 1));
    EXPECT_EQ(extend_colouring(r.stack, 0, 0), (Colouring{0, 1, 0}));
}

TEST(Coding, RejectsInvalidCover) {
    Graph g = path_graph(4);
    g.add_edge(0, 2);
    auto t = *recognize(g, 0, 3);
    Cover c(t.graph, {5, 5, 5, 5});
    c.set_bundle(make_k22(Edge(0, 2), {{0, 0}, {0, 1}}));  // chord carries a K22 part
    EXPECT_THROW(compute_coding(t, c), PreconditionViolated);
}

// Every non-link must extend; the oracle confirms each pinned pair.
TEST(Coding, RandomInstancesAgainstOracle) {
    for (std::uint64_t s = 0; s < 300; ++s) {
        const int n = 3 + static_cast<int>(s % 7);
        auto t = random_two_terminal(n, s);
        Cover c = random_valid_cover(t, s * 31 + 7, s % 2 == 0);
        CodingResult r;
        ASSERT_NO_THROW(r = compute_coding(t, c)) << s;
        EXPECT_TRUE(detail::is_k22_shape(r.coding.links));
        EXPECT_LE(r.coding.lambda_x, lambda_vertex(c, t.x));
        EXPECT_LE(r.coding.lambda_y, lambda_vertex(c, t.y));
        for (int a = 0; a < c.list_sizes[t.x]; ++a)
            for (int b = 0; b < c.list_sizes[t.y]; ++b) {
                if (r.coding.blocks(a, b)) continue;
                Colouring phi = extend_colouring(r.stack, a, b);
                EXPECT_TRUE(check_colouring(c, phi)) << s;
                EXPECT_EQ(solve_pinned(c, t.x, a, t.y, b).status, OracleStatus::Colourable) << s;
            }
    }
}
