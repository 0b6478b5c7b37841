#include <gtest/gtest.h>

#include "dpcolor/families.hpp"
#include "dpcolor/oracle.hpp"

using namespace dpcolor;

namespace {

Cover identity_cover(const Graph& g, int k) {
    std::vector<Link> id;
    for (int i = 0; i < k; ++i) id.push_back({i, i});
    Cover c(g, std::vector<int>(static_cast<std::size_t>(g.order()), k));
    for (const Edge& e : g.edges()) c.set_bundle(make_matching(e, id));
    return c;
}

// Plain backtracking-free enumeration over every assignment.
bool brute_colourable(const Cover& c) {
    const int n = c.order();
    std::vector<int> phi(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        if (c.list_sizes[v] == 0) return false;
    while (true) {
        if (check_colouring(c, phi)) return true;
        int v = 0;
        while (v < n && ++phi[v] == c.list_sizes[v]) phi[v++] = 0;
        if (v == n) return false;
    }
}

} // namespace

TEST(Oracle, EvenCycleIdentityColourable) {
    auto r = solve_exhaustive(identity_cover(cycle_graph(4), 2));
    ASSERT_EQ(r.status, OracleStatus::Colourable);
    EXPECT_TRUE(check_colouring(identity_cover(cycle_graph(4), 2), r.colouring));
}

TEST(Oracle, TriangleIdentityTwoColoursNone) {
    EXPECT_EQ(solve_exhaustive(identity_cover(complete_graph(3), 2)).status, OracleStatus::None);
}

TEST(Oracle, EmptyListNone) {
    Cover c(path_graph(3), {2, 0, 2});
    EXPECT_EQ(solve_exhaustive(c).status, OracleStatus::None);
}

TEST(Oracle, BudgetReported) {
    auto r = solve_exhaustive(identity_cover(complete_graph(7), 6), 10);
    EXPECT_EQ(r.status, OracleStatus::Budget);
}

TEST(Oracle, PinnedRespectsEndpoints) {
    Cover c = identity_cover(path_graph(3), 2);
    EXPECT_EQ(solve_pinned(c, 0, 0, 2, 1).status, OracleStatus::None);
    auto r = solve_pinned(c, 0, 0, 2, 0);
    ASSERT_EQ(r.status, OracleStatus::Colourable);
    EXPECT_EQ(r.colouring, (Colouring{0, 1, 0}));
}

TEST(Oracle, AgreesWithBruteForce) {
    KindPolicy any = [](const Edge&) {
        return std::vector<BundleKind>{BundleKind::Matching, BundleKind::K22Part, BundleKind::Union};
    };
    std::mt19937_64 rng(5);
    for (int it = 0; it < 200; ++it) {
        Graph g = wheel_graph(3 + static_cast<int>(rng() % 2));
        std::vector<int> sizes;
        for (int v = 0; v < g.order(); ++v) sizes.push_back(1 + static_cast<int>(rng() % 4));
        Cover c = random_cover(g, sizes, any, rng());
        EXPECT_EQ(solve_exhaustive(c).status == OracleStatus::Colourable, brute_colourable(c)) << it;
    }
}

TEST(Minor, Examples) {
    EXPECT_TRUE(has_minor(complete_graph(5), complete_graph(4)));
    EXPECT_FALSE(has_minor(cycle_graph(6), k24()));
    EXPECT_FALSE(has_minor(complete_bipartite(3, 3), k24()));
    EXPECT_TRUE(has_minor(complete_bipartite(2, 5), k24()));
    // the 3-cube contains K_{2,4} as a minor
    Graph cube(8);
    for (int v = 0; v < 8; ++v)
        for (int b = 0; b < 3; ++b)
            if (v < (v ^ (1 << b))) cube.add_edge(v, v ^ (1 << b));
    EXPECT_TRUE(has_minor(cube, k24()));
}

TEST(Minor, OuterplanarRecognition) {
    EXPECT_TRUE(is_outerplanar(cycle_graph(6)));
    EXPECT_FALSE(is_outerplanar(complete_graph(4)));
    EXPECT_FALSE(is_outerplanar(complete_bipartite(2, 3)));
}

TEST(Enumerate, SmallCounts) {
    EnumFilter two;
    two.min_connectivity = 2;
    auto n3 = enumerate_graphs(3, two);
    ASSERT_EQ(n3.size(), 1u);
    EXPECT_TRUE(is_complete(n3[0]));
    EXPECT_EQ(enumerate_graphs(4, two).size(), 3u);

    EnumFilter free5 = two;
    free5.minor_free_of = k24();
    EXPECT_EQ(enumerate_graphs(5, free5).size(), enumerate_graphs(5, two).size());

    EnumFilter conn;
    conn.min_connectivity = 1;
    EXPECT_EQ(enumerate_graphs(4, conn).size(), 6u);
    EXPECT_EQ(enumerate_graphs(5, conn).size(), 21u);
}

TEST(Subdividable, K5HasNone) { EXPECT_TRUE(maximal_subdividable_sets(complete_graph(5)).empty()); }

TEST(Subdividable, W4HasThreeClasses) {
    Graph w = wheel_graph(4);
    EXPECT_EQ(reduce_by_automorphism(w, maximal_subdividable_sets(w)).size(), 3u);
}

TEST(Subdividable, G723ExtraSet) {
    Graph g = gen_family(FamilyId::gnrs(7, 2, 3, false)).graph;
    auto sets = maximal_subdividable_sets(g);
    // v1v2, v4v5, v6v7, v3v7 with v_i = vertex i-1
    std::vector<Edge> extra{Edge(0, 1), Edge(3, 4), Edge(5, 6), Edge(2, 6)};
    std::sort(extra.begin(), extra.end());
    std::vector<Edge> spine{Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 4), Edge(4, 5), Edge(5, 6)};
    EXPECT_NE(std::find(sets.begin(), sets.end(), extra), sets.end());
    EXPECT_NE(std::find(sets.begin(), sets.end(), spine), sets.end());
}
