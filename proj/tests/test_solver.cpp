#include <gtest/gtest.h>

#include "dpcolor/solver.hpp"

using namespace dpcolor;

namespace {

Graph single_edge() {
    Graph g(2);
    g.add_edge(0, 1);
    return g;
}

Graph theta(int len) {
    Graph g(2 + 3 * (len - 1));
    int next = 2;
    for (int p = 0; p < 3; ++p) {
        int prev = 0;
        for (int i = 1; i < len; ++i) {
            g.add_edge(prev, next);
            prev = next++;
        }
        g.add_edge(prev, 1);
    }
    return g;
}

// maximal outerplanar fan: path 0..n-2 plus apex n-1
Graph fan(int n) {
    Graph g(n);
    for (int i = 0; i + 2 < n; ++i) g.add_edge(i, i + 1);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, n - 1);
    return g;
}

Cover core_cover(const Graph& g, const std::vector<Edge>& F, std::uint64_t seed) {
    std::set<Edge> fs(F.begin(), F.end());
    KindPolicy kinds = [fs](const Edge& e) {
        if (fs.count(e)) return std::vector<BundleKind>{BundleKind::Matching, BundleKind::K22Part, BundleKind::Union};
        return std::vector<BundleKind>{BundleKind::Matching};
    };
    Cover c = random_cover(g, std::vector<int>(static_cast<std::size_t>(g.order()), 1), kinds, seed);
    // grow lists to min(5, λ), then re-draw links over the larger lists
    for (int v = 0; v < g.order(); ++v) c.list_sizes[v] = std::max(1, ell(c, v));
    std::vector<int> sizes = c.list_sizes;
    Cover d = random_cover(g, sizes, kinds, seed + 1);
    for (int v = 0; v < g.order(); ++v) d.list_sizes[v] = std::max(d.list_sizes[v], ell(d, v));
    return d;
}

} // namespace

TEST(Removals, C4ListsThreeAllRemoved) {
    Cover c = random_cover(cycle_graph(4), {3, 3, 3, 3}, matchings_only(), 2);
    EXPECT_EQ(greedy_removals(c).size(), 4u);
}

TEST(Removals, TightCoverNoneRemoved) {
    Cover c = random_cover(cycle_graph(5), {2, 2, 2, 2, 2}, matchings_only(), 2);
    EXPECT_TRUE(greedy_removals(c).empty());
}

TEST(Removals, SlackVertexFirst) {
    Cover c = random_cover(cycle_graph(5), {2, 2, 3, 2, 2}, matchings_only(), 2);
    auto seq = greedy_removals(c);
    ASSERT_FALSE(seq.empty());
    EXPECT_EQ(seq.front(), 2);
    EXPECT_EQ(seq.size(), 5u);
}

TEST(Path, SingleEdgeMatching) {
    Cover c(single_edge(), {2, 2});
    c.set_bundle(make_matching(Edge(0, 1), {{0, 0}, {1, 1}}));
    Colouring phi = colour_path(c, {0, 1});
    EXPECT_TRUE(check_colouring(c, phi));
}

TEST(Path, P4UnionBundles) {
    Graph g = path_graph(4);
    Cover c(g, {4, 4, 4, 4});
    for (const Edge& e : g.edges()) c.set_bundle(make_union(e, {{2, 2}}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
    Colouring phi = colour_path(c, {0, 1, 2, 3});
    EXPECT_TRUE(check_colouring(c, phi));
    EXPECT_EQ(solve_exhaustive(c).status, OracleStatus::Colourable);
}

TEST(Path, EndpointRuleViolated) {
    Graph g = path_graph(3);
    Cover c(g, {2, 3, 2});
    // K_{1,2} parts centred in L(1): λ = 2 at both ends
    c.set_bundle(make_k22(Edge(0, 1), {{0, 0}, {1, 0}}));
    c.set_bundle(make_k22(Edge(1, 2), {{1, 0}, {1, 1}}));
    EXPECT_THROW(colour_path(c, {0, 1, 2}), HypothesisViolated);
}

TEST(Tight, IdentityForDegreeMatchings) {
    Graph g = wheel_graph(4);
    std::vector<int> deg;
    for (int v = 0; v < g.order(); ++v) deg.push_back(g.degree(v));
    Cover c = random_cover(g, deg, matchings_only(), 3);
    auto t = normalize_tight_cover(c);
    ASSERT_TRUE(t);
    EXPECT_EQ(t->cover, c);
    for (const auto& [e, m] : t->multigraph.multiplicities()) EXPECT_EQ(m, 1);
}

TEST(Tight, K12LeafTrimmed) {
    Graph g = complete_graph(3);
    Cover c(g, {2, 3, 2});
    // edge 0-1: K_{1,2} centred at node 0 of L(0), so λ is 1 at 0 and 2 at 1
    c.set_bundle(make_k22(Edge(0, 1), {{0, 0}, {0, 1}}));
    ASSERT_EQ(lambda_vertex(c, 1), 3);
    auto t = normalize_tight_cover(c);
    ASSERT_TRUE(t);
    EXPECT_EQ(t->cover.list_sizes[1], 2);
    const auto& b = t->cover.bundle(0, 1);
    EXPECT_EQ(b.lambda(0), b.lambda(1));
}

TEST(Tight, FiveBelowLambdaRejected) {
    Graph g = wheel_graph(6);
    Cover c(g, {3, 3, 3, 3, 3, 3, 5});
    EXPECT_FALSE(normalize_tight_cover(c));
}

TEST(SolveCore, W4WithRimSpokeSubset) {
    Graph g = wheel_graph(4);
    std::vector<Edge> F{Edge(0, 1), Edge(1, 2), Edge(0, 4)};
    for (std::uint64_t s = 0; s < 30; ++s) {
        Cover c = core_cover(g, F, s);
        ASSERT_TRUE(is_f_valid(c, F));
        auto r = solve_core(g, F, c);
        EXPECT_TRUE(check_colouring(c, r.phi));
        EXPECT_EQ(solve_exhaustive(c).status, OracleStatus::Colourable);
    }
}

TEST(SolveCore, SporadicDWithTableSet) {
    auto id = FamilyId::named(SporadicName::D);
    Graph g = gen_family(id).graph;
    auto F = known_subdividable_sets(id).front();
    for (std::uint64_t s = 0; s < 30; ++s) {
        Cover c = core_cover(g, F, s);
        auto r = solve_core(g, F, c);
        EXPECT_TRUE(check_colouring(c, r.phi));
    }
}

TEST(SolveCore, K5OneNonPerfectMatching) {
    Graph g = complete_graph(5);
    Cover c(g, {4, 4, 4, 4, 4});
    for (const Edge& e : g.edges()) c.set_bundle(make_matching(e, {{0, 0}, {1, 1}, {2, 2}, {3, 3}}));
    c.set_bundle(make_matching(Edge(0, 1), {{0, 0}, {1, 1}, {2, 2}}));
    ASSERT_TRUE(is_f_valid(c, {}));
    auto r = solve_core(g, {}, c);
    EXPECT_TRUE(check_colouring(c, r.phi));
}

TEST(Solve, CycleRejected) {
    Cover c = random_cover(cycle_graph(5), {2, 2, 2, 2, 2}, matchings_only(), 1);
    EXPECT_THROW(solve(c), PreconditionViolated);
}

TEST(Solve, CompleteAndShortListsRejected) {
    Graph k4 = complete_graph(4);
    EXPECT_THROW(solve(random_cover(k4, truncated_degree(k4), matchings_only(), 1)), PreconditionViolated);
    Graph w = wheel_graph(5);
    auto sizes = truncated_degree(w);
    sizes[5] = 4;
    EXPECT_THROW(solve(random_cover(w, sizes, matchings_only(), 1)), PreconditionViolated);
}

TEST(Solve, ThetaOfLengthThreePaths) {
    Graph g = theta(3);
    for (std::uint64_t s = 0; s < 30; ++s) {
        Cover c = random_cover(g, truncated_degree(g), matchings_only(), s);
        auto r = solve(c);
        EXPECT_TRUE(check_colouring(c, r.colouring));
        EXPECT_EQ(r.trace.kind, DecompositionKind::ThreeGadget);
    }
}

TEST(Solve, MaximalOuterplanarFan) {
    Graph g = fan(7);
    for (std::uint64_t s = 0; s < 30; ++s) {
        Cover c = random_cover(g, truncated_degree(g), matchings_only(), s);
        auto r = solve(c);
        EXPECT_TRUE(check_colouring(c, r.colouring));
        EXPECT_EQ(r.trace.kind, DecompositionKind::Outerplanar);
        EXPECT_EQ(replay_trace(r.trace, g.order()), r.colouring);
    }
}

// Every admissible graph up to six vertices; the oracle fallback is off.
TEST(Solve, ExhaustiveSmall) {
    EnumFilter f;
    f.min_connectivity = 2;
    f.minor_free_of = k24();
    f.exclude_cycles = true;
    f.exclude_complete = true;
    SolveOptions opt;
    opt.allow_oracle = false;
    for (int n = 4; n <= 6; ++n)
        for (const Graph& g : enumerate_graphs(n, f))
            for (std::uint64_t s = 0; s < 20; ++s) {
                Cover c = random_cover(g, truncated_degree(g), matchings_only(), s);
                auto r = solve(c, opt);
                EXPECT_TRUE(check_colouring(c, r.colouring));
            }
}
