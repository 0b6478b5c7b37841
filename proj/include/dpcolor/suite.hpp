#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "dpcolor/coding.hpp"
#include "dpcolor/io.hpp"
#include "dpcolor/oracle.hpp"
#include "dpcolor/solver.hpp"
#include "dpcolor/structure.hpp"

namespace dpcolor {

/// Suite parameters; zero means "the suite's default".
struct RunConfig {
    std::uint64_t seed = 1;
    std::uint64_t oracle_budget = 100'000'000;
    int max_n = 0;
    int instances = 0;
    int jobs = 1;
    std::string output;  // directory for materialized instances (optional)
};

struct SuiteReport {
    std::string name;
    long passed = 0;
    long failed = 0;
    std::map<std::string, long> stats;
    std::vector<std::string> lines;

    bool ok() const { return failed == 0; }

    std::string text() const {
        std::string s = "suite " + name + "\n";
        for (const auto& l : lines) s += l + "\n";
        for (const auto& [k, v] : stats) s += "stat " + k + " " + std::to_string(v) + "\n";
        s += "passed " + std::to_string(passed) + " failed " + std::to_string(failed) + "\n";
        s += std::string("RESULT ") + (ok() ? "PASS" : "FAIL") + "\n";
        return s;
    }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> v{"theorem-main", "coding",  "families", "subdividable",
                                            "tightness",    "degree-dp", "removal"};
    return v;
}

namespace detail {

/// Per-instance seed derived from the run seed (splitmix64 step).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Run f(0..count-1) on `jobs` threads; results kept in index order.
template <class R>
std::vector<R> parallel_map(int count, int jobs, const std::function<R(int)>& f) {
    std::vector<R> out(static_cast<std::size_t>(count));
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back([&, j] {
            for (int i = j; i < count; i += jobs) out[i] = f(i);
        });
    for (auto& t : pool) t.join();
    return out;
}

inline std::string materialize(const RunConfig& cfg, const std::string& id, const std::string& text) {
    if (cfg.output.empty()) return id;
    std::filesystem::create_directories(cfg.output);
    std::string path = (std::filesystem::path(cfg.output) / (id + ".txt")).string();
    std::ofstream(path) << text;
    return path;
}

struct Outcome {
    bool ok = true;
    std::string line;
    std::vector<std::string> tags;
};

inline void absorb(SuiteReport& rep, const std::vector<Outcome>& outs) {
    for (const auto& o : outs) {
        (o.ok ? rep.passed : rep.failed)++;
        if (!o.line.empty()) rep.lines.push_back(o.line);
        for (const auto& t : o.tags) rep.stats[t]++;
    }
}

inline EnumFilter theorem_filter() {
    EnumFilter f;
    f.min_connectivity = 2;
    f.minor_free_of = k24();
    f.exclude_cycles = true;
    f.exclude_complete = true;
    return f;
}

} // namespace detail

// ---------------------------------------------------------------------------

/// Every 2-connected K_{2,4}-minor-free graph on 4..max_n vertices (not a
/// cycle, not complete) with `instances` random simple min(5,d)-covers.
inline SuiteReport suite_theorem_main(const RunConfig& cfg) {
    SuiteReport rep;
    rep.name = "theorem-main";
    const int max_n = cfg.max_n ? cfg.max_n : 7;
    const int per = cfg.instances ? cfg.instances : 50;
    struct Job {
        Graph g;
        std::string id;
    };
    std::vector<Job> jobs;
    for (int n = 4; n <= max_n; ++n) {
        auto gs = enumerate_graphs(n, detail::theorem_filter());
        rep.stats["graphs.n" + std::to_string(n)] = static_cast<long>(gs.size());
        for (std::size_t i = 0; i < gs.size(); ++i) jobs.push_back({gs[i], "n" + std::to_string(n) + "-g" + std::to_string(i)});
    }
    SolveOptions opt;
    opt.oracle_budget = cfg.oracle_budget;
    std::uint64_t idx = 0;
    std::vector<std::uint64_t> base;
    for (std::size_t j = 0; j < jobs.size(); ++j, idx += static_cast<std::uint64_t>(per)) base.push_back(idx);
    auto outs = detail::parallel_map<std::vector<detail::Outcome>>(
        static_cast<int>(jobs.size()), cfg.jobs, [&](int j) {
            std::vector<detail::Outcome> res;
            const Graph& g = jobs[j].g;
            for (int k = 0; k < per; ++k) {
                auto c = random_cover(g, truncated_degree(g), matchings_only(), detail::derive_seed(cfg.seed, base[j] + k));
                std::string id = jobs[j].id + "-s" + std::to_string(k);
                detail::Outcome o;
                try {
                    auto r = solve(c, opt);
                    o.tags.push_back("method." + r.trace.method);
                    o.tags.push_back(std::string("case.") + decomposition_kind_name(r.trace.kind));
                    if (!check_colouring(c, r.colouring)) throw InvariantBreach("colouring fails the check");
                } catch (const OracleBudget&) {
                    o.ok = false;
                    o.line = "instance " + detail::materialize(cfg, id, emit_cover_file(c)) + " BUDGET";
                    o.tags.push_back("budget");
                } catch (const std::exception& e) {
                    o.ok = false;
                    o.line = "instance " + detail::materialize(cfg, id, emit_cover_file(c)) + " FAIL " + e.what();
                }
                res.push_back(o);
            }
            return res;
        });
    for (const auto& o : outs) detail::absorb(rep, o);
    long oracle = rep.stats.count("method.oracle") ? rep.stats["method.oracle"] : 0;
    rep.stats["oracle-free.permille"] = rep.passed ? (1000 * (rep.passed - oracle)) / rep.passed : 0;
    return rep;
}

/// Check one coding: shape, weights, and every non-link extends.
inline detail::Outcome check_coding_instance(const TwoTerminal& t, const Cover& c, const std::string& id,
                                            const RunConfig& cfg) {
    detail::Outcome o;
    auto fail = [&](const std::string& why) {
        o.ok = false;
        std::string text = emit_cover_file(c, std::pair<Vertex, Vertex>{t.x, t.y});
        o.line = "instance " + detail::materialize(cfg, id, text) + " FAIL " + why;
    };
    try {
        auto r = compute_coding(t, c);
        const Coding& cd = r.coding;
        if (!detail::is_k22_shape(cd.links) || cd.links.size() > 4) return fail("coding is not a subgraph of K_{2,2}"), o;
        if (cd.lambda_x > lambda_vertex(c, t.x) || cd.lambda_y > lambda_vertex(c, t.y))
            return fail("coding weight exceeds the terminal weight"), o;
        for (int a = 0; a < c.list_sizes[t.x]; ++a)
            for (int b = 0; b < c.list_sizes[t.y]; ++b) {
                if (cd.blocks(a, b)) continue;
                Colouring phi = extend_colouring(r.stack, a, b);
                if (!check_colouring(c, phi) || phi[t.x] != a || phi[t.y] != b) return fail("replay gives a bad colouring"), o;
                auto p = solve_pinned(c, t.x, a, t.y, b, cfg.oracle_budget);
                if (p.status != OracleStatus::Colourable) return fail("oracle disagrees on a non-link"), o;
            }
        o.tags.push_back("links." + std::to_string(cd.links.size()));
        int deleted = 0;
        for (const auto& s : r.stack.steps) {
            o.tags.push_back("case." + std::to_string(s.star_case));
            deleted += !s.deleted.empty();
        }
        if (deleted) o.tags.push_back("steps-with-deletion");
    } catch (const ShapeViolation& e) {
        fail(std::string("ShapeViolation ") + e.what());
    } catch (const ValidityLost& e) {
        fail(std::string("ValidityLost ") + e.what());
    } catch (const std::exception& e) {
        fail(e.what());
    }
    return o;
}

/// Random broken gadgets with 3..max_n vertices and random valid covers.
inline SuiteReport suite_coding(const RunConfig& cfg) {
    SuiteReport rep;
    rep.name = "coding";
    const int max_n = cfg.max_n ? cfg.max_n : 9;
    const int count = cfg.instances ? cfg.instances : 1000;
    auto outs = detail::parallel_map<detail::Outcome>(count, cfg.jobs, [&](int i) {
        const int n = 3 + i % (max_n - 2);
        const std::uint64_t s = detail::derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
        TwoTerminal t = random_two_terminal(n, s);
        Cover c = random_valid_cover(t, s ^ 0x5bd1e995ULL, i % 2 == 0);
        return check_coding_instance(t, c, "coding-" + std::to_string(i), cfg);
    });
    detail::absorb(rep, outs);
    return rep;
}

/// Enumerated 3-connected K_{2,4}-minor-free graphs versus generated members.
inline SuiteReport suite_families(const RunConfig& cfg) {
    SuiteReport rep;
    rep.name = "families";
    const int max_n = cfg.max_n ? cfg.max_n : 8;
    std::map<int, std::set<std::vector<Mask>>> gen;
    for (const FamilyId& id : family_members(max_n)) {
        Graph g = gen_family(id).graph;
        bool ok = connectivity(g) >= 3 && is_k24_minor_free(g);
        if (!ok) {
            rep.failed++;
            rep.lines.push_back("member " + id.name() + " FAIL not 3-connected or has a K_{2,4} minor");
        }
        gen[g.order()].insert(canonical_form(g).code);
    }
    for (int n = 4; n <= max_n; ++n) {
        EnumFilter f;
        f.min_connectivity = 3;
        f.minor_free_of = k24();
        std::set<std::vector<Mask>> found;
        for (const Graph& g : enumerate_graphs(n, f)) found.insert(canonical_form(g).code);
        bool eq = found == gen[n];
        (eq ? rep.passed : rep.failed)++;
        rep.lines.push_back("n " + std::to_string(n) + " enumerated " + std::to_string(found.size()) + " generated " +
                            std::to_string(gen[n].size()) + (eq ? " EQUAL" : " DIFFER"));
    }
    return rep;
}

/// Transcribed maximal subdividable sets versus the brute-force oracle.
inline SuiteReport suite_subdividable(const RunConfig& cfg) {
    SuiteReport rep;
    rep.name = "subdividable";
    const int max_n = cfg.max_n ? cfg.max_n : 8;
    auto members = family_members(max_n);
    auto outs = detail::parallel_map<detail::Outcome>(static_cast<int>(members.size()), cfg.jobs, [&](int i) {
        const FamilyId& id = members[i];
        detail::Outcome o;
        Graph g = gen_family(id).graph;
        try {
            auto known = known_subdividable_sets(id, true);
            auto brute = maximal_subdividable_sets(g);
            o.ok = known == brute;
            o.line = "member " + id.name() + " sets " + std::to_string(brute.size()) + " classes " +
                     std::to_string(known_subdividable_sets(id).size()) + (o.ok ? " MATCH" : " MISMATCH");
        } catch (const TooLarge& e) {
            o.line = "member " + id.name() + " SKIPPED " + e.what();
            o.tags.push_back("skipped");
        }
        return o;
    });
    detail::absorb(rep, outs);
    return rep;
}

// ---------------------------------------------------------------------------
// Degree DP-colouring dichotomy.

/// Degree cover of a GDP-tree that admits no colouring: each vertex gets a
/// palette of deg_B(v) nodes per block B; inside a block the palettes are
/// matched identically, except one twisted edge on even cycles.
inline Cover gdp_bad_cover(const Graph& g) {
    const int n = g.order();
    std::vector<int> sizes(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) sizes[v] = g.degree(v);
    Cover c(g, sizes);
    std::vector<int> used(static_cast<std::size_t>(n), 0);
    for (const auto& block : block_tree(g).blocks) {
        if (block.size() < 2) continue;
        Mask bm = 0;
        for (Vertex v : block) bm |= bit(v);
        const int k = std::popcount(g.neighbours(block[0]) & bm);
        std::vector<Edge> be;
        for (const Edge& e : g.edges())
            if ((bm >> e.u & 1U) && (bm >> e.v & 1U)) be.push_back(e);
        const bool twist = !detail::block_is_complete(g, block) && block.size() % 2 == 0;
        for (std::size_t i = 0; i < be.size(); ++i) {
            const Edge& e = be[i];
            std::vector<Link> ls;
            for (int j = 0; j < k; ++j) {
                int jj = (twist && i == 0) ? (j + 1) % k : j;
                ls.push_back({used[e.u] + j, used[e.v] + jj});
            }
            c.set_bundle(make_matching(e, ls));
        }
        for (Vertex v : block) used[v] += k;
    }
    return c;
}

/// Connected graphs n <= max_n: GDP-trees have an uncolourable block-perfect
/// degree cover; other graphs colour every sampled degree cover.
inline SuiteReport suite_degree_dp(const RunConfig& cfg) {
    SuiteReport rep;
    rep.name = "degree-dp";
    const int max_n = cfg.max_n ? cfg.max_n : 6;
    const int per = cfg.instances ? cfg.instances : 200;
    std::vector<Graph> graphs;
    for (int n = 2; n <= max_n; ++n) {
        EnumFilter f;
        f.min_connectivity = 1;
        for (auto& g : enumerate_graphs(n, f)) graphs.push_back(g);
    }
    auto outs = detail::parallel_map<detail::Outcome>(static_cast<int>(graphs.size()), cfg.jobs, [&](int i) {
        const Graph& g = graphs[i];
        detail::Outcome o;
        std::string id = "dp-n" + std::to_string(g.order()) + "-g" + std::to_string(i);
        if (is_gdp_tree(g)) {
            o.tags.push_back("gdp-tree");
            Cover c = gdp_bad_cover(g);
            auto r = solve_exhaustive(c, cfg.oracle_budget);
            if (r.status != OracleStatus::None) {
                o.ok = false;
                o.line = "instance " + detail::materialize(cfg, id, emit_cover_file(c)) + " FAIL bad cover is colourable";
            }
            return o;
        }
        o.tags.push_back("not-gdp-tree");
        std::vector<int> deg;
        for (int v = 0; v < g.order(); ++v) deg.push_back(g.degree(v));
        for (int k = 0; k < per; ++k) {
            Cover c = random_cover(g, deg, matchings_only(), detail::derive_seed(cfg.seed, static_cast<std::uint64_t>(i) * 1000 + k));
            auto r = solve_exhaustive(c, cfg.oracle_budget);
            if (r.status != OracleStatus::Colourable) {
                o.ok = false;
                o.line = "instance " + detail::materialize(cfg, id + "-s" + std::to_string(k), emit_cover_file(c)) +
                         " FAIL degree cover not colourable";
                break;
            }
        }
        return o;
    });
    detail::absorb(rep, outs);
    return rep;
}

// ---------------------------------------------------------------------------
// Removal soundness.

/// Random covers (all bundle kinds, small lists) on random induced subgraphs
/// of family graphs; for a removable v, colourability of G and G - v agree.
inline SuiteReport suite_removal(const RunConfig& cfg) {
    SuiteReport rep;
    rep.name = "removal";
    const int count = cfg.instances ? cfg.instances : 500;
    const std::uint64_t space = 1'000'000;
    auto members = family_members(cfg.max_n ? cfg.max_n : 8);
    auto outs = detail::parallel_map<detail::Outcome>(count, cfg.jobs, [&](int i) {
        std::mt19937_64 rng(detail::derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
        detail::Outcome o;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            Graph host = gen_family(members[rng() % members.size()]).graph;
            std::vector<Vertex> keep;
            for (int v = 0; v < host.order(); ++v)
                if (rng() % 5 != 0) keep.push_back(v);
            if (keep.size() < 3) continue;
            Graph g = host.induced(keep);
            std::vector<int> sizes;
            for (int v = 0; v < g.order(); ++v) sizes.push_back(1 + static_cast<int>(rng() % (g.degree(v) + 2)));
            KindPolicy kinds = [](const Edge&) {
                return std::vector<BundleKind>{BundleKind::Matching, BundleKind::K22Part, BundleKind::Union};
            };
            Cover c = random_cover(g, sizes, kinds, rng());
            std::vector<Vertex> removable;
            for (int v = 0; v < g.order(); ++v)
                if (c.list_sizes[v] > lambda_vertex(c, v)) removable.push_back(v);
            if (removable.empty()) continue;
            Vertex v = removable[rng() % removable.size()];
            auto full = solve_exhaustive(c, space);
            std::vector<Vertex> rest;
            for (int w = 0; w < g.order(); ++w)
                if (w != v) rest.push_back(w);
            auto less = solve_exhaustive(restrict(c, rest), space);
            if (full.status == OracleStatus::Budget || less.status == OracleStatus::Budget) continue;
            o.tags.push_back(full.status == OracleStatus::Colourable ? "colourable" : "uncolourable");
            if (full.status != less.status) {
                o.ok = false;
                o.line = "instance " +
                         detail::materialize(cfg, "removal-" + std::to_string(i), emit_cover_file(c)) +
                         " FAIL removing vertex " + std::to_string(v) + " changed colourability";
            }
            return o;
        }
        o.ok = false;
        o.line = "instance removal-" + std::to_string(i) + " FAIL no usable sample";
        return o;
    });
    detail::absorb(rep, outs);
    return rep;
}

// ---------------------------------------------------------------------------
// Tightness search.

/// Maximal outerplanar graphs (polygon triangulations) on n vertices, up to
/// isomorphism.
inline std::vector<Graph> maximal_outerplanar_graphs(int n) {
    std::set<std::vector<Mask>> seen;
    std::vector<Graph> out;
    std::vector<std::pair<int, int>> chords;
    auto emit = [&] {
        Graph g = cycle_graph(n);
        for (auto [a, b] : chords) g.add_edge(a, b);
        auto code = canonical_form(g).code;
        if (seen.insert(code).second) out.push_back(g);
    };
    // triangulate polygon i..j (with edge ij present)
    std::function<void(std::vector<std::pair<int, int>>)> go = [&](std::vector<std::pair<int, int>> todo) {
        if (todo.empty()) return emit();
        auto [i, j] = todo.back();
        todo.pop_back();
        if (j - i < 2) return go(todo);
        for (int k = i + 1; k < j; ++k) {
            std::size_t mark = chords.size();
            if (k - i > 1) chords.emplace_back(i, k);
            if (j - k > 1) chords.emplace_back(k, j);
            auto next = todo;
            next.emplace_back(i, k);
            next.emplace_back(k, j);
            go(next);
            chords.resize(mark);
        }
    };
    go({{0, n - 1}});
    return out;
}

/// Look for a 2-connected maximal outerplanar graph with an uncolourable
/// simple min(4,d)-cover; stops at the oracle budget.
inline SuiteReport suite_tightness(const RunConfig& cfg) {
    SuiteReport rep;
    rep.name = "tightness";
    const int max_n = cfg.max_n ? cfg.max_n : 9;
    const int per = cfg.instances ? cfg.instances : 2000;
    std::uint64_t spent = 0;
    std::uint64_t idx = 0;
    for (int n = 5; n <= max_n; ++n) {
        for (const Graph& g : maximal_outerplanar_graphs(n)) {
            auto sizes = truncated_degree(g, 4);
            for (int k = 0; k < per; ++k, ++idx) {
                if (spent >= cfg.oracle_budget) {
                    rep.lines.push_back("budget exhausted after " + std::to_string(idx) + " covers");
                    rep.lines.push_back("NOT-FOUND");
                    rep.passed = 1;
                    rep.stats["covers"] = static_cast<long>(idx);
                    return rep;
                }
                std::mt19937_64 rng(detail::derive_seed(cfg.seed, idx));
                Cover c(g, sizes);
                for (const Edge& e : g.edges()) {
                    int a = sizes[e.u], b = sizes[e.v];
                    std::vector<int> pa(static_cast<std::size_t>(a)), pb(static_cast<std::size_t>(b));
                    std::iota(pa.begin(), pa.end(), 0);
                    std::iota(pb.begin(), pb.end(), 0);
                    std::shuffle(pa.begin(), pa.end(), rng);
                    std::shuffle(pb.begin(), pb.end(), rng);
                    std::vector<Link> ls;
                    for (int t = 0; t < std::min(a, b); ++t) ls.push_back({pa[t], pb[t]});
                    c.set_bundle(make_matching(e, ls));
                }
                auto r = solve_exhaustive(c, cfg.oracle_budget - spent);
                spent += r.states;
                if (r.status == OracleStatus::None) {
                    std::string id = "tightness-n" + std::to_string(n) + "-" + std::to_string(idx);
                    rep.lines.push_back("FOUND " + detail::materialize(cfg, id, emit_cover_file(c)));
                    rep.passed = 1;
                    rep.stats["covers"] = static_cast<long>(idx + 1);
                    return rep;
                }
            }
        }
    }
    rep.lines.push_back("NOT-FOUND");
    rep.passed = 1;
    rep.stats["covers"] = static_cast<long>(idx);
    return rep;
}

inline SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
    if (name == "theorem-main") return suite_theorem_main(cfg);
    if (name == "coding") return suite_coding(cfg);
    if (name == "families") return suite_families(cfg);
    if (name == "subdividable") return suite_subdividable(cfg);
    if (name == "tightness") return suite_tightness(cfg);
    if (name == "degree-dp") return suite_degree_dp(cfg);
    if (name == "removal") return suite_removal(cfg);
    throw InvalidParams("unknown suite: " + name);
}

} // namespace dpcolor
