#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dpcolor/dot.hpp"
#include "dpcolor/io.hpp"
#include "dpcolor/suite.hpp"

using namespace dpcolor;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitBudget = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParams("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string edge_text(const Edge& e) { return std::to_string(e.u) + "-" + std::to_string(e.v); }

std::string links_line(const std::vector<Link>& ls) {
    std::string s;
    for (const Link& l : ls) s += " " + std::to_string(l.a) + ":" + std::to_string(l.b);
    return s.empty() ? " (none)" : s;
}

void print_trace(const SolveTrace& tr) {
    std::cout << tr.decomposition;
    if (tr.family) std::cout << "family " << tr.family->name() << "\n";
    if (!tr.F.empty()) {
        std::cout << "F";
        for (const Edge& e : tr.F) std::cout << " " << edge_text(e);
        std::cout << "\n";
    }
    for (const auto& g : tr.gadgets)
        std::cout << "gadget " << g.x << "-" << g.y << " vertices " << g.vertices.size() << " steps " << g.steps
                  << " deletions " << g.deleted << " coding" << links_line(g.coding) << "\n";
    std::cout << "method " << tr.method << "\n";
    for (const auto& l : tr.log) std::cout << "log " << l << "\n";
    std::cout << "order";
    for (auto [v, a] : tr.assignments) std::cout << " " << v << ":" << a;
    std::cout << "\n";
}

/// Terminals from the file, or the pair that makes the graph a broken gadget.
TwoTerminal gadget_of(const CoverFile& cf) {
    const Graph& g = cf.cover.graph;
    if (cf.terminals) {
        auto t = recognize(g, cf.terminals->first, cf.terminals->second);
        if (!t) throw NotTwoTerminal("graph is not outerplanar between the given terminals");
        return *t;
    }
    for (int x = 0; x < g.order(); ++x)
        for (int y = x + 1; y < g.order(); ++y)
            if (!g.adjacent(x, y) || g.order() == 2)
                if (auto t = recognize(g, x, y); t && t->broken) return *t;
    throw NotTwoTerminal("no terminal pair makes the graph a broken two-terminal outerplanar graph");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DP-colouring of K_{2,4}-minor-free graphs"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "text";
    bool trace = false;
    app.add_option("--seed", cfg.seed, "run seed")->capture_default_str();
    app.add_option("--budget", cfg.oracle_budget, "oracle state budget")->capture_default_str();
    app.add_option("--max-n", cfg.max_n, "largest order (0 = suite default)");
    app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "dot"}));
    app.add_flag("--trace", trace, "print the solve trace");

    std::string file, file2;
    auto* solve_cmd = app.add_subcommand("solve", "colour a cover");
    solve_cmd->add_option("cover", file)->required();
    solve_cmd->add_flag("--trace", trace, "print the solve trace");

    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive search");
    oracle_cmd->add_option("cover", file)->required();

    std::vector<int> replay;
    auto* coding_cmd = app.add_subcommand("coding", "coding of a broken two-terminal gadget");
    coding_cmd->add_option("cover", file)->required();
    coding_cmd->add_option("--replay", replay, "extend terminal colours a b")->expected(2);

    auto* decompose_cmd = app.add_subcommand("decompose", "structural decomposition of a graph");
    decompose_cmd->add_option("graph", file)->required();

    bool list = false;
    std::string emit;
    auto* families_cmd = app.add_subcommand("families", "3-connected family members");
    families_cmd->add_flag("--list", list, "list members up to --max-n (default 8)");
    families_cmd->add_option("--emit", emit, "emit a member in graph format, e.g. W5, G7,2,3, K5-");

    auto* verify_cmd = app.add_subcommand("verify", "check a colouring against a cover");
    verify_cmd->add_option("cover", file)->required();
    verify_cmd->add_option("colouring", file2)->required();

    int atlas_n = 0;
    std::string atlas_check;
    auto* atlas_cmd = app.add_subcommand("atlas", "enumerate 2-connected K_{2,4}-minor-free graphs");
    atlas_cmd->add_option("--n", atlas_n, "order")->required()->check(CLI::Range(2, 10));
    atlas_cmd->add_option("--check", atlas_check, "suite to run up to this order")
        ->check(CLI::IsMember(suite_names()));

    std::string suite_name;
    auto* suite_cmd = app.add_subcommand("suite", "run a verification suite");
    suite_cmd->add_option("name", suite_name)->required()->check(CLI::IsMember(suite_names()));
    suite_cmd->add_option("--instances", cfg.instances, "instances (0 = suite default)");
    suite_cmd->add_option("--output", cfg.output, "directory for failing instances");

    auto* tight_cmd = app.add_subcommand("tightness-search", "search for an uncolourable 4-truncated cover");
    tight_cmd->add_option("--instances", cfg.instances, "covers per graph (0 = default)");
    tight_cmd->add_option("--output", cfg.output, "directory for a witness");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve_cmd) {
            auto cf = parse_cover_file(slurp(file));
            SolveOptions opt;
            opt.oracle_budget = cfg.oracle_budget;
            auto r = solve(cf.cover, opt);
            if (format == "dot") {
                std::cout << export_dot(*decompose(cf.cover.graph), cf.cover.graph);
                return kExitOk;
            }
            if (trace) print_trace(r.trace);
            std::cout << emit_colouring(r.colouring);
        } else if (*oracle_cmd) {
            auto cf = parse_cover_file(slurp(file));
            auto r = solve_exhaustive(cf.cover, cfg.oracle_budget);
            switch (r.status) {
                case OracleStatus::Colourable: std::cout << emit_colouring(r.colouring); break;
                case OracleStatus::None: std::cout << "NONE\n"; break;
                case OracleStatus::Budget: std::cout << "BUDGET\n"; return kExitBudget;
            }
        } else if (*coding_cmd) {
            auto cf = parse_cover_file(slurp(file));
            TwoTerminal t = gadget_of(cf);
            auto r = compute_coding(t, cf.cover);
            if (!replay.empty()) {
                int a = replay[0], b = replay[1];
                if (a < 0 || b < 0 || a >= cf.cover.list_sizes[t.x] || b >= cf.cover.list_sizes[t.y])
                    throw InvalidParams("replay colours out of range");
                if (r.coding.blocks(a, b)) std::cout << "BLOCKED\n";
                else std::cout << emit_colouring(extend_colouring(r.stack, a, b));
                return kExitOk;
            }
            if (format == "dot") {
                Graph k2(2);
                k2.add_edge(0, 1);
                Cover kc(k2, {cf.cover.list_sizes[t.x], cf.cover.list_sizes[t.y]});
                kc.set_bundle(make_k22(Edge(0, 1), r.coding.links).normalized());
                std::cout << export_dot(kc, "coding");
                return kExitOk;
            }
            std::cout << "terminals " << t.x << " " << t.y << "\n";
            std::cout << "coding" << links_line(r.coding.links) << "\n";
            std::cout << "lambda " << r.coding.lambda_x << " " << r.coding.lambda_y << "\n";
            std::cout << "steps " << r.stack.steps.size() << "\n";
        } else if (*decompose_cmd) {
            auto gf = parse_graph_file(slurp(file));
            auto d = decompose(gf.graph);
            if (!d) {
                std::cout << "NONE\n";
                return kExitPrecondition;
            }
            if (format == "dot") std::cout << export_dot(*d, gf.graph);
            else std::cout << describe(*d);
        } else if (*families_cmd) {
            if (!emit.empty()) {
                auto lg = gen_family(parse_family_id(emit));
                if (format == "dot") std::cout << export_dot(lg.graph, "member");
                else {
                    std::cout << "# " << emit << " labels";
                    for (const auto& l : lg.labels) std::cout << " " << l;
                    std::cout << "\n" << emit_graph_file(lg.graph);
                }
            } else {
                for (const FamilyId& id : family_members(cfg.max_n ? cfg.max_n : 8)) {
                    const Graph g = gen_family(id).graph;
                    std::cout << id.name() << " order " << g.order() << " edges " << g.size() << "\n";
                }
            }
        } else if (*verify_cmd) {
            auto cf = parse_cover_file(slurp(file));
            Colouring phi = parse_colouring(slurp(file2));
            bool ok = check_colouring(cf.cover, phi);
            std::cout << (ok ? "VALID\n" : "INVALID\n");
            return ok ? kExitOk : kExitError;
        } else if (*atlas_cmd) {
            if (!atlas_check.empty()) {
                RunConfig c = cfg;
                c.max_n = atlas_n;
                auto rep = run_suite(atlas_check, c);
                std::cout << rep.text();
                return rep.ok() ? kExitOk : kExitError;
            }
            auto gs = enumerate_graphs(atlas_n, detail::theorem_filter());
            for (std::size_t i = 0; i < gs.size(); ++i) {
                auto d = decompose(gs[i]);
                std::cout << "graph " << i << " edges " << gs[i].size() << " "
                          << (d ? decomposition_kind_name(d->kind) : "undecomposed");
                if (d && d->kind == DecompositionKind::CoreGadgets) std::cout << " " << d->family.name();
                std::cout << "\n";
            }
        } else if (*suite_cmd) {
            auto rep = run_suite(suite_name, cfg);
            std::cout << rep.text();
            return rep.ok() ? kExitOk : kExitError;
        } else if (*tight_cmd) {
            auto rep = suite_tightness(cfg);
            std::cout << rep.text();
        }
    } catch (const PreconditionViolated& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const OracleBudget& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitOk;
}
