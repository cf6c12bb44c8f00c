// dicut: command-line surface for the directed cut-analysis library.
// Every subcommand reads a graph (text or JSON, file or '-') and emits one
// JSON document on stdout. Exit codes: 0 success/pass, 1 internal error,
// 2 usage error, 3 checker-fail or no-solution.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "dicut/balanced.hpp"
#include "dicut/generators.hpp"
#include "dicut/json_io.hpp"
#include "dicut/sampling.hpp"
#include "dicut/separators.hpp"
#include "dicut/skew.hpp"
#include "dicut/sparsifier.hpp"

namespace {

using namespace dicut;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFail = 3;

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DiGraph read_graph(const std::string& path) {
    std::string text = slurp(path);
    std::size_t i = text.find_first_not_of(" \t\r\n");
    if (i != std::string::npos && text[i] == '{') return graph_from_json(json::parse(text));
    return parse_graph(text);
}

// Generator families use documented fixed ids; the fig1 names double as a
// global alias table so piped invocations can use them directly.
VertexId parse_vertex_token(const std::string& token) {
    static const auto fig1_names = gen_fig1().names;
    for (const auto& [name, id] : fig1_names)
        if (name == token) return id;
    try {
        std::size_t used = 0;
        int v = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ParseError("unknown vertex token: " + token);
    }
}

VertexSet parse_vertex_list(const std::string& csv) {
    VertexSet out;
    std::string token;
    std::istringstream ss(csv);
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        out.push_back(parse_vertex_token(token));
    }
    return canon(out);
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::string token;
    std::istringstream ss(csv);
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        out.push_back(std::stoi(token));
    }
    return canon(out);
}

DelMode parse_mode(const std::string& mode) {
    if (mode == "vertex") return DelMode::vertex;
    if (mode == "arc") return DelMode::arc;
    throw ParseError("mode must be vertex or arc");
}

void emit(const json& out) { std::cout << out.dump() << "\n"; }

json enum_report_json(const char* schema, const std::vector<VertexSet>& seps, std::uint64_t bound,
                      std::optional<std::uint64_t> pairs) {
    json out{{"schema", schema},
             {"separators", separator_list_to_json(seps)},
             {"count", seps.size()},
             {"bound", bound}};
    if (pairs) out["pairs_scanned"] = *pairs;
    return out;
}

json balanced_json(const BalancedAnswer& ans, DelMode mode) {
    json out{{"schema", "balanced-sep/v1"},
             {"outcome", ans.outcome == BalancedOutcome::solution ? "solution" : "no_separator"},
             {"mode", mode == DelMode::vertex ? "vertex" : "arc"},
             {"terminals", vset_to_json(ans.terminals_used)}};
    if (ans.outcome == BalancedOutcome::solution) {
        out["f"] = vset_to_json(ans.f.ids);
        out["achieved_bound"] = to_string(ans.achieved_bound);
    } else {
        out["f"] = json(nullptr);
        out["achieved_bound"] = json(nullptr);
    }
    return out;
}

struct Options {
    std::string graph = "-";
    std::string a, b, x, w, pool, terminals, terminals_file, f_list, side = "B", mode = "vertex";
    std::string eps = "1/2", b_frac = "1/2", c_frac = "1", instance = "-", sparsifier;
    std::string family;
    int k = 0, c = 0, s = 0, jobs = 1;
    int gen_c = 1, gen_k = 1, gen_n = 1;
    long long gen_m = 0;
    std::uint64_t seed = 0;
    bool dag = false;
    bool seed_given = false;
};

int run_gen(const Options& opt) {
    GeneratedGraph gg;
    if (opt.family == "star") {
        gg = gen_star(opt.gen_c);
    } else if (opt.family == "corestar") {
        gg = gen_corestar(opt.gen_c, opt.gen_k);
    } else if (opt.family == "fig1") {
        gg = gen_fig1();
    } else if (opt.family == "random") {
        gg.graph = opt.dag ? gen_random_dag(opt.gen_n, opt.gen_m, opt.seed)
                           : gen_random(opt.gen_n, opt.gen_m, opt.seed);
    } else {
        throw ParseError("unknown family: " + opt.family);
    }
    std::cout << to_text(gg.graph);
    auto role_line = [](const char* role, const VertexSet& ids) {
        if (ids.empty()) return;
        std::cout << "# " << role;
        for (VertexId v : ids) std::cout << ' ' << v;
        std::cout << '\n';
    };
    role_line("S", gg.source_role);
    role_line("T", gg.sink_role);
    role_line("X", gg.cut_role);
    return kExitOk;
}

int run_skew_solve(const Options& opt, bool oracle) {
    SkewInstance inst = skew_instance_from_json(json::parse(slurp(opt.instance)));
    auto sol = oracle ? brute_skew(inst) : solve_skew(inst);
    json out{{"schema", "skew-solve/v1"},
             {"mode", inst.mode == DelMode::vertex ? "vertex" : "arc"},
             {"solution", sol ? vset_to_json(*sol) : json(nullptr)}};
    emit(out);
    return sol ? kExitOk : kExitFail;
}

int run_balanced(const Options& opt, bool oracle) {
    BalancedQuery q;
    q.g = read_graph(opt.graph);
    q.k = opt.k;
    q.b = parse_fraction(opt.b_frac);
    q.eps = parse_fraction(opt.eps);
    q.mode = parse_mode(opt.mode);
    q.c = parse_fraction(opt.c_frac);
    if (!opt.terminals.empty())
        q.terminals = parse_vertex_list(opt.terminals);
    else if (!opt.terminals_file.empty()) {
        std::string text = slurp(opt.terminals_file);
        for (char& ch : text)
            if (ch == '\n' || ch == '\t' || ch == ' ') ch = ',';
        q.terminals = parse_vertex_list(text);
    }
    if (opt.seed_given) q.seed = opt.seed;

    if (oracle) {
        if (!q.terminals && !q.seed) throw InvalidQuery("supply terminals or a seed");
        auto best = brute_balanced(q.g, q.k, q.b, q.mode);
        BalancedAnswer ans;
        if (q.terminals)
            ans.terminals_used = canon(*q.terminals);
        else {
            int want = prescribed_size(SetKind::sample, q.k, q.eps, q.c);
            ans.terminals_used = draw_terminals(q.g, std::min(want, q.g.n()), *q.seed);
        }
        if (best) {
            ans.outcome = BalancedOutcome::solution;
            ans.f = *best;
            std::vector<VertexSet> sccs;
            if (q.mode == DelMode::vertex)
                sccs = scc_decompose(delete_view(q.g, best->ids).graph).components;
            else
                sccs = scc_decompose(dicut::detail::drop_arcs(q.g, best->ids)).components;
            long long largest = 0;
            for (const VertexSet& comp : sccs)
                largest = std::max(largest, static_cast<long long>(comp.size()));
            ans.achieved_bound = q.g.n() == 0 ? Fraction(0) : Fraction(largest, q.g.n());
        }
        emit(balanced_json(ans, q.mode));
        return ans.outcome == BalancedOutcome::solution ? kExitOk : kExitFail;
    }

    BalancedAnswer ans = solve_balanced(q);
    emit(balanced_json(ans, q.mode));
    return ans.outcome == BalancedOutcome::solution ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"directed graph cut-analysis toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto add_graph = [&](CLI::App* cmd) {
        cmd->add_option("--graph", opt.graph, "graph file, or - for stdin");
    };
    auto add_jobs = [&](CLI::App* cmd) {
        cmd->add_option("--jobs", opt.jobs, "parallel fan-out (output independent of the setting)");
    };

    CLI::App* enum_imp = app.add_subcommand("enum-important", "important a-b separators of size <= k");
    add_graph(enum_imp);
    enum_imp->add_option("--A", opt.a)->required();
    enum_imp->add_option("--B", opt.b)->required();
    enum_imp->add_option("--k", opt.k)->required();

    CLI::App* enum_all = app.add_subcommand("enum-all-subsets", "all-subsets important separators");
    add_graph(enum_all);
    enum_all->add_option("--S", opt.a)->required();
    enum_all->add_option("--T", opt.b)->required();
    enum_all->add_option("--k", opt.k)->required();
    add_jobs(enum_all);

    CLI::App* mvc = app.add_subcommand("min-vertex-cut", "unique mincut closest to one side");
    add_graph(mvc);
    mvc->add_option("--A", opt.a)->required();
    mvc->add_option("--B", opt.b)->required();
    mvc->add_option("--side", opt.side, "A or B");

    CLI::App* isimp = app.add_subcommand("is-important", "importance predicate");
    add_graph(isimp);
    isimp->add_option("--A", opt.a)->required();
    isimp->add_option("--B", opt.b)->required();
    isimp->add_option("--X", opt.x)->required();

    CLI::App* rprof = app.add_subcommand("reach-profile", "reachability profile Reach^k(s, pool)");
    add_graph(rprof);
    rprof->add_option("--s", opt.s)->required();
    rprof->add_option("--pool", opt.pool)->required();
    rprof->add_option("--k", opt.k)->required();

    CLI::App* shatter = app.add_subcommand("shatter-check", "is w shattered by the SCC family");
    add_graph(shatter);
    shatter->add_option("--W", opt.w)->required();
    shatter->add_option("--k", opt.k)->required();

    CLI::App* sample = app.add_subcommand("sample-check", "(eps,k) sample set check");
    CLI::App* net = app.add_subcommand("net-check", "(eps,k) net check");
    CLI::App* detect = app.add_subcommand("detect-check", "(eps,k) detection set check");
    for (CLI::App* cmd : {sample, net, detect}) {
        add_graph(cmd);
        cmd->add_option("--T", opt.terminals)->required();
        cmd->add_option("--eps", opt.eps)->required();
        cmd->add_option("--k", opt.k)->required();
        add_jobs(cmd);
    }

    CLI::App* skew = app.add_subcommand("skew-solve", "skew separator FPT solver");
    skew->add_option("--instance", opt.instance, "instance JSON file, or - for stdin");

    CLI::App* bal = app.add_subcommand("balanced-sep", "FPT directed balanced separator");
    add_graph(bal);
    bal->add_option("--k", opt.k)->required();
    bal->add_option("--b", opt.b_frac)->required();
    bal->add_option("--eps", opt.eps)->required();
    bal->add_option("--mode", opt.mode);
    bal->add_option("--terminals", opt.terminals, "comma list of terminal ids");
    bal->add_option("--terminals-file", opt.terminals_file);
    bal->add_option("--seed", opt.seed)->each([&](const std::string&) { opt.seed_given = true; });
    bal->add_option("--c", opt.c_frac, "sampling constant for --seed");

    CLI::App* bisect = app.add_subcommand("bisect", "topological prefix bisection after a deletion");
    add_graph(bisect);
    bisect->add_option("--f", opt.f_list, "deletion set (ids or arc indices)");
    bisect->add_option("--mode", opt.mode);
    bisect->add_option("--beta", opt.b_frac)->required();

    CLI::App* sparsify = app.add_subcommand("sparsify", "(c,T) vertex cut sparsifier");
    add_graph(sparsify);
    sparsify->add_option("--terminals", opt.terminals)->required();
    sparsify->add_option("--c", opt.c)->required();
    add_jobs(sparsify);

    CLI::App* sverify = app.add_subcommand("sparsify-verify", "verify sparsifier preservation");
    add_graph(sverify);
    sverify->add_option("--terminals", opt.terminals)->required();
    sverify->add_option("--c", opt.c)->required();
    sverify->add_option("--sparsifier", opt.sparsifier, "sparsify output JSON to verify");
    add_jobs(sverify);

    CLI::App* gen = app.add_subcommand("gen", "named graph families");
    CLI::App* gen_star_cmd = gen->add_subcommand("star", "bidirectional star");
    gen_star_cmd->add_option("--c", opt.gen_c)->required();
    CLI::App* gen_core_cmd = gen->add_subcommand("corestar", "clique-core star");
    gen_core_cmd->add_option("--c", opt.gen_c)->required();
    gen_core_cmd->add_option("--k", opt.gen_k)->required();
    gen->add_subcommand("fig1", "tight witness-reduction example");
    CLI::App* gen_rand_cmd = gen->add_subcommand("random", "uniform simple digraph");
    gen_rand_cmd->add_option("--n", opt.gen_n)->required();
    gen_rand_cmd->add_option("--m", opt.gen_m)->required();
    gen_rand_cmd->add_option("--seed", opt.seed)->required();
    gen_rand_cmd->add_flag("--dag", opt.dag);
    gen->require_subcommand(1);

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force mirrors of fast subcommands");
    CLI::App* o_enum = oracle->add_subcommand("enum-important", "literal-definition enumeration");
    add_graph(o_enum);
    o_enum->add_option("--A", opt.a)->required();
    o_enum->add_option("--B", opt.b)->required();
    o_enum->add_option("--k", opt.k)->required();
    CLI::App* o_all = oracle->add_subcommand("enum-all-subsets", "brute all-subsets union");
    add_graph(o_all);
    o_all->add_option("--S", opt.a)->required();
    o_all->add_option("--T", opt.b)->required();
    o_all->add_option("--k", opt.k)->required();
    CLI::App* o_prof = oracle->add_subcommand("reach-profile", "profile by deletion enumeration");
    add_graph(o_prof);
    o_prof->add_option("--s", opt.s)->required();
    o_prof->add_option("--pool", opt.pool)->required();
    o_prof->add_option("--k", opt.k)->required();
    CLI::App* o_skew = oracle->add_subcommand("skew-solve", "minimum skew separator by search");
    o_skew->add_option("--instance", opt.instance);
    CLI::App* o_bal = oracle->add_subcommand("balanced-sep", "minimum balanced separator by search");
    add_graph(o_bal);
    o_bal->add_option("--k", opt.k)->required();
    o_bal->add_option("--b", opt.b_frac)->required();
    o_bal->add_option("--eps", opt.eps)->required();
    o_bal->add_option("--mode", opt.mode);
    o_bal->add_option("--terminals", opt.terminals);
    o_bal->add_option("--terminals-file", opt.terminals_file);
    o_bal->add_option("--seed", opt.seed)->each([&](const std::string&) { opt.seed_given = true; });
    o_bal->add_option("--c", opt.c_frac);
    oracle->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (enum_imp->parsed()) {
            DiGraph g = read_graph(opt.graph);
            auto seps = enum_important(g, parse_vertex_list(opt.a), parse_vertex_list(opt.b), opt.k);
            emit(enum_report_json("enum-important/v1", seps, pow4(opt.k), std::nullopt));
            return kExitOk;
        }
        if (enum_all->parsed()) {
            DiGraph g = read_graph(opt.graph);
            auto rep =
                enum_all_subsets(g, parse_vertex_list(opt.a), parse_vertex_list(opt.b), opt.k, opt.jobs);
            emit(enum_report_json("enum-all-subsets/v1", rep.separators, rep.bound, rep.pairs_scanned));
            return kExitOk;
        }
        if (mvc->parsed()) {
            DiGraph g = read_graph(opt.graph);
            if (opt.side != "A" && opt.side != "B") throw ParseError("--side must be A or B");
            VertexSet cut = min_vertex_cut(g, parse_vertex_list(opt.a), parse_vertex_list(opt.b),
                                           opt.side == "A" ? CutSide::A : CutSide::B);
            emit(json{{"schema", "min-vertex-cut/v1"},
                      {"cut", vset_to_json(cut)},
                      {"value", cut.size()}});
            return kExitOk;
        }
        if (isimp->parsed()) {
            DiGraph g = read_graph(opt.graph);
            bool imp = is_important(g, parse_vertex_list(opt.a), parse_vertex_list(opt.b),
                                    parse_vertex_list(opt.x));
            emit(json{{"schema", "is-important/v1"}, {"important", imp}});
            return kExitOk;
        }
        if (rprof->parsed() || o_prof->parsed()) {
            DiGraph g = read_graph(opt.graph);
            VertexSet pool = parse_vertex_list(opt.pool);
            Profile prof = o_prof->parsed() ? brute_reach_profile(g, opt.s, pool, opt.k)
                                            : reach_profile(g, opt.s, pool, opt.k);
            emit(json{{"schema", "reach-profile/v1"},
                      {"profiles", separator_list_to_json(prof)},
                      {"count", prof.size()},
                      {"bound", reach_profile_bound(static_cast<int>(pool.size()), opt.k)}});
            return kExitOk;
        }
        if (shatter->parsed()) {
            DiGraph g = read_graph(opt.graph);
            emit(json{{"schema", "shatter-check/v1"},
                      {"shattered", is_shattered(g, opt.k, parse_vertex_list(opt.w))}});
            return kExitOk;
        }
        if (sample->parsed() || net->parsed() || detect->parsed()) {
            DiGraph g = read_graph(opt.graph);
            VertexSet t = parse_vertex_list(opt.terminals);
            Fraction eps = parse_fraction(opt.eps);
            CheckReport rep;
            const char* schema;
            if (sample->parsed()) {
                rep = is_sample_set(g, t, eps, opt.k, opt.jobs);
                schema = "sample-check/v1";
            } else if (net->parsed()) {
                rep = is_net(g, t, eps, opt.k, opt.jobs);
                schema = "net-check/v1";
            } else {
                rep = is_detection_set(g, t, eps, opt.k, opt.jobs);
                schema = "detect-check/v1";
            }
            emit(report_to_json(rep, schema));
            return rep.pass ? kExitOk : kExitFail;
        }
        if (skew->parsed()) return run_skew_solve(opt, false);
        if (o_skew->parsed()) return run_skew_solve(opt, true);
        if (bal->parsed()) return run_balanced(opt, false);
        if (o_bal->parsed()) return run_balanced(opt, true);
        if (bisect->parsed()) {
            DiGraph g = read_graph(opt.graph);
            Deletion f{parse_mode(opt.mode), parse_int_list(opt.f_list)};
            Bisection bi = extract_prefix_bisection(g, f, parse_fraction(opt.b_frac));
            emit(json{{"schema", "bisect/v1"}, {"A", vset_to_json(bi.a)}, {"B", vset_to_json(bi.b)}});
            return kExitOk;
        }
        if (sparsify->parsed()) {
            DiGraph g = read_graph(opt.graph);
            SparsifierResult res = build_sparsifier(g, parse_vertex_list(opt.terminals), opt.c, opt.jobs);
            emit(json{{"schema", "sparsify/v1"},
                      {"graph", graph_to_json(res.g_prime)},
                      {"kept_ids", vset_to_json(res.kept)},
                      {"relevant_ids", vset_to_json(res.relevant)}});
            return kExitOk;
        }
        if (sverify->parsed()) {
            DiGraph g = read_graph(opt.graph);
            VertexSet t = parse_vertex_list(opt.terminals);
            SparsifierResult res;
            if (!opt.sparsifier.empty()) {
                json j = json::parse(slurp(opt.sparsifier));
                res.g_prime = graph_from_json(j.at("graph"));
                for (const auto& v : j.at("kept_ids")) res.kept.push_back(v.get<int>());
                for (const auto& v : j.at("relevant_ids")) res.relevant.push_back(v.get<int>());
            } else {
                res = build_sparsifier(g, t, opt.c, opt.jobs);
            }
            CheckReport rep = verify_sparsifier(g, res, t, opt.c);
            emit(report_to_json(rep, "sparsify-verify/v1"));
            return rep.pass ? kExitOk : kExitFail;
        }
        if (gen->parsed()) {
            for (CLI::App* sub : gen->get_subcommands())
                if (sub->parsed()) opt.family = sub->get_name();
            return run_gen(opt);
        }
        if (o_enum->parsed()) {
            DiGraph g = read_graph(opt.graph);
            auto seps = brute_important(g, parse_vertex_list(opt.a), parse_vertex_list(opt.b), opt.k);
            emit(enum_report_json("enum-important/v1", seps, pow4(opt.k), std::nullopt));
            return kExitOk;
        }
        if (o_all->parsed()) {
            DiGraph g = read_graph(opt.graph);
            VertexSet s_pool = parse_vertex_list(opt.a), t_pool = parse_vertex_list(opt.b);
            if (!sets_disjoint(s_pool, t_pool)) throw InvalidQuery("pools overlap");
            std::vector<VertexSet> seps;
            std::uint64_t pairs = 0;
            for_each_subset(s_pool, 1, std::max(opt.k, 1), [&](const VertexSet& a) {
                for_each_subset(t_pool, 1, std::max(2 * opt.k, 1), [&](const VertexSet& b) {
                    ++pairs;
                    for (const VertexSet& x : brute_important(g, a, b, opt.k)) seps.push_back(x);
                    return true;
                });
                return true;
            });
            std::sort(seps.begin(), seps.end());
            seps.erase(std::unique(seps.begin(), seps.end()), seps.end());
            emit(enum_report_json("enum-all-subsets/v1", seps,
                                  all_subsets_bound(static_cast<int>(s_pool.size()),
                                                    static_cast<int>(t_pool.size()), opt.k),
                                  pairs));
            return kExitOk;
        }
        throw ParseError("no subcommand selected");
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidQuery& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
