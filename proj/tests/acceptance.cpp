// Acceptance runner: one line per criterion, exit code = number of
// failures. Criterion 11 drives the CLI binary passed as argv[1].

#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "dicut/balanced.hpp"
#include "dicut/generators.hpp"
#include "dicut/sampling.hpp"
#include "dicut/separators.hpp"
#include "dicut/skew.hpp"
#include "dicut/sparsifier.hpp"

using namespace dicut;

namespace {

std::string g_cli;

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    int pick(int lo, int hi) { return lo + static_cast<int>(engine() % static_cast<std::uint64_t>(hi - lo + 1)); }
    std::uint64_t raw() { return engine(); }
};

VertexSet all_vertices(const DiGraph& g) {
    VertexSet out;
    for (VertexId v = 0; v < g.n(); ++v) out.push_back(v);
    return out;
}

std::pair<VertexSet, VertexSet> random_disjoint_pair(Rng& rng, int n) {
    VertexSet a, b;
    for (int v = 0; v < n; ++v) {
        int r = rng.pick(0, 3);
        if (r == 0) a.push_back(v);
        else if (r == 1) b.push_back(v);
    }
    if ((a.empty() || b.empty()) && n >= 2) {
        a = {0};
        b = {1};
    }
    return {a, b};
}

bool criterion1(std::string& note) {
    Rng rng(101);
    int done = 0;
    while (done < 500) {
        int n = rng.pick(2, 7);
        DiGraph g = gen_random(n, rng.pick(0, n * (n - 1)), rng.raw());
        auto [a, b] = random_disjoint_pair(rng, n);
        int k = rng.pick(0, 3);
        if (enum_important(g, a, b, k) != brute_important(g, a, b, k)) {
            note = "mismatch at instance " + std::to_string(done);
            return false;
        }
        ++done;
    }
    note = "500 instances, exact set equality";
    return true;
}

bool criterion2(std::string& note) {
    Rng rng(102);
    for (int trial = 0; trial < 60; ++trial) {
        int n = rng.pick(8, 60);
        DiGraph g = gen_random(n, rng.pick(n, std::min(4 * n, n * (n - 1))), rng.raw());
        auto [a, b] = random_disjoint_pair(rng, n);
        int k = rng.pick(1, 6);
        std::size_t count = enum_important(g, a, b, k).size();
        if (static_cast<std::uint64_t>(count) > pow4(k)) {
            note = "violated at n=" + std::to_string(n) + " k=" + std::to_string(k);
            return false;
        }
    }
    note = "60 fuzz instances up to n=60, k<=6";
    return true;
}

std::vector<VertexSet> brute_all_subsets(const DiGraph& g, const VertexSet& s_pool,
                                         const VertexSet& t_pool, int k) {
    std::vector<VertexSet> seps;
    for_each_subset(s_pool, 1, std::max(k, 1), [&](const VertexSet& a) {
        for_each_subset(t_pool, 1, std::max(2 * k, 1), [&](const VertexSet& b) {
            for (const VertexSet& x : brute_important(g, a, b, k)) seps.push_back(x);
            return true;
        });
        return true;
    });
    std::sort(seps.begin(), seps.end());
    seps.erase(std::unique(seps.begin(), seps.end()), seps.end());
    return seps;
}

bool criterion3(std::string& note) {
    GeneratedGraph star = gen_star(6);
    EnumerationReport srep = enum_all_subsets(star.graph, star.source_role, star.sink_role, 2);
    auto soracle = brute_all_subsets(star.graph, star.source_role, star.sink_role, 2);
    if (srep.separators.size() < 21 || srep.separators != soracle ||
        static_cast<std::uint64_t>(srep.separators.size()) > srep.bound) {
        note = "star(6) count=" + std::to_string(srep.separators.size());
        return false;
    }

    GeneratedGraph core = gen_corestar(5, 2);
    EnumerationReport crep = enum_all_subsets(core.graph, core.source_role, core.sink_role, 2);
    auto coracle = brute_all_subsets(core.graph, core.source_role, core.sink_role, 2);
    if (crep.separators.size() < 15 || crep.separators != coracle ||
        static_cast<std::uint64_t>(crep.separators.size()) > crep.bound) {
        note = "corestar(5,2) count=" + std::to_string(crep.separators.size());
        return false;
    }
    note = "star(6): " + std::to_string(srep.separators.size()) + " >= 21, corestar(5,2): " +
           std::to_string(crep.separators.size()) + " >= 15, both equal oracle and within beta";
    return true;
}

bool criterion4(std::string& note) {
    GeneratedGraph fig1 = gen_fig1();
    if (!is_important(fig1.graph, fig1.source_role, fig1.sink_role, fig1.cut_role)) {
        note = "X not important for (s, B)";
        return false;
    }
    int checked = 0;
    bool ok = true;
    for_each_subset(fig1.sink_role, 1, 5, [&](const VertexSet& sub) {
        ++checked;
        if (is_important(fig1.graph, fig1.source_role, sub, fig1.cut_role)) {
            ok = false;
            return false;
        }
        return true;
    });
    if (!ok || checked != 62) {
        note = "proper-subset sweep failed (checked " + std::to_string(checked) + ")";
        return false;
    }
    ImportantSeparator red = reduce_witness(fig1.graph, fig1.source_role, fig1.sink_role, fig1.cut_role);
    if (red.witness_b.size() != 6) {
        note = "|b_star| = " + std::to_string(red.witness_b.size());
        return false;
    }
    note = "importance, all 62 proper subsets non-important, |b_star| = 6 = 2k";
    return true;
}

bool criterion5(std::string& note) {
    Rng rng(105);
    int done = 0;
    while (done < 300) {
        int n = rng.pick(2, 10);
        DiGraph g = gen_random(n, rng.pick(0, std::min(n * (n - 1), 3 * n)), rng.raw());
        int s = rng.pick(0, n - 1);
        VertexSet pool;
        for (int v = 0; v < n; ++v)
            if (v != s && rng.pick(0, 1)) pool.push_back(v);
        if (pool.size() > 6) pool.resize(6);
        int k = rng.pick(0, 2);
        Profile fast = reach_profile(g, s, pool, k);
        if (fast != brute_reach_profile(g, s, pool, k)) {
            note = "profile mismatch at instance " + std::to_string(done);
            return false;
        }
        if (static_cast<std::uint64_t>(fast.size()) >
            reach_profile_bound(static_cast<int>(pool.size()), k)) {
            note = "bound violated at instance " + std::to_string(done);
            return false;
        }
        ++done;
    }
    note = "300 instances, profiles equal oracle and within 4^k C(|T'|,<=2k)";
    return true;
}

bool criterion6(std::string& note) {
    Rng rng(106);
    int nets = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int n = rng.pick(2, 9);
        DiGraph g = gen_random(n, rng.pick(0, std::min(n * (n - 1), 3 * n)), rng.raw());
        VertexSet t;
        for (int v = 0; v < n; ++v)
            if (rng.pick(0, 99) < 60) t.push_back(v);
        if (t.empty()) t = {0};
        int k = rng.pick(0, 2);
        Fraction eps(1, rng.pick(1, 4));
        if (is_net(g, t, eps, k).pass) {
            ++nets;
            if (!is_detection_set(g, t, eps, k).pass) {
                note = "net passed but detection failed at trial " + std::to_string(trial);
                return false;
            }
        }
    }
    note = "300 instances, zero implication violations (" + std::to_string(nets) + " nets)";
    return true;
}

bool criterion7(std::string& note) {
    Rng rng(107);
    int done = 0;
    while (done < 500) {
        int n = rng.pick(2, 8);
        DiGraph g = gen_random(n, rng.pick(0, std::min(n * (n - 1), 14)), rng.raw());
        std::vector<std::pair<VertexId, VertexId>> pairs;
        int npairs = rng.pick(1, 4);
        for (int p = 0; p < npairs; ++p) {
            int s = rng.pick(0, n - 1), t = rng.pick(0, n - 1);
            if (s == t) t = (t + 1) % n;
            pairs.emplace_back(s, t);
        }
        SkewInstance inst{g, pairs, rng.pick(0, 3), done % 2 ? DelMode::vertex : DelMode::arc};
        auto fast = solve_skew(inst);
        auto slow = brute_skew(inst);
        if (fast.has_value() != slow.has_value()) {
            note = "feasibility mismatch at instance " + std::to_string(done);
            return false;
        }
        if (fast && (!validate_skew(inst, *fast) || static_cast<int>(fast->size()) > inst.k)) {
            note = "invalid solution at instance " + std::to_string(done);
            return false;
        }
        if (inst.mode == DelMode::vertex) {
            EdgeReduction red = vertex_to_edge(inst);
            auto optimum = [](SkewInstance probe) {
                for (int k = 0; k <= probe.k; ++k) {
                    probe.k = k;
                    if (brute_skew(probe)) return k;
                }
                return probe.k + 1;
            };
            if (optimum(inst) != optimum(red.edge_instance)) {
                note = "reduction changed the optimum at instance " + std::to_string(done);
                return false;
            }
        }
        ++done;
    }
    note = "500 instances, both modes, reduction optimum preserved";
    return true;
}

bool criterion8(std::string& note) {
    Rng rng(108);
    const Fraction fractions[3] = {Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)};
    int done = 0;
    while (done < 200) {
        int n = rng.pick(2, 9);
        DiGraph g = gen_random(n, rng.pick(0, std::min(n * (n - 1), 24)), rng.raw());
        int k = rng.pick(0, 2);
        Fraction b = fractions[done % 3];
        DelMode mode = done % 2 ? DelMode::vertex : DelMode::arc;
        BalancedQuery q;
        q.g = g;
        q.k = k;
        q.b = b;
        q.eps = Fraction(0);
        q.mode = mode;
        q.terminals = all_vertices(g);
        BalancedAnswer fast = solve_balanced(q);
        auto slow = brute_balanced(g, k, b, mode);
        if ((fast.outcome == BalancedOutcome::solution) != slow.has_value()) {
            note = "outcome mismatch at instance " + std::to_string(done);
            return false;
        }
        if (fast.outcome == BalancedOutcome::solution) {
            if (static_cast<int>(fast.f.ids.size()) > k || fast.achieved_bound > b) {
                note = "returned f violates the exact bound at instance " + std::to_string(done);
                return false;
            }
        }
        ++done;
    }
    note = "200 instances, outcomes match oracle, exact b bound";
    return true;
}

bool criterion9(std::string& note) {
    Rng rng(109);
    int done = 0;
    while (done < 300) {
        int n = rng.pick(2, 10);
        DiGraph g = gen_random(n, rng.pick(0, std::min(n * (n - 1), 3 * n)), rng.raw());
        VertexSet t;
        for (int v = 0; v < n && t.size() < 4; ++v)
            if (rng.pick(0, 1)) t.push_back(v);
        if (t.empty()) t = {0};
        int c = rng.pick(0, 2);
        SparsifierResult res = build_sparsifier(g, t, c);
        if (static_cast<std::uint64_t>(res.kept.size()) >
            sparsifier_size_bound(static_cast<int>(t.size()), c)) {
            note = "size bound violated at instance " + std::to_string(done);
            return false;
        }
        if (!verify_sparsifier(g, res, t, c).pass) {
            note = "preservation failed at instance " + std::to_string(done);
            return false;
        }
        ++done;
    }
    note = "300 instances, mincuts and important-separator sets preserved";
    return true;
}

bool criterion10(std::string& note) {
    Rng rng(110);
    int closures = 0, preservations = 0;
    for (int trial = 0; trial < 4000 && (closures < 300 || preservations < 300); ++trial) {
        int n = rng.pick(2, 8);
        DiGraph g = gen_random(n, rng.pick(0, std::min(n * (n - 1), 3 * n)), rng.raw());
        VertexId v = rng.pick(0, n - 1);
        DeleteView closed = close_vertices(g, {v});

        if (closures < 300) {
            VertexSet sources, deleted;  // the closed vertex stays internal
            for (int u = 0; u < n; ++u) {
                if (u != v && rng.pick(0, 2) == 0) sources.push_back(u);
                if (u != v && rng.pick(0, 3) == 0) deleted.push_back(u);
            }
            VertexSet rg = reach_set(g, sources, deleted);
            VertexSet rc = closed.map_to_old(
                reach_set(closed.graph, closed.map_to_new(sources), closed.map_to_new(deleted)));
            if (!is_subset(rc, rg) || !is_subset(set_minus(rg, {v}), rc)) {
                note = "closure reachability containment failed";
                return false;
            }
            ++closures;
        }

        if (preservations < 300) {
            auto [a, b] = random_disjoint_pair(rng, n);
            if (a.empty() || b.empty() || set_contains(a, v) || set_contains(b, v)) continue;
            int c = rng.pick(1, 2);
            std::vector<VertexSet> before = brute_important(g, a, b, c);
            bool v_used = false;
            for (const VertexSet& x : before)
                if (set_contains(x, v)) v_used = true;
            if (v_used) continue;
            std::vector<VertexSet> after;
            for (const VertexSet& x :
                 brute_important(closed.graph, closed.map_to_new(a), closed.map_to_new(b), c))
                after.push_back(closed.map_to_old(x));
            std::sort(after.begin(), after.end());
            if (after != before) {
                note = "important-separator sets changed under closure";
                return false;
            }
            ++preservations;
        }
    }
    if (closures < 300 || preservations < 300) {
        note = "insufficient eligible instances (" + std::to_string(closures) + ", " +
               std::to_string(preservations) + ")";
        return false;
    }
    note = "300 reachability containments, 300 preservation equalities";
    return true;
}

std::pair<int, std::string> run_cli(const std::string& args, const std::string& stdin_text) {
    std::string dir = "/tmp/dicut_acceptance";
    if (std::system(("mkdir -p " + dir).c_str()) != 0) return {-1, ""};
    {
        std::FILE* f = std::fopen((dir + "/stdin.txt").c_str(), "w");
        std::fwrite(stdin_text.data(), 1, stdin_text.size(), f);
        std::fclose(f);
    }
    std::string command = g_cli + " " + args + " < " + dir + "/stdin.txt 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buffer{};
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) out.append(buffer.data(), got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool criterion11(std::string& note) {
    if (g_cli.empty()) {
        note = "no CLI path supplied";
        return false;
    }
    std::string star = run_cli("gen star --c 6", "").second;
    std::string rand_graph = run_cli("gen random --n 9 --m 18 --seed 5", "").second;
    if (run_cli("gen random --n 9 --m 18 --seed 5", "").second != rand_graph) {
        note = "gen random not reproducible";
        return false;
    }

    struct Probe {
        std::string args;
        const std::string* input;
        std::vector<std::string> jobs_variants;
    };
    std::vector<Probe> probes{
        {"enum-all-subsets --graph - --S 0 --T 1,2,3,4,5,6 --k 2", &star, {"--jobs 1", "--jobs 2", "--jobs 4"}},
        {"sample-check --graph - --T 0,3,5 --eps 1/3 --k 2", &rand_graph, {"--jobs 1", "--jobs 4"}},
        {"net-check --graph - --T 0,3,5 --eps 1/3 --k 2", &rand_graph, {"--jobs 1", "--jobs 4"}},
        {"detect-check --graph - --T 0,3,5 --eps 1/3 --k 2", &rand_graph, {"--jobs 1", "--jobs 4"}},
        {"balanced-sep --graph - --k 2 --b 1/2 --eps 1/4 --seed 17", &rand_graph, {""}},
        {"sparsify --graph - --terminals 0,4 --c 2", &rand_graph, {"--jobs 1", "--jobs 4"}},
        {"reach-profile --graph - --s 0 --pool 2,3,4 --k 2", &rand_graph, {""}},
    };
    for (const Probe& probe : probes) {
        std::string reference;
        bool first = true;
        for (const std::string& variant : probe.jobs_variants) {
            std::string args = probe.args + (variant.empty() ? "" : " " + variant);
            auto run1 = run_cli(args, *probe.input);
            auto run2 = run_cli(args, *probe.input);
            if (run1.second != run2.second || run1.second.empty()) {
                note = "two runs differ for: " + args;
                return false;
            }
            if (first) {
                reference = run1.second;
                first = false;
            } else if (run1.second != reference) {
                note = "--jobs changed the output for: " + args;
                return false;
            }
        }
    }
    note = "byte-identical across repeat runs and --jobs settings";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli = argv[1];

    struct Criterion {
        int id;
        const char* text;
        std::function<bool(std::string&)> run;
    };
    std::vector<Criterion> criteria{
        {1, "important-separator enumeration equals brute force", criterion1},
        {2, "4^k bound on enumeration output", criterion2},
        {3, "all-subsets counts on the lower-bound families", criterion3},
        {4, "figure-1 tightness and witness reduction", criterion4},
        {5, "reachability profiles equal brute force within bound", criterion5},
        {6, "every net is a detection set", criterion6},
        {7, "skew solver equals brute force; reduction preserves optimum", criterion7},
        {8, "balanced separator exact at eps=0, terminals=V", criterion8},
        {9, "sparsifier preserves mincuts and important separators", criterion9},
        {10, "closure lemmas hold on fuzzed instances", criterion10},
        {11, "CLI determinism across runs and --jobs", criterion11},
    };

    int failures = 0;
    for (auto& c : criteria) {
        std::string note;
        bool ok = false;
        try {
            ok = c.run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", c.id, c.text, note.c_str());
        std::fflush(stdout);
    }
    return failures;
}
