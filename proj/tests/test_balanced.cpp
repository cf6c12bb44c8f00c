#include <catch2/catch_amalgamated.hpp>

#include "dicut/balanced.hpp"
#include "test_util.hpp"

using namespace dicut;
using dicut::test::Rng;
using dicut::test::all_vertices;

namespace {
const char* kCyc3 = "3 3\n0 1\n1 2\n2 0\n";

BalancedQuery query(const DiGraph& g, int k, Fraction b, DelMode mode) {
    BalancedQuery q;
    q.g = g;
    q.k = k;
    q.b = b;
    q.eps = Fraction(0);
    q.mode = mode;
    q.terminals = VertexSet{};
    for (VertexId v = 0; v < g.n(); ++v) q.terminals->push_back(v);
    return q;
}

bool satisfies_bound(const DiGraph& g, const Deletion& f, const Fraction& b) {
    std::vector<VertexSet> sccs;
    if (f.mode == DelMode::vertex)
        sccs = scc_decompose(delete_view(g, f.ids).graph).components;
    else
        sccs = scc_decompose(detail::drop_arcs(g, f.ids)).components;
    for (const VertexSet& c : sccs)
        if (Fraction(static_cast<long long>(c.size()), 1) > b * static_cast<long long>(g.n()))
            return false;
    return true;
}
}  // namespace

TEST_CASE("solve_balanced examples") {
    DiGraph cyc3 = parse_graph(kCyc3);
    BalancedAnswer one = solve_balanced(query(cyc3, 1, Fraction(1, 3), DelMode::vertex));
    REQUIRE(one.outcome == BalancedOutcome::solution);
    REQUIRE(one.f.ids.size() == 1);
    REQUIRE(one.achieved_bound <= Fraction(1, 3));
    REQUIRE(satisfies_bound(cyc3, one.f, Fraction(1, 3)));

    BalancedAnswer none = solve_balanced(query(cyc3, 0, Fraction(1, 3), DelMode::vertex));
    REQUIRE(none.outcome == BalancedOutcome::no_separator);

    Rng rng(12001);
    DiGraph g = rng.graph(7);
    if (g.n() >= 2) {
        BalancedAnswer free = solve_balanced(query(g, 2, Fraction(1), DelMode::vertex));
        REQUIRE(free.outcome == BalancedOutcome::solution);
        REQUIRE(free.f.ids.empty());
    }

    BalancedQuery bad = query(cyc3, 1, Fraction(1, 2), DelMode::vertex);
    bad.terminals.reset();
    REQUIRE_THROWS_AS(solve_balanced(bad), InvalidQuery);
}

TEST_CASE("solve_balanced with a seeded terminal draw") {
    DiGraph g = gen_random(8, 20, 99);
    BalancedQuery q;
    q.g = g;
    q.k = 2;
    q.b = Fraction(1, 2);
    q.eps = Fraction(1, 4);
    q.mode = DelMode::vertex;
    q.seed = 7;
    BalancedAnswer a1 = solve_balanced(q);
    BalancedAnswer a2 = solve_balanced(q);
    REQUIRE(a1.terminals_used == a2.terminals_used);
    REQUIRE(a1.outcome == a2.outcome);
    if (a1.outcome == BalancedOutcome::solution) REQUIRE(a1.f.ids == a2.f.ids);
}

TEST_CASE("build_skew_from_blocks examples") {
    DiGraph path = parse_graph("3 2\n0 1\n1 2\n");

    BlockSkew forward = build_skew_from_blocks(path, {{0}, {2}}, DelMode::vertex, 1);
    REQUIRE(forward.inst.pairs.size() == 1);
    // pair (block 2's vertex, block 1's vertex): forbids 2 -> 0 reachability
    REQUIRE(forward.inst.pairs[0] ==
            std::pair<VertexId, VertexId>{forward.block_vertex[1], forward.block_vertex[0]});
    REQUIRE(validate_skew(forward.inst, {}));

    BlockSkew backward = build_skew_from_blocks(path, {{2}, {0}}, DelMode::vertex, 1);
    REQUIRE_FALSE(validate_skew(backward.inst, {}));
    auto fix = brute_skew(backward.inst);
    REQUIRE(fix.has_value());
    REQUIRE(fix->size() == 1);

    BlockSkew single = build_skew_from_blocks(path, {{0, 2}}, DelMode::vertex, 0);
    REQUIRE(single.inst.pairs.empty());

    REQUIRE_THROWS_AS(build_skew_from_blocks(path, {{0}, {0}}, DelMode::vertex, 1), InvalidQuery);
    REQUIRE_THROWS_AS(build_skew_from_blocks(path, {{0}, {}}, DelMode::vertex, 1), InvalidQuery);
}

TEST_CASE("contraction keeps parallel arcs and self-loops") {
    DiGraph g = parse_graph("4 4\n0 1\n0 1\n1 2\n2 1\n");
    BlockSkew bs = build_skew_from_blocks(g, {{1, 2}, {3}}, DelMode::arc, 2);
    REQUIRE(bs.inst.g.m() == 4);  // both parallels survive; 1<->2 become self-loops
    int self_loops = 0;
    for (const Arc& a : bs.inst.g.arcs())
        if (a.tail == a.head) ++self_loops;
    REQUIRE(self_loops == 2);
}

TEST_CASE("extract_prefix_bisection examples") {
    DiGraph path = parse_graph("3 2\n0 1\n1 2\n");
    Bisection b1 = extract_prefix_bisection(path, Deletion{DelMode::vertex, {}}, Fraction(1, 3));
    REQUIRE(b1.a == VertexSet{0});
    REQUIRE(b1.b == VertexSet{1, 2});

    DiGraph cyc3 = parse_graph(kCyc3);
    Bisection b2 = extract_prefix_bisection(cyc3, Deletion{DelMode::vertex, {0}}, Fraction(1, 2));
    REQUIRE(b2.a == VertexSet{1});
    REQUIRE(b2.b == VertexSet{2});

    DiGraph lonely = parse_graph("1 0\n");
    REQUIRE_THROWS_AS(extract_prefix_bisection(lonely, Deletion{DelMode::vertex, {}}, Fraction(1, 2)),
                      InvalidQuery);
    REQUIRE_THROWS_AS(extract_prefix_bisection(path, Deletion{DelMode::vertex, {}}, Fraction(1)),
                      InvalidQuery);
}

TEST_CASE("bisection leaves no backward arc") {
    Rng rng(12002);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 40; ++trial) {
        DiGraph g = rng.graph(9);
        if (g.n() < 3) continue;
        auto best = brute_balanced(g, 2, Fraction(1, 2), DelMode::vertex);
        if (!best) continue;
        Bisection bi;
        try {
            bi = extract_prefix_bisection(g, *best, Fraction(1, 2));
        } catch (const InvalidQuery&) {
            continue;  // too small after deletion
        }
        ++done;
        VertexSet deleted = canon(best->ids);
        for (const Arc& a : g.arcs()) {
            if (set_contains(deleted, a.tail) || set_contains(deleted, a.head)) continue;
            bool backward = set_contains(bi.b, a.tail) && set_contains(bi.a, a.head);
            REQUIRE_FALSE(backward);
        }
    }
    REQUIRE(done >= 20);
}

TEST_CASE("brute_balanced examples") {
    DiGraph cyc3 = parse_graph(kCyc3);
    auto one = brute_balanced(cyc3, 1, Fraction(1, 3), DelMode::vertex);
    REQUIRE(one.has_value());
    REQUIRE(one->ids == std::vector<int>{0});

    auto whole = brute_balanced(cyc3, 1, Fraction(1), DelMode::vertex);
    REQUIRE(whole.has_value());
    REQUIRE(whole->ids.empty());

    DiGraph twin = parse_graph("4 4\n0 1\n1 0\n2 3\n3 2\n");
    auto split = brute_balanced(twin, 2, Fraction(1, 4), DelMode::vertex);
    REQUIRE(split.has_value());
    REQUIRE(split->ids == std::vector<int>{0, 2});
}

TEST_CASE("solver agrees with the oracle at eps = 0 with all vertices as terminals") {
    Rng rng(12003);
    const Fraction fractions[3] = {Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)};
    for (int trial = 0; trial < 60; ++trial) {
        int n = rng.pick(2, 9);
        DiGraph g = gen_random(n, rng.pick(0, std::min(n * (n - 1), 20)), rng.raw());
        int k = rng.pick(0, 2);
        Fraction b = fractions[trial % 3];
        DelMode mode = trial % 2 ? DelMode::vertex : DelMode::arc;
        BalancedAnswer fast = solve_balanced(query(g, k, b, mode));
        auto slow = brute_balanced(g, k, b, mode);
        REQUIRE((fast.outcome == BalancedOutcome::solution) == slow.has_value());
        if (fast.outcome == BalancedOutcome::solution) {
            REQUIRE(static_cast<int>(fast.f.ids.size()) <= k);
            REQUIRE(satisfies_bound(g, fast.f, b));
            REQUIRE(fast.achieved_bound <= b);
        }
    }
}
