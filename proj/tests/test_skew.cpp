#include <catch2/catch_amalgamated.hpp>

#include "dicut/skew.hpp"
#include "test_util.hpp"

using namespace dicut;
using dicut::test::Rng;

namespace {

SkewInstance path_instance(int k, DelMode mode) {
    return SkewInstance{parse_graph("3 2\n0 1\n1 2\n"), {{0, 2}}, k, mode};
}

SkewInstance rng_instance(Rng& rng) {
    int n = rng.pick(2, 8);
    DiGraph g = gen_random(n, rng.pick(0, std::min(n * (n - 1), 14)), rng.raw());
    std::vector<std::pair<VertexId, VertexId>> pairs;
    int npairs = rng.pick(1, 4);
    for (int p = 0; p < npairs; ++p) {
        int s = rng.pick(0, n - 1), t = rng.pick(0, n - 1);
        if (s == t) t = (t + 1) % n;
        pairs.emplace_back(s, t);
    }
    return SkewInstance{g, pairs, rng.pick(0, 3), rng.raw() % 2 ? DelMode::vertex : DelMode::arc};
}

}  // namespace

TEST_CASE("validate_skew examples") {
    REQUIRE(validate_skew(path_instance(1, DelMode::vertex), {1}));
    REQUIRE_FALSE(validate_skew(path_instance(1, DelMode::vertex), {}));

    SkewInstance two{parse_graph("4 3\n0 2\n1 2\n1 3\n"), {{0, 2}, {1, 3}}, 2, DelMode::vertex};
    REQUIRE(validate_skew(two, {1, 2}));
    REQUIRE_FALSE(validate_skew(two, {2}));

    REQUIRE_THROWS_AS(validate_skew(SkewInstance{parse_graph("2 0\n"), {{0, 0}}, 1, DelMode::vertex}, {}),
                      InvalidQuery);
}

TEST_CASE("vertex_to_edge construction") {
    EdgeReduction red = vertex_to_edge(path_instance(1, DelMode::vertex));
    REQUIRE(red.edge_instance.g.n() == 6);
    REQUIRE(red.edge_instance.g.m() == 5);
    REQUIRE(red.edge_instance.mode == DelMode::arc);
    REQUIRE(red.edge_instance.pairs == std::vector<std::pair<VertexId, VertexId>>{{0, 5}});
    // split arc of vertex 1 has index 1; deleting it solves the instance
    REQUIRE(validate_skew(red.edge_instance, {1}));
    REQUIRE(red.to_vertex_solution({1}) == std::vector<int>{1});
    // a structural arc (y_out, x_in) normalizes to its owner y
    REQUIRE(red.to_vertex_solution({3}) == std::vector<int>{0});

    SkewInstance lonely{parse_graph("1 0\n"), {}, 0, DelMode::vertex};
    EdgeReduction lr = vertex_to_edge(lonely);
    REQUIRE(lr.edge_instance.g.n() == 2);
    REQUIRE(lr.to_vertex_solution({}).empty());
    REQUIRE_THROWS_AS(vertex_to_edge(SkewInstance{parse_graph("1 0\n"), {}, 0, DelMode::arc}),
                      InvalidQuery);
}

TEST_CASE("solve_skew examples") {
    auto easy = solve_skew(path_instance(1, DelMode::vertex));
    REQUIRE(easy.has_value());
    REQUIRE(easy->size() == 1);
    REQUIRE(validate_skew(path_instance(1, DelMode::vertex), *easy));

    SkewInstance two{parse_graph("4 3\n0 2\n1 2\n1 3\n"), {{0, 2}, {1, 3}}, 1, DelMode::vertex};
    REQUIRE_FALSE(solve_skew(two).has_value());
    REQUIRE_FALSE(brute_skew(two).has_value());

    SkewInstance satisfied{parse_graph("3 1\n2 1\n"), {{0, 1}}, 0, DelMode::vertex};
    auto trivial = solve_skew(satisfied);
    REQUIRE(trivial.has_value());
    REQUIRE(trivial->empty());
}

TEST_CASE("solve_skew honors an undeletable set") {
    SkewInstance inst = path_instance(1, DelMode::vertex);
    auto pinned = solve_skew(inst, {1});
    REQUIRE(pinned.has_value());
    REQUIRE_FALSE(set_contains(canon(*pinned), 1));
    REQUIRE(validate_skew(inst, *pinned));
}

TEST_CASE("solver matches oracle and the reduction preserves the optimum") {
    Rng rng(11001);
    for (int trial = 0; trial < 250; ++trial) {
        SkewInstance inst = rng_instance(rng);
        auto fast = solve_skew(inst);
        auto slow = brute_skew(inst);
        REQUIRE(fast.has_value() == slow.has_value());
        if (fast) {
            REQUIRE(fast->size() <= static_cast<std::size_t>(inst.k));
            REQUIRE(validate_skew(inst, *fast));
        }
        if (inst.mode == DelMode::vertex) {
            EdgeReduction red = vertex_to_edge(inst);
            auto optimum = [&](SkewInstance probe) {
                for (int k = 0; k <= probe.k; ++k) {
                    probe.k = k;
                    if (brute_skew(probe)) return k;
                }
                return probe.k + 1;
            };
            REQUIRE(optimum(inst) == optimum(red.edge_instance));
        }
    }
}
