#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dicut/digraph.hpp"
#include "dicut/types.hpp"

namespace dicut {

struct GeneratedGraph {
    DiGraph graph;
    VertexSet source_role;  // S
    VertexSet sink_role;    // T
    VertexSet cut_role;     // the distinguished separator, when the family has one
    std::vector<std::pair<std::string, VertexId>> names;
};

// Bidirectional star: vertex 0 is the center (S), leaves 1..c are T.
inline GeneratedGraph gen_star(int c) {
    if (c < 1) throw InvalidQuery("gen_star: need at least one leaf");
    std::vector<Arc> arcs;
    for (VertexId leaf = 1; leaf <= c; ++leaf) {
        arcs.push_back({0, leaf});
        arcs.push_back({leaf, 0});
    }
    GeneratedGraph out;
    out.graph = DiGraph(c + 1, std::move(arcs));
    out.source_role = {0};
    for (VertexId leaf = 1; leaf <= c; ++leaf) out.sink_role.push_back(leaf);
    return out;
}

// Star with the center blown up to a bidirectional clique of k+1 core
// vertices (T = 0..k); c leaves (S) attach bidirectionally to every core
// vertex and to no other leaf.
inline GeneratedGraph gen_corestar(int c, int k) {
    if (c < 1 || k < 1) throw InvalidQuery("gen_corestar: parameters must be positive");
    std::vector<Arc> arcs;
    for (VertexId i = 0; i <= k; ++i)
        for (VertexId j = i + 1; j <= k; ++j) {
            arcs.push_back({i, j});
            arcs.push_back({j, i});
        }
    for (VertexId leaf = k + 1; leaf <= k + c; ++leaf)
        for (VertexId core = 0; core <= k; ++core) {
            arcs.push_back({leaf, core});
            arcs.push_back({core, leaf});
        }
    GeneratedGraph out;
    out.graph = DiGraph(c + k + 1, std::move(arcs));
    for (VertexId core = 0; core <= k; ++core) out.sink_role.push_back(core);
    for (VertexId leaf = k + 1; leaf <= k + c; ++leaf) out.source_role.push_back(leaf);
    return out;
}

// The tight witness-reduction example: s fans to u1..u3, each u_i feeds two
// private v's, each v feeds its private sink b. X = {u1,u2,u3} is important
// for ({s}, B) but for no proper subset of B.
inline GeneratedGraph gen_fig1() {
    // ids: s=0, u1..u3 = 1..3, v1..v6 = 4..9, b1..b6 = 10..15
    std::vector<Arc> arcs;
    for (VertexId u = 1; u <= 3; ++u) arcs.push_back({0, u});
    for (VertexId u = 1; u <= 3; ++u) {
        arcs.push_back({u, 3 + 2 * u - 1});
        arcs.push_back({u, 3 + 2 * u});
    }
    for (VertexId j = 1; j <= 6; ++j) arcs.push_back({3 + j, 9 + j});

    GeneratedGraph out;
    out.graph = DiGraph(16, std::move(arcs));
    out.source_role = {0};
    out.cut_role = {1, 2, 3};
    for (VertexId j = 10; j <= 15; ++j) out.sink_role.push_back(j);
    out.names.emplace_back("s", 0);
    for (int i = 1; i <= 3; ++i) out.names.emplace_back("u" + std::to_string(i), i);
    for (int i = 1; i <= 6; ++i) out.names.emplace_back("v" + std::to_string(i), 3 + i);
    for (int i = 1; i <= 6; ++i) out.names.emplace_back("b" + std::to_string(i), 9 + i);
    return out;
}

namespace detail {

inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t r) {
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % r;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % r;
}

// Floyd's distinct sampling of m values in [0, space).
inline std::vector<std::uint64_t> sample_distinct(std::uint64_t space, std::uint64_t m,
                                                  std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> chosen;
    for (std::uint64_t j = space - m; j < space; ++j) {
        std::uint64_t x = bounded_draw(rng, j + 1);
        bool dup = false;
        for (std::uint64_t c : chosen)
            if (c == x) {
                dup = true;
                break;
            }
        chosen.push_back(dup ? j : x);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

}  // namespace detail

// Uniform simple digraph (no self-loops, no parallel arcs) with exactly m
// arcs, deterministic per seed. Arcs come out sorted.
inline DiGraph gen_random(int n, long long m, std::uint64_t seed) {
    if (n < 0 || m < 0) throw InvalidQuery("gen_random: negative parameter");
    const long long space = static_cast<long long>(n) * (n - 1);
    if (m > space) throw InvalidQuery("gen_random: too many arcs for a simple digraph");
    std::vector<Arc> arcs;
    if (m > 0)
        for (std::uint64_t p : detail::sample_distinct(static_cast<std::uint64_t>(space),
                                                       static_cast<std::uint64_t>(m), seed)) {
            VertexId u = static_cast<VertexId>(p / static_cast<std::uint64_t>(n - 1));
            VertexId r = static_cast<VertexId>(p % static_cast<std::uint64_t>(n - 1));
            VertexId v = r + (r >= u ? 1 : 0);
            arcs.push_back({u, v});
        }
    return DiGraph(n, std::move(arcs));
}

// DAG variant: arcs only from lower to higher id.
inline DiGraph gen_random_dag(int n, long long m, std::uint64_t seed) {
    if (n < 0 || m < 0) throw InvalidQuery("gen_random_dag: negative parameter");
    const long long space = static_cast<long long>(n) * (n - 1) / 2;
    if (m > space) throw InvalidQuery("gen_random_dag: too many arcs for a DAG");
    std::vector<Arc> arcs;
    if (m > 0)
        for (std::uint64_t p : detail::sample_distinct(static_cast<std::uint64_t>(space),
                                                       static_cast<std::uint64_t>(m), seed)) {
            // decode index p into the pair (u, v) with u < v
            VertexId u = 0;
            std::uint64_t row = static_cast<std::uint64_t>(n - 1);
            std::uint64_t rem = p;
            while (rem >= row) {
                rem -= row;
                --row;
                ++u;
            }
            VertexId v = u + 1 + static_cast<VertexId>(rem);
            arcs.push_back({u, v});
        }
    return DiGraph(n, std::move(arcs));
}

}  // namespace dicut
