#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dicut/digraph.hpp"
#include "dicut/separators.hpp"
#include "dicut/types.hpp"

namespace dicut {

enum class DelMode { vertex, arc };

// A deletion set: vertex ids or arc indices depending on mode.
struct Deletion {
    DelMode mode = DelMode::vertex;
    std::vector<int> ids;
};

// Ordered pairs (s_i, t_i); a solution must leave no s_i -> t_j path for
// i >= j. Endpoints of one pair must be distinct; sharing across pairs is
// allowed.
struct SkewInstance {
    DiGraph g;
    std::vector<std::pair<VertexId, VertexId>> pairs;
    int k = 0;
    DelMode mode = DelMode::vertex;
};

namespace detail {

inline void check_skew_instance(const SkewInstance& inst) {
    for (const auto& [s, t] : inst.pairs) {
        if (s < 0 || s >= inst.g.n() || t < 0 || t >= inst.g.n())
            throw InvalidQuery("skew pair endpoint out of range");
        if (s == t) throw InvalidQuery("skew pair endpoints must be distinct");
    }
    if (inst.k < 0) throw InvalidQuery("skew budget must be non-negative");
}

}  // namespace detail

// True iff after deleting f there is no s_i -> t_j path for any i >= j.
// Reachability is reflexive, so a live vertex always reaches itself; a pair
// endpoint inside a vertex-mode f yields no path.
inline bool validate_skew(const SkewInstance& inst, const std::vector<int>& f) {
    detail::check_skew_instance(inst);
    const bool vertex_mode = inst.mode == DelMode::vertex;
    VertexSet removed = vertex_mode ? canon(f) : VertexSet{};
    DiGraph pruned = vertex_mode ? DiGraph() : detail::drop_arcs(inst.g, f);
    const DiGraph& h = vertex_mode ? inst.g : pruned;
    for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
        VertexSet reach = reach_set(h, {inst.pairs[i].first}, removed);
        for (std::size_t j = 0; j <= i; ++j)
            if (set_contains(reach, inst.pairs[j].second)) return false;
    }
    return true;
}

// Vertex-to-edge reduction: v splits into v_in = v and v_out = n + v; the
// split arc of vertex v gets arc index v, original arc i becomes arc n + i
// (tail_out -> head_in). Pairs map to (s_in, t_out).
struct EdgeReduction {
    SkewInstance edge_instance;
    int base_n = 0;

    // Normalizes a cut arc (y_out, x_in) to y's split arc, then collects
    // the split-arc owners.
    std::vector<int> to_vertex_solution(const std::vector<int>& arc_solution) const {
        std::vector<int> vertices;
        const int m = edge_instance.g.m() - base_n;
        for (int id : arc_solution) {
            if (id < 0 || id >= base_n + m) throw InvalidQuery("edge solution arc out of range");
            if (id < base_n)
                vertices.push_back(id);
            else
                vertices.push_back(edge_instance.g.arcs()[id].tail);  // tail == y_out == n + y
        }
        for (int& v : vertices)
            if (v >= base_n) v -= base_n;
        return canon(vertices);
    }
};

inline EdgeReduction vertex_to_edge(const SkewInstance& inst) {
    if (inst.mode != DelMode::vertex) throw InvalidQuery("vertex_to_edge: instance not in vertex mode");
    detail::check_skew_instance(inst);
    const int n = inst.g.n();
    std::vector<Arc> arcs;
    arcs.reserve(n + inst.g.m());
    for (VertexId v = 0; v < n; ++v) arcs.push_back({v, n + v});
    for (const Arc& a : inst.g.arcs()) arcs.push_back({n + a.tail, a.head});

    EdgeReduction red;
    red.base_n = n;
    red.edge_instance.g = DiGraph(2 * n, std::move(arcs));
    for (const auto& [s, t] : inst.pairs) red.edge_instance.pairs.emplace_back(s, n + t);
    red.edge_instance.k = inst.k;
    red.edge_instance.mode = DelMode::arc;
    return red;
}

namespace detail {

// Arc-mode branching (pushing-lemma style): pick the highest-index source
// that still reaches a forbidden sink and branch over all important arc
// separators between it and the union of its forbidden sinks.
inline std::optional<std::vector<int>> solve_skew_arcs(
    const DiGraph& g, const std::vector<int>& arc_orig,
    const std::vector<std::pair<VertexId, VertexId>>& pairs, int k) {
    int worst = -1;
    for (int i = static_cast<int>(pairs.size()) - 1; i >= 0 && worst < 0; --i) {
        VertexSet reach = reach_set(g, {pairs[i].first}, {});
        for (int j = 0; j <= i; ++j)
            if (set_contains(reach, pairs[j].second)) {
                worst = i;
                break;
            }
    }
    if (worst < 0) return std::vector<int>{};
    if (k <= 0) return std::nullopt;

    VertexSet sinks;
    for (int j = 0; j <= worst; ++j) sinks.push_back(pairs[j].second);
    sinks = canon(sinks);
    if (set_contains(sinks, pairs[worst].first)) return std::nullopt;  // uncuttable self-constraint

    for (const std::vector<int>& z : enum_important_arcs(g, {pairs[worst].first}, sinks, k)) {
        DiGraph next = drop_arcs(g, z);
        std::vector<int> next_orig;
        std::vector<char> gone(g.m(), 0);
        for (int id : z) gone[id] = 1;
        for (int i = 0; i < g.m(); ++i)
            if (!gone[i]) next_orig.push_back(arc_orig[i]);
        auto sub = solve_skew_arcs(next, next_orig, pairs, k - static_cast<int>(z.size()));
        if (sub) {
            std::vector<int> out = *sub;
            for (int id : z) out.push_back(arc_orig[id]);
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Exact FPT solver. Vertex mode reduces to arc mode; `undeletable` (vertex
// mode only) pins vertices out of any solution by multiplying their split
// arcs beyond the budget.
inline std::optional<std::vector<int>> solve_skew(const SkewInstance& inst,
                                                  const VertexSet& undeletable = {}) {
    detail::check_skew_instance(inst);
    if (inst.mode == DelMode::arc) {
        std::vector<int> identity(inst.g.m());
        for (int i = 0; i < inst.g.m(); ++i) identity[i] = i;
        return detail::solve_skew_arcs(inst.g, identity, inst.pairs, inst.k);
    }

    EdgeReduction red = vertex_to_edge(inst);
    DiGraph base = red.edge_instance.g;
    std::vector<Arc> arcs = base.arcs();
    const int real_arcs = static_cast<int>(arcs.size());
    for (VertexId v : undeletable)
        for (int copy = 0; copy < inst.k + 1; ++copy) arcs.push_back({v, inst.g.n() + v});
    DiGraph padded(base.n(), std::move(arcs));

    std::vector<int> identity(padded.m());
    for (int i = 0; i < padded.m(); ++i) identity[i] = i;
    auto arc_solution = detail::solve_skew_arcs(padded, identity, red.edge_instance.pairs, inst.k);
    if (!arc_solution) return std::nullopt;
    for (int& id : *arc_solution)
        if (id >= real_arcs) throw InvalidQuery("solve_skew: solution touched a frozen vertex");
    return red.to_vertex_solution(*arc_solution);
}

// Oracle: minimum solution by exhaustive search in (size, lex) order.
inline std::optional<std::vector<int>> brute_skew(const SkewInstance& inst) {
    detail::check_skew_instance(inst);
    std::vector<int> universe;
    const int limit = inst.mode == DelMode::vertex ? inst.g.n() : inst.g.m();
    for (int i = 0; i < limit; ++i) universe.push_back(i);
    std::optional<std::vector<int>> best;
    for_each_subset(universe, 0, inst.k, [&](const std::vector<int>& f) {
        if (validate_skew(inst, f)) {
            best = f;
            return false;
        }
        return true;
    });
    return best;
}

}  // namespace dicut
