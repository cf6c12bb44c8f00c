#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dicut/digraph.hpp"
#include "dicut/fraction.hpp"
#include "dicut/sampling.hpp"
#include "dicut/skew.hpp"
#include "dicut/types.hpp"

namespace dicut {

struct BalancedQuery {
    DiGraph g;
    int k = 0;
    Fraction b{1, 2};
    Fraction eps{0};
    DelMode mode = DelMode::vertex;
    std::optional<VertexSet> terminals;
    std::optional<std::uint64_t> seed;
    Fraction c{1};  // sampling constant used when drawing terminals by seed
};

enum class BalancedOutcome { solution, no_separator };

struct BalancedAnswer {
    BalancedOutcome outcome = BalancedOutcome::no_separator;
    Deletion f;
    Fraction achieved_bound{0};  // max SCC size / n of g \ f, exact
    VertexSet terminals_used;
};

// Contraction of ordered terminal blocks into single vertices plus the skew
// pairs forbidding exactly strictly-backward block reachability: pair p is
// (block p+1, block p), so "no s_i -> t_j path for i >= j" forbids
// block_m -> block_j reach for every m > j and nothing else.
struct BlockSkew {
    SkewInstance inst;
    std::vector<VertexId> vmap;          // instance vertex -> original (-1 for blocks)
    std::vector<VertexId> block_vertex;  // per block, its contracted vertex id
    std::vector<int> arc_orig;           // instance arc -> original arc index
};

inline BlockSkew build_skew_from_blocks(const DiGraph& g, const std::vector<VertexSet>& blocks,
                                        DelMode mode, int k) {
    std::vector<int> owner(g.n(), -1);
    for (std::size_t p = 0; p < blocks.size(); ++p) {
        if (blocks[p].empty()) throw InvalidQuery("build_skew_from_blocks: empty block");
        for (VertexId v : blocks[p]) {
            if (v < 0 || v >= g.n()) throw InvalidQuery("build_skew_from_blocks: vertex out of range");
            if (owner[v] != -1) throw InvalidQuery("build_skew_from_blocks: overlapping blocks");
            owner[v] = static_cast<int>(p);
        }
    }

    BlockSkew out;
    std::vector<VertexId> remap(g.n(), -1);
    for (VertexId v = 0; v < g.n(); ++v)
        if (owner[v] < 0) {
            remap[v] = static_cast<VertexId>(out.vmap.size());
            out.vmap.push_back(v);
        }
    for (std::size_t p = 0; p < blocks.size(); ++p) {
        VertexId bv = static_cast<VertexId>(out.vmap.size());
        out.block_vertex.push_back(bv);
        out.vmap.push_back(-1);
        for (VertexId v : blocks[p]) remap[v] = bv;
    }

    std::vector<Arc> arcs;  // contraction keeps parallel arcs and self-loops
    arcs.reserve(g.arcs().size());
    for (int i = 0; i < g.m(); ++i) {
        const Arc& a = g.arcs()[i];
        arcs.push_back({remap[a.tail], remap[a.head]});
        out.arc_orig.push_back(i);
    }
    out.inst.g = DiGraph(static_cast<int>(out.vmap.size()), std::move(arcs));
    for (std::size_t p = 0; p + 1 < blocks.size(); ++p)
        out.inst.pairs.emplace_back(out.block_vertex[p + 1], out.block_vertex[p]);
    out.inst.k = k;
    out.inst.mode = mode;
    return out;
}

namespace detail {

inline long long floor_frac(const Fraction& f) {
    long long q = f.numerator() / f.denominator();
    if (f.numerator() % f.denominator() != 0 && f.numerator() < 0) --q;
    return q;
}

inline long long ceil_frac(const Fraction& f) {
    long long q = f.numerator() / f.denominator();
    if (f.numerator() % f.denominator() != 0 && f.numerator() > 0) ++q;
    return q;
}

// Largest integer strictly below f.
inline long long strict_below(const Fraction& f) {
    long long fl = floor_frac(f);
    return Fraction(fl, 1) == f ? fl - 1 : fl;
}

struct BalancedSearch {
    const DiGraph& g;
    const BalancedQuery& q;
    VertexSet terminals;   // full terminal set, original ids
    long long tau;         // |terminals|
    Fraction term_cap;     // (b + eps) * tau: max terminals per block / SCC

    // Per-deletion-guess state (vertex mode guesses D, a terminal subset).
    VertexSet guess_deleted;
    DeleteView alive;      // g minus guess_deleted
    VertexSet alive_terms; // surviving terminals, alive ids
    int budget = 0;

    std::set<std::vector<VertexSet>> solved_leaves;
    std::map<std::vector<VertexSet>, bool> prefix_feasible;

    BalancedSearch(const DiGraph& graph, const BalancedQuery& query, VertexSet terms)
        : g(graph), q(query), terminals(std::move(terms)) {
        tau = static_cast<long long>(terminals.size());
        term_cap = (q.b + q.eps) * tau;
    }

    bool scc_terminal_counts_ok(const std::vector<int>& f) const {
        std::vector<VertexSet> sccs;
        if (q.mode == DelMode::vertex) {
            DeleteView view = delete_view(g, canon(f));
            for (const VertexSet& c : scc_decompose(view.graph).components)
                sccs.push_back(view.map_to_old(c));
        } else {
            for (const VertexSet& c : scc_decompose(drop_arcs(g, f)).components) sccs.push_back(c);
        }
        for (const VertexSet& c : sccs)
            if (Fraction(static_cast<long long>(set_intersect(c, terminals).size()), 1) > term_cap)
                return false;
        return true;
    }

    // Solves the contracted skew instance for the ordered nonempty blocks
    // (alive ids). Returns the candidate deletion set in original ids.
    std::optional<std::vector<int>> solve_blocks(const std::vector<VertexSet>& blocks) {
        BlockSkew bs = build_skew_from_blocks(alive.graph, blocks, q.mode, budget);
        VertexSet frozen = bs.block_vertex;
        auto sol = solve_skew(bs.inst, canon(frozen));
        if (!sol) return std::nullopt;
        std::vector<int> out;
        if (q.mode == DelMode::vertex) {
            for (int id : *sol) {
                if (bs.vmap[id] < 0) return std::nullopt;  // frozen; cannot happen
                out.push_back(alive.to_old(bs.vmap[id]));
            }
            for (VertexId v : guess_deleted) out.push_back(v);
        } else {
            // arc ids: contracted arc -> alive arc -> original arc
            for (int id : *sol) out.push_back(alive_arc_orig[bs.arc_orig[id]]);
        }
        return canon(out);
    }

    bool blocks_feasible(const std::vector<VertexSet>& blocks) {
        if (blocks.size() <= 1) return true;
        auto it = prefix_feasible.find(blocks);
        if (it != prefix_feasible.end()) return it->second;
        BlockSkew bs = build_skew_from_blocks(alive.graph, blocks, q.mode, budget);
        bool ok = solve_skew(bs.inst, canon(bs.block_vertex)).has_value();
        prefix_feasible.emplace(blocks, ok);
        return ok;
    }

    std::optional<std::vector<int>> try_leaf(const std::vector<VertexSet>& blocks) {
        if (!solved_leaves.insert(blocks).second) return std::nullopt;
        auto candidate = solve_blocks(blocks);
        if (!candidate) return std::nullopt;
        if (static_cast<int>(candidate->size()) > q.k) return std::nullopt;
        if (!scc_terminal_counts_ok(*candidate)) return std::nullopt;
        return candidate;
    }

    std::vector<int> alive_arc_orig;  // alive graph arc index -> original arc index

    // Case 1: interval structure over the topological order. Enumerates,
    // interval by interval, the head block (everything before the closing
    // SCC) and the tail block (the closing SCC's terminals).
    std::optional<std::vector<int>> case1(int interval, long long t_max, const VertexSet& remaining,
                                          std::vector<VertexSet>& blocks) {
        if (remaining.empty()) return try_leaf(blocks);
        if (interval > t_max) return std::nullopt;

        const long long head_cap = std::max<long long>(0, strict_below(q.b * tau));
        const long long tail_cap = std::max<long long>(0, floor_frac(term_cap));
        const long long interval_min = ceil_frac(q.b * tau);

        std::optional<std::vector<int>> found;
        for_each_subset(remaining, 0, static_cast<int>(std::min<long long>(head_cap, remaining.size())),
                        [&](const VertexSet& head) {
            VertexSet rest = set_minus(remaining, head);
            for_each_subset(rest, 0, static_cast<int>(std::min<long long>(tail_cap, rest.size())),
                            [&](const VertexSet& tail) {
                VertexSet next = set_minus(rest, tail);
                const long long used = static_cast<long long>(head.size() + tail.size());
                std::size_t pushed = 0;
                if (!head.empty()) { blocks.push_back(head); ++pushed; }
                if (!tail.empty()) { blocks.push_back(tail); ++pushed; }
                if (next.empty()) {
                    found = try_leaf(blocks);
                } else if (interval < t_max && !tail.empty() && used >= interval_min &&
                           blocks_feasible(blocks)) {
                    found = case1(interval + 1, t_max, next, blocks);
                }
                while (pushed--) blocks.pop_back();
                return !found.has_value();
            });
            return !found.has_value();
        });
        return found;
    }

    // Case 2: ordered partition of the surviving terminals into the groups
    // induced by terminal-containing SCCs.
    std::optional<std::vector<int>> case2(const VertexSet& remaining, std::vector<VertexSet>& blocks) {
        if (remaining.empty()) return try_leaf(blocks);
        const long long block_cap = std::max<long long>(0, floor_frac(term_cap));

        std::optional<std::vector<int>> found;
        for_each_subset(remaining, 1, static_cast<int>(std::min<long long>(block_cap, remaining.size())),
                        [&](const VertexSet& w) {
            blocks.push_back(w);
            if (blocks_feasible(blocks)) found = case2(set_minus(remaining, w), blocks);
            blocks.pop_back();
            return !found.has_value();
        });
        return found;
    }
};

}  // namespace detail

// FPT directed balanced separator. With an (eps,k)-sample terminal set the
// answer follows the two-sided guarantee: a returned f has every SCC of
// g \ f within (b + 2 eps) n, and no_separator certifies that no b-balanced
// deletion set of size <= k exists. Every returned candidate is validated
// against the (b + eps)|T| terminal bound before acceptance.
inline BalancedAnswer solve_balanced(const BalancedQuery& q) {
    if (q.b <= Fraction(0) || q.b > Fraction(1)) throw InvalidQuery("solve_balanced: b out of range");
    if (q.eps < Fraction(0) || q.eps >= Fraction(1))
        throw InvalidQuery("solve_balanced: eps out of range");
    if (q.k < 0) throw InvalidQuery("solve_balanced: negative budget");

    VertexSet terminals;
    if (q.terminals) {
        terminals = canon(*q.terminals);
        for (VertexId v : terminals)
            if (v < 0 || v >= q.g.n()) throw InvalidQuery("solve_balanced: terminal out of range");
    } else if (q.seed) {
        int want = prescribed_size(SetKind::sample, q.k, q.eps, q.c);
        terminals = draw_terminals(q.g, std::min(want, q.g.n()), *q.seed);
    } else {
        throw InvalidQuery("solve_balanced: supply terminals or a seed");
    }

    detail::BalancedSearch search(q.g, q, terminals);
    const long long t_max = detail::ceil_frac(Fraction(q.b.denominator(), q.b.numerator()));
    const bool use_case1 = 2 * t_max + 1 <= search.tau + 1;

    std::vector<VertexSet> deletion_guesses;
    if (q.mode == DelMode::vertex) {
        for_each_subset(terminals, 0, q.k, [&](const VertexSet& d) {
            deletion_guesses.push_back(d);
            return true;
        });
    } else {
        deletion_guesses.push_back({});
    }

    std::optional<std::vector<int>> found;
    for (const VertexSet& d : deletion_guesses) {
        search.guess_deleted = d;
        search.budget = q.k - static_cast<int>(d.size());
        search.alive = delete_view(q.g, d);
        search.alive_terms = search.alive.map_to_new(set_minus(terminals, d));
        search.alive_arc_orig.clear();
        if (q.mode == DelMode::arc)
            for (int i = 0; i < q.g.m(); ++i) search.alive_arc_orig.push_back(i);
        search.solved_leaves.clear();
        search.prefix_feasible.clear();

        std::vector<VertexSet> blocks;
        found = use_case1 ? search.case1(1, t_max, search.alive_terms, blocks)
                          : search.case2(search.alive_terms, blocks);
        if (found) break;
    }

    BalancedAnswer answer;
    answer.terminals_used = terminals;
    if (!found) return answer;

    answer.outcome = BalancedOutcome::solution;
    answer.f = Deletion{q.mode, *found};
    std::vector<VertexSet> sccs;
    if (q.mode == DelMode::vertex)
        sccs = scc_decompose(delete_view(q.g, *found).graph).components;
    else
        sccs = scc_decompose(detail::drop_arcs(q.g, *found)).components;
    long long largest = 0;
    for (const VertexSet& c : sccs) largest = std::max(largest, static_cast<long long>(c.size()));
    answer.achieved_bound = q.g.n() == 0 ? Fraction(0) : Fraction(largest, q.g.n());
    return answer;
}

struct Bisection {
    VertexSet a;
    VertexSet b;
};

// First topological prefix of SCCs of g \ f reaching
// ceil((n - |f_vertices|) (1 - beta) / 2) vertices; no arc runs from the
// suffix back into the prefix.
inline Bisection extract_prefix_bisection(const DiGraph& g, const Deletion& f,
                                          const Fraction& beta) {
    if (beta >= Fraction(1)) throw InvalidQuery("extract_prefix_bisection: bound beta >= 1");
    DeleteView view;
    DiGraph pruned;
    long long deleted_vertices = 0;
    const DiGraph* h = nullptr;
    if (f.mode == DelMode::vertex) {
        view = delete_view(g, canon(f.ids));
        deleted_vertices = static_cast<long long>(canon(f.ids).size());
        h = &view.graph;
    } else {
        pruned = detail::drop_arcs(g, f.ids);
        h = &pruned;
    }
    if (h->n() == 0) throw InvalidQuery("extract_prefix_bisection: graph too small");

    SccDecomposition dec = scc_decompose(*h);
    for (const VertexSet& c : dec.components)
        if (Fraction(static_cast<long long>(c.size()), 1) > beta * g.n())
            throw InvalidQuery("extract_prefix_bisection: an SCC exceeds the beta bound");

    long long threshold =
        detail::ceil_frac(Fraction(g.n() - deleted_vertices, 1) * (Fraction(1) - beta) / 2);
    Bisection out;
    long long taken = 0;
    std::size_t idx = 0;
    while (idx < dec.components.size() && taken < threshold) {
        for (VertexId v : dec.components[idx]) out.a.push_back(v);
        taken += static_cast<long long>(dec.components[idx].size());
        ++idx;
    }
    for (; idx < dec.components.size(); ++idx)
        for (VertexId v : dec.components[idx]) out.b.push_back(v);
    out.a = canon(out.a);
    out.b = canon(out.b);
    if (f.mode == DelMode::vertex) {
        out.a = view.map_to_old(out.a);
        out.b = view.map_to_old(out.b);
    }
    if (out.a.empty() || out.b.empty())
        throw InvalidQuery("extract_prefix_bisection: graph too small");
    return out;
}

// Oracle: lexicographically least minimum deletion set whose removal
// leaves every SCC within b*n vertices, or nothing.
inline std::optional<Deletion> brute_balanced(const DiGraph& g, int k, const Fraction& b,
                                              DelMode mode) {
    std::vector<int> universe;
    const int limit = mode == DelMode::vertex ? g.n() : g.m();
    for (int i = 0; i < limit; ++i) universe.push_back(i);
    std::optional<Deletion> best;
    for_each_subset(universe, 0, k, [&](const std::vector<int>& f) {
        std::vector<VertexSet> sccs;
        if (mode == DelMode::vertex)
            sccs = scc_decompose(delete_view(g, f).graph).components;
        else
            sccs = scc_decompose(detail::drop_arcs(g, f)).components;
        for (const VertexSet& c : sccs)
            if (Fraction(static_cast<long long>(c.size()), 1) > b * g.n()) return true;
        best = Deletion{mode, f};
        return false;
    });
    return best;
}

}  // namespace dicut
