#pragma once

#include <cstdint>
#include <thread>
#include <vector>

#include "dicut/digraph.hpp"
#include "dicut/types.hpp"
#include "dicut/vertex_flow.hpp"

namespace dicut {

// True iff no directed path from a to b survives deleting x. x may
// intersect a or b (deletable-terminal convention).
inline bool is_separator(const DiGraph& g, const VertexSet& a, const VertexSet& b,
                         const VertexSet& x) {
    if (!sets_disjoint(a, b)) throw InvalidQuery("is_separator: terminal sets overlap");
    return sets_disjoint(reach_set(g, a, x), b);
}

inline bool is_minimal_separator(const DiGraph& g, const VertexSet& a, const VertexSet& b,
                                 const VertexSet& x) {
    if (!is_separator(g, a, b, x)) return false;
    for (VertexId v : x) {
        VertexSet smaller = set_minus(x, {v});
        if (is_separator(g, a, b, smaller)) return false;
    }
    return true;
}

// Minimal separator that is closest to b; by the equivalence lemma this
// matches the domination definition (tested against brute_important).
inline bool is_important(const DiGraph& g, const VertexSet& a, const VertexSet& b,
                         const VertexSet& x) {
    return is_minimal_separator(g, a, b, x) && detail::is_closest_restricted(g, x, b);
}

namespace detail {

// Branching enumeration of candidate important separators. Farthest-mincut
// branching: include the lowest-id cut vertex (delete it, spend budget) or
// exclude it (absorb the cut's reachable region into the source side and
// freeze it). Candidates are verified by the caller.
inline void enum_candidates(const DiGraph& g, const VertexSet& deleted, const VertexSet& a,
                            const VertexSet& b, int k, const VertexSet& undeletable,
                            const VertexSet& prefix, std::vector<VertexSet>& out) {
    if (sets_disjoint(reach_set(g, a, deleted), b)) {
        out.push_back(prefix);
        return;
    }
    if (k <= 0) return;
    SplitFlowNet net(g, a, b, undeletable, deleted);
    int value = net.augment(k + 1);
    if (value > k) return;
    VertexSet cut = net.cut_closest_to_sinks();
    if (cut.empty()) return;  // cannot happen while a path remains
    VertexId v = cut[0];

    enum_candidates(g, set_union(deleted, {v}), set_minus(a, {v}), set_minus(b, {v}), k - 1,
                    undeletable, set_union(prefix, {v}), out);

    VertexSet region = reach_set(g, a, set_union(deleted, cut));
    VertexSet absorbed = set_union(region, {v});
    enum_candidates(g, deleted, set_union(a, absorbed), b, k, set_union(undeletable, absorbed),
                    prefix, out);
}

}  // namespace detail

// Exactly the important a-b separators of size <= k, lexicographically
// sorted. The empty set appears iff there is no a->b path.
inline std::vector<VertexSet> enum_important(const DiGraph& g, const VertexSet& a,
                                             const VertexSet& b, int k) {
    if (!sets_disjoint(a, b)) throw InvalidQuery("enum_important: terminal sets overlap");
    if (k < 0) throw InvalidQuery("enum_important: negative budget");
    std::vector<VertexSet> candidates;
    detail::enum_candidates(g, {}, a, b, k, {}, {}, candidates);
    std::vector<VertexSet> out;
    for (const VertexSet& x : candidates)
        if (is_important(g, a, b, x)) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Literal-definition oracle: all minimal separators x of size <= k such
// that no separator y with |y| <= |x| has a strictly larger reach.
inline std::vector<VertexSet> brute_important(const DiGraph& g, const VertexSet& a,
                                              const VertexSet& b, int k) {
    if (!sets_disjoint(a, b)) throw InvalidQuery("brute_important: terminal sets overlap");
    VertexSet universe;
    for (VertexId v = 0; v < g.n(); ++v) universe.push_back(v);

    std::vector<VertexSet> out;
    for_each_subset(universe, 0, k, [&](const VertexSet& x) {
        if (!is_minimal_separator(g, a, b, x)) return true;
        VertexSet rx = reach_set(g, a, x);
        bool dominated = false;
        for_each_subset(universe, 0, static_cast<int>(x.size()), [&](const VertexSet& y) {
            if (!is_separator(g, a, b, y)) return true;
            VertexSet ry = reach_set(g, a, y);
            if (ry.size() > rx.size() && is_subset(rx, ry)) {
                dominated = true;
                return false;
            }
            return true;
        });
        if (!dominated) out.push_back(x);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

struct ImportantSeparator {
    VertexSet x;
    VertexSet witness_a;
    VertexSet witness_b;
};

// Shrinks the terminal pools certifying importance of x: one entry vertex
// per v in x on the source side, the union of the closest-witness bundles
// on the sink side (|witness_a| <= |x|, |witness_b| <= 2|x|).
inline ImportantSeparator reduce_witness(const DiGraph& g, const VertexSet& a, const VertexSet& b,
                                         const VertexSet& x) {
    if (!is_important(g, a, b, x))
        throw InvalidQuery("reduce_witness: x is not an important a-b separator");

    VertexSet a_star;
    for (VertexId v : x) {
        VertexSet blocked = set_minus(x, {v});
        // BFS from a \ blocked recording roots; the root of v is s(v).
        std::vector<char> dead(g.n(), 0), seen(g.n(), 0);
        for (VertexId w : blocked) dead[w] = 1;
        std::vector<VertexId> root(g.n(), -1), queue;
        for (VertexId s : a)
            if (!dead[s] && !seen[s]) {
                seen[s] = 1;
                root[s] = s;
                queue.push_back(s);
            }
        for (std::size_t qi = 0; qi < queue.size() && root[v] < 0; ++qi) {
            VertexId u = queue[qi];
            for (VertexId w : g.out(u))
                if (!dead[w] && !seen[w]) {
                    seen[w] = 1;
                    root[w] = root[u];
                    queue.push_back(w);
                }
        }
        if (root[v] < 0) throw InvalidQuery("reduce_witness: minimality witness missing");
        a_star.push_back(root[v]);
    }
    a_star = canon(a_star);

    VertexSet b_star;
    ClosestWitness cw = closest_witness(g, x, b);
    for (const auto& bundle : cw.bundles) b_star = set_union(b_star, bundle.endpoints);

    ImportantSeparator result{x, a_star, b_star};
    if (!is_important(g, result.witness_a, result.witness_b, x))
        throw InvalidQuery("reduce_witness: reduced pair failed re-verification");
    return result;
}

struct EnumerationReport {
    std::vector<VertexSet> separators;
    std::uint64_t pairs_scanned = 0;
    std::uint64_t bound = 0;
};

// beta(|S|,|T|,k) = 4^k C(|S|,<=k) C(|T|,<=2k); the degenerate k = 0 case
// clamps each factor to 1 so the bound stays a valid cap.
inline std::uint64_t all_subsets_bound(int s_size, int t_size, int k) {
    std::uint64_t b = pow4(k);
    std::uint64_t f1 = binom_sum(s_size, std::max(k, 1));
    std::uint64_t f2 = binom_sum(t_size, std::max(2 * k, 1));
    if (f1 != 0 && b > UINT64_MAX / f1) return UINT64_MAX;
    b *= f1;
    if (f2 != 0 && b > UINT64_MAX / f2) return UINT64_MAX;
    return b * f2;
}

// Union of enum_important over all nonempty a in s_pool (|a| <= k) and
// nonempty b in t_pool (|b| <= 2k); singleton pairs are scanned when k = 0
// so the no-path empty separator stays representable.
inline EnumerationReport enum_all_subsets(const DiGraph& g, const VertexSet& s_pool,
                                          const VertexSet& t_pool, int k, int jobs = 1) {
    if (!sets_disjoint(s_pool, t_pool)) throw InvalidQuery("enum_all_subsets: pools overlap");
    if (k < 0) throw InvalidQuery("enum_all_subsets: negative budget");

    std::vector<std::pair<VertexSet, VertexSet>> pairs;
    const int amax = std::max(k, 1);
    const int bmax = std::max(2 * k, 1);
    for_each_subset(s_pool, 1, amax, [&](const VertexSet& a) {
        for_each_subset(t_pool, 1, bmax, [&](const VertexSet& b) {
            pairs.emplace_back(a, b);
            return true;
        });
        return true;
    });

    std::vector<std::vector<VertexSet>> per_pair(pairs.size());
    jobs = std::max(1, jobs);
    if (jobs == 1 || pairs.size() < 2) {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            per_pair[i] = enum_important(g, pairs[i].first, pairs[i].second, k);
    } else {
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&, w] {
                for (std::size_t i = w; i < pairs.size(); i += static_cast<std::size_t>(jobs))
                    per_pair[i] = enum_important(g, pairs[i].first, pairs[i].second, k);
            });
        for (auto& t : workers) t.join();
    }

    EnumerationReport report;
    report.pairs_scanned = pairs.size();
    report.bound = all_subsets_bound(static_cast<int>(s_pool.size()),
                                     static_cast<int>(t_pool.size()), k);
    for (auto& sep_list : per_pair)
        for (auto& x : sep_list) report.separators.push_back(std::move(x));
    std::sort(report.separators.begin(), report.separators.end());
    report.separators.erase(std::unique(report.separators.begin(), report.separators.end()),
                            report.separators.end());
    return report;
}

namespace detail {

// Arc-deletion separators, realized as vertex separators in the arc
// subdivision (arc i becomes vertex base_n + i; original vertices are
// frozen). Used by the skew solver's branching.
struct ArcSubdivision {
    DiGraph graph;
    int base_n = 0;
    VertexSet originals;
};

inline ArcSubdivision subdivide_arcs(const DiGraph& g) {
    ArcSubdivision sub;
    sub.base_n = g.n();
    std::vector<Arc> arcs;
    arcs.reserve(2 * g.arcs().size());
    for (int i = 0; i < g.m(); ++i) {
        const Arc& a = g.arcs()[i];
        arcs.push_back({a.tail, g.n() + i});
        arcs.push_back({g.n() + i, a.head});
    }
    sub.graph = DiGraph(g.n() + g.m(), std::move(arcs));
    for (VertexId v = 0; v < g.n(); ++v) sub.originals.push_back(v);
    return sub;
}

inline DiGraph drop_arcs(const DiGraph& g, const std::vector<int>& arc_ids) {
    std::vector<char> gone(g.m(), 0);
    for (int id : arc_ids) {
        if (id < 0 || id >= g.m()) throw InvalidQuery("arc id out of range");
        gone[id] = 1;
    }
    std::vector<Arc> arcs;
    for (int i = 0; i < g.m(); ++i)
        if (!gone[i]) arcs.push_back(g.arcs()[i]);
    return DiGraph(g.n(), std::move(arcs));
}

inline bool is_arc_separator(const DiGraph& g, const VertexSet& a, const VertexSet& b,
                             const std::vector<int>& arc_ids) {
    return sets_disjoint(reach_set(drop_arcs(g, arc_ids), a, {}), b);
}

inline bool is_minimal_arc_separator(const DiGraph& g, const VertexSet& a, const VertexSet& b,
                                     const std::vector<int>& arc_ids) {
    if (!is_arc_separator(g, a, b, arc_ids)) return false;
    for (std::size_t i = 0; i < arc_ids.size(); ++i) {
        std::vector<int> smaller = arc_ids;
        smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
        if (is_arc_separator(g, a, b, smaller)) return false;
    }
    return true;
}

inline bool is_important_arcs(const DiGraph& g, const ArcSubdivision& sub, const VertexSet& a,
                              const VertexSet& b, const std::vector<int>& arc_ids) {
    if (!is_minimal_arc_separator(g, a, b, arc_ids)) return false;
    VertexSet x;
    for (int id : arc_ids) x.push_back(sub.base_n + id);
    x = canon(x);
    return is_closest_restricted(sub.graph, x, b, sub.originals);
}

// Important a-b arc separators of size <= k, as sorted arc-id sets.
inline std::vector<std::vector<int>> enum_important_arcs(const DiGraph& g, const VertexSet& a,
                                                         const VertexSet& b, int k) {
    ArcSubdivision sub = subdivide_arcs(g);
    std::vector<VertexSet> candidates;
    enum_candidates(sub.graph, {}, a, b, k, sub.originals, {}, candidates);

    std::vector<std::vector<int>> out;
    for (const VertexSet& x : candidates) {
        std::vector<int> arc_ids;
        bool ok = !x.empty();
        for (VertexId v : x) {
            if (v < sub.base_n) {
                ok = false;  // frozen originals never appear; guard anyway
                break;
            }
            arc_ids.push_back(v - sub.base_n);
        }
        if (ok && is_important_arcs(g, sub, a, b, arc_ids)) out.push_back(arc_ids);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Literal-definition oracle for arc importance (test support).
inline std::vector<std::vector<int>> brute_important_arcs(const DiGraph& g, const VertexSet& a,
                                                          const VertexSet& b, int k) {
    VertexSet all_arcs;
    for (int i = 0; i < g.m(); ++i) all_arcs.push_back(i);
    std::vector<std::vector<int>> out;
    for_each_subset(all_arcs, 1, k, [&](const std::vector<int>& x) {
        if (!is_minimal_arc_separator(g, a, b, x)) return true;
        VertexSet rx = reach_set(drop_arcs(g, x), a, {});
        bool dominated = false;
        for_each_subset(all_arcs, 1, static_cast<int>(x.size()), [&](const std::vector<int>& y) {
            if (!is_arc_separator(g, a, b, y)) return true;
            VertexSet ry = reach_set(drop_arcs(g, y), a, {});
            if (ry.size() > rx.size() && is_subset(rx, ry)) {
                dominated = true;
                return false;
            }
            return true;
        });
        if (!dominated) out.push_back(x);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

}  // namespace dicut
