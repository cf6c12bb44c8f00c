#pragma once

#include <thread>
#include <tuple>
#include <vector>

#include "dicut/digraph.hpp"
#include "dicut/sampling.hpp"
#include "dicut/separators.hpp"
#include "dicut/types.hpp"
#include "dicut/vertex_flow.hpp"

namespace dicut {

// Union of all important a-b separators of size <= c over ordered disjoint
// nonempty pairs a, b from t with |a| <= c, |b| <= 2c: exactly the witness
// pair space that the all-subsets bound proves sufficient.
inline VertexSet relevant_vertices(const DiGraph& g, const VertexSet& t, int c, int jobs = 1) {
    if (c < 0) throw InvalidQuery("relevant_vertices: negative cut bound");
    std::vector<std::pair<VertexSet, VertexSet>> pairs;
    for_each_subset(t, 1, c, [&](const VertexSet& a) {
        VertexSet rest = set_minus(t, a);
        for_each_subset(rest, 1, 2 * c, [&](const VertexSet& b) {
            pairs.emplace_back(a, b);
            return true;
        });
        return true;
    });

    std::vector<VertexSet> partial(pairs.size());
    jobs = std::max(1, jobs);
    auto run = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < pairs.size(); i += stride) {
            VertexSet acc;
            for (const VertexSet& x : enum_important(g, pairs[i].first, pairs[i].second, c))
                acc = set_union(acc, x);
            partial[i] = std::move(acc);
        }
    };
    if (jobs == 1 || pairs.size() < 2) {
        run(0, 1);
    } else {
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back(run, static_cast<std::size_t>(w), static_cast<std::size_t>(jobs));
        for (auto& th : workers) th.join();
    }

    VertexSet out;
    for (const VertexSet& p : partial) out = set_union(out, p);
    return out;
}

// Path-through-z closure on the original id space: arcs survive among
// V \ z, plus (u, w) whenever a u -> w path runs entirely through z.
// z vertices are left isolated. Parallel arcs are deduplicated and the arc
// list is emitted in sorted order.
inline DiGraph close_vertices_keep_ids(const DiGraph& g, const VertexSet& z) {
    std::vector<char> in_z(g.n(), 0);
    for (VertexId v : z) {
        if (v < 0 || v >= g.n()) throw InvalidQuery("close_vertices: vertex out of range");
        in_z[v] = 1;
    }
    std::vector<Arc> arcs;
    for (VertexId u = 0; u < g.n(); ++u) {
        if (in_z[u]) continue;
        std::vector<char> seen(g.n(), 0);
        std::vector<VertexId> targets, stack;
        for (VertexId w : g.out(u)) {
            if (!in_z[w]) {
                targets.push_back(w);
            } else if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
        while (!stack.empty()) {
            VertexId zv = stack.back();
            stack.pop_back();
            for (VertexId w : g.out(zv)) {
                if (!in_z[w]) {
                    targets.push_back(w);
                } else if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        for (VertexId w : canon(targets)) arcs.push_back({u, w});
    }
    std::sort(arcs.begin(), arcs.end(),
              [](const Arc& a, const Arc& b) { return std::tie(a.tail, a.head) < std::tie(b.tail, b.head); });
    return DiGraph(g.n(), std::move(arcs));
}

// Dense-id closure: the closed graph lives on V \ z with the usual
// order-preserving id map.
inline DeleteView close_vertices(const DiGraph& g, const VertexSet& z) {
    return delete_view(close_vertices_keep_ids(g, z), z);
}

struct SparsifierResult {
    DiGraph g_prime;
    VertexSet kept;      // original ids, ascending; g_prime vertex i is kept[i]
    VertexSet relevant;  // the union of important separators used

    VertexId to_new(VertexId old_id) const {
        auto it = std::lower_bound(kept.begin(), kept.end(), old_id);
        if (it == kept.end() || *it != old_id) return -1;
        return static_cast<VertexId>(it - kept.begin());
    }
    VertexSet map_to_new(const VertexSet& s) const {
        VertexSet out;
        for (VertexId v : s) {
            VertexId w = to_new(v);
            if (w >= 0) out.push_back(w);
        }
        return out;
    }
    VertexSet map_to_old(const VertexSet& s) const {
        VertexSet out;
        out.reserve(s.size());
        for (VertexId v : s) out.push_back(kept[v]);
        return out;
    }
};

inline std::uint64_t sparsifier_size_bound(int t_size, int c) {
    // |T| + c * 4^c * C(|T|, <=3c) * C(3c, <=c)
    if (c == 0) return static_cast<std::uint64_t>(t_size);
    std::uint64_t b = pow4(c);
    std::uint64_t f1 = binom_sum(t_size, 3 * c);
    std::uint64_t f2 = binom_sum(3 * c, c);
    long double total = static_cast<long double>(c) * static_cast<long double>(b) *
                        static_cast<long double>(f1) * static_cast<long double>(f2);
    if (total > 9e18L) return UINT64_MAX;
    return static_cast<std::uint64_t>(t_size) + static_cast<std::uint64_t>(total);
}

// (c,T) vertex cut sparsifier: keeps T plus every vertex appearing in a
// small important separator between terminal subsets, closes the rest.
inline SparsifierResult build_sparsifier(const DiGraph& g, const VertexSet& t, int c, int jobs = 1) {
    for (VertexId v : t)
        if (v < 0 || v >= g.n()) throw InvalidQuery("build_sparsifier: terminal out of range");

    SparsifierResult res;
    res.relevant = relevant_vertices(g, t, c, jobs);
    res.kept = set_union(canon(t), res.relevant);
    VertexSet everything;
    for (VertexId v = 0; v < g.n(); ++v) everything.push_back(v);
    DeleteView closed = close_vertices(g, set_minus(everything, res.kept));
    res.g_prime = closed.graph;

    if (static_cast<std::uint64_t>(res.kept.size()) >
        sparsifier_size_bound(static_cast<int>(canon(t).size()), c))
        throw std::logic_error("build_sparsifier: size accounting violated");
    return res;
}

// Exhaustive preservation check over every ordered bipartition of t: small
// mincuts agree, and the size-<=c important-separator sets of g and
// g_prime are identical.
inline CheckReport verify_sparsifier(const DiGraph& g, const SparsifierResult& res,
                                     const VertexSet& t, int c) {
    CheckReport report;
    VertexSet terms = canon(t);
    const std::size_t nt = terms.size();
    if (nt == 0) return report;
    if (nt > 20) throw InvalidQuery("verify_sparsifier: terminal set too large to enumerate");

    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << nt); ++mask) {
        VertexSet a, b;
        for (std::size_t i = 0; i < nt; ++i)
            ((mask >> i) & 1 ? a : b).push_back(terms[i]);

        VertexSet ap = res.map_to_new(a), bp = res.map_to_new(b);
        if (ap.size() != a.size() || bp.size() != b.size()) {
            report.pass = false;
            report.witness = CheckWitness{{}, "terminal-missing", a, b, Fraction(0)};
            return report;
        }

        int cut_g = max_vertex_flow(g, a, b).value;
        if (cut_g <= c) {
            int cut_gp = max_vertex_flow(res.g_prime, ap, bp).value;
            if (cut_gp != cut_g) {
                report.pass = false;
                report.witness =
                    CheckWitness{{}, "mincut", a, b, Fraction(cut_gp - cut_g, 1)};
                return report;
            }
        }

        std::vector<VertexSet> imp_g = enum_important(g, a, b, c);
        std::vector<VertexSet> imp_gp;
        for (const VertexSet& x : brute_important(res.g_prime, ap, bp, c))
            imp_gp.push_back(res.map_to_old(x));
        std::sort(imp_gp.begin(), imp_gp.end());
        if (imp_g != imp_gp) {
            report.pass = false;
            report.witness = CheckWitness{{}, "important-set", a, b, Fraction(0)};
            return report;
        }
    }
    return report;
}

}  // namespace dicut
