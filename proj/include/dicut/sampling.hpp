#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "dicut/digraph.hpp"
#include "dicut/fraction.hpp"
#include "dicut/separators.hpp"
#include "dicut/types.hpp"

namespace dicut {

// Canonical family of vertex sets: members sorted, list sorted, deduped.
using Profile = std::vector<VertexSet>;

struct CheckWitness {
    VertexSet f;
    std::string kind;  // "scc" | "all-but-one" | "partition" | "mincut" | "important-set"
    VertexSet set_a;
    VertexSet set_b;
    Fraction measured{0};
};

struct CheckReport {
    bool pass = true;
    std::optional<CheckWitness> witness;
};

namespace detail {

inline std::vector<VertexSet> all_subsets_upto(const DiGraph& g, int k) {
    VertexSet universe;
    for (VertexId v = 0; v < g.n(); ++v) universe.push_back(v);
    std::vector<VertexSet> subsets;
    for_each_subset(universe, 0, k, [&](const VertexSet& f) {
        subsets.push_back(f);
        return true;
    });
    return subsets;
}

inline std::vector<VertexSet> sccs_after(const DiGraph& g, const VertexSet& f) {
    DeleteView view = delete_view(g, f);
    SccDecomposition dec = scc_decompose(view.graph);
    std::vector<VertexSet> out;
    out.reserve(dec.components.size());
    for (const VertexSet& c : dec.components) out.push_back(view.map_to_old(c));
    return out;
}

}  // namespace detail

// All SCCs of g \ f plus, for each SCC, the union of the others.
inline std::vector<VertexSet> scc_family(const DiGraph& g, const VertexSet& f) {
    std::vector<VertexSet> sccs = detail::sccs_after(g, f);
    VertexSet everything;
    for (const VertexSet& c : sccs) everything = set_union(everything, c);
    std::vector<VertexSet> out = sccs;
    for (const VertexSet& c : sccs) out.push_back(set_minus(everything, c));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// True iff every subset of w is member-intersect-w for some member of the
// SCC set family over all deletions of size <= k.
inline bool is_shattered(const DiGraph& g, int k, const VertexSet& w) {
    if (w.size() > 20) throw InvalidQuery("is_shattered: |w| too large to enumerate");
    const std::size_t want = std::size_t{1} << w.size();
    std::vector<char> seen(want, 0);
    std::size_t found = 0;
    for (const VertexSet& f : detail::all_subsets_upto(g, k)) {
        for (const VertexSet& member : scc_family(g, f)) {
            std::size_t mask = 0;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (set_contains(member, w[i])) mask |= std::size_t{1} << i;
            if (!seen[mask]) {
                seen[mask] = 1;
                if (++found == want) return true;
            }
        }
    }
    return found == want;
}

// Reachability profile Reach^k(s, t_pool) without enumerating deletion
// sets: every profile is realized by an important separator for the pair
// ({s}, some sink pool subset), so the all-subsets enumeration covers it.
inline Profile reach_profile(const DiGraph& g, VertexId s, const VertexSet& t_pool, int k) {
    if (set_contains(t_pool, s)) throw InvalidQuery("reach_profile: s may not be in the pool");
    Profile out;
    out.push_back(set_intersect(reach_set(g, {s}, {}), t_pool));
    if (k >= 1) out.push_back({});
    EnumerationReport rep = enum_all_subsets(g, {s}, t_pool, k);
    for (const VertexSet& x : rep.separators)
        out.push_back(set_intersect(reach_set(g, {s}, x), t_pool));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Literal-definition oracle for reach_profile.
inline Profile brute_reach_profile(const DiGraph& g, VertexId s, const VertexSet& t_pool, int k) {
    if (set_contains(t_pool, s)) throw InvalidQuery("brute_reach_profile: s may not be in the pool");
    Profile out;
    for (const VertexSet& f : detail::all_subsets_upto(g, k))
        out.push_back(set_intersect(reach_set(g, {s}, f), t_pool));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::uint64_t reach_profile_bound(int pool_size, int k) {
    std::uint64_t b = pow4(k);
    std::uint64_t f = binom_sum(pool_size, std::max(2 * k, 1));
    if (f != 0 && b > UINT64_MAX / f) return UINT64_MAX;
    return b * f;
}

namespace detail {

template <typename PerDeletion>
inline CheckReport scan_deletions(const DiGraph& g, int k, int jobs, PerDeletion per_f) {
    // per_f returns the first violation under one deletion set; the overall
    // witness is the hit of the earliest deletion set in (size, lex) order,
    // matching a sequential scan regardless of worker count.
    std::vector<VertexSet> subsets = all_subsets_upto(g, k);
    using Ranked = std::pair<std::uint64_t, CheckWitness>;
    std::vector<std::optional<Ranked>> hits(subsets.size());

    jobs = std::max(1, jobs);
    auto run = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < subsets.size(); i += stride)
            hits[i] = per_f(i, subsets[i]);
    };
    if (jobs == 1) {
        run(0, 1);
    } else {
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back(run, static_cast<std::size_t>(w), static_cast<std::size_t>(jobs));
        for (auto& t : workers) t.join();
    }

    CheckReport report;
    for (auto& h : hits)
        if (h) {
            report.pass = false;
            report.witness = h->second;
            break;
        }
    return report;
}

}  // namespace detail

// Sample set: every SCC after <= k deletions has terminal fraction within
// eps of its vertex fraction (exact arithmetic). A failing report carries
// the largest deviation found, earliest in enumeration order on ties.
inline CheckReport is_sample_set(const DiGraph& g, const VertexSet& t, const Fraction& eps, int k,
                                 int jobs = 1) {
    if (t.empty()) throw InvalidQuery("is_sample_set: empty terminal set");
    const long long n = g.n();
    const long long tsize = static_cast<long long>(t.size());
    std::vector<VertexSet> subsets = detail::all_subsets_upto(g, k);
    struct Hit {
        Fraction dev;
        std::uint64_t rank;
        CheckWitness w;
    };
    std::vector<std::optional<Hit>> hits(subsets.size());

    jobs = std::max(1, jobs);
    auto run = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < subsets.size(); i += stride) {
            const VertexSet& f = subsets[i];
            std::optional<Hit> best;
            std::uint64_t comp_rank = 0;
            for (const VertexSet& c : detail::sccs_after(g, f)) {
                Fraction dev = Fraction(static_cast<long long>(set_intersect(c, t).size()), tsize) -
                               Fraction(static_cast<long long>(c.size()), n);
                if (dev < Fraction(0)) dev = -dev;
                if (dev > eps && (!best || dev > best->dev))
                    best = Hit{dev, i * 1000000 + comp_rank, CheckWitness{f, "scc", c, {}, dev}};
                ++comp_rank;
            }
            hits[i] = best;
        }
    };
    if (jobs == 1) {
        run(0, 1);
    } else {
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back(run, static_cast<std::size_t>(w), static_cast<std::size_t>(jobs));
        for (auto& t2 : workers) t2.join();
    }

    CheckReport report;
    std::optional<Hit> best;
    for (auto& h : hits)
        if (h && (!best || h->dev > best->dev || (h->dev == best->dev && h->rank < best->rank)))
            best = h;
    if (best) {
        report.pass = false;
        report.witness = best->w;
    }
    return report;
}

// Net: every large SCC and every large all-but-one union intersects t,
// over all deletions of size <= k. Sizes compared exactly against eps*n.
inline CheckReport is_net(const DiGraph& g, const VertexSet& t, const Fraction& eps, int k,
                          int jobs = 1) {
    if (t.empty()) throw InvalidQuery("is_net: empty terminal set");
    const long long n = g.n();
    return detail::scan_deletions(
        g, k, jobs,
        [&](std::size_t, const VertexSet& f) -> std::optional<std::pair<std::uint64_t, CheckWitness>> {
            std::vector<VertexSet> sccs = detail::sccs_after(g, f);
            VertexSet everything;
            for (const VertexSet& c : sccs) everything = set_union(everything, c);
            std::uint64_t rank = 0;
            for (const VertexSet& c : sccs) {
                bool large = Fraction(static_cast<long long>(c.size()), 1) >= eps * n;
                if (large && set_intersect(c, t).empty())
                    return {{rank, CheckWitness{f, "scc", c, {}, Fraction(static_cast<long long>(c.size()), n)}}};
                ++rank;
            }
            for (const VertexSet& c : sccs) {
                VertexSet rest = set_minus(everything, c);
                bool large = Fraction(static_cast<long long>(rest.size()), 1) >= eps * n;
                if (large && set_intersect(rest, t).empty())
                    return {{rank,
                             CheckWitness{f, "all-but-one", rest, {}, Fraction(static_cast<long long>(rest.size()), n)}}};
                ++rank;
            }
            return std::nullopt;
        });
}

// Detection set: every network failure (deletion + large bipartition with
// no backward arc) is witnessed by an ordered terminal pair with no path.
// Failure partitions are exactly the predecessor-closed unions of SCCs.
inline CheckReport is_detection_set(const DiGraph& g, const VertexSet& t, const Fraction& eps,
                                    int k, int jobs = 1) {
    if (t.empty()) throw InvalidQuery("is_detection_set: empty terminal set");
    const long long n = g.n();
    return detail::scan_deletions(
        g, k, jobs,
        [&](std::size_t, const VertexSet& f) -> std::optional<std::pair<std::uint64_t, CheckWitness>> {
            if (!set_intersect(t, f).empty()) return std::nullopt;  // trivially detected
            DeleteView view = delete_view(g, f);
            VertexSet alive_t = view.map_to_new(t);
            // If some ordered terminal pair is already disconnected, every
            // failure under this deletion is detected.
            for (VertexId t1 : alive_t) {
                VertexSet reach = reach_set(view.graph, {t1}, {});
                if (!is_subset(alive_t, reach)) return std::nullopt;
            }
            SccDecomposition dec = scc_decompose(view.graph);
            const int p = static_cast<int>(dec.components.size());
            if (p > 25) throw InvalidQuery("is_detection_set: too many components to enumerate");
            // Predecessor sets per component in the condensation.
            std::vector<std::uint32_t> preds(p, 0);
            for (const Arc& a : view.graph.arcs()) {
                int cu = dec.component_of[a.tail], cv = dec.component_of[a.head];
                if (cu != cv) preds[cv] |= std::uint32_t{1} << cu;
            }
            for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t{1} << p); ++mask) {
                bool closed = true;
                long long size_a = 0;
                for (int c = 0; c < p && closed; ++c)
                    if (mask & (std::uint32_t{1} << c)) {
                        if ((preds[c] & ~mask) != 0) closed = false;
                        size_a += static_cast<long long>(dec.components[c].size());
                    }
                if (!closed) continue;
                long long size_b = view.graph.n() - size_a;
                if (Fraction(size_a, 1) < eps * n || Fraction(size_b, 1) < eps * n) continue;
                VertexSet a_side, b_side;
                for (int c = 0; c < p; ++c) {
                    VertexSet old_ids = view.map_to_old(dec.components[c]);
                    if (mask & (std::uint32_t{1} << c))
                        a_side = set_union(a_side, old_ids);
                    else
                        b_side = set_union(b_side, old_ids);
                }
                return {{mask, CheckWitness{f, "partition", a_side, b_side, Fraction(size_a, n)}}};
            }
            return std::nullopt;
        });
}

// Uniform sample of `size` distinct vertices, deterministic per seed.
inline VertexSet draw_terminals(const DiGraph& g, int size, std::uint64_t seed) {
    if (size < 0 || size > g.n()) throw InvalidQuery("draw_terminals: size out of range");
    std::mt19937_64 rng(seed);
    auto bounded = [&rng](std::uint64_t r) {
        // unbiased bounded draw; avoids distribution implementation drift
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % r;
        std::uint64_t x = rng();
        while (x >= limit) x = rng();
        return x % r;
    };
    std::vector<VertexId> pool(g.n());
    for (VertexId v = 0; v < g.n(); ++v) pool[v] = v;
    VertexSet out;
    for (int i = 0; i < size; ++i) {
        std::size_t j = static_cast<std::size_t>(i) + bounded(static_cast<std::uint64_t>(g.n() - i));
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return canon(out);
}

enum class SetKind { net, detection, sample };

// ceil(c * k / eps * ln(1/eps)), with eps squared for sample sets.
inline int prescribed_size(SetKind kind, int k, const Fraction& eps, const Fraction& c) {
    if (eps <= Fraction(0) || eps >= Fraction(1))
        throw InvalidQuery("prescribed_size: eps must be in (0,1)");
    if (k < 0) throw InvalidQuery("prescribed_size: negative k");
    long double e = static_cast<long double>(eps.numerator()) / static_cast<long double>(eps.denominator());
    long double cc = static_cast<long double>(c.numerator()) / static_cast<long double>(c.denominator());
    long double denom = (kind == SetKind::sample) ? e * e : e;
    long double value = cc * static_cast<long double>(k) / denom * std::log(1.0L / e);
    if (value <= 0.0L) return 0;
    return static_cast<int>(std::ceil(value));
}

}  // namespace dicut
