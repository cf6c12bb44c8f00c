#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dicut {

using VertexId = int;

// Canonical vertex set: strictly increasing ids. All library functions
// return canonical sets, so set equality is vector equality.
using VertexSet = std::vector<VertexId>;

struct Arc {
    VertexId tail = 0;
    VertexId head = 0;
    friend bool operator==(const Arc&, const Arc&) = default;
};

// Raised on malformed input text / JSON.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a query violates an operation's contract.
struct InvalidQuery : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline VertexSet canon(VertexSet ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

inline bool is_canonical(const VertexSet& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i - 1] >= s[i]) return false;
    return true;
}

inline bool set_contains(const VertexSet& s, VertexId v) {
    return std::binary_search(s.begin(), s.end(), v);
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet set_intersect(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool sets_disjoint(const VertexSet& a, const VertexSet& b) {
    return set_intersect(a, b).empty();
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Visits subsets of `universe` of size min_size..max_size in (size, lex)
// order; stops early when fn returns false. Universe must be canonical.
inline void for_each_subset(const VertexSet& universe, int min_size, int max_size,
                            const std::function<bool(const VertexSet&)>& fn) {
    const int n = static_cast<int>(universe.size());
    max_size = std::min(max_size, n);
    for (int sz = min_size; sz <= max_size; ++sz) {
        std::vector<int> idx(sz);
        for (int i = 0; i < sz; ++i) idx[i] = i;
        while (true) {
            VertexSet sub(sz);
            for (int i = 0; i < sz; ++i) sub[i] = universe[idx[i]];
            if (!fn(sub)) return;
            int i = sz - 1;
            while (i >= 0 && idx[i] == n - sz + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < sz; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
}

// sum_{i=1..c} C(x, i), clamped below by 1 so degenerate k = 0 bounds stay
// meaningful. Saturates instead of overflowing.
inline std::uint64_t binom_sum(int x, int c) {
    if (x < 0) x = 0;
    c = std::min(c, x);
    long double total = 0.0L;
    long double term = 1.0L;
    for (int i = 1; i <= c; ++i) {
        term = term * static_cast<long double>(x - i + 1) / static_cast<long double>(i);
        total += term;
        if (total > 9e18L) return UINT64_MAX;
    }
    if (total < 1.0L) return 1;
    return static_cast<std::uint64_t>(total + 0.5L);
}

inline std::uint64_t pow4(int k) {
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) {
        if (r > (UINT64_MAX >> 2)) return UINT64_MAX;
        r <<= 2;
    }
    return r;
}

}  // namespace dicut
