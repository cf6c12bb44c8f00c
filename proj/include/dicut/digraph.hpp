#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dicut/types.hpp"

namespace dicut {

// Immutable directed multigraph with dense 0-based vertex ids. Parallel
// arcs and self-loops are allowed and preserved. All operations are pure
// queries, safe for concurrent use over a shared graph.
class DiGraph {
public:
    DiGraph() = default;

    DiGraph(int n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
        if (n_ < 0) throw InvalidQuery("vertex count must be non-negative");
        out_.resize(n_);
        in_.resize(n_);
        for (const Arc& a : arcs_) {
            if (a.tail < 0 || a.tail >= n_ || a.head < 0 || a.head >= n_)
                throw InvalidQuery("arc endpoint out of range");
            out_[a.tail].push_back(a.head);
            in_[a.head].push_back(a.tail);
        }
    }

    int n() const { return n_; }
    int m() const { return static_cast<int>(arcs_.size()); }
    const std::vector<Arc>& arcs() const { return arcs_; }
    // Adjacency lists in arc order (the arcs list re-indexed per endpoint).
    const std::vector<VertexId>& out(VertexId v) const { return out_[v]; }
    const std::vector<VertexId>& in(VertexId v) const { return in_[v]; }

    friend bool operator==(const DiGraph& a, const DiGraph& b) {
        return a.n_ == b.n_ && a.arcs_ == b.arcs_;
    }

private:
    int n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<std::vector<VertexId>> out_, in_;
};

// Strongly connected components in topological order: every arc goes from
// its own component to one with an equal or larger index. Ties between
// incomparable components are broken by smallest contained vertex id.
struct SccDecomposition {
    std::vector<VertexSet> components;
    std::vector<int> component_of;
};

namespace detail {

// Tarjan, iterative. Emits components in reverse topological order.
inline std::vector<int> tarjan_component_ids(const DiGraph& g, int& count) {
    const int n = g.n();
    std::vector<int> comp(n, -1), low(n), disc(n, -1), stack_vertices;
    std::vector<char> on_stack(n, 0);
    int timer = 0;
    count = 0;

    struct Frame {
        VertexId v;
        std::size_t next_out;
    };
    std::vector<Frame> call;

    for (VertexId root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            Frame& f = call.back();
            VertexId v = f.v;
            if (f.next_out == 0) {
                disc[v] = low[v] = timer++;
                stack_vertices.push_back(v);
                on_stack[v] = 1;
            }
            if (f.next_out < g.out(v).size()) {
                VertexId w = g.out(v)[f.next_out++];
                if (disc[w] == -1) {
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], disc[w]);
                }
            } else {
                if (low[v] == disc[v]) {
                    while (true) {
                        VertexId w = stack_vertices.back();
                        stack_vertices.pop_back();
                        on_stack[w] = 0;
                        comp[w] = count;
                        if (w == v) break;
                    }
                    ++count;
                }
                call.pop_back();
                if (!call.empty()) {
                    VertexId parent = call.back().v;
                    low[parent] = std::min(low[parent], low[v]);
                }
            }
        }
    }
    return comp;
}

}  // namespace detail

inline SccDecomposition scc_decompose(const DiGraph& g) {
    int count = 0;
    std::vector<int> raw = detail::tarjan_component_ids(g, count);

    // Condensation + Kahn with a min-heap keyed by smallest member id gives
    // a unique topological order independent of arc order.
    std::vector<VertexId> min_member(count, g.n());
    for (VertexId v = 0; v < g.n(); ++v)
        min_member[raw[v]] = std::min(min_member[raw[v]], v);

    std::vector<std::vector<int>> succ(count);
    std::vector<int> indeg(count, 0);
    for (const Arc& a : g.arcs()) {
        int cu = raw[a.tail], cv = raw[a.head];
        if (cu != cv) succ[cu].push_back(cv);
    }
    for (auto& s : succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (int t : s) ++indeg[t];
    }

    std::vector<int> heap;  // raw component ids, ordered by min_member
    auto cmp = [&](int a, int b) { return min_member[a] > min_member[b]; };
    for (int c = 0; c < count; ++c)
        if (indeg[c] == 0) heap.push_back(c);
    std::make_heap(heap.begin(), heap.end(), cmp);

    std::vector<int> order;  // raw id in final position order
    order.reserve(count);
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        int c = heap.back();
        heap.pop_back();
        order.push_back(c);
        for (int t : succ[c])
            if (--indeg[t] == 0) {
                heap.push_back(t);
                std::push_heap(heap.begin(), heap.end(), cmp);
            }
    }

    SccDecomposition dec;
    dec.components.resize(count);
    dec.component_of.assign(g.n(), -1);
    std::vector<int> position(count);
    for (int i = 0; i < count; ++i) position[order[i]] = i;
    for (VertexId v = 0; v < g.n(); ++v) {
        int p = position[raw[v]];
        dec.component_of[v] = p;
        dec.components[p].push_back(v);
    }
    return dec;
}

// R^g_sources(deleted): vertices reachable from sources \ deleted after
// removing `deleted`. A source inside `deleted` contributes nothing.
inline VertexSet reach_set(const DiGraph& g, const VertexSet& sources, const VertexSet& deleted) {
    std::vector<char> dead(g.n(), 0), seen(g.n(), 0);
    for (VertexId v : deleted)
        if (v >= 0 && v < g.n()) dead[v] = 1;
    std::vector<VertexId> queue;
    for (VertexId s : sources)
        if (s >= 0 && s < g.n() && !dead[s] && !seen[s]) {
            seen[s] = 1;
            queue.push_back(s);
        }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        VertexId v = queue[qi];
        for (VertexId w : g.out(v))
            if (!dead[w] && !seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
    }
    VertexSet out;
    for (VertexId v = 0; v < g.n(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

inline DiGraph reverse(const DiGraph& g) {
    std::vector<Arc> arcs;
    arcs.reserve(g.arcs().size());
    for (const Arc& a : g.arcs()) arcs.push_back({a.head, a.tail});
    return DiGraph(g.n(), std::move(arcs));
}

// Subgraph after deleting x, with kept[new_id] = old_id (order-preserving).
struct DeleteView {
    DiGraph graph;
    std::vector<VertexId> kept;

    VertexId to_old(VertexId new_id) const { return kept[new_id]; }
    // -1 when the old id was deleted.
    VertexId to_new(VertexId old_id) const {
        auto it = std::lower_bound(kept.begin(), kept.end(), old_id);
        if (it == kept.end() || *it != old_id) return -1;
        return static_cast<VertexId>(it - kept.begin());
    }
    VertexSet map_to_old(const VertexSet& s) const {
        VertexSet out;
        out.reserve(s.size());
        for (VertexId v : s) out.push_back(kept[v]);
        return out;  // order preserved, stays canonical
    }
    VertexSet map_to_new(const VertexSet& s) const {
        VertexSet out;
        for (VertexId v : s) {
            VertexId w = to_new(v);
            if (w >= 0) out.push_back(w);
        }
        return out;
    }
};

inline DeleteView delete_view(const DiGraph& g, const VertexSet& x) {
    std::vector<char> dead(g.n(), 0);
    for (VertexId v : x) {
        if (v < 0 || v >= g.n()) throw InvalidQuery("delete_view: vertex out of range");
        dead[v] = 1;
    }
    DeleteView view;
    std::vector<VertexId> remap(g.n(), -1);
    for (VertexId v = 0; v < g.n(); ++v)
        if (!dead[v]) {
            remap[v] = static_cast<VertexId>(view.kept.size());
            view.kept.push_back(v);
        }
    std::vector<Arc> arcs;
    for (const Arc& a : g.arcs())
        if (!dead[a.tail] && !dead[a.head]) arcs.push_back({remap[a.tail], remap[a.head]});
    view.graph = DiGraph(static_cast<int>(view.kept.size()), std::move(arcs));
    return view;
}

// Text format: line 1 "n m", then m lines "tail head"; '#' lines ignored.
inline DiGraph parse_graph(std::istream& is) {
    std::string line;
    int lineno = 0;
    auto next_data_line = [&](std::string& out) -> bool {
        while (std::getline(is, line)) {
            ++lineno;
            std::size_t i = line.find_first_not_of(" \t\r");
            if (i == std::string::npos) continue;
            if (line[i] == '#') continue;
            out = line;
            return true;
        }
        return false;
    };
    auto parse_ints = [&](const std::string& text, int want) {
        std::vector<long long> vals;
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
            if (i >= text.size()) break;
            long long v = 0;
            auto [p, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
            if (ec != std::errc() || (p != text.data() + text.size() && *p != ' ' && *p != '\t' && *p != '\r'))
                throw ParseError("line " + std::to_string(lineno) + ": expected integer token");
            vals.push_back(v);
            i = static_cast<std::size_t>(p - text.data());
        }
        if (static_cast<int>(vals.size()) != want)
            throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(want) +
                             " integers");
        return vals;
    };

    std::string header;
    if (!next_data_line(header)) throw ParseError("line 1: missing 'n m' header");
    auto hv = parse_ints(header, 2);
    long long n = hv[0], m = hv[1];
    if (n < 0 || m < 0) throw ParseError("line " + std::to_string(lineno) + ": negative header value");

    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        std::string row;
        if (!next_data_line(row))
            throw ParseError("line " + std::to_string(lineno + 1) + ": expected " + std::to_string(m) +
                             " arcs, got " + std::to_string(i));
        auto av = parse_ints(row, 2);
        if (av[0] < 0 || av[0] >= n || av[1] < 0 || av[1] >= n)
            throw ParseError("line " + std::to_string(lineno) + ": arc endpoint out of range");
        arcs.push_back({static_cast<VertexId>(av[0]), static_cast<VertexId>(av[1])});
    }
    return DiGraph(static_cast<int>(n), std::move(arcs));
}

inline DiGraph parse_graph(std::string_view text) {
    std::istringstream is{std::string(text)};
    return parse_graph(is);
}

inline std::string to_text(const DiGraph& g) {
    std::ostringstream os;
    os << g.n() << ' ' << g.m() << '\n';
    for (const Arc& a : g.arcs()) os << a.tail << ' ' << a.head << '\n';
    return os.str();
}

}  // namespace dicut
