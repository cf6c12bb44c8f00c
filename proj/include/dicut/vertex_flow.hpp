#pragma once

#include <optional>
#include <vector>

#include "dicut/digraph.hpp"
#include "dicut/types.hpp"

namespace dicut {

namespace detail {

constexpr int kInfCap = 1 << 29;

// Unit-capacity vertex flow via vertex splitting: v becomes v_in -> v_out
// with capacity 1 (raised to infinity for undeletable vertices), original
// arcs become infinite-capacity out->in arcs, a super-source feeds every
// source's v_in and every sink's v_out feeds the super-sink. Terminals are
// therefore deletable, matching the convention used throughout.
class SplitFlowNet {
public:
    SplitFlowNet(const DiGraph& g, const VertexSet& sources, const VertexSet& sinks,
                 const VertexSet& undeletable = {}, const VertexSet& removed = {})
        : n_(g.n()) {
        adj_.resize(2 * n_ + 2);
        std::vector<char> dead(n_, 0);
        for (VertexId v : removed) dead[v] = 1;
        std::vector<char> heavy(n_, 0);
        for (VertexId v : undeletable) heavy[v] = 1;
        for (VertexId v = 0; v < n_; ++v) {
            if (dead[v]) continue;
            add_arc(node_in(v), node_out(v), heavy[v] ? kInfCap : 1);
        }
        for (const Arc& a : g.arcs())
            if (!dead[a.tail] && !dead[a.head]) add_arc(node_out(a.tail), node_in(a.head), kInfCap);
        for (VertexId s : sources)
            if (!dead[s]) add_arc(source_node(), node_in(s), kInfCap);
        for (VertexId t : sinks)
            if (!dead[t]) add_arc(node_out(t), sink_node(), kInfCap);
    }

    int node_in(VertexId v) const { return 2 * v; }
    int node_out(VertexId v) const { return 2 * v + 1; }
    int source_node() const { return 2 * n_; }
    int sink_node() const { return 2 * n_ + 1; }

    // BFS augmentations until no augmenting path remains or `limit` paths
    // have been pushed. Returns the number of augmentations performed.
    int augment(int limit) {
        int pushed = 0;
        while (pushed < limit && augment_once()) ++pushed;
        return pushed;
    }

    bool augment_once() {
        const int N = static_cast<int>(adj_.size());
        std::vector<int> pred_edge(N, -1);
        std::vector<char> seen(N, 0);
        std::vector<int> queue{source_node()};
        seen[source_node()] = 1;
        for (std::size_t qi = 0; qi < queue.size() && !seen[sink_node()]; ++qi) {
            int u = queue[qi];
            for (int eid : adj_[u]) {
                const Edge& e = edges_[eid];
                if (e.cap - e.flow <= 0 || seen[e.to]) continue;
                seen[e.to] = 1;
                pred_edge[e.to] = eid;
                if (e.to == sink_node()) break;
                queue.push_back(e.to);
            }
        }
        if (!seen[sink_node()]) return false;
        for (int v = sink_node(); v != source_node();) {
            Edge& e = edges_[pred_edge[v]];
            e.flow += 1;
            edges_[pred_edge[v] ^ 1].flow -= 1;
            v = edges_[pred_edge[v] ^ 1].to;
        }
        return true;
    }

    // Vertices whose split arc carries flow and is the boundary of the
    // residual source-reachable region: the mincut closest to the sources.
    VertexSet cut_closest_to_sources() const {
        std::vector<char> reach = residual_reach_from_source();
        VertexSet cut;
        for (VertexId v = 0; v < n_; ++v)
            if (reach[node_in(v)] && !reach[node_out(v)]) cut.push_back(v);
        return cut;
    }

    // Symmetric boundary on the sink side: the mincut closest to the sinks.
    VertexSet cut_closest_to_sinks() const {
        std::vector<char> reach = residual_reach_to_sink();
        VertexSet cut;
        for (VertexId v = 0; v < n_; ++v)
            if (!reach[node_in(v)] && reach[node_out(v)]) cut.push_back(v);
        return cut;
    }

    std::vector<char> residual_reach_from_source() const {
        const int N = static_cast<int>(adj_.size());
        std::vector<char> seen(N, 0);
        std::vector<int> queue{source_node()};
        seen[source_node()] = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi)
            for (int eid : adj_[queue[qi]]) {
                const Edge& e = edges_[eid];
                if (e.cap - e.flow > 0 && !seen[e.to]) {
                    seen[e.to] = 1;
                    queue.push_back(e.to);
                }
            }
        return seen;
    }

    std::vector<char> residual_reach_to_sink() const {
        const int N = static_cast<int>(adj_.size());
        std::vector<char> seen(N, 0);
        std::vector<int> queue{sink_node()};
        seen[sink_node()] = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            // w -> u is in the residual iff the paired edge stored in u's
            // adjacency (u -> w) has residual capacity on its companion.
            for (int eid : adj_[u]) {
                const Edge& e = edges_[eid];
                const Edge& rev = edges_[eid ^ 1];  // companion arc e.to -> u
                if (rev.cap - rev.flow > 0 && !seen[e.to]) {
                    seen[e.to] = 1;
                    queue.push_back(e.to);
                }
            }
        }
        return seen;
    }

    void raise_vertex_capacity(VertexId v, int cap) {
        edges_[split_edge_id_[v]].cap = cap;
    }

    // Decomposes the current flow into vertex paths (original ids), one per
    // unit leaving the super-source. Deterministic given adjacency order.
    std::vector<std::vector<VertexId>> decompose_paths() {
        std::vector<int> remaining(edges_.size());
        for (std::size_t i = 0; i < edges_.size(); ++i) remaining[i] = std::max(0, edges_[i].flow);
        std::vector<std::vector<VertexId>> paths;
        for (int eid : adj_[source_node()]) {
            while (remaining[eid] > 0) {
                --remaining[eid];
                std::vector<VertexId> path;
                int node = edges_[eid].to;
                while (node != sink_node()) {
                    if (node % 2 == 0 && node < 2 * n_) path.push_back(node / 2);
                    int next = -1;
                    for (int out : adj_[node])
                        if (remaining[out] > 0) {
                            next = out;
                            break;
                        }
                    if (next < 0) break;  // malformed flow; callers never see this
                    --remaining[next];
                    node = edges_[next].to;
                }
                paths.push_back(std::move(path));
            }
        }
        return paths;
    }

private:
    struct Edge {
        int to;
        int cap;
        int flow;
    };

    void add_arc(int from, int to, int cap) {
        // split arcs are registered so their capacity can be raised later
        if (from % 2 == 0 && to == from + 1 && from < 2 * n_) {
            if (split_edge_id_.size() < static_cast<std::size_t>(n_)) split_edge_id_.resize(n_, -1);
            split_edge_id_[from / 2] = static_cast<int>(edges_.size());
        }
        adj_[from].push_back(static_cast<int>(edges_.size()));
        edges_.push_back({to, cap, 0});
        adj_[to].push_back(static_cast<int>(edges_.size()));
        edges_.push_back({from, 0, 0});
    }

    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> split_edge_id_;
};

}  // namespace detail

struct FlowResult {
    int value = 0;
    std::vector<std::vector<VertexId>> paths;
    // Residual reachability labels on split nodes (index 2v = v_in,
    // 2v+1 = v_out): enough to extract both extreme mincuts.
    std::vector<char> source_reach;
    std::vector<char> sink_reach;
};

enum class CutSide { A, B };

namespace detail {

inline void check_terminals(const DiGraph& g, const VertexSet& a, const VertexSet& b) {
    if (a.empty() || b.empty()) throw InvalidQuery("terminal sets must be nonempty");
    if (!sets_disjoint(a, b)) throw InvalidQuery("terminal sets must be disjoint");
    for (VertexId v : a)
        if (v < 0 || v >= g.n()) throw InvalidQuery("terminal out of range");
    for (VertexId v : b)
        if (v < 0 || v >= g.n()) throw InvalidQuery("terminal out of range");
}

// Core of is_closest, with optional undeletable vertices and removed
// vertices; tolerates overlapping or empty x / t.
inline bool is_closest_restricted(const DiGraph& g, const VertexSet& x, const VertexSet& t,
                                  const VertexSet& undeletable = {}, const VertexSet& removed = {}) {
    if (x.empty()) return true;
    SplitFlowNet net(g, x, t, undeletable, removed);
    int value = net.augment(static_cast<int>(x.size()) + 1);
    if (value != static_cast<int>(x.size())) return false;
    return net.cut_closest_to_sinks() == x;
}

}  // namespace detail

// Maximum number of vertex-disjoint a->b paths; equals the minimum number
// of vertices (terminals included) whose deletion destroys all a->b paths.
inline FlowResult max_vertex_flow(const DiGraph& g, const VertexSet& a, const VertexSet& b) {
    detail::check_terminals(g, a, b);
    detail::SplitFlowNet net(g, a, b);
    FlowResult res;
    res.value = net.augment(g.n() + 1);
    res.paths = net.decompose_paths();
    res.source_reach = net.residual_reach_from_source();
    res.sink_reach = net.residual_reach_to_sink();
    res.source_reach.resize(2 * g.n());
    res.sink_reach.resize(2 * g.n());
    return res;
}

// The unique minimum a-b vertex cut closest to the chosen side.
inline VertexSet min_vertex_cut(const DiGraph& g, const VertexSet& a, const VertexSet& b,
                                CutSide side) {
    detail::check_terminals(g, a, b);
    detail::SplitFlowNet net(g, a, b);
    net.augment(g.n() + 1);
    return side == CutSide::B ? net.cut_closest_to_sinks() : net.cut_closest_to_sources();
}

// True iff x is the unique x-t vertex mincut (x is "closest to t").
inline bool is_closest(const DiGraph& g, const VertexSet& x, const VertexSet& t) {
    for (VertexId v : x)
        if (v < 0 || v >= g.n()) throw InvalidQuery("is_closest: vertex out of range");
    return detail::is_closest_restricted(g, x, t);
}

// Lemma-18 witness: |x| disjoint x->t paths with endpoints Y, plus, for
// each v in x, an augmented bundle of |x|+1 paths that are vertex-disjoint
// except at v. Endpoints of bundle v are Y plus at most one new sink.
struct ClosestWitness {
    VertexSet base_endpoints;
    struct Bundle {
        VertexId v;
        std::vector<std::vector<VertexId>> paths;
        VertexSet endpoints;
    };
    std::vector<Bundle> bundles;
};

inline ClosestWitness closest_witness(const DiGraph& g, const VertexSet& x, const VertexSet& t) {
    if (!is_closest(g, x, t)) throw InvalidQuery("closest_witness: x is not closest to t");
    ClosestWitness w;
    if (x.empty()) return w;

    detail::SplitFlowNet base(g, x, t);
    base.augment(static_cast<int>(x.size()));
    for (const auto& path : base.decompose_paths()) w.base_endpoints.push_back(path.back());
    w.base_endpoints = canon(w.base_endpoints);

    for (VertexId v : x) {
        detail::SplitFlowNet net = base;  // value semantics: residual copied
        net.raise_vertex_capacity(v, 2);
        net.augment(1);
        ClosestWitness::Bundle bundle;
        bundle.v = v;
        bundle.paths = net.decompose_paths();
        for (const auto& path : bundle.paths) bundle.endpoints.push_back(path.back());
        bundle.endpoints = canon(bundle.endpoints);
        w.bundles.push_back(std::move(bundle));
    }
    return w;
}

}  // namespace dicut
