#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rtprof/errors.hpp"

namespace rtprof {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// Undirected edge, stored with u < v.
struct Edge {
    VertexId u;
    VertexId v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Finite simple undirected graph with stable vertex indexing.
// Immutable after construction; edges are canonically ordered (smaller
// endpoint first, then sorted), so edge indices are stable and
// congestion maps can key on them.
class Graph {
public:
    Graph() = default;

    // Validates and canonicalizes: rejects self-loops, duplicate edges
    // and out-of-range endpoints.
    static Graph from_edges(std::size_t n, std::vector<Edge> edges);

    std::size_t num_vertices() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    std::size_t max_degree() const { return max_degree_; }
    std::size_t degree(VertexId v) const {
        return adj_offsets_[v + 1] - adj_offsets_[v];
    }

    struct Neighbor {
        VertexId vertex;
        EdgeId edge;

        friend bool operator==(const Neighbor&, const Neighbor&) = default;
    };

    // Neighbors of v in ascending vertex order.
    std::span<const Neighbor> neighbors(VertexId v) const {
        return {adj_.data() + adj_offsets_[v],
                adj_.data() + adj_offsets_[v + 1]};
    }

    // Edge index for {u, v}, or -1 if absent.
    std::int64_t find_edge(VertexId u, VertexId v) const;

    bool is_connected() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<Neighbor> adj_;            // grouped by vertex
    std::vector<std::size_t> adj_offsets_; // size n_ + 1
    std::size_t max_degree_ = 0;
};

// Real-valued function on the vertices of the ambient graph; length must
// equal the graph's vertex count wherever the two meet.
using VertexFunction = std::vector<double>;

struct InducedSubgraph {
    Graph graph;
    // to_original[i] = index in the parent graph of the subgraph's vertex i.
    std::vector<VertexId> to_original;
};

// Subgraph induced on the vertex set s; vertices are renumbered in
// ascending original order.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const VertexId> s);

// Sizes of the connected components of g with the vertices in s removed,
// in descending order. Empty when s covers all vertices.
std::vector<std::size_t> components_after_removal(const Graph& g,
                                                  std::span<const VertexId> s);

// Standard ell^p norm, p >= 1 finite.
double lp_norm(std::span<const double> values, double p);

// ell^p norm of the edge gradient |f(x) - f(y)|.
double gradient_norm(const Graph& g, const VertexFunction& f, double p);

// Relative tolerance used by the norm-inequality check below.
inline constexpr double kNormCheckRelTol = 1e-12;

struct NormInequalityCheck {
    bool holds;
    // ||v||_p - ||v||_q  (>= 0 when the left inequality holds)
    double left_slack;
    // r^{1/p - 1/q} ||v||_q - ||v||_p  (>= 0 when the right inequality holds)
    double right_slack;
};

// Checks ||v||_q <= ||v||_p <= r^{1/p-1/q} ||v||_q for q >= p >= 1,
// with r = v.size(), up to kNormCheckRelTol relative slack.
NormInequalityCheck check_norm_inequalities(std::span<const double> v,
                                            double p, double q);

// Deterministic helpers shared by tests and the CLI.
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph star_graph(std::size_t leaves);

}  // namespace rtprof
