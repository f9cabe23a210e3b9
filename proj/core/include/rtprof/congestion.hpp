#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rtprof/round_tree.hpp"

namespace rtprof {

// Colouring map on ordered vertex pairs of a Y_k graph. Vertices are
// labelled by their horizontal position within their slice mod
// m = ceil(sqrt(T)); the colour of a pair combines the two labels:
// (label(x) * m + label(y)) mod T.
struct Coloring {
    std::uint64_t T = 2;
    std::uint64_t m = 2;
    std::vector<std::uint32_t> label;  // per vertex, in [0, m)

    std::uint64_t color(VertexId x, VertexId y) const {
        return (static_cast<std::uint64_t>(label[x]) * m + label[y]) % T;
    }
};

Coloring build_coloring(const YkGraph& yk);

// Canonical path for an ordered pair: horizontal from w0 to the nearest
// vertex over the colour's base word, vertically down to the base path,
// vertically out to the w1 side, horizontal to w1. The walk may retrace
// vertical edges when both endpoints descend to the base through the same
// ancestors; `edges` holds the distinct edges of the walk.
struct RoutedPath {
    std::vector<VertexId> vertices;  // the walk, w0 first (empty pair: single w0)
    std::vector<EdgeId> edges;       // distinct edge ids, ascending
};

RoutedPath route(const YkGraph& yk, const Coloring& coloring, VertexId w0,
                 VertexId w1);

// Exact integer edge loads M_e = number of ordered pairs (w0, w1) whose
// canonical path contains e.
struct EdgeLoads {
    std::vector<std::uint64_t> m_e;      // per graph edge
    std::uint64_t total_edge_visits = 0; // = sum over pairs of |path edge set|
    std::uint64_t pair_count = 0;        // ordered pairs enumerated
};

struct CongestionOptions {
    std::uint64_t work_budget = Budgets::from_env().work;
    int threads = 1;  // pair enumeration partitions by w0 across workers
};

// Streaming enumeration of all ordered pairs; loads are exact and
// deterministic. Precondition: n^2 within the work budget.
EdgeLoads compute_congestion(const YkGraph& yk, const Coloring& coloring,
                             const CongestionOptions& options = {});

// Plumbing mode: arbitrary graph with an explicit path system mapping an
// ordered pair to the distinct edges of a connecting path.
using PathSystem = std::function<std::vector<EdgeId>(VertexId, VertexId)>;

EdgeLoads compute_congestion(const Graph& g, const PathSystem& paths,
                             const CongestionOptions& options = {});

// Deterministic shortest-path system (BFS trees, ties to smaller index).
PathSystem bfs_path_system(const Graph& g);

// Certified lower bound on h^p from the path-counting lemma:
//   p > 1:  |G|^{1/p} / max_pairs (sum_{e in path} M_e^{1/(p-1)})^{(p-1)/p}
//   p = 1:  |G| / max_e M_e
struct CongestionCertificate {
    double p = 1.0;
    std::uint64_t n = 0;
    double bound = 0.0;
    std::uint64_t max_edge_load = 0;
    EdgeId argmax_edge = 0;
    std::pair<VertexId, VertexId> argmax_pair{0, 0};  // meaningful for p > 1
    double max_path_sum = 0.0;  // p>1: maximizing pair's sum; p=1: max_e M_e
    bool certified = true;
    double elapsed_seconds = 0.0;
    // formula trace
    double n_pow = 0.0;          // n^{1/p}
    double load_exponent = 0.0;  // 1/(p-1), 0 at p = 1
};

CongestionCertificate lemma_bound(const YkGraph& yk, const Coloring& coloring,
                                  const EdgeLoads& loads, double p,
                                  const CongestionOptions& options = {});
CongestionCertificate lemma_bound(const Graph& g, const PathSystem& paths,
                                  const EdgeLoads& loads, double p);

std::string certificate_to_json(const CongestionCertificate& cert);
void write_loads_csv(const Graph& g, const EdgeLoads& loads,
                     const std::string& path);

// Proof-internal load bounds and colouring balance, recorded for
// inspection; the certificate never relies on them.
struct CongestionDiagnostics {
    double max_horizontal_ratio = 0.0;  // load / (T^2 H^{(1+Q)k})
    double max_vertical_ratio = 0.0;    // load / ((n^2/T) V^{-floor(d/log2 H)})
    std::uint64_t max_pairs_per_color = 0;
    std::uint64_t max_per_vertex_color = 0;  // max_x,t |{y : color(x,y)=t}|
    std::vector<EdgeId> violations;  // loads above constant * formula value
};

CongestionDiagnostics diagnose_congestion(const YkGraph& yk,
                                          const Coloring& coloring,
                                          const EdgeLoads& loads,
                                          double constant = 8.0);

// Scaled load estimates from uniformly sampled ordered pairs. Never
// certified; never used by acceptance checks.
struct SampledCongestion {
    std::vector<double> m_e;  // scaled to the full pair count
    std::uint64_t samples = 0;
    std::uint64_t pair_count = 0;
    std::uint64_t seed = 0;  // pair sequence is reproducible from this
};

SampledCongestion estimate_congestion(const YkGraph& yk,
                                      const Coloring& coloring,
                                      std::uint64_t samples,
                                      std::uint64_t seed);
CongestionCertificate lemma_bound_sampled(const YkGraph& yk,
                                          const Coloring& coloring,
                                          const SampledCongestion& sampled,
                                          double p);

}  // namespace rtprof
