#pragma once

#include <cstdint>
#include <string>

#include "rtprof/graph.hpp"
#include "rtprof/graph_io.hpp"
#include "rtprof/round_tree.hpp"

namespace rtprof {

// Depth-n truncation of the Cantor space [V]^N carrying the ultrametric
// H^{-(first mismatch)} and the uniform measure V^{-n} per point.
struct CantorSpace {
    int H = 2;
    int V = 2;
    int depth = 1;

    double q_z() const;             // log V / log H
    std::uint64_t point_count() const;  // V^depth
    Word point(std::uint64_t index) const;
};

// Guards V^depth against the vertex budget (enumerations are linear in it).
CantorSpace make_cantor_space(int H, int V, int depth,
                              const Budgets& budgets = Budgets::from_env());

// First index (1-based) where the words differ; length+1 when equal.
int first_mismatch(const Word& a, const Word& b);

// H^{-(first mismatch)}, zero for equal words.
double rho(const Word& a, const Word& b, int H);

// Measure of the radius-H^{-k} ball around any point: V^{-k}. The ball
// holds the points strictly closer than H^{-k}, i.e. agreeing with the
// centre on the first k letters.
double ball_measure(const CantorSpace& space, const Word& center, int k);

// Enumeration oracle for the same quantity.
double ball_measure_enumerated(const CantorSpace& space, const Word& center,
                               int k);

struct AhlforsReport {
    double q_z = 0.0;
    double c = 1.0;          // smallest constant bounding mu(B)/r^q both ways
    double min_ratio = 1.0;
    double max_ratio = 1.0;
    std::uint64_t centers_checked = 0;
    std::uint64_t radii_checked = 0;
};

// Scans every centre against the radii H^{-k} and the geometric midpoints
// sqrt(H^{-k} H^{-k-1}), measuring balls by enumeration.
AhlforsReport ahlfors_report(const CantorSpace& space);

std::string ahlfors_to_json(const CantorSpace& space, const AhlforsReport& report);

// Discrete hyperbolic cone over Z^{H,V} x [0,1]: a vertex per pair
// (prefix w in [V]^k, dyadic index j in [0, H^k)) representing the region
// B(w..., H^-k) x [j H^-k, (j+1) H^-k]; edges join overlapping regions at
// most one scale apart (closed overlap, so touching counts).
Graph build_cone_graph(const CantorSpace& space, int depth,
                       const Budgets& budgets = Budgets::from_env());

GraphRecord cone_to_record(const CantorSpace& space, int depth,
                           const Budgets& budgets = Budgets::from_env());

}  // namespace rtprof
