#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtprof/graph.hpp"
#include "rtprof/graph_io.hpp"

namespace rtprof {

// Finite word over a digit alphabet {0..H-1}.
using Word = std::vector<std::uint32_t>;

// Words render as concatenated digits ("0110"); alphabets larger than 10
// switch to dot-separated form ("0.11.3") for the whole graph.
std::string word_to_string(const Word& w, bool dotted);
Word word_from_string(const std::string& s);

enum class EdgeKind : std::uint8_t { horizontal, vertical };

inline const char* edge_kind_name(EdgeKind k) {
    return k == EdgeKind::horizontal ? "horizontal" : "vertical";
}

// Address (h, v) of a round-tree vertex; both words have equal length.
struct RtAddress {
    Word h_word;
    Word v_word;
};

// Graph of vertices addressed by pairs (h, v) of equal-length words, with
// vertical edges (h,v)--(ha,vb) and horizontal edges between
// lexicographically consecutive h-words at a fixed v-word.
struct RoundTreeGraph {
    Graph graph;
    std::vector<RtAddress> address;  // per vertex
    std::vector<EdgeKind> edge_kind; // per edge
    int H = 2;
    int V = 1;
    int depth = 0;
};

// The (H,V)-regular round tree graph truncated at the given depth:
// every (h, v) with |h| = |v| <= depth, full horizontal branching H.
RoundTreeGraph build_round_tree(int H, int V, int depth,
                                const Budgets& budgets = Budgets::from_env());

// The V = 1 specialization: dual graph of the subdivided hyperbolic
// half-plane, used as the log-separation testbed.
RoundTreeGraph build_half_plane(int H, int depth,
                                const Budgets& budgets = Budgets::from_env());

struct AxiomReport {
    std::string name;
    bool pass = true;
    std::string witness;  // first failure found, empty when passing
};

struct RoundTreeValidation {
    // equal-lengths, vertical-closure, branching-interval,
    // horizontal-completeness, edge-classification
    std::array<AxiomReport, 5> axioms;

    bool all_pass() const {
        for (const auto& a : axioms)
            if (!a.pass) return false;
        return true;
    }
};

// Checks the five round-tree axioms on an arbitrary address-decorated
// graph. Finite truncations are accepted: a vertex may have no children
// under a given vertical letter, but a nonempty child set must be an
// initial segment [0, D) with 2 <= D <= H.
RoundTreeValidation validate_round_tree(const RoundTreeGraph& g);

GraphRecord round_tree_to_record(const RoundTreeGraph& g);
// Rebuilds addresses and edge kinds from a labelled record. H and V
// are inferred from the digits present unless given.
RoundTreeGraph round_tree_from_record(const GraphRecord& record,
                                      std::optional<int> H = std::nullopt,
                                      std::optional<int> V = std::nullopt);

// One horizontal slice of a Y_k graph: the vertices sharing a v-word,
// forming a contiguous lexicographic interval of h-words.
struct YkSlice {
    int level = 0;              // construction stage i in [0, k]
    int depth = 0;              // |h| = |v| of the slice's vertices
    std::uint64_t v_suffix = 0; // index of the v-word past the 0^t prefix
    std::uint64_t first_h = 0;  // first h-word index at this depth
    std::uint64_t length = 0;   // vertex count
    std::uint32_t parent = 0;   // slice index of the parent (self at level 0)
    VertexId first_vertex = 0;  // id of the vertex at h = first_h
};

// Witness subgraph of the round-tree lower bound: a base horizontal path
// of length T extended k times, each stage appending one letter in both
// coordinates and multiplying slice lengths by H.
struct YkGraph {
    Graph graph;
    std::vector<RtAddress> address;
    std::vector<EdgeKind> edge_kind;
    int H = 2;
    int V = 2;
    double p = 1.0;
    int k = 1;
    std::uint64_t T = 2;  // base path length
    int t = 1;            // base depth, smallest with H^t >= T

    std::vector<YkSlice> slices;        // level-major, v-suffix ascending
    std::vector<std::uint32_t> slice_of;  // per vertex
    std::vector<int> level_of;            // per vertex
    std::vector<std::uint64_t> h_index;   // per vertex, absolute at its depth

    // Horizontal edge ids: slice s, edge between positions x and x+1 is
    // h_edge_ids[h_edge_offset[s] + (x - first_h)].
    std::vector<std::size_t> h_edge_offset;
    std::vector<EdgeId> h_edge_ids;
    // Parent (vertical) edge id per vertex; undefined at level 0.
    std::vector<EdgeId> parent_edge;

    VertexId vertex_at(std::uint32_t slice, std::uint64_t h) const {
        return slices[slice].first_vertex +
               static_cast<VertexId>(h - slices[slice].first_h);
    }
    VertexId parent_vertex(VertexId v) const {
        const auto& s = slices[slice_of[v]];
        const auto& ps = slices[s.parent];
        std::uint64_t shift = 1;
        for (int d = ps.depth; d < s.depth; ++d) shift *= H;
        return vertex_at(s.parent, h_index[v] / shift);
    }
    EdgeId horizontal_edge(std::uint32_t slice, std::uint64_t x) const {
        return h_edge_ids[h_edge_offset[slice] +
                          (x - slices[slice].first_h)];
    }
};

// T rule: max(2, floor(H^{k(Q-p)/p})) with Q = 1 + log V / log H.
std::uint64_t yk_base_length(int H, int V, double p, int k);

// Minimal j >= 0 such that extending a slice of the given length by 1+j
// letters reaches the stage-i target length T*H^i. Zero in the regular
// tree; kept generic for irregular inputs.
int yk_extension_letters(std::uint64_t slice_length, std::uint64_t T, int H,
                         int stage);

YkGraph build_yk(int H, int V, double p, int k,
                 const Budgets& budgets = Budgets::from_env());

GraphRecord yk_to_record(const YkGraph& g);

}  // namespace rtprof
