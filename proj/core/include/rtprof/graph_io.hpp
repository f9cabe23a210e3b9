#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rtprof/graph.hpp"

namespace rtprof {

// On-disk form of a graph:
//   {"n": int, "edges": [[u,v], ...], "labels": {"<vertex>": "<string>"}}
// plus an optional "edge_kinds" array aligned with "edges" for graphs
// carrying horizontal/vertical annotations. Emission is canonical
// (edges sorted, labels in vertex order), so emit(parse(emit(g)))
// round-trips bit-exactly.
struct GraphRecord {
    Graph graph;
    std::map<VertexId, std::string> labels;
    std::vector<std::string> edge_kinds;  // empty or one entry per edge
};

std::string graph_to_json(const GraphRecord& record);
GraphRecord graph_from_json(const std::string& text);

void write_graph_json(const GraphRecord& record, const std::string& path);
GraphRecord read_graph_json(const std::string& path);

// Graphviz export ("graph g { ... }"), deterministic ordering.
std::string graph_to_dot(const GraphRecord& record);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace rtprof
