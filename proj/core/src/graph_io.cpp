#include "rtprof/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rtprof {

using ordered_json = nlohmann::ordered_json;

std::string graph_to_json(const GraphRecord& record) {
    ordered_json j;
    j["n"] = record.graph.num_vertices();
    auto edges = ordered_json::array();
    for (const auto& e : record.graph.edges()) edges.push_back({e.u, e.v});
    j["edges"] = std::move(edges);
    if (!record.labels.empty()) {
        ordered_json labels = ordered_json::object();
        for (const auto& [v, text] : record.labels) labels[std::to_string(v)] = text;
        j["labels"] = std::move(labels);
    }
    if (!record.edge_kinds.empty()) {
        if (record.edge_kinds.size() != record.graph.num_edges())
            throw validation_error("edge_kinds length mismatch");
        j["edge_kinds"] = record.edge_kinds;
    }
    return j.dump(2) + "\n";
}

GraphRecord graph_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("invalid graph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw validation_error("graph JSON must contain \"n\" and \"edges\"");

    GraphRecord record;
    const std::size_t n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& item : j.at("edges")) {
        if (!item.is_array() || item.size() != 2)
            throw validation_error("edge entries must be [u, v]");
        edges.push_back({item[0].get<VertexId>(), item[1].get<VertexId>()});
    }
    record.graph = Graph::from_edges(n, std::move(edges));
    if (j.contains("labels")) {
        for (const auto& [key, value] : j.at("labels").items()) {
            const auto v = static_cast<VertexId>(std::stoul(key));
            if (v >= n) throw validation_error("label vertex out of range");
            record.labels[v] = value.get<std::string>();
        }
    }
    if (j.contains("edge_kinds")) {
        record.edge_kinds = j.at("edge_kinds").get<std::vector<std::string>>();
        if (record.edge_kinds.size() != record.graph.num_edges())
            throw validation_error("edge_kinds length mismatch");
    }
    return record;
}

void write_graph_json(const GraphRecord& record, const std::string& path) {
    write_text_file(path, graph_to_json(record));
}

GraphRecord read_graph_json(const std::string& path) {
    return graph_from_json(read_text_file(path));
}

std::string graph_to_dot(const GraphRecord& record) {
    std::ostringstream out;
    out << "graph g {\n";
    for (VertexId v = 0; v < record.graph.num_vertices(); ++v) {
        auto it = record.labels.find(v);
        if (it != record.labels.end())
            out << "  " << v << " [label=\"" << it->second << "\"];\n";
        else
            out << "  " << v << ";\n";
    }
    for (EdgeId i = 0; i < record.graph.num_edges(); ++i) {
        const auto& e = record.graph.edge(i);
        out << "  " << e.u << " -- " << e.v;
        if (!record.edge_kinds.empty())
            out << " [kind=\"" << record.edge_kinds[i] << "\"]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw validation_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace rtprof
