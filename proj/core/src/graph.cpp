#include "rtprof/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace rtprof {

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges) {
    for (auto& e : edges) {
        if (e.u == e.v)
            throw validation_error("self-loop at vertex " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.v >= n)
            throw validation_error("edge endpoint " + std::to_string(e.v) +
                                   " out of range [0, " + std::to_string(n) + ")");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw validation_error("duplicate edge");

    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);

    std::vector<std::size_t> deg(n, 0);
    for (const auto& e : g.edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    g.adj_offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v)
        g.adj_offsets_[v + 1] = g.adj_offsets_[v] + deg[v];
    g.adj_.resize(g.adj_offsets_[n]);
    std::vector<std::size_t> cursor(g.adj_offsets_.begin(),
                                    g.adj_offsets_.end() - 1);
    for (EdgeId i = 0; i < g.edges_.size(); ++i) {
        const Edge& e = g.edges_[i];
        g.adj_[cursor[e.u]++] = {e.v, i};
        g.adj_[cursor[e.v]++] = {e.u, i};
    }
    for (std::size_t v = 0; v < n; ++v) {
        auto begin = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.adj_offsets_[v]);
        auto end = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.adj_offsets_[v + 1]);
        std::sort(begin, end, [](const Neighbor& a, const Neighbor& b) {
            return a.vertex < b.vertex;
        });
    }
    g.max_degree_ = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    return g;
}

std::int64_t Graph::find_edge(VertexId u, VertexId v) const {
    if (u >= n_ || v >= n_) return -1;
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v,
                               [](const Neighbor& a, VertexId b) {
                                   return a.vertex < b;
                               });
    if (it == nb.end() || it->vertex != v) return -1;
    return it->edge;
}

bool Graph::is_connected() const {
    if (n_ <= 1) return true;
    std::vector<bool> seen(n_, false);
    std::vector<VertexId> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (const auto& nb : neighbors(v)) {
            if (!seen[nb.vertex]) {
                seen[nb.vertex] = true;
                ++count;
                stack.push_back(nb.vertex);
            }
        }
    }
    return count == n_;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const VertexId> s) {
    std::vector<VertexId> keep(s.begin(), s.end());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (!keep.empty() && keep.back() >= g.num_vertices())
        throw validation_error("vertex " + std::to_string(keep.back()) +
                               " out of range");

    std::vector<std::int64_t> remap(g.num_vertices(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<std::int64_t>(i);

    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        if (remap[e.u] >= 0 && remap[e.v] >= 0)
            edges.push_back({static_cast<VertexId>(remap[e.u]),
                             static_cast<VertexId>(remap[e.v])});
    }
    return {Graph::from_edges(keep.size(), std::move(edges)), std::move(keep)};
}

std::vector<std::size_t> components_after_removal(const Graph& g,
                                                  std::span<const VertexId> s) {
    std::vector<bool> removed(g.num_vertices(), false);
    for (VertexId v : s) {
        if (v >= g.num_vertices())
            throw validation_error("vertex " + std::to_string(v) + " out of range");
        removed[v] = true;
    }

    std::vector<bool> seen(g.num_vertices(), false);
    std::vector<std::size_t> sizes;
    std::vector<VertexId> stack;
    for (VertexId start = 0; start < g.num_vertices(); ++start) {
        if (removed[start] || seen[start]) continue;
        std::size_t size = 0;
        stack.push_back(start);
        seen[start] = true;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            ++size;
            for (const auto& nb : g.neighbors(v)) {
                if (!removed[nb.vertex] && !seen[nb.vertex]) {
                    seen[nb.vertex] = true;
                    stack.push_back(nb.vertex);
                }
            }
        }
        sizes.push_back(size);
    }
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

double lp_norm(std::span<const double> values, double p) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw validation_error("lp_norm requires finite p >= 1");
    double sum = 0.0;
    for (double x : values) sum += std::pow(std::abs(x), p);
    return std::pow(sum, 1.0 / p);
}

double gradient_norm(const Graph& g, const VertexFunction& f, double p) {
    if (f.size() != g.num_vertices())
        throw validation_error("vertex function length mismatch");
    if (!(p >= 1.0) || !std::isfinite(p))
        throw validation_error("gradient_norm requires finite p >= 1");
    double sum = 0.0;
    for (const auto& e : g.edges()) sum += std::pow(std::abs(f[e.u] - f[e.v]), p);
    return std::pow(sum, 1.0 / p);
}

NormInequalityCheck check_norm_inequalities(std::span<const double> v,
                                            double p, double q) {
    if (!(p >= 1.0) || !(q >= p))
        throw validation_error("check_norm_inequalities requires q >= p >= 1");
    if (v.empty())
        throw validation_error("check_norm_inequalities requires a nonempty vector");
    const double np = lp_norm(v, p);
    const double nq = lp_norm(v, q);
    const double r = static_cast<double>(v.size());
    const double bound = std::pow(r, 1.0 / p - 1.0 / q) * nq;
    NormInequalityCheck out;
    out.left_slack = np - nq;
    out.right_slack = bound - np;
    const bool left = nq <= np * (1.0 + kNormCheckRelTol);
    const bool right = np <= bound * (1.0 + kNormCheckRelTol);
    out.holds = left && right;
    return out;
}

Graph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1)});
    return Graph::from_edges(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw validation_error("cycle needs n >= 3");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1)});
    edges.push_back({0, static_cast<VertexId>(n - 1)});
    return Graph::from_edges(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j)});
    return Graph::from_edges(n, std::move(edges));
}

Graph star_graph(std::size_t leaves) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i <= leaves; ++i)
        edges.push_back({0, static_cast<VertexId>(i)});
    return Graph::from_edges(leaves + 1, std::move(edges));
}

Budgets Budgets::from_env() {
    Budgets b;
    const char* env = std::getenv("RTPROF_BUDGET");
    if (!env || !*env) return b;
    std::string s(env);
    if (s.find('=') == std::string::npos) {
        b.vertex = std::strtoull(s.c_str(), nullptr, 10);
        return b;
    }
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        std::string item = s.substr(pos, comma - pos);
        std::size_t eq = item.find('=');
        if (eq != std::string::npos) {
            std::string key = item.substr(0, eq);
            std::uint64_t value = std::strtoull(item.c_str() + eq + 1, nullptr, 10);
            if (key == "vertex") b.vertex = value;
            if (key == "work") b.work = value;
        }
        pos = comma + 1;
    }
    return b;
}

}  // namespace rtprof
