#include "rtprof/congestion.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace rtprof {

namespace {

// Per-slice geometry shared by routing and the congestion passes.
struct RoutingTables {
    const YkGraph* yk;
    std::vector<std::uint64_t> shift_to_base;  // H^(depth - t)
    std::vector<std::uint64_t> parent_shift;   // H^(depth - parent depth)
    std::vector<std::size_t> hoff;  // slack-padded per-slice offsets
    std::uint64_t base_first;

    explicit RoutingTables(const YkGraph& y) : yk(&y) {
        const auto H = static_cast<std::uint64_t>(y.H);
        shift_to_base.resize(y.slices.size());
        parent_shift.resize(y.slices.size(), 1);
        hoff.resize(y.slices.size());
        for (std::size_t s = 0; s < y.slices.size(); ++s) {
            std::uint64_t sh = 1;
            for (int d = y.t; d < y.slices[s].depth; ++d) sh *= H;
            shift_to_base[s] = sh;
            if (s > 0) {
                const auto& ps = y.slices[y.slices[s].parent];
                std::uint64_t pshift = 1;
                for (int d = ps.depth; d < y.slices[s].depth; ++d) pshift *= H;
                parent_shift[s] = pshift;
            }
            hoff[s] = y.h_edge_offset[s] + s;  // one slack cell per slice
        }
        base_first = y.slices[0].first_h;
    }

    std::size_t padded_size() const {
        return yk->h_edge_ids.size() + yk->slices.size();
    }
};

// One side of a routed pair: the horizontal segment endpoints and the
// vertical ancestor chain of the clamped target, down to the base slice.
struct SideChain {
    std::uint32_t slice = 0;
    int level = 0;
    std::uint64_t x = 0;   // start position
    std::uint64_t xp = 0;  // clamped target over the colour's base word
    std::vector<std::uint32_t> anc_slice;  // indexed by level j in [0, level]
    std::vector<std::uint64_t> anc_x;
};

void analyze_side(const RoutingTables& rt, VertexId w, std::uint64_t b,
                  SideChain& out) {
    const YkGraph& yk = *rt.yk;
    out.slice = yk.slice_of[w];
    out.level = yk.level_of[w];
    out.x = yk.h_index[w];
    const std::uint64_t shift = rt.shift_to_base[out.slice];
    const std::uint64_t lo = (rt.base_first + b) * shift;
    const std::uint64_t hi = lo + shift;
    out.xp = out.x < lo ? lo : (out.x >= hi ? hi - 1 : out.x);

    const auto levels = static_cast<std::size_t>(out.level);
    out.anc_slice.resize(levels + 1);
    out.anc_x.resize(levels + 1);
    std::uint32_t s = out.slice;
    std::uint64_t x = out.xp;
    for (int j = out.level; j >= 0; --j) {
        out.anc_slice[static_cast<std::size_t>(j)] = s;
        out.anc_x[static_cast<std::size_t>(j)] = x;
        if (j > 0) {
            x /= rt.parent_shift[s];
            s = yk.slices[s].parent;
        }
    }
}

// Highest level at which the two chains coincide (0 always qualifies:
// both end on the base slice over the same colour word).
int shared_level(const SideChain& a, const SideChain& b) {
    int j = std::min(a.level, b.level);
    while (j > 0 &&
           (a.anc_slice[static_cast<std::size_t>(j)] !=
                b.anc_slice[static_cast<std::size_t>(j)] ||
            a.anc_x[static_cast<std::size_t>(j)] !=
                b.anc_x[static_cast<std::size_t>(j)]))
        --j;
    return j;
}

template <typename PerPair>
void enumerate_pairs(const YkGraph& yk, const Coloring& coloring,
                     const RoutingTables& rt, VertexId w0_begin,
                     VertexId w0_end, PerPair&& fn) {
    const auto n = static_cast<VertexId>(yk.graph.num_vertices());
    SideChain a, b;
    for (VertexId w0 = w0_begin; w0 < w0_end; ++w0) {
        for (VertexId w1 = 0; w1 < n; ++w1) {
            if (w0 == w1) continue;
            const std::uint64_t color = coloring.color(w0, w1);
            analyze_side(rt, w0, color, a);
            analyze_side(rt, w1, color, b);
            fn(w0, w1, a, b);
        }
    }
}

void check_pair_budget(std::uint64_t n, std::uint64_t budget) {
    // n is capped by the vertex budget, so n * n fits in 64 bits.
    if (n != 0 && n * n > budget)
        throw budget_error("pair enumeration exceeds work budget", n * n, budget);
}

int effective_threads(const CongestionOptions& options, std::size_t n) {
    int t = std::clamp(options.threads, 1, 64);
    if (static_cast<std::size_t>(t) > n) t = static_cast<int>(std::max<std::size_t>(n, 1));
    return t;
}

struct LoadAccumulator {
    std::vector<std::int64_t> hdiff;
    std::vector<std::uint64_t> vload;
    std::uint64_t visits = 0;
};

void accumulate_range(const YkGraph& yk, const Coloring& coloring,
                      const RoutingTables& rt, VertexId begin, VertexId end,
                      LoadAccumulator& acc) {
    enumerate_pairs(
        yk, coloring, rt, begin, end,
        [&](VertexId, VertexId, const SideChain& a, const SideChain& b) {
            const int shared = shared_level(a, b);
            for (int j = 1; j <= a.level; ++j)
                ++acc.vload[yk.vertex_at(a.anc_slice[static_cast<std::size_t>(j)],
                                         a.anc_x[static_cast<std::size_t>(j)])];
            for (int j = shared + 1; j <= b.level; ++j)
                ++acc.vload[yk.vertex_at(b.anc_slice[static_cast<std::size_t>(j)],
                                         b.anc_x[static_cast<std::size_t>(j)])];
            acc.visits += static_cast<std::uint64_t>(a.level) +
                          static_cast<std::uint64_t>(b.level - shared);

            const std::uint64_t fa = yk.slices[a.slice].first_h;
            const std::uint64_t fb = yk.slices[b.slice].first_h;
            const std::uint64_t aLo = std::min(a.x, a.xp) - fa;
            const std::uint64_t aHi = std::max(a.x, a.xp) - fa;
            const std::uint64_t bLo = std::min(b.x, b.xp) - fb;
            const std::uint64_t bHi = std::max(b.x, b.xp) - fb;
            if (aHi > aLo) {
                acc.hdiff[rt.hoff[a.slice] + aLo] += 1;
                acc.hdiff[rt.hoff[a.slice] + aHi] -= 1;
                acc.visits += aHi - aLo;
            }
            if (bHi > bLo) {
                acc.hdiff[rt.hoff[b.slice] + bLo] += 1;
                acc.hdiff[rt.hoff[b.slice] + bHi] -= 1;
                acc.visits += bHi - bLo;
            }
            if (a.slice == b.slice) {
                const std::uint64_t oLo = std::max(aLo, bLo);
                const std::uint64_t oHi = std::min(aHi, bHi);
                if (oHi > oLo) {
                    acc.hdiff[rt.hoff[a.slice] + oLo] -= 1;
                    acc.hdiff[rt.hoff[a.slice] + oHi] += 1;
                    acc.visits -= oHi - oLo;
                }
            }
        });
}

// Maximizing pair of sum_{e in path} M_e^{1/(p-1)}; prefix sums make each
// pair O(chain length).
struct PathSumMax {
    double best = -1.0;
    VertexId w0 = 0, w1 = 0;
};

PathSumMax path_sum_range(const YkGraph& yk, const Coloring& coloring,
                          const RoutingTables& rt,
                          const std::vector<double>& hprefix,
                          const std::vector<double>& vsum, VertexId begin,
                          VertexId end) {
    PathSumMax out;
    enumerate_pairs(
        yk, coloring, rt, begin, end,
        [&](VertexId w0, VertexId w1, const SideChain& a, const SideChain& b) {
            const int shared = shared_level(a, b);
            const VertexId va = yk.vertex_at(a.slice, a.xp);
            const VertexId vb = yk.vertex_at(b.slice, b.xp);
            const VertexId vs =
                yk.vertex_at(a.anc_slice[static_cast<std::size_t>(shared)],
                             a.anc_x[static_cast<std::size_t>(shared)]);
            double sum = vsum[va] + vsum[vb] - vsum[vs];

            const std::uint64_t fa = yk.slices[a.slice].first_h;
            const std::uint64_t fb = yk.slices[b.slice].first_h;
            const std::uint64_t aLo = std::min(a.x, a.xp) - fa;
            const std::uint64_t aHi = std::max(a.x, a.xp) - fa;
            const std::uint64_t bLo = std::min(b.x, b.xp) - fb;
            const std::uint64_t bHi = std::max(b.x, b.xp) - fb;
            sum += hprefix[rt.hoff[a.slice] + aHi] -
                   hprefix[rt.hoff[a.slice] + aLo];
            sum += hprefix[rt.hoff[b.slice] + bHi] -
                   hprefix[rt.hoff[b.slice] + bLo];
            if (a.slice == b.slice) {
                const std::uint64_t oLo = std::max(aLo, bLo);
                const std::uint64_t oHi = std::min(aHi, bHi);
                if (oHi > oLo)
                    sum -= hprefix[rt.hoff[a.slice] + oHi] -
                           hprefix[rt.hoff[a.slice] + oLo];
            }
            if (sum > out.best) {
                out.best = sum;
                out.w0 = w0;
                out.w1 = w1;
            }
        });
    return out;
}

std::vector<std::pair<VertexId, VertexId>> thread_ranges(std::size_t n,
                                                         int threads) {
    std::vector<std::pair<VertexId, VertexId>> ranges;
    const std::size_t chunk = (n + static_cast<std::size_t>(threads) - 1) /
                              static_cast<std::size_t>(threads);
    for (std::size_t begin = 0; begin < n; begin += chunk)
        ranges.emplace_back(static_cast<VertexId>(begin),
                            static_cast<VertexId>(std::min(n, begin + chunk)));
    return ranges;
}

}  // namespace

Coloring build_coloring(const YkGraph& yk) {
    Coloring c;
    c.T = yk.T;
    c.m = 1;
    while (c.m * c.m < c.T) ++c.m;
    c.label.resize(yk.graph.num_vertices());
    for (VertexId v = 0; v < yk.graph.num_vertices(); ++v) {
        const auto& slice = yk.slices[yk.slice_of[v]];
        c.label[v] =
            static_cast<std::uint32_t>((yk.h_index[v] - slice.first_h) % c.m);
    }
    return c;
}

RoutedPath route(const YkGraph& yk, const Coloring& coloring, VertexId w0,
                 VertexId w1) {
    const auto n = static_cast<VertexId>(yk.graph.num_vertices());
    if (w0 >= n || w1 >= n)
        throw validation_error("route: vertex out of range");
    RoutedPath out;
    out.vertices.push_back(w0);
    if (w0 == w1) return out;

    RoutingTables rt(yk);
    const std::uint64_t b = coloring.color(w0, w1);
    SideChain a, bb;
    analyze_side(rt, w0, b, a);
    analyze_side(rt, w1, b, bb);

    auto push_horizontal = [&](std::uint32_t slice, std::uint64_t from,
                               std::uint64_t to) {
        while (from != to) {
            const std::uint64_t next = from < to ? from + 1 : from - 1;
            out.edges.push_back(yk.horizontal_edge(slice, std::min(from, next)));
            out.vertices.push_back(yk.vertex_at(slice, next));
            from = next;
        }
    };

    push_horizontal(a.slice, a.x, a.xp);
    for (int j = a.level; j > 0; --j) {
        const VertexId child =
            yk.vertex_at(a.anc_slice[static_cast<std::size_t>(j)],
                         a.anc_x[static_cast<std::size_t>(j)]);
        out.edges.push_back(yk.parent_edge[child]);
        out.vertices.push_back(
            yk.vertex_at(a.anc_slice[static_cast<std::size_t>(j - 1)],
                         a.anc_x[static_cast<std::size_t>(j - 1)]));
    }
    for (int j = 1; j <= bb.level; ++j) {
        const VertexId child =
            yk.vertex_at(bb.anc_slice[static_cast<std::size_t>(j)],
                         bb.anc_x[static_cast<std::size_t>(j)]);
        out.edges.push_back(yk.parent_edge[child]);
        out.vertices.push_back(child);
    }
    push_horizontal(bb.slice, bb.xp, bb.x);

    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()),
                    out.edges.end());
    return out;
}

EdgeLoads compute_congestion(const YkGraph& yk, const Coloring& coloring,
                             const CongestionOptions& options) {
    const std::size_t n = yk.graph.num_vertices();
    check_pair_budget(n, options.work_budget);
    const RoutingTables rt(yk);

    const int threads = effective_threads(options, n);
    std::vector<LoadAccumulator> accs(static_cast<std::size_t>(threads));
    for (auto& acc : accs) {
        acc.hdiff.assign(rt.padded_size(), 0);
        acc.vload.assign(n, 0);
    }
    const auto ranges = thread_ranges(n, threads);
    if (threads == 1) {
        accumulate_range(yk, coloring, rt, 0, static_cast<VertexId>(n), accs[0]);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < ranges.size(); ++i)
            pool.emplace_back([&, i] {
                accumulate_range(yk, coloring, rt, ranges[i].first,
                                 ranges[i].second, accs[i]);
            });
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 1; i < accs.size(); ++i) {
        for (std::size_t j = 0; j < accs[0].hdiff.size(); ++j)
            accs[0].hdiff[j] += accs[i].hdiff[j];
        for (std::size_t j = 0; j < n; ++j) accs[0].vload[j] += accs[i].vload[j];
        accs[0].visits += accs[i].visits;
    }

    EdgeLoads loads;
    loads.m_e.assign(yk.graph.num_edges(), 0);
    loads.pair_count = static_cast<std::uint64_t>(n) * n;
    loads.total_edge_visits = accs[0].visits;
    for (std::size_t s = 0; s < yk.slices.size(); ++s) {
        std::int64_t running = 0;
        const std::uint64_t count = yk.slices[s].length - 1;
        for (std::uint64_t e = 0; e < count; ++e) {
            running += accs[0].hdiff[rt.hoff[s] + e];
            assert(running >= 0);
            loads.m_e[yk.h_edge_ids[yk.h_edge_offset[s] + e]] =
                static_cast<std::uint64_t>(running);
        }
    }
    for (VertexId v = 0; v < n; ++v)
        if (yk.level_of[v] > 0) loads.m_e[yk.parent_edge[v]] = accs[0].vload[v];
    return loads;
}

EdgeLoads compute_congestion(const Graph& g, const PathSystem& paths,
                             const CongestionOptions& options) {
    const std::size_t n = g.num_vertices();
    check_pair_budget(n, options.work_budget);
    EdgeLoads loads;
    loads.m_e.assign(g.num_edges(), 0);
    loads.pair_count = static_cast<std::uint64_t>(n) * n;
    for (VertexId w0 = 0; w0 < n; ++w0) {
        for (VertexId w1 = 0; w1 < n; ++w1) {
            if (w0 == w1) continue;
            for (EdgeId e : paths(w0, w1)) {
                ++loads.m_e[e];
                ++loads.total_edge_visits;
            }
        }
    }
    return loads;
}

PathSystem bfs_path_system(const Graph& g) {
    struct Cache {
        VertexId source = static_cast<VertexId>(-1);
        std::vector<std::int64_t> parent;       // vertex we came from
        std::vector<EdgeId> parent_edge;
    };
    auto cache = std::make_shared<Cache>();
    const Graph* graph = &g;
    return [graph, cache](VertexId w0, VertexId w1) {
        if (cache->source != w0) {
            const std::size_t n = graph->num_vertices();
            cache->source = w0;
            cache->parent.assign(n, -1);
            cache->parent_edge.assign(n, 0);
            std::vector<VertexId> queue{w0};
            cache->parent[w0] = static_cast<std::int64_t>(w0);
            for (std::size_t head = 0; head < queue.size(); ++head) {
                const VertexId v = queue[head];
                for (const auto& nb : graph->neighbors(v)) {
                    if (cache->parent[nb.vertex] < 0) {
                        cache->parent[nb.vertex] = v;
                        cache->parent_edge[nb.vertex] = nb.edge;
                        queue.push_back(nb.vertex);
                    }
                }
            }
        }
        if (cache->parent[w1] < 0)
            throw validation_error("bfs_path_system: vertices not connected");
        std::vector<EdgeId> edges;
        VertexId cur = w1;
        while (cur != w0) {
            edges.push_back(cache->parent_edge[cur]);
            cur = static_cast<VertexId>(cache->parent[cur]);
        }
        return edges;
    };
}

namespace {

CongestionCertificate certificate_p1(std::uint64_t n, const EdgeLoads& loads) {
    CongestionCertificate cert;
    cert.p = 1.0;
    cert.n = n;
    auto it = std::max_element(loads.m_e.begin(), loads.m_e.end());
    cert.max_edge_load = *it;
    cert.argmax_edge = static_cast<EdgeId>(it - loads.m_e.begin());
    cert.max_path_sum = static_cast<double>(cert.max_edge_load);
    cert.bound = static_cast<double>(n) / static_cast<double>(cert.max_edge_load);
    cert.n_pow = static_cast<double>(n);
    cert.load_exponent = 0.0;
    return cert;
}

void check_lemma_inputs(const EdgeLoads& loads, double p) {
    if (!(p >= 1.0)) throw validation_error("lemma_bound requires p >= 1");
    if (loads.m_e.empty() || loads.total_edge_visits == 0)
        throw validation_error("lemma_bound requires a nonempty path system");
}

CongestionCertificate finish_certificate(double p, std::uint64_t n,
                                         const EdgeLoads& loads,
                                         const PathSumMax& max_sum) {
    CongestionCertificate cert;
    cert.p = p;
    cert.n = n;
    auto it = std::max_element(loads.m_e.begin(), loads.m_e.end());
    cert.max_edge_load = *it;
    cert.argmax_edge = static_cast<EdgeId>(it - loads.m_e.begin());
    cert.argmax_pair = {max_sum.w0, max_sum.w1};
    cert.max_path_sum = max_sum.best;
    cert.load_exponent = 1.0 / (p - 1.0);
    cert.n_pow = std::pow(static_cast<double>(n), 1.0 / p);
    cert.bound = cert.n_pow / std::pow(max_sum.best, (p - 1.0) / p);
    return cert;
}

}  // namespace

CongestionCertificate lemma_bound(const YkGraph& yk, const Coloring& coloring,
                                  const EdgeLoads& loads, double p,
                                  const CongestionOptions& options) {
    check_lemma_inputs(loads, p);
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = yk.graph.num_vertices();
    CongestionCertificate cert;
    if (p == 1.0) {
        cert = certificate_p1(n, loads);
    } else {
        const RoutingTables rt(yk);
        const double q = 1.0 / (p - 1.0);
        std::vector<double> weight(loads.m_e.size());
        for (std::size_t e = 0; e < loads.m_e.size(); ++e)
            weight[e] = std::pow(static_cast<double>(loads.m_e[e]), q);

        std::vector<double> hprefix(rt.padded_size() + 1, 0.0);
        for (std::size_t s = 0; s < yk.slices.size(); ++s) {
            double running = 0.0;
            hprefix[rt.hoff[s]] = 0.0;
            for (std::uint64_t e = 0; e + 1 < yk.slices[s].length; ++e) {
                running += weight[yk.h_edge_ids[yk.h_edge_offset[s] + e]];
                hprefix[rt.hoff[s] + e + 1] = running;
            }
        }
        std::vector<double> vsum(n, 0.0);
        for (VertexId v = 0; v < n; ++v)
            if (yk.level_of[v] > 0)
                vsum[v] = weight[yk.parent_edge[v]] + vsum[yk.parent_vertex(v)];

        const int threads = effective_threads(options, n);
        const auto ranges = thread_ranges(n, threads);
        std::vector<PathSumMax> partial(ranges.size());
        if (threads == 1) {
            partial[0] = path_sum_range(yk, coloring, rt, hprefix, vsum, 0,
                                        static_cast<VertexId>(n));
        } else {
            std::vector<std::thread> pool;
            for (std::size_t i = 0; i < ranges.size(); ++i)
                pool.emplace_back([&, i] {
                    partial[i] = path_sum_range(yk, coloring, rt, hprefix, vsum,
                                                ranges[i].first, ranges[i].second);
                });
            for (auto& th : pool) th.join();
        }
        PathSumMax best = partial[0];
        for (std::size_t i = 1; i < partial.size(); ++i)
            if (partial[i].best > best.best) best = partial[i];
        cert = finish_certificate(p, n, loads, best);
    }
    cert.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return cert;
}

CongestionCertificate lemma_bound(const Graph& g, const PathSystem& paths,
                                  const EdgeLoads& loads, double p) {
    check_lemma_inputs(loads, p);
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = g.num_vertices();
    CongestionCertificate cert;
    if (p == 1.0) {
        cert = certificate_p1(n, loads);
    } else {
        const double q = 1.0 / (p - 1.0);
        std::vector<double> weight(loads.m_e.size());
        for (std::size_t e = 0; e < loads.m_e.size(); ++e)
            weight[e] = std::pow(static_cast<double>(loads.m_e[e]), q);
        PathSumMax best;
        for (VertexId w0 = 0; w0 < n; ++w0) {
            for (VertexId w1 = 0; w1 < n; ++w1) {
                if (w0 == w1) continue;
                double sum = 0.0;
                for (EdgeId e : paths(w0, w1)) sum += weight[e];
                if (sum > best.best) {
                    best.best = sum;
                    best.w0 = w0;
                    best.w1 = w1;
                }
            }
        }
        cert = finish_certificate(p, n, loads, best);
    }
    cert.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return cert;
}

std::string certificate_to_json(const CongestionCertificate& cert) {
    nlohmann::ordered_json j;
    j["p"] = cert.p;
    j["n"] = cert.n;
    j["bound"] = cert.bound;
    j["max_edge_load"] = cert.max_edge_load;
    j["argmax_pair"] = {cert.argmax_pair.first, cert.argmax_pair.second};
    j["elapsed"] = cert.elapsed_seconds;
    j["certified"] = cert.certified;
    j["trace"] = {{"max_path_sum", cert.max_path_sum},
                  {"argmax_edge", cert.argmax_edge},
                  {"n_pow", cert.n_pow},
                  {"load_exponent", cert.load_exponent}};
    return j.dump(2) + "\n";
}

void write_loads_csv(const Graph& g, const EdgeLoads& loads,
                     const std::string& path) {
    std::ostringstream out;
    out << "u,v,m_e\n";
    for (EdgeId e = 0; e < g.num_edges(); ++e)
        out << g.edge(e).u << ',' << g.edge(e).v << ',' << loads.m_e[e] << '\n';
    std::ofstream file(path, std::ios::binary);
    if (!file) throw validation_error("cannot open for writing: " + path);
    file << out.str();
}

CongestionDiagnostics diagnose_congestion(const YkGraph& yk,
                                          const Coloring& coloring,
                                          const EdgeLoads& loads,
                                          double constant) {
    CongestionDiagnostics diag;
    const double n = static_cast<double>(yk.graph.num_vertices());
    const double T = static_cast<double>(yk.T);
    const double Q = 1.0 + std::log(static_cast<double>(yk.V)) /
                               std::log(static_cast<double>(yk.H));
    const double horizontal_formula =
        T * T * std::pow(static_cast<double>(yk.H), (1.0 + Q) * yk.k);
    const double log2H = std::log2(static_cast<double>(yk.H));

    for (EdgeId e = 0; e < yk.graph.num_edges(); ++e) {
        const double load = static_cast<double>(loads.m_e[e]);
        double formula;
        if (yk.edge_kind[e] == EdgeKind::horizontal) {
            formula = horizontal_formula;
            diag.max_horizontal_ratio =
                std::max(diag.max_horizontal_ratio, load / formula);
        } else {
            const auto& edge = yk.graph.edge(e);
            const VertexId child =
                yk.address[edge.u].h_word.size() > yk.address[edge.v].h_word.size()
                    ? edge.u
                    : edge.v;
            const int above =
                static_cast<int>(yk.address[child].h_word.size()) - yk.t;
            const double decay = std::floor(static_cast<double>(above) / log2H +
                                            1e-9);
            formula = n * n / T *
                      std::pow(static_cast<double>(yk.V), -decay);
            diag.max_vertical_ratio =
                std::max(diag.max_vertical_ratio, load / formula);
        }
        if (load > constant * formula) diag.violations.push_back(e);
    }

    // Colouring balance stats: pairs per colour and per-vertex colour counts.
    const std::size_t nv = yk.graph.num_vertices();
    std::vector<std::uint64_t> per_color(coloring.T, 0);
    std::vector<std::uint64_t> row(coloring.T, 0);
    for (VertexId x = 0; x < nv; ++x) {
        std::fill(row.begin(), row.end(), 0);
        for (VertexId y = 0; y < nv; ++y) {
            const std::uint64_t c = coloring.color(x, y);
            ++row[c];
            ++per_color[c];
        }
        diag.max_per_vertex_color = std::max(
            diag.max_per_vertex_color, *std::max_element(row.begin(), row.end()));
    }
    diag.max_pairs_per_color =
        *std::max_element(per_color.begin(), per_color.end());
    return diag;
}

SampledCongestion estimate_congestion(const YkGraph& yk,
                                      const Coloring& coloring,
                                      std::uint64_t samples,
                                      std::uint64_t seed) {
    if (samples == 0) throw validation_error("estimate_congestion: samples == 0");
    const std::size_t n = yk.graph.num_vertices();
    const RoutingTables rt(yk);
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> counts(yk.graph.num_edges(), 0);
    SideChain a, b;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const auto w0 = static_cast<VertexId>(rng() % n);
        const auto w1 = static_cast<VertexId>(rng() % n);
        if (w0 == w1) continue;
        const std::uint64_t color = coloring.color(w0, w1);
        analyze_side(rt, w0, color, a);
        analyze_side(rt, w1, color, b);
        const int shared = shared_level(a, b);
        for (int j = 1; j <= a.level; ++j)
            ++counts[yk.parent_edge[yk.vertex_at(
                a.anc_slice[static_cast<std::size_t>(j)],
                a.anc_x[static_cast<std::size_t>(j)])]];
        for (int j = shared + 1; j <= b.level; ++j)
            ++counts[yk.parent_edge[yk.vertex_at(
                b.anc_slice[static_cast<std::size_t>(j)],
                b.anc_x[static_cast<std::size_t>(j)])]];
        auto add_horizontal = [&](const SideChain& side) {
            for (std::uint64_t x = std::min(side.x, side.xp);
                 x < std::max(side.x, side.xp); ++x)
                ++counts[yk.horizontal_edge(side.slice, x)];
        };
        add_horizontal(a);
        if (a.slice == b.slice) {
            // avoid double counting the overlapping horizontal stretch
            const std::uint64_t lo =
                std::max(std::min(a.x, a.xp), std::min(b.x, b.xp));
            const std::uint64_t hi =
                std::min(std::max(a.x, a.xp), std::max(b.x, b.xp));
            for (std::uint64_t x = std::min(b.x, b.xp);
                 x < std::max(b.x, b.xp); ++x)
                if (!(x >= lo && x < hi))
                    ++counts[yk.horizontal_edge(b.slice, x)];
        } else {
            add_horizontal(b);
        }
    }
    SampledCongestion out;
    out.samples = samples;
    out.seed = seed;
    out.pair_count = static_cast<std::uint64_t>(n) * n;
    const double scale =
        static_cast<double>(out.pair_count) / static_cast<double>(samples);
    out.m_e.resize(counts.size());
    for (std::size_t e = 0; e < counts.size(); ++e)
        out.m_e[e] = static_cast<double>(counts[e]) * scale;
    return out;
}

CongestionCertificate lemma_bound_sampled(const YkGraph& yk,
                                          const Coloring& coloring,
                                          const SampledCongestion& sampled,
                                          double p) {
    if (!(p >= 1.0)) throw validation_error("lemma_bound requires p >= 1");
    const std::size_t n = yk.graph.num_vertices();
    CongestionCertificate cert;
    cert.certified = false;
    cert.p = p;
    cert.n = n;
    auto it = std::max_element(sampled.m_e.begin(), sampled.m_e.end());
    if (it == sampled.m_e.end() || *it <= 0.0)
        throw validation_error("lemma_bound requires a nonempty path system");
    cert.argmax_edge = static_cast<EdgeId>(it - sampled.m_e.begin());
    cert.max_edge_load = static_cast<std::uint64_t>(std::llround(*it));
    if (p == 1.0) {
        cert.max_path_sum = *it;
        cert.bound = static_cast<double>(n) / *it;
        cert.n_pow = static_cast<double>(n);
        return cert;
    }
    // Re-walk the same sampled pairs against the scaled loads.
    const RoutingTables rt(yk);
    const double q = 1.0 / (p - 1.0);
    std::mt19937_64 rng(sampled.seed);
    PathSumMax best;
    SideChain a, b;
    for (std::uint64_t s = 0; s < sampled.samples; ++s) {
        const auto w0 = static_cast<VertexId>(rng() % n);
        const auto w1 = static_cast<VertexId>(rng() % n);
        if (w0 == w1) continue;
        const std::uint64_t color = coloring.color(w0, w1);
        analyze_side(rt, w0, color, a);
        analyze_side(rt, w1, color, b);
        const int shared = shared_level(a, b);
        double sum = 0.0;
        for (int j = 1; j <= a.level; ++j)
            sum += std::pow(sampled.m_e[yk.parent_edge[yk.vertex_at(
                                a.anc_slice[static_cast<std::size_t>(j)],
                                a.anc_x[static_cast<std::size_t>(j)])]],
                            q);
        for (int j = shared + 1; j <= b.level; ++j)
            sum += std::pow(sampled.m_e[yk.parent_edge[yk.vertex_at(
                                b.anc_slice[static_cast<std::size_t>(j)],
                                b.anc_x[static_cast<std::size_t>(j)])]],
                            q);
        for (std::uint64_t x = std::min(a.x, a.xp); x < std::max(a.x, a.xp); ++x)
            sum += std::pow(sampled.m_e[yk.horizontal_edge(a.slice, x)], q);
        for (std::uint64_t x = std::min(b.x, b.xp); x < std::max(b.x, b.xp); ++x)
            sum += std::pow(sampled.m_e[yk.horizontal_edge(b.slice, x)], q);
        if (sum > best.best) {
            best.best = sum;
            best.w0 = w0;
            best.w1 = w1;
        }
    }
    cert.argmax_pair = {best.w0, best.w1};
    cert.max_path_sum = best.best;
    cert.load_exponent = q;
    cert.n_pow = std::pow(static_cast<double>(n), 1.0 / p);
    cert.bound = cert.n_pow / std::pow(best.best, (p - 1.0) / p);
    return cert;
}

}  // namespace rtprof
