#include "rtprof/round_tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace rtprof {

namespace {

// a*b with saturation at 2^63; enough headroom above any sane budget.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > (std::uint64_t{1} << 63) / a) return std::uint64_t{1} << 63;
    return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    if (a > (std::uint64_t{1} << 63) - b) return std::uint64_t{1} << 63;
    return a + b;
}

Word index_to_word(std::uint64_t idx, int alphabet, int length) {
    Word w(static_cast<std::size_t>(length));
    for (int pos = length - 1; pos >= 0; --pos) {
        w[static_cast<std::size_t>(pos)] =
            static_cast<std::uint32_t>(idx % static_cast<std::uint64_t>(alphabet));
        idx /= static_cast<std::uint64_t>(alphabet);
    }
    return w;
}

bool lex_less(const Word& a, const Word& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string address_to_label(const RtAddress& a, bool dotted) {
    return "h=" + word_to_string(a.h_word, dotted) +
           ";v=" + word_to_string(a.v_word, dotted);
}

RtAddress address_from_label(const std::string& label) {
    auto semi = label.find(';');
    if (label.rfind("h=", 0) != 0 || semi == std::string::npos ||
        label.compare(semi + 1, 2, "v=") != 0)
        throw validation_error("vertex label is not of the form h=...;v=...: " +
                               label);
    RtAddress a;
    a.h_word = word_from_string(label.substr(2, semi - 2));
    a.v_word = word_from_string(label.substr(semi + 3));
    return a;
}

}  // namespace

std::string word_to_string(const Word& w, bool dotted) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (dotted && i > 0) out += '.';
        out += std::to_string(w[i]);
    }
    return out;
}

Word word_from_string(const std::string& s) {
    Word w;
    if (s.empty()) return w;
    if (s.find('.') != std::string::npos) {
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t dot = s.find('.', pos);
            if (dot == std::string::npos) dot = s.size();
            w.push_back(static_cast<std::uint32_t>(
                std::stoul(s.substr(pos, dot - pos))));
            pos = dot + 1;
        }
        return w;
    }
    for (char c : s) {
        if (c < '0' || c > '9')
            throw validation_error(std::string("bad digit in word: ") + c);
        w.push_back(static_cast<std::uint32_t>(c - '0'));
    }
    return w;
}

RoundTreeGraph build_round_tree(int H, int V, int depth, const Budgets& budgets) {
    if (H < 2) throw validation_error("round tree requires H >= 2");
    if (V < 1) throw validation_error("round tree requires V >= 1");
    if (depth < 0) throw validation_error("round tree requires depth >= 0");

    const auto hv = static_cast<std::uint64_t>(H) * static_cast<std::uint64_t>(V);
    std::uint64_t total = 0, level_count = 1;
    for (int i = 0; i <= depth; ++i) {
        total = sat_add(total, level_count);
        level_count = sat_mul(level_count, hv);
    }
    if (total > budgets.vertex)
        throw budget_error("round tree exceeds vertex budget", total, budgets.vertex);

    RoundTreeGraph rt;
    rt.H = H;
    rt.V = V;
    rt.depth = depth;

    // Level-major ids: offset(level) + v_idx * H^level + h_idx.
    std::vector<std::uint64_t> level_offset(static_cast<std::size_t>(depth) + 2, 0);
    std::vector<std::uint64_t> h_count(static_cast<std::size_t>(depth) + 1, 1);
    std::vector<std::uint64_t> v_count(static_cast<std::size_t>(depth) + 1, 1);
    for (int i = 1; i <= depth; ++i) {
        h_count[i] = h_count[i - 1] * static_cast<std::uint64_t>(H);
        v_count[i] = v_count[i - 1] * static_cast<std::uint64_t>(V);
    }
    for (int i = 0; i <= depth; ++i)
        level_offset[i + 1] = level_offset[i] + h_count[i] * v_count[i];

    rt.address.reserve(total);
    std::vector<Edge> edges;
    std::vector<EdgeKind> kinds;
    for (int i = 0; i <= depth; ++i) {
        for (std::uint64_t v = 0; v < v_count[i]; ++v) {
            for (std::uint64_t h = 0; h < h_count[i]; ++h) {
                rt.address.push_back(
                    {index_to_word(h, H, i), index_to_word(v, V, i)});
                const std::uint64_t id = level_offset[i] + v * h_count[i] + h;
                if (h + 1 < h_count[i]) {
                    edges.push_back({static_cast<VertexId>(id),
                                     static_cast<VertexId>(id + 1)});
                    kinds.push_back(EdgeKind::horizontal);
                }
                if (i > 0) {
                    const std::uint64_t parent = level_offset[i - 1] +
                                                 (v / V) * h_count[i - 1] + h / H;
                    edges.push_back({static_cast<VertexId>(parent),
                                     static_cast<VertexId>(id)});
                    kinds.push_back(EdgeKind::vertical);
                }
            }
        }
    }

    // Graph construction sorts edges; remap the kind annotations.
    std::vector<Edge> raw = edges;
    rt.graph = Graph::from_edges(total, std::move(edges));
    rt.edge_kind.assign(rt.graph.num_edges(), EdgeKind::horizontal);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto id = rt.graph.find_edge(raw[i].u, raw[i].v);
        rt.edge_kind[static_cast<std::size_t>(id)] = kinds[i];
    }
    return rt;
}

RoundTreeGraph build_half_plane(int H, int depth, const Budgets& budgets) {
    return build_round_tree(H, 1, depth, budgets);
}

RoundTreeValidation validate_round_tree(const RoundTreeGraph& g) {
    RoundTreeValidation report;
    report.axioms[0].name = "equal word lengths";
    report.axioms[1].name = "vertical closure";
    report.axioms[2].name = "branching forms an initial segment [2,H]";
    report.axioms[3].name = "horizontal completeness";
    report.axioms[4].name = "every edge vertical or horizontal";

    const std::size_t n = g.graph.num_vertices();
    auto fail = [](AxiomReport& a, const std::string& witness) {
        if (a.pass) {
            a.pass = false;
            a.witness = witness;
        }
    };
    auto label = [&](VertexId v) {
        return "(" + address_to_label(g.address[v], g.H > 10 || g.V > 10) + ")";
    };

    for (VertexId v = 0; v < n; ++v)
        if (g.address[v].h_word.size() != g.address[v].v_word.size())
            fail(report.axioms[0], "vertex " + label(v));

    std::map<std::pair<Word, Word>, VertexId> index;
    for (VertexId v = 0; v < n; ++v)
        index[{g.address[v].h_word, g.address[v].v_word}] = v;

    // children[(parent, beta)] -> sorted alphas present
    std::map<std::pair<VertexId, std::uint32_t>, std::vector<std::uint32_t>> children;
    for (VertexId v = 0; v < n; ++v) {
        const auto& a = g.address[v];
        if (a.h_word.empty() || a.v_word.empty()) continue;
        Word hp(a.h_word.begin(), a.h_word.end() - 1);
        Word vp(a.v_word.begin(), a.v_word.end() - 1);
        auto it = index.find({hp, vp});
        if (it == index.end()) {
            fail(report.axioms[1], "missing parent of " + label(v));
            continue;
        }
        auto e = g.graph.find_edge(it->second, v);
        if (e < 0) {
            fail(report.axioms[1],
                 "missing vertical edge " + label(it->second) + " -- " + label(v));
        } else if (g.edge_kind[static_cast<std::size_t>(e)] != EdgeKind::vertical) {
            fail(report.axioms[1],
                 "edge " + label(it->second) + " -- " + label(v) +
                     " not marked vertical");
        }
        children[{it->second, a.v_word.back()}].push_back(a.h_word.back());
    }

    for (auto& [key, alphas] : children) {
        std::sort(alphas.begin(), alphas.end());
        const auto delta = alphas.size();
        bool initial = alphas.front() == 0 && alphas.back() == delta - 1;
        if (!initial || delta < 2 || delta > static_cast<std::size_t>(g.H))
            fail(report.axioms[2],
                 "children of " + label(key.first) + " under vertical letter " +
                     std::to_string(key.second) + " are not an initial segment" +
                     " [0,D) with 2 <= D <= " + std::to_string(g.H));
    }

    // Vertices grouped by v-word, h-words in lexicographic order.
    std::map<Word, std::vector<VertexId>> by_v;
    for (VertexId v = 0; v < n; ++v) by_v[g.address[v].v_word].push_back(v);
    for (auto& [vw, group] : by_v) {
        std::sort(group.begin(), group.end(), [&](VertexId a, VertexId b) {
            return lex_less(g.address[a].h_word, g.address[b].h_word);
        });
        for (std::size_t i = 0; i + 1 < group.size(); ++i) {
            auto e = g.graph.find_edge(group[i], group[i + 1]);
            if (e < 0) {
                fail(report.axioms[3], "missing horizontal edge " +
                                           label(group[i]) + " -- " +
                                           label(group[i + 1]));
            } else if (g.edge_kind[static_cast<std::size_t>(e)] !=
                       EdgeKind::horizontal) {
                fail(report.axioms[3], "edge " + label(group[i]) + " -- " +
                                           label(group[i + 1]) +
                                           " not marked horizontal");
            }
        }
    }

    // Positions within the v-group, for consecutiveness checks.
    std::vector<std::size_t> pos_in_group(n, 0);
    for (const auto& [vw, group] : by_v)
        for (std::size_t i = 0; i < group.size(); ++i) pos_in_group[group[i]] = i;

    for (EdgeId e = 0; e < g.graph.num_edges(); ++e) {
        const auto& [u, v] = g.graph.edge(e);
        const auto& au = g.address[u];
        const auto& av = g.address[v];
        bool vertical = false;
        if (au.h_word.size() + 1 == av.h_word.size()) {
            vertical = std::equal(au.h_word.begin(), au.h_word.end(),
                                  av.h_word.begin()) &&
                       std::equal(au.v_word.begin(), au.v_word.end(),
                                  av.v_word.begin());
        } else if (av.h_word.size() + 1 == au.h_word.size()) {
            vertical = std::equal(av.h_word.begin(), av.h_word.end(),
                                  au.h_word.begin()) &&
                       std::equal(av.v_word.begin(), av.v_word.end(),
                                  au.v_word.begin());
        }
        bool horizontal = au.v_word == av.v_word &&
                          (pos_in_group[u] + 1 == pos_in_group[v] ||
                           pos_in_group[v] + 1 == pos_in_group[u]);
        if (!vertical && !horizontal) {
            fail(report.axioms[4],
                 "edge " + label(u) + " -- " + label(v) +
                     " is neither vertical nor horizontal");
        } else {
            const EdgeKind structural =
                vertical ? EdgeKind::vertical : EdgeKind::horizontal;
            if (g.edge_kind[e] != structural)
                fail(report.axioms[4], "edge " + label(u) + " -- " + label(v) +
                                           " annotated " +
                                           edge_kind_name(g.edge_kind[e]) +
                                           " but is " +
                                           edge_kind_name(structural));
        }
    }
    return report;
}

GraphRecord round_tree_to_record(const RoundTreeGraph& g) {
    GraphRecord record;
    record.graph = g.graph;
    const bool dotted = g.H > 10 || g.V > 10;
    for (VertexId v = 0; v < g.graph.num_vertices(); ++v)
        record.labels[v] = address_to_label(g.address[v], dotted);
    record.edge_kinds.reserve(g.edge_kind.size());
    for (EdgeKind k : g.edge_kind)
        record.edge_kinds.push_back(edge_kind_name(k));
    return record;
}

RoundTreeGraph round_tree_from_record(const GraphRecord& record,
                                      std::optional<int> H,
                                      std::optional<int> V) {
    RoundTreeGraph g;
    g.graph = record.graph;
    g.address.resize(g.graph.num_vertices());
    std::uint32_t max_h = 0, max_v = 0;
    int depth = 0;
    for (VertexId v = 0; v < g.graph.num_vertices(); ++v) {
        auto it = record.labels.find(v);
        if (it == record.labels.end())
            throw validation_error("vertex " + std::to_string(v) +
                                   " has no address label");
        g.address[v] = address_from_label(it->second);
        for (auto d : g.address[v].h_word) max_h = std::max(max_h, d);
        for (auto d : g.address[v].v_word) max_v = std::max(max_v, d);
        depth = std::max(depth, static_cast<int>(g.address[v].h_word.size()));
    }
    g.H = H.value_or(std::max(2u, max_h + 1));
    g.V = V.value_or(std::max(1u, max_v + 1));
    g.depth = depth;

    if (record.edge_kinds.size() == g.graph.num_edges()) {
        for (const auto& name : record.edge_kinds)
            g.edge_kind.push_back(name == "vertical" ? EdgeKind::vertical
                                                     : EdgeKind::horizontal);
    } else {
        // Derive kinds structurally: vertical edges change the word length.
        for (const auto& e : g.graph.edges())
            g.edge_kind.push_back(g.address[e.u].h_word.size() ==
                                          g.address[e.v].h_word.size()
                                      ? EdgeKind::horizontal
                                      : EdgeKind::vertical);
    }
    return g;
}

std::uint64_t yk_base_length(int H, int V, double p, int k) {
    const double Q = 1.0 + std::log(static_cast<double>(V)) /
                               std::log(static_cast<double>(H));
    const double exponent = static_cast<double>(k) * (Q - p) / p;
    const double raw = std::pow(static_cast<double>(H), exponent);
    // Truncate rather than round: T only needs T^p within a constant of
    // H^{k(Q-p)}, and rounding up to a non-square T (e.g. 3) unbalances
    // the ceil(sqrt(T))-label colouring enough to dent the certified
    // growth at small k. The 1e-9 absorbs pow() ulp noise on exact powers.
    const auto truncated = static_cast<std::uint64_t>(raw + 1e-9);
    return std::max<std::uint64_t>(2, truncated);
}

int yk_extension_letters(std::uint64_t slice_length, std::uint64_t T, int H,
                         int stage) {
    std::uint64_t target = T;
    for (int i = 0; i < stage; ++i) target = sat_mul(target, static_cast<std::uint64_t>(H));
    int j = 0;
    std::uint64_t extended = sat_mul(slice_length, static_cast<std::uint64_t>(H));
    while (extended < target) {
        extended = sat_mul(extended, static_cast<std::uint64_t>(H));
        ++j;
    }
    return j;
}

YkGraph build_yk(int H, int V, double p, int k, const Budgets& budgets) {
    if (H < 2 || V < 2) throw validation_error("build_yk requires H >= 2, V >= 2");
    if (k < 1) throw validation_error("build_yk requires k >= 1");
    const double Q = 1.0 + std::log(static_cast<double>(V)) /
                               std::log(static_cast<double>(H));
    if (!(p >= 1.0) || !(p < Q))
        throw validation_error("build_yk requires 1 <= p < Q = " +
                               std::to_string(Q));

    YkGraph yk;
    yk.H = H;
    yk.V = V;
    yk.p = p;
    yk.k = k;
    yk.T = yk_base_length(H, V, p, k);
    yk.t = 0;
    for (std::uint64_t reach = 1; reach < yk.T; reach = sat_mul(reach, H)) ++yk.t;

    // Slice skeleton, level by level.
    yk.slices.push_back({0, yk.t, 0, 0, yk.T, 0, 0});
    std::uint64_t total = yk.T;
    std::size_t level_begin = 0;
    for (int stage = 1; stage <= k; ++stage) {
        const std::size_t level_end = yk.slices.size();
        for (std::size_t s = level_begin; s < level_end; ++s) {
            const int j = yk_extension_letters(yk.slices[s].length, yk.T, H, stage);
            std::uint64_t mult = static_cast<std::uint64_t>(H);
            for (int i = 0; i < j; ++i) mult = sat_mul(mult, H);
            std::uint64_t vshift = 1;
            for (int i = 0; i < j; ++i) vshift = sat_mul(vshift, V);
            for (int beta = 0; beta < V; ++beta) {
                YkSlice child;
                child.level = stage;
                child.depth = yk.slices[s].depth + 1 + j;
                child.v_suffix =
                    sat_mul(sat_mul(yk.slices[s].v_suffix, V) +
                                static_cast<std::uint64_t>(beta),
                            vshift);
                child.first_h = sat_mul(yk.slices[s].first_h, mult);
                child.length = sat_mul(yk.slices[s].length, mult);
                child.parent = static_cast<std::uint32_t>(s);
                yk.slices.push_back(child);
                total = sat_add(total, child.length);
            }
        }
        level_begin = level_end;
        if (total > budgets.vertex)
            throw budget_error("Y_k exceeds vertex budget", total, budgets.vertex);
    }
    if (total > budgets.vertex)
        throw budget_error("Y_k exceeds vertex budget", total, budgets.vertex);

    // Vertices: slice-major, h ascending.
    yk.address.reserve(total);
    yk.slice_of.reserve(total);
    yk.level_of.reserve(total);
    yk.h_index.reserve(total);
    std::vector<Edge> edges;
    std::vector<EdgeKind> kinds;
    VertexId next = 0;
    for (std::size_t s = 0; s < yk.slices.size(); ++s) {
        auto& slice = yk.slices[s];
        slice.first_vertex = next;
        const Word v_word = [&] {
            Word w(static_cast<std::size_t>(yk.t), 0);
            Word suffix = index_to_word(slice.v_suffix, V, slice.depth - yk.t);
            w.insert(w.end(), suffix.begin(), suffix.end());
            return w;
        }();
        for (std::uint64_t x = slice.first_h; x < slice.first_h + slice.length;
             ++x) {
            yk.address.push_back({index_to_word(x, H, slice.depth), v_word});
            yk.slice_of.push_back(static_cast<std::uint32_t>(s));
            yk.level_of.push_back(slice.level);
            yk.h_index.push_back(x);
            if (x > slice.first_h) {
                edges.push_back({next - 1, next});
                kinds.push_back(EdgeKind::horizontal);
            }
            if (slice.level > 0) {
                const auto& ps = yk.slices[slice.parent];
                std::uint64_t shift = 1;
                for (int d = ps.depth; d < slice.depth; ++d)
                    shift = sat_mul(shift, H);
                const VertexId parent =
                    ps.first_vertex +
                    static_cast<VertexId>(x / shift - ps.first_h);
                edges.push_back({parent, next});
                kinds.push_back(EdgeKind::vertical);
            }
            ++next;
        }
    }

    std::vector<Edge> raw = edges;
    yk.graph = Graph::from_edges(total, std::move(edges));
    yk.edge_kind.assign(yk.graph.num_edges(), EdgeKind::horizontal);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto id = yk.graph.find_edge(raw[i].u, raw[i].v);
        yk.edge_kind[static_cast<std::size_t>(id)] = kinds[i];
    }

    // Edge-id tables for the congestion passes.
    yk.h_edge_offset.resize(yk.slices.size() + 1, 0);
    for (std::size_t s = 0; s < yk.slices.size(); ++s)
        yk.h_edge_offset[s + 1] =
            yk.h_edge_offset[s] + (yk.slices[s].length - 1);
    yk.h_edge_ids.resize(yk.h_edge_offset.back());
    yk.parent_edge.resize(total);
    for (std::size_t s = 0; s < yk.slices.size(); ++s) {
        const auto& slice = yk.slices[s];
        for (std::uint64_t x = slice.first_h; x + 1 < slice.first_h + slice.length;
             ++x) {
            VertexId a = yk.vertex_at(static_cast<std::uint32_t>(s), x);
            yk.h_edge_ids[yk.h_edge_offset[s] + (x - slice.first_h)] =
                static_cast<EdgeId>(yk.graph.find_edge(a, a + 1));
        }
        if (slice.level > 0) {
            for (std::uint64_t x = slice.first_h;
                 x < slice.first_h + slice.length; ++x) {
                VertexId v = yk.vertex_at(static_cast<std::uint32_t>(s), x);
                yk.parent_edge[v] = static_cast<EdgeId>(
                    yk.graph.find_edge(yk.parent_vertex(v), v));
            }
        }
    }
    return yk;
}

GraphRecord yk_to_record(const YkGraph& g) {
    GraphRecord record;
    record.graph = g.graph;
    const bool dotted = g.H > 10 || g.V > 10;
    for (VertexId v = 0; v < g.graph.num_vertices(); ++v)
        record.labels[v] = address_to_label(g.address[v], dotted);
    record.edge_kinds.reserve(g.edge_kind.size());
    for (EdgeKind k : g.edge_kind)
        record.edge_kinds.push_back(edge_kind_name(k));
    return record;
}

}  // namespace rtprof
