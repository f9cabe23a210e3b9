#include "rtprof/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace rtprof {

namespace {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string format_short(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

// comp_size <= epsilon * n, evaluated exactly.
bool within_epsilon(std::size_t comp_size, std::size_t n, Rational eps) {
    return static_cast<std::int64_t>(comp_size) * eps.den <=
           eps.num * static_cast<std::int64_t>(n);
}

std::vector<std::vector<VertexId>> components_of(const Graph& g,
                                                 const std::vector<bool>& removed) {
    std::vector<std::vector<VertexId>> comps;
    std::vector<bool> seen(g.num_vertices(), false);
    std::vector<VertexId> stack;
    for (VertexId start = 0; start < g.num_vertices(); ++start) {
        if (removed[start] || seen[start]) continue;
        comps.emplace_back();
        stack.push_back(start);
        seen[start] = true;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            comps.back().push_back(v);
            for (const auto& nb : g.neighbors(v)) {
                if (!removed[nb.vertex] && !seen[nb.vertex]) {
                    seen[nb.vertex] = true;
                    stack.push_back(nb.vertex);
                }
            }
        }
    }
    return comps;
}

double max_component_fraction(const Graph& g, const std::vector<VertexId>& cut) {
    if (g.num_vertices() == 0) return 0.0;
    auto sizes = components_after_removal(g, cut);
    const std::size_t largest = sizes.empty() ? 0 : sizes.front();
    return static_cast<double>(largest) / static_cast<double>(g.num_vertices());
}

// Depth-limited search used by cut_exact. `failed` memoizes removal masks
// that cannot be completed within the recorded budget.
struct ExactCutSearch {
    const Graph* g;
    std::size_t n;
    Rational eps;
    std::unordered_map<std::uint32_t, int> failed;
    std::vector<VertexId> solution;

    bool solve(std::uint32_t mask, int budget) {
        // Largest oversized component, vertices collected for branching.
        std::vector<bool> removed(n, false);
        for (std::size_t v = 0; v < n; ++v)
            if (mask & (std::uint32_t{1} << v)) removed[v] = true;
        auto comps = components_of(*g, removed);
        std::vector<VertexId>* oversized = nullptr;
        for (auto& c : comps) {
            if (!within_epsilon(c.size(), n, eps) &&
                (!oversized || c.size() > oversized->size()))
                oversized = &c;
        }
        if (!oversized) {
            solution.clear();
            for (std::size_t v = 0; v < n; ++v)
                if (removed[v]) solution.push_back(static_cast<VertexId>(v));
            return true;
        }
        if (budget == 0) return false;
        // Removing b vertices from a connected component of maximum degree
        // D yields at most 1 + b(D-1) pieces, so some piece keeps at least
        // ceil((|C| - b) / (1 + b(D-1))) vertices.
        const auto b = static_cast<std::size_t>(budget);
        const std::size_t c = oversized->size();
        if (c > b) {
            const std::size_t pieces =
                1 + b * (std::max<std::size_t>(g->max_degree(), 1) - 1);
            const std::size_t best_piece = (c - b + pieces - 1) / pieces;
            if (!within_epsilon(best_piece, n, eps)) return false;
        }

        auto it = failed.find(mask);
        if (it != failed.end() && budget <= it->second) return false;

        std::vector<VertexId> order = *oversized;
        std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
            if (g->degree(a) != g->degree(b)) return g->degree(a) > g->degree(b);
            return a < b;
        });
        for (VertexId v : order) {
            if (solve(mask | (std::uint32_t{1} << v), budget - 1)) return true;
        }
        auto& slot = failed[mask];
        slot = std::max(slot, budget);
        return false;
    }
};

// Smallest balanced Fiedler-sweep vertex separator of a connected graph:
// both sweep sides stay within 2/3 of the component so recursion makes
// progress.
std::vector<VertexId> sweep_separator(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n == 1) return {0};
    SpectralPair spectral = fiedler_pair(g);
    std::vector<VertexId> order(n);
    for (VertexId v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        if (spectral.vector[a] != spectral.vector[b])
            return spectral.vector[a] < spectral.vector[b];
        return a < b;
    });
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;

    std::vector<VertexId> best;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t left = i, right = n - i;
        if (3 * left > 2 * n || 3 * right > 2 * n) continue;
        std::vector<bool> in_left_sep(n, false), in_right_sep(n, false);
        std::size_t left_count = 0, right_count = 0;
        for (const auto& e : g.edges()) {
            const bool ul = position[e.u] < i;
            const bool vl = position[e.v] < i;
            if (ul == vl) continue;
            const VertexId lv = ul ? e.u : e.v;
            const VertexId rv = ul ? e.v : e.u;
            if (!in_left_sep[lv]) {
                in_left_sep[lv] = true;
                ++left_count;
            }
            if (!in_right_sep[rv]) {
                in_right_sep[rv] = true;
                ++right_count;
            }
        }
        const std::size_t sep_size = std::min(left_count, right_count);
        if (sep_size == 0) continue;
        if (!best.empty() && sep_size >= best.size()) continue;
        best.clear();
        const auto& flags = left_count <= right_count ? in_left_sep : in_right_sep;
        for (VertexId v = 0; v < n; ++v)
            if (flags[v]) best.push_back(v);
    }
    if (best.empty()) {
        // No balanced position (only possible for tiny components);
        // fall back to the sweep midpoint vertex.
        best.push_back(order[n / 2]);
    }
    return best;
}

}  // namespace

double q_of(int H, int V) {
    if (H < 2 || V < 1) throw validation_error("q_of requires H >= 2, V >= 1");
    return 1.0 + std::log(static_cast<double>(V)) / std::log(static_cast<double>(H));
}

double epsilon_of(double p, double Q) {
    if (!(p >= 1.0) || !(p < Q))
        throw validation_error("epsilon_of requires 1 <= p < Q");
    return (Q - p) / (p * (Q - p + p * Q));
}

std::vector<ProfilePoint> sweep_yk(int H, int V, double p, int k_min, int k_max,
                                   const SweepOptions& options) {
    if (k_min < 1 || k_max < k_min)
        throw validation_error("sweep_yk requires 1 <= k_min <= k_max");
    std::vector<ProfilePoint> points;
    for (int k = k_min; k <= k_max; ++k) {
        YkGraph yk = build_yk(H, V, p, k, options.budgets);
        Coloring coloring = build_coloring(yk);
        EdgeLoads loads = compute_congestion(yk, coloring, options.congestion);
        CongestionCertificate cert =
            lemma_bound(yk, coloring, loads, p, options.congestion);
        ProfilePoint point;
        point.graph_id = "yk-H" + std::to_string(H) + "-V" + std::to_string(V) +
                         "-p" + format_short(p) + "-k" + std::to_string(k);
        point.r = yk.graph.num_vertices();
        point.p = p;
        point.lower_bound = static_cast<double>(point.r) * cert.bound;
        if (options.upper_estimates) {
            PoincareResult upper =
                hp_upper_estimate(yk.graph, p, options.minimize);
            point.upper_estimate = static_cast<double>(point.r) * upper.value;
        }
        points.push_back(std::move(point));
    }
    return points;
}

ExponentFit fit_xy(std::span<const double> x, std::span<const double> y,
                   FitModel model) {
    if (x.size() != y.size() || x.size() < 2)
        throw validation_error("fit requires >= 2 points");
    const std::size_t n = x.size();
    std::vector<double> fx(n), fy(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0))
            throw validation_error("fit requires positive sizes");
        fx[i] = std::log(x[i]);
        if (model == FitModel::power) {
            if (!(y[i] > 0.0))
                throw validation_error("power fit requires positive values");
            fy[i] = std::log(y[i]);
        } else {
            fy[i] = y[i];
        }
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += fx[i];
        my += fy[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (fx[i] - mx) * (fx[i] - mx);
        sxy += (fx[i] - mx) * (fy[i] - my);
        syy += (fy[i] - my) * (fy[i] - my);
    }
    if (sxx == 0.0) throw validation_error("fit requires distinct sizes");

    ExponentFit fit;
    fit.sample_count = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = fy[i] - (fit.intercept + fit.slope * fx[i]);
        ss_res += resid * resid;
    }
    fit.r_squared = syy == 0.0 ? 1.0 : std::max(0.0, 1.0 - ss_res / syy);
    return fit;
}

ExponentFit fit_exponent(std::span<const ProfilePoint> points) {
    std::vector<double> x, y;
    for (const auto& pt : points) {
        x.push_back(static_cast<double>(pt.r));
        y.push_back(pt.lower_bound);
    }
    ExponentFit fit = fit_xy(x, y, FitModel::power);
    std::uint64_t lo = points.front().r, hi = points.front().r;
    for (const auto& pt : points) {
        lo = std::min(lo, pt.r);
        hi = std::max(hi, pt.r);
    }
    fit.size_range = {lo, hi};
    if (points.size() >= 3) {
        std::span<const double> sx(x), sy(y);
        ExponentFit tail = fit_xy(sx.subspan(x.size() - 3), sy.subspan(y.size() - 3),
                                  FitModel::power);
        fit.slope_last3 = tail.slope;
    }
    return fit;
}

CutResult cut_exact(const Graph& g, Rational epsilon, std::size_t cap) {
    const std::size_t n = g.num_vertices();
    if (n > cap || n > 32)
        throw budget_error("cut_exact cap exceeded", n, std::min<std::uint64_t>(cap, 32));
    if (epsilon.num <= 0 || epsilon.den <= 0)
        throw validation_error("epsilon must be positive");

    CutResult out;
    out.epsilon = epsilon;
    out.exact_method = true;
    out.optimal = true;
    ExactCutSearch search{&g, n, epsilon, {}, {}};
    for (int budget = 0; budget <= static_cast<int>(n); ++budget) {
        if (search.solve(0, budget)) {
            out.cut_set = search.solution;
            break;
        }
    }
    out.size = out.cut_set.size();
    out.max_component_fraction = max_component_fraction(g, out.cut_set);
    return out;
}

CutResult cut_heuristic(const Graph& g, Rational epsilon) {
    const std::size_t n = g.num_vertices();
    if (epsilon.num <= 0 || epsilon.den <= 0)
        throw validation_error("epsilon must be positive");
    CutResult out;
    out.epsilon = epsilon;
    out.exact_method = false;
    out.optimal = false;

    std::vector<bool> removed(n, false);
    bool progress = true;
    while (progress) {
        progress = false;
        auto comps = components_of(g, removed);
        for (const auto& comp : comps) {
            if (within_epsilon(comp.size(), n, epsilon)) continue;
            progress = true;
            std::vector<VertexId> ids(comp.begin(), comp.end());
            std::sort(ids.begin(), ids.end());
            InducedSubgraph sub = induced_subgraph(g, ids);
            for (VertexId local : sweep_separator(sub.graph))
                removed[sub.to_original[local]] = true;
        }
    }

    std::vector<VertexId> cut;
    for (VertexId v = 0; v < n; ++v)
        if (removed[v]) cut.push_back(v);

    // Greedy shrink: re-admit vertices whenever the constraint survives.
    std::vector<VertexId> order = cut;
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
        return a < b;
    });
    for (int pass = 0; pass < 3; ++pass) {
        bool changed = false;
        for (VertexId v : order) {
            if (!removed[v]) continue;
            removed[v] = false;
            std::vector<VertexId> candidate;
            for (VertexId u = 0; u < n; ++u)
                if (removed[u]) candidate.push_back(u);
            auto sizes = components_after_removal(g, candidate);
            const bool ok =
                sizes.empty() || within_epsilon(sizes.front(), n, epsilon);
            if (ok)
                changed = true;
            else
                removed[v] = true;
        }
        if (!changed) break;
    }

    out.cut_set.clear();
    for (VertexId v = 0; v < n; ++v)
        if (removed[v]) out.cut_set.push_back(v);
    out.size = out.cut_set.size();
    out.max_component_fraction = max_component_fraction(g, out.cut_set);
    return out;
}

SepPoint sep_point(const Graph& g, const std::string& graph_id,
                   Rational epsilon, std::size_t exact_cap) {
    SepPoint point;
    point.graph_id = graph_id;
    point.r = g.num_vertices();
    point.epsilon = epsilon;
    if (g.num_vertices() <= exact_cap) {
        CutResult cut = cut_exact(g, epsilon, exact_cap);
        point.cut_size = cut.size;
        point.exact_method = true;
    } else {
        CutResult cut = cut_heuristic(g, epsilon);
        point.cut_size = cut.size;
        point.exact_method = false;
    }
    return point;
}

std::string profile_csv(std::span<const ProfilePoint> points) {
    std::ostringstream out;
    out << "graph_id,r,p,lower_bound,upper_estimate,slope_running\n";
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        xs.push_back(static_cast<double>(pt.r));
        ys.push_back(pt.lower_bound);
        out << pt.graph_id << ',' << pt.r << ',' << format_short(pt.p) << ','
            << format_double(pt.lower_bound) << ',';
        if (pt.upper_estimate) out << format_double(*pt.upper_estimate);
        out << ',';
        if (i >= 1) {
            ExponentFit fit = fit_xy(xs, ys, FitModel::power);
            out << format_double(fit.slope);
        }
        out << '\n';
    }
    return out.str();
}

std::string sep_csv(std::span<const SepPoint> points) {
    std::ostringstream out;
    out << "graph_id,r,cut_size,method,epsilon\n";
    for (const auto& pt : points) {
        out << pt.graph_id << ',' << pt.r << ',' << pt.cut_size << ','
            << (pt.exact_method ? "exact" : "heuristic") << ','
            << pt.epsilon.num << '/' << pt.epsilon.den << '\n';
    }
    return out.str();
}

std::string cut_to_json(const CutResult& cut) {
    nlohmann::ordered_json j;
    j["epsilon"] = std::to_string(cut.epsilon.num) + "/" +
                   std::to_string(cut.epsilon.den);
    j["cut_set"] = cut.cut_set;
    j["size"] = cut.size;
    j["max_component_fraction"] = cut.max_component_fraction;
    j["method"] = cut.exact_method ? "exact" : "heuristic";
    j["optimal"] = cut.optimal;
    return j.dump(2) + "\n";
}

std::string fit_to_json(const ExponentFit& fit) {
    nlohmann::ordered_json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r_squared"] = fit.r_squared;
    j["sample_count"] = fit.sample_count;
    j["size_range"] = {fit.size_range.first, fit.size_range.second};
    if (std::isnan(fit.slope_last3))
        j["slope_last3"] = nullptr;
    else
        j["slope_last3"] = fit.slope_last3;
    return j.dump(2) + "\n";
}

}  // namespace rtprof
