#include "rtprof/poincare.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

namespace rtprof {

namespace {

void require_connected(const Graph& g, const char* op) {
    if (g.num_vertices() < 2)
        throw validation_error(std::string(op) + " requires n >= 2");
    if (!g.is_connected())
        throw validation_error(std::string(op) + " rejects disconnected graphs");
}

void project_mean_zero(VertexFunction& f) {
    double mean = 0.0;
    for (double x : f) mean += x;
    mean /= static_cast<double>(f.size());
    for (double& x : f) x -= mean;
}

void canonical_sign(VertexFunction& f) {
    for (double x : f) {
        if (x != 0.0) {
            if (x < 0.0)
                for (double& y : f) y = -y;
            return;
        }
    }
}

double dot(const VertexFunction& a, const VertexFunction& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void laplacian_apply(const Graph& g, const VertexFunction& f, VertexFunction& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        out[v] = static_cast<double>(g.degree(v)) * f[v];
    for (const auto& e : g.edges()) {
        out[e.u] -= f[e.v];
        out[e.v] -= f[e.u];
    }
}

SpectralPair fiedler_dense(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.num_vertices());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        L(v, v) = static_cast<double>(g.degree(v));
    for (const auto& e : g.edges()) {
        L(e.u, e.v) = -1.0;
        L(e.v, e.u) = -1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
    SpectralPair out;
    out.lambda2 = solver.eigenvalues()(1);
    out.vector.assign(g.num_vertices(), 0.0);
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        out.vector[v] = solver.eigenvectors()(v, 1);
    out.iterations = 0;
    return out;
}

SpectralPair fiedler_lanczos(const Graph& g) {
    const std::size_t n = g.num_vertices();
    const std::size_t m_max = std::min<std::size_t>(n - 1, 600);

    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<VertexFunction> basis;
    std::vector<double> alpha, beta;
    VertexFunction q(n), w(n);
    for (double& x : q) x = gauss(rng);
    project_mean_zero(q);
    double nrm = std::sqrt(dot(q, q));
    for (double& x : q) x /= nrm;
    basis.push_back(q);

    auto solve_tridiag = [&](double& theta, Eigen::VectorXd& y) {
        const auto m = static_cast<Eigen::Index>(alpha.size());
        Eigen::VectorXd diag(m), sub(std::max<Eigen::Index>(m - 1, 0));
        for (Eigen::Index i = 0; i < m; ++i) diag(i) = alpha[static_cast<std::size_t>(i)];
        for (Eigen::Index i = 0; i + 1 < m; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
        solver.computeFromTridiagonal(diag, sub);
        theta = solver.eigenvalues()(0);
        y = solver.eigenvectors().col(0);
    };

    auto ritz_vector = [&](const Eigen::VectorXd& y) {
        VertexFunction v(n, 0.0);
        for (std::size_t i = 0; i < static_cast<std::size_t>(y.size()); ++i)
            for (std::size_t x = 0; x < n; ++x) v[x] += y(static_cast<Eigen::Index>(i)) * basis[i][x];
        project_mean_zero(v);
        return v;
    };

    SpectralPair out;
    for (std::size_t j = 0; j < m_max; ++j) {
        laplacian_apply(g, basis[j], w);
        if (j > 0)
            for (std::size_t x = 0; x < n; ++x) w[x] -= beta[j - 1] * basis[j - 1][x];
        const double a = dot(basis[j], w);
        alpha.push_back(a);
        for (std::size_t x = 0; x < n; ++x) w[x] -= a * basis[j][x];
        project_mean_zero(w);
        for (const auto& b : basis) {
            const double c = dot(b, w);
            for (std::size_t x = 0; x < n; ++x) w[x] -= c * b[x];
        }
        const double b = std::sqrt(dot(w, w));

        const bool checkpoint = ((j + 1) % 10 == 0) || b < 1e-13 || j + 1 == m_max;
        if (checkpoint) {
            double theta;
            Eigen::VectorXd y;
            solve_tridiag(theta, y);
            const double resid = b * std::abs(y(y.size() - 1));
            if (resid <= kSpectralTol * std::max(1.0, std::abs(theta)) ||
                b < 1e-13 || j + 1 == m_max) {
                out.lambda2 = theta;
                out.vector = ritz_vector(y);
                out.iterations = j + 1;
                return out;
            }
        }
        beta.push_back(b);
        for (double& x : w) x /= b;
        basis.push_back(w);
    }
    return out;  // unreachable: the m_max checkpoint always returns
}

// Cut value n*e(S,Sc) / (2 |S| |Sc|) bookkeeping shared by the exhaustive
// and sweep searches.
struct CutState {
    const Graph* g;
    std::vector<bool> in_s;
    std::vector<std::size_t> nbrs_in_s;  // per vertex
    std::size_t size_s = 0;
    std::size_t crossing = 0;

    explicit CutState(const Graph& graph)
        : g(&graph),
          in_s(graph.num_vertices(), false),
          nbrs_in_s(graph.num_vertices(), 0) {}

    void flip(VertexId v) {
        const std::size_t deg = g->degree(v);
        if (in_s[v]) {
            crossing -= deg - 2 * nbrs_in_s[v];
            in_s[v] = false;
            --size_s;
            for (const auto& nb : g->neighbors(v)) --nbrs_in_s[nb.vertex];
        } else {
            crossing += deg - 2 * nbrs_in_s[v];
            in_s[v] = true;
            ++size_s;
            for (const auto& nb : g->neighbors(v)) ++nbrs_in_s[nb.vertex];
        }
    }

    double value() const {
        const double n = static_cast<double>(g->num_vertices());
        const double s = static_cast<double>(size_s);
        return n * static_cast<double>(crossing) / (2.0 * s * (n - s));
    }
};

std::vector<bool> best_cut_exhaustive(const Graph& g) {
    const std::size_t n = g.num_vertices();
    CutState state(g);
    double best = std::numeric_limits<double>::infinity();
    std::vector<bool> best_s;
    // Vertex n-1 stays outside S; complements give the same value.
    const std::uint64_t limit = std::uint64_t{1} << (n - 1);
    for (std::uint64_t code = 1; code < limit; ++code) {
        state.flip(static_cast<VertexId>(std::countr_zero(code)));
        if (state.size_s == 0) continue;
        const double value = state.value();
        if (value < best) {
            best = value;
            best_s = state.in_s;
        }
    }
    return best_s;
}

std::vector<bool> refine_by_exchange(const Graph& g, CutState& state,
                                     int max_flips) {
    const std::size_t n = g.num_vertices();
    std::vector<bool> best_s = state.in_s;
    double best = state.value();
    for (int pass = 0; pass < max_flips; ++pass) {
        double best_gain_value = best;
        std::int64_t best_v = -1;
        for (VertexId v = 0; v < n; ++v) {
            const bool leaving = state.in_s[v];
            if (leaving && state.size_s == 1) continue;
            if (!leaving && state.size_s + 1 == n) continue;
            const std::size_t deg = g.degree(v);
            const std::size_t cnt = state.nbrs_in_s[v];
            const std::size_t crossing =
                leaving ? state.crossing + 2 * cnt - deg
                        : state.crossing + deg - 2 * cnt;
            const double s = static_cast<double>(state.size_s) + (leaving ? -1.0 : 1.0);
            const double value = static_cast<double>(n) *
                                 static_cast<double>(crossing) /
                                 (2.0 * s * (static_cast<double>(n) - s));
            if (value < best_gain_value * (1.0 - 1e-12)) {
                best_gain_value = value;
                best_v = v;
            }
        }
        if (best_v < 0) break;
        state.flip(static_cast<VertexId>(best_v));
        best = state.value();
        best_s = state.in_s;
    }
    return best_s;
}

std::vector<bool> best_cut_sweep(const Graph& g) {
    const std::size_t n = g.num_vertices();
    SpectralPair spectral = fiedler_pair(g);
    std::vector<VertexId> order(n);
    for (VertexId v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        if (spectral.vector[a] != spectral.vector[b])
            return spectral.vector[a] < spectral.vector[b];
        return a < b;
    });

    CutState state(g);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_prefix = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        state.flip(order[i]);
        const double value = state.value();
        if (value < best) {
            best = value;
            best_prefix = i + 1;
        }
    }
    CutState chosen(g);
    for (std::size_t i = 0; i < best_prefix; ++i) chosen.flip(order[i]);
    return refine_by_exchange(g, chosen, 100);
}

PoincareResult result_from_cut(const Graph& g, const std::vector<bool>& in_s) {
    const std::size_t n = g.num_vertices();
    std::size_t size_s = 0;
    for (bool b : in_s) size_s += b ? 1 : 0;
    PoincareResult out;
    out.p = 1.0;
    out.method = PoincareMethod::two_valued;
    out.certified = Certainty::upper_bound;
    out.witness.assign(n, 0.0);
    const double hi = static_cast<double>(n - size_s);
    const double lo = -static_cast<double>(size_s);
    for (std::size_t v = 0; v < n; ++v) out.witness[v] = in_s[v] ? hi : lo;
    const double norm = lp_norm(out.witness, 1.0);
    for (double& x : out.witness) x /= norm;
    out.value = gradient_norm(g, out.witness, 1.0) / lp_norm(out.witness, 1.0);
    return out;
}

// Subgradient of sum_e |f(u) - f(v)|^p.
void subgradient_step(const Graph& g, double p, const VertexFunction& f,
                      VertexFunction& grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const auto& e : g.edges()) {
        const double d = f[e.u] - f[e.v];
        if (d == 0.0) continue;
        const double mag = p * std::pow(std::abs(d), p - 1.0);
        const double s = d > 0.0 ? mag : -mag;
        grad[e.u] += s;
        grad[e.v] -= s;
    }
}

}  // namespace

const char* poincare_method_name(PoincareMethod m) {
    switch (m) {
        case PoincareMethod::spectral: return "spectral";
        case PoincareMethod::two_valued: return "two_valued";
        case PoincareMethod::numeric: return "numeric";
    }
    return "?";
}

const char* certainty_name(Certainty c) {
    return c == Certainty::exact ? "exact" : "upper_bound";
}

SpectralPair fiedler_pair(const Graph& g) {
    require_connected(g, "fiedler_pair");
    SpectralPair out = g.num_vertices() < kDenseSpectralLimit
                           ? fiedler_dense(g)
                           : fiedler_lanczos(g);
    project_mean_zero(out.vector);
    canonical_sign(out.vector);
    return out;
}

PoincareResult h2_exact(const Graph& g) {
    require_connected(g, "h2_exact");
    SpectralPair spectral = fiedler_pair(g);
    PoincareResult out;
    out.p = 2.0;
    out.method = PoincareMethod::spectral;
    out.certified = Certainty::exact;
    out.witness = std::move(spectral.vector);
    out.iterations = spectral.iterations;
    out.value = gradient_norm(g, out.witness, 2.0) / lp_norm(out.witness, 2.0);
    return out;
}

PoincareResult h1_sweep(const Graph& g) {
    require_connected(g, "h1_sweep");
    const std::vector<bool> cut = g.num_vertices() <= kSweepExhaustiveLimit
                                      ? best_cut_exhaustive(g)
                                      : best_cut_sweep(g);
    return result_from_cut(g, cut);
}

PoincareResult hp_minimize(const Graph& g, double p, const MinimizeOptions& options) {
    require_connected(g, "hp_minimize");
    if (!(p >= 1.0) || !std::isfinite(p))
        throw validation_error("hp_minimize requires finite p >= 1");

    const std::size_t n = g.num_vertices();
    const double step0 = options.step_factor / static_cast<double>(g.max_degree());

    PoincareResult out;
    out.p = p;
    out.method = PoincareMethod::numeric;
    out.certified = Certainty::upper_bound;
    out.seed = options.seed;

    double best_val = std::numeric_limits<double>::infinity();
    VertexFunction best_f;
    std::uint64_t total_iters = 0;

    VertexFunction f(n), grad(n), cand(n);
    for (int r = 0; r < options.restarts; ++r) {
        std::mt19937_64 rng(options.seed + 0x100000001ULL * static_cast<std::uint64_t>(r));
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (double& x : f) x = gauss(rng);
        project_mean_zero(f);
        double nrm = lp_norm(f, p);
        if (nrm == 0.0) {
            f[0] = 1.0;
            project_mean_zero(f);
            nrm = lp_norm(f, p);
        }
        for (double& x : f) x /= nrm;

        double restart_best = gradient_norm(g, f, p);
        VertexFunction restart_f = f;
        int iters = 0;

        // Fixed-step phase.
        int stall = 0;
        while (iters < options.max_iters) {
            subgradient_step(g, p, f, grad);
            for (std::size_t i = 0; i < n; ++i) f[i] -= step0 * grad[i];
            project_mean_zero(f);
            nrm = lp_norm(f, p);
            if (nrm < 1e-300) break;
            for (double& x : f) x /= nrm;
            ++iters;
            const double val = gradient_norm(g, f, p);
            if (val < restart_best * (1.0 - options.stop_rel)) {
                restart_best = val;
                restart_f = f;
                stall = 0;
            } else {
                ++stall;
                if (stall >= options.stall_window) break;
            }
        }

        // Polish: accept-if-improve with geometrically shrinking steps.
        f = restart_f;
        double step = step0;
        while (step > 1e-14 && iters < options.max_iters) {
            subgradient_step(g, p, f, grad);
            for (std::size_t i = 0; i < n; ++i) cand[i] = f[i] - step * grad[i];
            project_mean_zero(cand);
            nrm = lp_norm(cand, p);
            ++iters;
            if (nrm >= 1e-300) {
                for (double& x : cand) x /= nrm;
                const double val = gradient_norm(g, cand, p);
                if (val < restart_best) {
                    restart_best = val;
                    restart_f = cand;
                    f = cand;
                    continue;
                }
            }
            step *= 0.5;
        }

        // p = 1: round the iterate through its sweep cuts; the two-valued
        // function over a prefix of the sort order often sits exactly on
        // the kink the subgradient steps circle around.
        if (p == 1.0) {
            std::vector<VertexId> order(n);
            for (VertexId v = 0; v < n; ++v) order[v] = v;
            std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
                if (restart_f[a] != restart_f[b])
                    return restart_f[a] < restart_f[b];
                return a < b;
            });
            CutState state(g);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                state.flip(order[i]);
                const double value = state.value();
                if (value < restart_best) {
                    restart_best = value;
                    const double hi = static_cast<double>(n - state.size_s);
                    const double lo = -static_cast<double>(state.size_s);
                    for (std::size_t v = 0; v < n; ++v)
                        restart_f[v] = state.in_s[v] ? hi : lo;
                    const double norm = lp_norm(restart_f, 1.0);
                    for (double& x : restart_f) x /= norm;
                }
            }
        }

        total_iters += static_cast<std::uint64_t>(iters);
        if (restart_best < best_val) {
            best_val = restart_best;
            best_f = restart_f;
        }
    }

    out.witness = std::move(best_f);
    canonical_sign(out.witness);
    out.iterations = total_iters;
    out.value = gradient_norm(g, out.witness, p) / lp_norm(out.witness, p);
    return out;
}

PoincareResult hp_minimize(const Graph& g, double p, int restarts,
                           std::uint64_t seed) {
    MinimizeOptions options;
    options.restarts = restarts;
    options.seed = seed;
    return hp_minimize(g, p, options);
}

PoincareResult hp_upper_estimate(const Graph& g, double p,
                                 const MinimizeOptions& options) {
    if (p == 2.0) return h2_exact(g);
    if (p == 1.0) return h1_sweep(g);
    return hp_minimize(g, p, options);
}

std::string poincare_to_json(const PoincareResult& result,
                             const MinimizeOptions* options) {
    nlohmann::ordered_json j;
    j["p"] = result.p;
    j["value"] = result.value;
    j["method"] = poincare_method_name(result.method);
    j["certified"] = certainty_name(result.certified);
    j["iterations"] = result.iterations;
    j["seed"] = result.seed;
    if (options) {
        j["restarts"] = options->restarts;
        j["step_factor"] = options->step_factor;
        j["max_iters"] = options->max_iters;
        j["stop_rel"] = options->stop_rel;
    }
    return j.dump(2) + "\n";
}

void write_witness_csv(const PoincareResult& result, const std::string& path) {
    std::ostringstream out;
    out << "vertex,value\n";
    char buf[64];
    for (std::size_t v = 0; v < result.witness.size(); ++v) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", v, result.witness[v]);
        out << buf;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw validation_error("cannot open for writing: " + path);
    file << out.str();
}

}  // namespace rtprof
