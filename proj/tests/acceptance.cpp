// Acceptance suite: one test case per criterion, each printing a single
// [criterion N] PASS/FAIL line. Criteria 1, 5 and 6 write their outputs to
// files; criterion 10 repeats them with identical seeds and compares bytes.
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "rtprof/cantor.hpp"
#include "rtprof/congestion.hpp"
#include "rtprof/graph_io.hpp"
#include "rtprof/poincare.hpp"
#include "rtprof/profiles.hpp"
#include "rtprof/round_tree.hpp"

namespace fs = std::filesystem;
using namespace rtprof;

namespace {

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "rtprof-acceptance";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

struct Criterion {
    int number;
    std::string title;
    std::vector<std::string> failures;
    std::chrono::steady_clock::time_point t0 =
        std::chrono::steady_clock::now();

    Criterion(int n, std::string t) : number(n), title(std::move(t)) {}

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
    }
    std::string finish(double runtime_limit) {
        expect(elapsed() < runtime_limit,
               "runtime " + std::to_string(elapsed()) + "s exceeds " +
                   std::to_string(runtime_limit) + "s");
        std::string detail;
        for (const auto& f : failures) detail += (detail.empty() ? "" : "; ") + f;
        std::printf("[criterion %d] %s — %s (%.1fs)%s%s\n", number,
                    failures.empty() ? "PASS" : "FAIL", title.c_str(),
                    elapsed(), detail.empty() ? "" : ": ", detail.c_str());
        std::fflush(stdout);
        return detail;
    }
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// ---- criterion 1: spectral oracle ------------------------------------

std::string run_spectral_oracle(const fs::path& out, Criterion& c) {
    std::ostringstream csv;
    csv << "index,n,seed,h2,hp2\n";
    const std::size_t sizes[] = {10, 16, 24, 32, 40};
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = sizes[i % 5];
        const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(i);
        Graph g = testing::random_connected_graph(n, 0.2, seed);
        const double exact = h2_exact(g).value;
        const double numeric = hp_minimize(g, 2.0, 16, seed).value;
        csv << i << ',' << n << ',' << seed << ',' << fmt(exact) << ','
            << fmt(numeric) << '\n';
        c.expect(numeric >= exact - 1e-9,
                 "graph " + std::to_string(i) + ": hp2 " + fmt(numeric) +
                     " below h2 " + fmt(exact));
        c.expect(numeric <= 1.05 * exact,
                 "graph " + std::to_string(i) + ": hp2 " + fmt(numeric) +
                     " above 1.05*h2 " + fmt(1.05 * exact));
    }
    write_text_file(out.string(), csv.str());
    return csv.str();
}

// ---- criteria 5 and 6: round-tree growth ------------------------------

struct SweepArtifacts {
    std::vector<ProfilePoint> points;
    std::string csv;
    std::string fit_json;
};

SweepArtifacts run_growth_sweep(double p, const fs::path& csv_path,
                                const fs::path& fit_path) {
    SweepArtifacts artifacts;
    artifacts.points = sweep_yk(2, 2, p, 1, 4);
    artifacts.csv = profile_csv(artifacts.points);
    write_text_file(csv_path.string(), artifacts.csv);
    artifacts.fit_json = fit_to_json(fit_exponent(artifacts.points));
    write_text_file(fit_path.string(), artifacts.fit_json);
    return artifacts;
}

}  // namespace

TEST_CASE("criterion 1: spectral oracle") {
    Criterion c(1, "hp_minimize(p=2) within [h2-1e-9, 1.05 h2] on 50 graphs");
    run_spectral_oracle(work_dir() / "criterion1_values.csv", c);
    REQUIRE_MESSAGE(c.finish(60.0).empty(), "criterion 1 failed");
}

TEST_CASE("criterion 2: norm lemma") {
    Criterion c(2, "||v||_q <= ||v||_p <= r^{1/p-1/q} ||v||_q on 1e4 vectors");
    std::mt19937_64 rng(20260810);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_real_distribution<double> expo(-3.0, 3.0);
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<double> v(1 + rng() % 64);
        for (double& x : v) x = unif(rng) * std::pow(10.0, expo(rng));
        const double p = 1.0 + 4.0 * std::abs(unif(rng));
        const double q = p + 4.0 * std::abs(unif(rng));
        const auto check = check_norm_inequalities(v, p, q);
        c.expect(check.holds, "violated at trial " + std::to_string(trial));
        if (!check.holds) break;
    }
    REQUIRE_MESSAGE(c.finish(5.0).empty(), "criterion 2 failed");
}

TEST_CASE("criterion 3: per-graph norm corollary") {
    Criterion c(3, "h2 <= sqrt(n) h1 across the regression corpus");
    std::vector<std::pair<std::string, Graph>> corpus;
    for (std::size_t n : {2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 40})
        corpus.emplace_back("path" + std::to_string(n), path_graph(n));
    for (std::size_t n : {3, 4, 5, 6, 7, 8, 9, 10, 24, 40})
        corpus.emplace_back("cycle" + std::to_string(n), cycle_graph(n));
    for (std::size_t n : {2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 40})
        corpus.emplace_back("complete" + std::to_string(n), complete_graph(n));
    for (std::uint64_t seed = 0; seed < 10; ++seed)
        corpus.emplace_back(
            "random" + std::to_string(seed),
            testing::random_connected_graph(12 + 3 * seed, 0.2, 900 + seed));
    for (int k = 1; k <= 3; ++k)
        corpus.emplace_back("yk" + std::to_string(k),
                            build_yk(2, 2, 1.0, k).graph);

    for (const auto& [name, g] : corpus) {
        const double lhs = h2_exact(g).value;
        const double rhs =
            std::sqrt(static_cast<double>(g.num_vertices())) * h1_sweep(g).value;
        c.expect(lhs <= rhs * (1.0 + 1e-12),
                 name + ": h2 " + fmt(lhs) + " > sqrt(n) h1 " + fmt(rhs));
    }
    REQUIRE_MESSAGE(c.finish(600.0).empty(), "criterion 3 failed");
}

TEST_CASE("criterion 4: congestion soundness") {
    Criterion c(4, "lemma_bound <= h^p estimate, tight on P_2 and K_3 at p=1");

    Graph p2 = path_graph(2);
    Graph k3 = complete_graph(3);
    auto direct = [](const Graph& g) {
        return PathSystem([&g](VertexId a, VertexId b) {
            return std::vector<EdgeId>{
                static_cast<EdgeId>(g.find_edge(a, b))};
        });
    };

    // graphs live in stable storage; path systems reference them in place
    std::vector<std::pair<std::string, Graph>> bfs_corpus{
        {"path8", path_graph(8)},
        {"cycle9", cycle_graph(9)},
        {"complete6", complete_graph(6)},
        {"star7", star_graph(7)},
        {"random12", testing::random_connected_graph(12, 0.35, 4001)},
        {"random16", testing::random_connected_graph(16, 0.3, 4002)}};

    auto estimate = [](const Graph& g, double p) {
        MinimizeOptions options;
        options.restarts = 16;
        options.seed = 12345;
        return hp_upper_estimate(g, p, options).value;
    };
    auto check_entry = [&](const std::string& name, const Graph& g,
                           const PathSystem& paths) {
        EdgeLoads loads = compute_congestion(g, paths);
        for (double p : {1.0, 1.5, 2.0}) {
            const double lower = lemma_bound(g, paths, loads, p).bound;
            const double upper = estimate(g, p);
            c.expect(lower <= upper + 1e-9, name + " p=" + fmt(p) + ": " +
                                                fmt(lower) + " > " + fmt(upper));
        }
    };
    check_entry("p2-direct", p2, direct(p2));
    check_entry("k3-direct", k3, direct(k3));
    for (const auto& [name, g] : bfs_corpus)
        check_entry(name, g, bfs_path_system(g));

    for (int k = 1; k <= 3; ++k) {
        YkGraph yk = build_yk(2, 2, 1.0, k);
        Coloring col = build_coloring(yk);
        EdgeLoads loads = compute_congestion(yk, col);
        for (double p : {1.0, 1.5, 2.0}) {
            const double lower = lemma_bound(yk, col, loads, p).bound;
            const double upper = estimate(yk.graph, p);
            c.expect(lower <= upper + 1e-9,
                     "yk" + std::to_string(k) + " p=" + fmt(p) + ": " +
                         fmt(lower) + " > " + fmt(upper));
        }
    }

    // tight cases
    EdgeLoads p2_loads = compute_congestion(p2, direct(p2));
    const double p2_bound = lemma_bound(p2, direct(p2), p2_loads, 1.0).bound;
    c.expect(std::abs(p2_bound - 1.0) <= 1e-12, "P_2 bound not 1");
    c.expect(std::abs(h1_sweep(p2).value - 1.0) <= 1e-12, "h1(P_2) not 1");
    EdgeLoads k3_loads = compute_congestion(k3, direct(k3));
    const double k3_bound = lemma_bound(k3, direct(k3), k3_loads, 1.0).bound;
    c.expect(std::abs(k3_bound - 1.5) <= 1e-12, "K_3 bound not 3/2");
    c.expect(std::abs(h1_sweep(k3).value - 1.5) <= 1e-12, "h1(K_3) not 3/2");

    REQUIRE_MESSAGE(c.finish(600.0).empty(), "criterion 4 failed");
}

TEST_CASE("criterion 5: round-tree growth at p=1") {
    Criterion c(5, "certified growth of Y_k at p=1, H=V=2 (target r^{1/3})");
    SweepArtifacts artifacts = run_growth_sweep(
        1.0, work_dir() / "criterion5_sweep.csv",
        work_dir() / "criterion5_fit.json");
    const auto& points = artifacts.points;
    c.expect(points.size() == 4, "expected 4 points");
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        c.expect(points[i].lower_bound < points[i + 1].lower_bound,
                 "L(k) not strictly increasing at k=" + std::to_string(i + 2));
    ExponentFit fit = fit_exponent(points);
    c.expect(fit.slope_last3 >= 0.20,
             "last-3 slope " + fmt(fit.slope_last3) + " < 0.20");
    double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
    for (const auto& pt : points) {
        const double ratio =
            pt.lower_bound / std::cbrt(static_cast<double>(pt.r));
        cmin = std::min(cmin, ratio);
        cmax = std::max(cmax, ratio);
    }
    c.expect(cmin / cmax >= 0.25,
             "constant degenerates: min/max = " + fmt(cmin / cmax));
    REQUIRE_MESSAGE(c.finish(600.0).empty(), "criterion 5 failed");
}

TEST_CASE("criterion 6: round-tree growth at p=1.5") {
    Criterion c(6, "certified growth of Y_k at p=1.5 exceeds the tree baseline");
    SweepArtifacts artifacts = run_growth_sweep(
        1.5, work_dir() / "criterion6_sweep.csv",
        work_dir() / "criterion6_fit.json");
    const auto& points = artifacts.points;
    c.expect(points.size() == 4, "expected 4 points");
    ExponentFit fit = fit_exponent(points);
    c.expect(fit.slope >= 1.0 / 3.0,
             "fitted slope " + fmt(fit.slope) + " < 1/3");
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double a = points[i].lower_bound /
                         std::cbrt(static_cast<double>(points[i].r));
        const double b = points[i + 1].lower_bound /
                         std::cbrt(static_cast<double>(points[i + 1].r));
        c.expect(a < b, "ratio not strictly increasing at k=" +
                            std::to_string(i + 2) + " (" + fmt(a) + " vs " +
                            fmt(b) + ")");
    }
    REQUIRE_MESSAGE(c.finish(900.0).empty(), "criterion 6 failed");
}

TEST_CASE("criterion 7: epsilon-cut exactness") {
    Criterion c(7, "cut_exact matches exhaustive search; K_n and tree values");
    std::vector<std::pair<std::string, Graph>> corpus;
    for (std::size_t n = 2; n <= 12; ++n)
        corpus.emplace_back("path" + std::to_string(n), path_graph(n));
    for (std::size_t n = 3; n <= 12; ++n)
        corpus.emplace_back("cycle" + std::to_string(n), cycle_graph(n));
    for (std::size_t n = 2; n <= 12; ++n)
        corpus.emplace_back("complete" + std::to_string(n), complete_graph(n));
    for (std::uint64_t seed = 0; seed < 6; ++seed)
        corpus.emplace_back("random" + std::to_string(seed),
                            testing::random_graph(8 + seed % 5, 0.3, 7100 + seed));

    for (const auto& [name, g] : corpus) {
        const std::size_t expected = testing::exhaustive_cut_size(g, {2, 3});
        const std::size_t actual = cut_exact(g).size;
        c.expect(actual == expected, name + ": cut " + std::to_string(actual) +
                                         " != exhaustive " +
                                         std::to_string(expected));
    }
    for (std::size_t n = 3; n <= 12; ++n) {
        const std::size_t expected = (n + 2) / 3;
        const std::size_t actual = cut_exact(complete_graph(n)).size;
        c.expect(actual == expected,
                 "K_" + std::to_string(n) + ": " + std::to_string(actual) +
                     " != ceil(n/3) = " + std::to_string(expected));
    }
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const std::size_t n = 6 + 2 * seed;  // up to 20
        Graph tree = testing::random_tree(n, 7200 + seed);
        c.expect(cut_exact(tree).size == 1,
                 "tree n=" + std::to_string(n) + " cut != 1");
    }
    REQUIRE_MESSAGE(c.finish(120.0).empty(), "criterion 7 failed");
}

TEST_CASE("criterion 8: half-plane log separation") {
    Criterion c(8, "RT^{2,1} cut sizes grow like log r, not any power >= 0.3");
    std::vector<double> sizes, cuts;
    for (int depth = 6; depth <= 12; ++depth) {
        RoundTreeGraph ball = build_half_plane(2, depth);
        CutResult cut = cut_heuristic(ball.graph);
        c.expect(cut.size <= static_cast<std::size_t>(4 * depth),
                 "depth " + std::to_string(depth) + ": cut " +
                     std::to_string(cut.size) + " > 4*depth");
        sizes.push_back(static_cast<double>(ball.graph.num_vertices()));
        cuts.push_back(static_cast<double>(cut.size));
    }
    ExponentFit power = fit_xy(sizes, cuts, FitModel::power);
    ExponentFit logfit = fit_xy(sizes, cuts, FitModel::logarithmic);
    c.expect(power.slope < 0.2,
             "power slope " + fmt(power.slope) + " not < 0.2");
    c.expect(logfit.r_squared > power.r_squared,
             "log model r2 " + fmt(logfit.r_squared) +
                 " does not beat power r2 " + fmt(power.r_squared));
    REQUIRE_MESSAGE(c.finish(300.0).empty(), "criterion 8 failed");
}

TEST_CASE("criterion 9: Cantor regularity") {
    Criterion c(9, "ball measures match enumeration; Ahlfors constant bounded");
    for (auto [H, V] : {std::pair{2, 2}, {3, 2}, {4, 3}}) {
        CantorSpace space = make_cantor_space(H, V, 8);
        bool exact = true;
        for (std::uint64_t i = 0; i < space.point_count() && exact; ++i) {
            const Word center = space.point(i);
            for (int k = 0; k <= space.depth; ++k) {
                if (ball_measure(space, center, k) !=
                    ball_measure_enumerated(space, center, k)) {
                    exact = false;
                    break;
                }
            }
        }
        c.expect(exact, "ball measure mismatch at (H,V)=(" +
                            std::to_string(H) + "," + std::to_string(V) + ")");
        AhlforsReport report = ahlfors_report(space);
        const double limit =
            std::max(static_cast<double>(V),
                     std::pow(static_cast<double>(H), report.q_z));
        c.expect(report.c <= limit + 1e-9,
                 "(H,V)=(" + std::to_string(H) + "," + std::to_string(V) +
                     "): C " + fmt(report.c) + " > " + fmt(limit));
    }
    REQUIRE_MESSAGE(c.finish(60.0).empty(), "criterion 9 failed");
}

TEST_CASE("criterion 10: determinism") {
    Criterion c(10, "criteria 1, 5, 6 reruns are byte-identical");

    Criterion scratch(0, "rerun");
    const std::string c1 = run_spectral_oracle(
        work_dir() / "criterion1_values.rerun.csv", scratch);
    c.expect(c1 == read_text_file((work_dir() / "criterion1_values.csv").string()),
             "criterion 1 outputs differ");

    SweepArtifacts c5 = run_growth_sweep(
        1.0, work_dir() / "criterion5_sweep.rerun.csv",
        work_dir() / "criterion5_fit.rerun.json");
    c.expect(c5.csv == read_text_file((work_dir() / "criterion5_sweep.csv").string()),
             "criterion 5 sweep differs");
    c.expect(c5.fit_json ==
                 read_text_file((work_dir() / "criterion5_fit.json").string()),
             "criterion 5 fit differs");

    SweepArtifacts c6 = run_growth_sweep(
        1.5, work_dir() / "criterion6_sweep.rerun.csv",
        work_dir() / "criterion6_fit.rerun.json");
    c.expect(c6.csv == read_text_file((work_dir() / "criterion6_sweep.csv").string()),
             "criterion 6 sweep differs");
    c.expect(c6.fit_json ==
                 read_text_file((work_dir() / "criterion6_fit.json").string()),
             "criterion 6 fit differs");

    REQUIRE_MESSAGE(c.finish(1200.0).empty(), "criterion 10 failed");
}
