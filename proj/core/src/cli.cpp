#include "rtprof/cli.hpp"

#include <chrono>
#include <clocale>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rtprof/cantor.hpp"
#include "rtprof/congestion.hpp"
#include "rtprof/graph_io.hpp"
#include "rtprof/poincare.hpp"
#include "rtprof/profiles.hpp"
#include "rtprof/round_tree.hpp"
#include "rtprof/version.hpp"

namespace rtprof::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct RunContext {
    std::string command;
    std::vector<std::string> argv;
    Budgets budgets;
    std::string manifest_override;
    std::string primary_out;
    ordered_json config = ordered_json::object();
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point start;
    std::uint64_t seed = 12345;
};

std::string manifest_path(const RunContext& ctx) {
    if (!ctx.manifest_override.empty()) return ctx.manifest_override;
    if (!ctx.primary_out.empty()) return ctx.primary_out + ".manifest.json";
    return "rtprof-" + ctx.command + ".manifest.json";
}

void write_manifest(const RunContext& ctx, const std::string* error) {
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["command"] = ctx.command;
    j["argv"] = ctx.argv;
    j["config"] = ctx.config;
    j["budgets"] = {{"vertex", ctx.budgets.vertex}, {"work", ctx.budgets.work}};
    j["seed"] = ctx.seed;
    j["outputs"] = ctx.outputs;
    j["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      ctx.start)
            .count();
    if (error) j["error"] = *error;
    write_text_file(manifest_path(ctx), j.dump(2) + "\n");
}

std::pair<int, int> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int k = std::stoi(text);
        return {k, k};
    }
    const int a = std::stoi(text.substr(0, dots));
    const int b = std::stoi(text.substr(dots + 2));
    if (b < a) throw validation_error("range must be a..b with a <= b");
    return {a, b};
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    Rational r;
    if (slash == std::string::npos) {
        r.num = std::stoll(text);
        r.den = 1;
    } else {
        r.num = std::stoll(text.substr(0, slash));
        r.den = std::stoll(text.substr(slash + 1));
    }
    if (r.num <= 0 || r.den <= 0 || r.num >= r.den)
        throw validation_error("epsilon must be a fraction in (0, 1)");
    return r;
}

// Minimal CSV reader for `fit`: header row, comma separated, no quoting.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw validation_error("CSV column not found: " + name);
    }
};

CsvTable read_csv(const std::string& path) {
    CsvTable table;
    std::istringstream in(read_text_file(path));
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            const auto comma = line.find(',', pos);
            if (comma == std::string::npos) {
                cells.push_back(line.substr(pos));
                break;
            }
            cells.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    if (table.header.empty()) throw validation_error("empty CSV: " + path);
    return table;
}

void print_poincare(const char* name, const PoincareResult& result) {
    std::printf("%s = %.6f (method=%s, certified=%s, iterations=%llu)\n", name,
                result.value, poincare_method_name(result.method),
                certainty_name(result.certified),
                static_cast<unsigned long long>(result.iterations));
}

void emit_poincare(RunContext& ctx, const PoincareResult& result,
                   const MinimizeOptions* options, const std::string& out,
                   const std::string& witness) {
    if (!out.empty()) {
        write_text_file(out, poincare_to_json(result, options));
        ctx.outputs.push_back(out);
    }
    if (!witness.empty()) {
        write_witness_csv(result, witness);
        ctx.outputs.push_back(witness);
    }
}

int dispatch(const std::vector<std::string>& args, RunContext& ctx) {
    CLI::App app{"round-tree Poincare profile toolkit"};
    app.require_subcommand(1);

    ctx.budgets = Budgets::from_env();
    ctx.start = std::chrono::steady_clock::now();

    std::string manifest_flag;
    app.add_option("--manifest", manifest_flag,
                   "manifest path (default: <out>.manifest.json)");
    std::uint64_t vertex_budget = ctx.budgets.vertex;
    std::uint64_t work_budget = ctx.budgets.work;
    app.add_option("--vertex-budget", vertex_budget, "vertex budget override");
    app.add_option("--work-budget", work_budget, "pair work budget override");

    // ---- rt-build / half-plane / yk-build / cone-build ------------------
    struct BuildOpts {
        int H = 2, V = 2, depth = 0, k = 1;
        double p = 1.0;
        std::string out, dot;
    };
    auto rtb = std::make_shared<BuildOpts>();
    auto* sc_rtb = app.add_subcommand("rt-build", "build a regular round tree");
    sc_rtb->add_option("--H", rtb->H)->required();
    sc_rtb->add_option("--V", rtb->V)->required();
    sc_rtb->add_option("--depth", rtb->depth)->required();
    sc_rtb->add_option("--out", rtb->out)->required();
    sc_rtb->add_option("--dot", rtb->dot);

    auto hp_ = std::make_shared<BuildOpts>();
    auto* sc_half = app.add_subcommand("half-plane",
                                       "build the hyperbolic half-plane dual");
    sc_half->add_option("--H", hp_->H)->required();
    sc_half->add_option("--depth", hp_->depth)->required();
    sc_half->add_option("--out", hp_->out)->required();
    sc_half->add_option("--dot", hp_->dot);

    auto ykb = std::make_shared<BuildOpts>();
    auto* sc_yk = app.add_subcommand("yk-build", "build the Y_k witness graph");
    sc_yk->add_option("--H", ykb->H)->required();
    sc_yk->add_option("--V", ykb->V)->required();
    sc_yk->add_option("--p", ykb->p)->required();
    sc_yk->add_option("--k", ykb->k)->required();
    sc_yk->add_option("--out", ykb->out)->required();
    sc_yk->add_option("--dot", ykb->dot);

    auto cone = std::make_shared<BuildOpts>();
    auto* sc_cone = app.add_subcommand("cone-build",
                                       "build the cone graph over Z^{H,V} x [0,1]");
    sc_cone->add_option("--H", cone->H)->required();
    sc_cone->add_option("--V", cone->V)->required();
    sc_cone->add_option("--depth", cone->depth)->required();
    sc_cone->add_option("--out", cone->out)->required();
    sc_cone->add_option("--dot", cone->dot);

    // ---- rt-validate -----------------------------------------------------
    struct ValidateOpts {
        std::string in, out;
        int H = 0, V = 0;
    };
    auto val = std::make_shared<ValidateOpts>();
    auto* sc_val = app.add_subcommand("rt-validate", "check round-tree axioms");
    sc_val->add_option("--in", val->in)->required();
    sc_val->add_option("--out", val->out);
    sc_val->add_option("--H", val->H, "horizontal branching override");
    sc_val->add_option("--V", val->V, "vertical branching override");

    // ---- h2 / h1 / hp ----------------------------------------------------
    struct PoincareOpts {
        std::string in, out, witness;
        double p = 1.5;
        int restarts = 16;
    };
    auto p2 = std::make_shared<PoincareOpts>();
    auto* sc_h2 = app.add_subcommand("h2", "spectral h^2");
    sc_h2->add_option("--in", p2->in)->required();
    sc_h2->add_option("--out", p2->out);
    sc_h2->add_option("--witness", p2->witness);

    auto p1 = std::make_shared<PoincareOpts>();
    auto* sc_h1 = app.add_subcommand("h1", "two-valued h^1 upper bound");
    sc_h1->add_option("--in", p1->in)->required();
    sc_h1->add_option("--out", p1->out);
    sc_h1->add_option("--witness", p1->witness);

    auto pg = std::make_shared<PoincareOpts>();
    auto* sc_hp = app.add_subcommand("hp", "numeric h^p minimization");
    sc_hp->add_option("--in", pg->in)->required();
    sc_hp->add_option("--p", pg->p)->required();
    sc_hp->add_option("--restarts", pg->restarts);
    sc_hp->add_option("--seed", ctx.seed);
    sc_hp->add_option("--out", pg->out);
    sc_hp->add_option("--witness", pg->witness);

    // ---- congestion --------------------------------------------------------
    struct CongestionOpts {
        int H = 2, V = 2, k = 1, threads = 1;
        double p = 1.0;
        std::string in, paths = "bfs", out, loads;
        std::uint64_t sample = 0;
    };
    auto cg = std::make_shared<CongestionOpts>();
    auto* sc_cg = app.add_subcommand(
        "congestion", "canonical-path loads and the lemma lower bound");
    sc_cg->add_option("--H", cg->H);
    sc_cg->add_option("--V", cg->V);
    sc_cg->add_option("--p", cg->p)->required();
    sc_cg->add_option("--k", cg->k);
    sc_cg->add_option("--in", cg->in, "arbitrary graph (plumbing mode)");
    sc_cg->add_option("--paths", cg->paths, "path system for --in (bfs)");
    sc_cg->add_option("--out", cg->out, "certificate JSON");
    sc_cg->add_option("--loads", cg->loads, "per-edge loads CSV");
    sc_cg->add_option("--threads", cg->threads);
    sc_cg->add_option("--sample", cg->sample,
                      "sampled pairs (estimate, not certified)");
    sc_cg->add_option("--seed", ctx.seed);

    // ---- sweep / fit -------------------------------------------------------
    struct SweepOpts {
        int H = 2, V = 2, threads = 1;
        double p = 1.0;
        std::string k_range = "1..3", out;
        bool upper = false;
        int restarts = 16;
    };
    auto sw = std::make_shared<SweepOpts>();
    auto* sc_sw = app.add_subcommand("sweep", "Y_k profile sweep");
    sc_sw->add_option("--H", sw->H)->required();
    sc_sw->add_option("--V", sw->V)->required();
    sc_sw->add_option("--p", sw->p)->required();
    sc_sw->add_option("--k", sw->k_range)->required();
    sc_sw->add_option("--out", sw->out)->required();
    sc_sw->add_flag("--upper", sw->upper, "also compute h^p upper estimates");
    sc_sw->add_option("--restarts", sw->restarts);
    sc_sw->add_option("--threads", sw->threads);
    sc_sw->add_option("--seed", ctx.seed);

    struct FitOpts {
        std::string in, out, xcol = "r", ycol = "lower_bound", model = "power";
    };
    auto ft = std::make_shared<FitOpts>();
    auto* sc_ft = app.add_subcommand("fit", "log-log exponent fit of a CSV");
    sc_ft->add_option("--in", ft->in)->required();
    sc_ft->add_option("--out", ft->out);
    sc_ft->add_option("--xcol", ft->xcol);
    sc_ft->add_option("--ycol", ft->ycol);
    sc_ft->add_option("--model", ft->model)
        ->check(CLI::IsMember({"power", "log"}));

    // ---- cut / sep-scan ----------------------------------------------------
    struct CutOpts {
        std::string in, out, epsilon = "2/3";
        std::size_t exact_cap = kCutExactCap;
    };
    auto ct = std::make_shared<CutOpts>();
    auto* sc_ct = app.add_subcommand("cut", "epsilon-cut of a graph");
    sc_ct->add_option("--in", ct->in)->required();
    sc_ct->add_option("--epsilon", ct->epsilon);
    sc_ct->add_option("--exact-cap", ct->exact_cap);
    sc_ct->add_option("--out", ct->out);

    struct SepOpts {
        int H = 2, V = 1;
        std::string depths = "6..10", out, epsilon = "2/3";
    };
    auto sp = std::make_shared<SepOpts>();
    auto* sc_sp = app.add_subcommand(
        "sep-scan", "cut sizes across round-tree balls of growing depth");
    sc_sp->add_option("--H", sp->H)->required();
    sc_sp->add_option("--V", sp->V);
    sc_sp->add_option("--depths", sp->depths)->required();
    sc_sp->add_option("--epsilon", sp->epsilon);
    sc_sp->add_option("--out", sp->out)->required();

    // ---- cantor-check ------------------------------------------------------
    struct CantorOpts {
        int H = 2, V = 2, depth = 4;
        std::string out;
    };
    auto ca = std::make_shared<CantorOpts>();
    auto* sc_ca = app.add_subcommand("cantor-check",
                                     "Ahlfors regularity of Z^{H,V}");
    sc_ca->add_option("--H", ca->H)->required();
    sc_ca->add_option("--V", ca->V)->required();
    sc_ca->add_option("--depth", ca->depth)->required();
    sc_ca->add_option("--out", ca->out);

    // global options (--manifest, budgets) may appear after the subcommand
    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough(true);

    try {
        // CLI11's vector overload consumes the arguments in reverse order.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    ctx.budgets.vertex = vertex_budget;
    ctx.budgets.work = work_budget;
    ctx.manifest_override = manifest_flag;

    auto finish = [&](int code) {
        write_manifest(ctx, nullptr);
        return code;
    };

    if (sc_rtb->parsed() || sc_half->parsed()) {
        auto& o = sc_rtb->parsed() ? *rtb : *hp_;
        ctx.command = sc_rtb->parsed() ? "rt-build" : "half-plane";
        if (!sc_rtb->parsed()) o.V = 1;
        ctx.primary_out = o.out;
        ctx.config = {{"H", o.H}, {"V", o.V}, {"depth", o.depth}};
        RoundTreeGraph rt = build_round_tree(o.H, o.V, o.depth, ctx.budgets);
        GraphRecord record = round_tree_to_record(rt);
        write_graph_json(record, o.out);
        ctx.outputs.push_back(o.out);
        if (!o.dot.empty()) {
            write_text_file(o.dot, graph_to_dot(record));
            ctx.outputs.push_back(o.dot);
        }
        std::printf("vertices=%zu edges=%zu\n", rt.graph.num_vertices(),
                    rt.graph.num_edges());
        return finish(0);
    }
    if (sc_yk->parsed()) {
        ctx.command = "yk-build";
        ctx.primary_out = ykb->out;
        ctx.config = {{"H", ykb->H}, {"V", ykb->V}, {"p", ykb->p}, {"k", ykb->k}};
        YkGraph yk = build_yk(ykb->H, ykb->V, ykb->p, ykb->k, ctx.budgets);
        GraphRecord record = yk_to_record(yk);
        write_graph_json(record, ykb->out);
        ctx.outputs.push_back(ykb->out);
        if (!ykb->dot.empty()) {
            write_text_file(ykb->dot, graph_to_dot(record));
            ctx.outputs.push_back(ykb->dot);
        }
        std::printf("vertices=%zu edges=%zu T=%llu t=%d\n",
                    yk.graph.num_vertices(), yk.graph.num_edges(),
                    static_cast<unsigned long long>(yk.T), yk.t);
        return finish(0);
    }
    if (sc_cone->parsed()) {
        ctx.command = "cone-build";
        ctx.primary_out = cone->out;
        ctx.config = {{"H", cone->H}, {"V", cone->V}, {"depth", cone->depth}};
        CantorSpace space = make_cantor_space(cone->H, cone->V,
                                              std::max(cone->depth, 1), ctx.budgets);
        GraphRecord record = cone_to_record(space, cone->depth, ctx.budgets);
        write_graph_json(record, cone->out);
        ctx.outputs.push_back(cone->out);
        if (!cone->dot.empty()) {
            write_text_file(cone->dot, graph_to_dot(record));
            ctx.outputs.push_back(cone->dot);
        }
        std::printf("vertices=%zu edges=%zu\n", record.graph.num_vertices(),
                    record.graph.num_edges());
        return finish(0);
    }
    if (sc_val->parsed()) {
        ctx.command = "rt-validate";
        ctx.primary_out = val->out;
        ctx.config = {{"in", val->in}};
        GraphRecord record = read_graph_json(val->in);
        RoundTreeGraph rt = round_tree_from_record(
            record, val->H > 0 ? std::optional<int>(val->H) : std::nullopt,
            val->V > 0 ? std::optional<int>(val->V) : std::nullopt);
        RoundTreeValidation report = validate_round_tree(rt);
        ordered_json j;
        j["all_pass"] = report.all_pass();
        auto axioms = ordered_json::array();
        for (const auto& a : report.axioms) {
            std::printf("%-45s %s%s%s\n", a.name.c_str(),
                        a.pass ? "pass" : "FAIL", a.pass ? "" : ": ",
                        a.witness.c_str());
            axioms.push_back({{"name", a.name},
                              {"pass", a.pass},
                              {"witness", a.witness}});
        }
        j["axioms"] = std::move(axioms);
        if (!val->out.empty()) {
            write_text_file(val->out, j.dump(2) + "\n");
            ctx.outputs.push_back(val->out);
        }
        return finish(0);
    }
    if (sc_h2->parsed() || sc_h1->parsed()) {
        const bool is_h2 = sc_h2->parsed();
        auto& o = is_h2 ? *p2 : *p1;
        ctx.command = is_h2 ? "h2" : "h1";
        ctx.primary_out = o.out;
        ctx.config = {{"in", o.in}};
        Graph g = read_graph_json(o.in).graph;
        PoincareResult result = is_h2 ? h2_exact(g) : h1_sweep(g);
        print_poincare(is_h2 ? "h2" : "h1", result);
        emit_poincare(ctx, result, nullptr, o.out, o.witness);
        return finish(0);
    }
    if (sc_hp->parsed()) {
        ctx.command = "hp";
        ctx.primary_out = pg->out;
        ctx.config = {{"in", pg->in}, {"p", pg->p}, {"restarts", pg->restarts}};
        Graph g = read_graph_json(pg->in).graph;
        MinimizeOptions options;
        options.restarts = pg->restarts;
        options.seed = ctx.seed;
        PoincareResult result = hp_minimize(g, pg->p, options);
        print_poincare("hp", result);
        emit_poincare(ctx, result, &options, pg->out, pg->witness);
        return finish(0);
    }
    if (sc_cg->parsed()) {
        ctx.command = "congestion";
        ctx.primary_out = cg->out;
        CongestionOptions options;
        options.work_budget = ctx.budgets.work;
        options.threads = cg->threads;
        CongestionCertificate cert;
        if (!cg->in.empty()) {
            ctx.config = {{"in", cg->in}, {"paths", cg->paths}, {"p", cg->p}};
            if (cg->paths != "bfs")
                throw validation_error("unknown path system: " + cg->paths);
            Graph g = read_graph_json(cg->in).graph;
            PathSystem paths = bfs_path_system(g);
            EdgeLoads loads = compute_congestion(g, paths, options);
            cert = lemma_bound(g, paths, loads, cg->p);
            if (!cg->loads.empty()) {
                write_loads_csv(g, loads, cg->loads);
                ctx.outputs.push_back(cg->loads);
            }
        } else {
            ctx.config = {{"H", cg->H},
                          {"V", cg->V},
                          {"p", cg->p},
                          {"k", cg->k},
                          {"sample", cg->sample}};
            YkGraph yk = build_yk(cg->H, cg->V, cg->p, cg->k, ctx.budgets);
            Coloring coloring = build_coloring(yk);
            if (cg->sample > 0) {
                SampledCongestion sampled =
                    estimate_congestion(yk, coloring, cg->sample, ctx.seed);
                cert = lemma_bound_sampled(yk, coloring, sampled, cg->p);
            } else {
                EdgeLoads loads = compute_congestion(yk, coloring, options);
                cert = lemma_bound(yk, coloring, loads, cg->p, options);
                if (!cg->loads.empty()) {
                    write_loads_csv(yk.graph, loads, cg->loads);
                    ctx.outputs.push_back(cg->loads);
                }
            }
        }
        std::printf("n=%llu bound=%.9g max_edge_load=%llu certified=%s\n",
                    static_cast<unsigned long long>(cert.n), cert.bound,
                    static_cast<unsigned long long>(cert.max_edge_load),
                    cert.certified ? "true" : "false");
        if (!cg->out.empty()) {
            write_text_file(cg->out, certificate_to_json(cert));
            ctx.outputs.push_back(cg->out);
        }
        return finish(0);
    }
    if (sc_sw->parsed()) {
        ctx.command = "sweep";
        ctx.primary_out = sw->out;
        const auto [k_min, k_max] = parse_range(sw->k_range);
        ctx.config = {{"H", sw->H},     {"V", sw->V},         {"p", sw->p},
                      {"k_min", k_min}, {"k_max", k_max},     {"upper", sw->upper},
                      {"restarts", sw->restarts}, {"threads", sw->threads}};
        SweepOptions options;
        options.upper_estimates = sw->upper;
        options.minimize.restarts = sw->restarts;
        options.minimize.seed = ctx.seed;
        options.congestion.work_budget = ctx.budgets.work;
        options.congestion.threads = sw->threads;
        options.budgets = ctx.budgets;
        auto points = sweep_yk(sw->H, sw->V, sw->p, k_min, k_max, options);
        write_text_file(sw->out, profile_csv(points));
        ctx.outputs.push_back(sw->out);
        for (const auto& pt : points)
            std::printf("%s r=%llu lower=%.9g%s\n", pt.graph_id.c_str(),
                        static_cast<unsigned long long>(pt.r), pt.lower_bound,
                        pt.upper_estimate
                            ? (" upper=" + std::to_string(*pt.upper_estimate))
                                  .c_str()
                            : "");
        const double Q = q_of(sw->H, sw->V);
        if (sw->p < Q) {
            // Empirical constant of the lower-bound proposition, reported
            // per sweep; no value is claimed for it.
            const double target = 1.0 - 1.0 / sw->p + epsilon_of(sw->p, Q);
            double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
            for (const auto& pt : points) {
                const double c =
                    pt.lower_bound / std::pow(static_cast<double>(pt.r), target);
                cmin = std::min(cmin, c);
                cmax = std::max(cmax, c);
            }
            std::printf("empirical c for r^(%.6g): min=%.6g max=%.6g\n", target,
                        cmin, cmax);
        }
        return finish(0);
    }
    if (sc_ft->parsed()) {
        ctx.command = "fit";
        ctx.primary_out = ft->out;
        ctx.config = {{"in", ft->in},
                      {"xcol", ft->xcol},
                      {"ycol", ft->ycol},
                      {"model", ft->model}};
        CsvTable table = read_csv(ft->in);
        const std::size_t xi = table.column(ft->xcol);
        const std::size_t yi = table.column(ft->ycol);
        std::vector<double> xs, ys;
        for (const auto& row : table.rows) {
            if (xi >= row.size() || yi >= row.size()) continue;
            if (row[xi].empty() || row[yi].empty()) continue;
            xs.push_back(std::strtod(row[xi].c_str(), nullptr));
            ys.push_back(std::strtod(row[yi].c_str(), nullptr));
        }
        ExponentFit fit = fit_xy(xs, ys,
                                 ft->model == "power" ? FitModel::power
                                                      : FitModel::logarithmic);
        if (xs.size() >= 3) {
            std::span<const double> sx(xs), sy(ys);
            fit.slope_last3 = fit_xy(sx.subspan(xs.size() - 3),
                                     sy.subspan(ys.size() - 3),
                                     ft->model == "power"
                                         ? FitModel::power
                                         : FitModel::logarithmic)
                                  .slope;
        }
        fit.size_range = {static_cast<std::uint64_t>(xs.front()),
                          static_cast<std::uint64_t>(xs.back())};
        std::printf("slope=%.9g intercept=%.9g r_squared=%.9g slope_last3=%.9g\n",
                    fit.slope, fit.intercept, fit.r_squared, fit.slope_last3);
        if (!ft->out.empty()) {
            write_text_file(ft->out, fit_to_json(fit));
            ctx.outputs.push_back(ft->out);
        }
        return finish(0);
    }
    if (sc_ct->parsed()) {
        ctx.command = "cut";
        ctx.primary_out = ct->out;
        ctx.config = {{"in", ct->in},
                      {"epsilon", ct->epsilon},
                      {"exact_cap", ct->exact_cap}};
        Graph g = read_graph_json(ct->in).graph;
        const Rational eps = parse_rational(ct->epsilon);
        CutResult cut = g.num_vertices() <= ct->exact_cap
                            ? cut_exact(g, eps, ct->exact_cap)
                            : cut_heuristic(g, eps);
        std::printf("cut_size=%zu method=%s max_component_fraction=%.6f\n",
                    cut.size, cut.exact_method ? "exact" : "heuristic",
                    cut.max_component_fraction);
        if (!ct->out.empty()) {
            write_text_file(ct->out, cut_to_json(cut));
            ctx.outputs.push_back(ct->out);
        }
        return finish(0);
    }
    if (sc_sp->parsed()) {
        ctx.command = "sep-scan";
        ctx.primary_out = sp->out;
        const auto [d_min, d_max] = parse_range(sp->depths);
        ctx.config = {{"H", sp->H},
                      {"V", sp->V},
                      {"d_min", d_min},
                      {"d_max", d_max},
                      {"epsilon", sp->epsilon}};
        const Rational eps = parse_rational(sp->epsilon);
        std::vector<SepPoint> points;
        for (int d = d_min; d <= d_max; ++d) {
            RoundTreeGraph rt = build_round_tree(sp->H, sp->V, d, ctx.budgets);
            const std::string id = "rt-H" + std::to_string(sp->H) + "-V" +
                                   std::to_string(sp->V) + "-d" +
                                   std::to_string(d);
            points.push_back(sep_point(rt.graph, id, eps));
            std::printf("%s r=%llu cut=%zu\n", id.c_str(),
                        static_cast<unsigned long long>(points.back().r),
                        points.back().cut_size);
        }
        write_text_file(sp->out, sep_csv(points));
        ctx.outputs.push_back(sp->out);
        return finish(0);
    }
    if (sc_ca->parsed()) {
        ctx.command = "cantor-check";
        ctx.primary_out = ca->out;
        ctx.config = {{"H", ca->H}, {"V", ca->V}, {"depth", ca->depth}};
        CantorSpace space = make_cantor_space(ca->H, ca->V, ca->depth, ctx.budgets);
        bool balls_ok = true;
        for (std::uint64_t c = 0; c < space.point_count() && balls_ok; ++c) {
            const Word center = space.point(c);
            for (int k = 0; k <= space.depth; ++k) {
                if (ball_measure(space, center, k) !=
                    ball_measure_enumerated(space, center, k)) {
                    balls_ok = false;
                    break;
                }
            }
        }
        AhlforsReport report = ahlfors_report(space);
        std::printf("q_z=%.9g C=%.9g balls=%s\n", report.q_z, report.c,
                    balls_ok ? "exact" : "MISMATCH");
        if (!ca->out.empty()) {
            ordered_json j = ordered_json::parse(ahlfors_to_json(space, report));
            j["balls_exact"] = balls_ok;
            write_text_file(ca->out, j.dump(2) + "\n");
            ctx.outputs.push_back(ca->out);
        }
        return finish(balls_ok ? 0 : 2);
    }
    return 2;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    std::setlocale(LC_ALL, "C");
    RunContext ctx;
    ctx.argv = args;
    if (!args.empty()) ctx.command = args.front();
    try {
        return dispatch(args, ctx);
    } catch (const budget_error& e) {
        std::fprintf(stderr, "budget error: %s\n", e.what());
        try {
            const std::string message = e.what();
            write_manifest(ctx, &message);
        } catch (...) {
        }
        return 3;
    } catch (const validation_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace rtprof::cli
