#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include <json.hpp>

#include "rtprof/cli.hpp"
#include "rtprof/graph_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "rtprof-cli-tests";
        fs::remove_all(path);
        fs::create_directories(path);
    }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

int run(std::initializer_list<std::string> args) {
    return rtprof::cli::run(std::vector<std::string>(args));
}

}  // namespace

TEST_CASE("rt-build writes the documented schema and a manifest") {
    TempDir tmp;
    const std::string out = tmp.file("g.json");
    REQUIRE(run({"rt-build", "--H", "2", "--V", "2", "--depth", "3", "--out",
                 out}) == 0);
    rtprof::GraphRecord record = rtprof::read_graph_json(out);
    CHECK(record.graph.num_vertices() == 85);
    CHECK(record.labels.at(0) == "h=;v=");
    CHECK(record.edge_kinds.size() == record.graph.num_edges());

    json manifest = json::parse(rtprof::read_text_file(out + ".manifest.json"));
    CHECK(manifest.at("command") == "rt-build");
    CHECK(manifest.at("tool") == "rtprof");
    CHECK(manifest.at("outputs").size() == 1);

    SUBCASE("round trip through rt-validate") {
        REQUIRE(run({"rt-validate", "--in", out, "--out",
                     tmp.file("report.json")}) == 0);
        json report = json::parse(rtprof::read_text_file(tmp.file("report.json")));
        CHECK(report.at("all_pass") == true);
    }

    SUBCASE("byte-identical on rerun") {
        const std::string bytes = rtprof::read_text_file(out);
        const std::string out2 = tmp.file("g2.json");
        REQUIRE(run({"rt-build", "--H", "2", "--V", "2", "--depth", "3",
                     "--out", out2}) == 0);
        CHECK(rtprof::read_text_file(out2) == bytes);
    }
}

TEST_CASE("rt-validate flags a damaged graph without failing the run") {
    TempDir tmp;
    const std::string out = tmp.file("g.json");
    REQUIRE(run({"rt-build", "--H", "2", "--V", "2", "--depth", "2", "--out",
                 out}) == 0);
    json doc = json::parse(rtprof::read_text_file(out));
    // drop the last edge (and its kind annotation)
    doc["edges"].erase(doc["edges"].size() - 1);
    doc["edge_kinds"].erase(doc["edge_kinds"].size() - 1);
    const std::string damaged = tmp.file("damaged.json");
    rtprof::write_text_file(damaged, doc.dump(2) + "\n");

    const std::string report_path = tmp.file("report.json");
    REQUIRE(run({"rt-validate", "--in", damaged, "--out", report_path}) == 0);
    json report = json::parse(rtprof::read_text_file(report_path));
    CHECK(report.at("all_pass") == false);
}

TEST_CASE("poincare subcommands emit values and witnesses") {
    TempDir tmp;
    const std::string graph = tmp.file("p2.json");
    rtprof::write_text_file(graph, "{\"n\":2,\"edges\":[[0,1]]}\n");

    const std::string out = tmp.file("h2.json");
    REQUIRE(run({"h2", "--in", graph, "--out", out, "--witness",
                 tmp.file("w.csv")}) == 0);
    json result = json::parse(rtprof::read_text_file(out));
    CHECK(result.at("value").get<double>() ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(result.at("method") == "spectral");
    CHECK(rtprof::read_text_file(tmp.file("w.csv")).rfind("vertex,value\n", 0) == 0);

    REQUIRE(run({"h1", "--in", graph, "--out", tmp.file("h1.json")}) == 0);
    CHECK(json::parse(rtprof::read_text_file(tmp.file("h1.json")))
              .at("value")
              .get<double>() == doctest::Approx(1.0));

    REQUIRE(run({"hp", "--in", graph, "--p", "1.5", "--restarts", "4", "--out",
                 tmp.file("hp.json")}) == 0);
    json hp = json::parse(rtprof::read_text_file(tmp.file("hp.json")));
    CHECK(hp.at("value").get<double>() ==
          doctest::Approx(std::pow(2.0, 1.0 / 3.0)).epsilon(1e-9));
    CHECK(hp.at("restarts") == 4);
}

TEST_CASE("sweep then fit reproduces the pipeline end to end") {
    TempDir tmp;
    const std::string csv = tmp.file("sweep.csv");
    REQUIRE(run({"sweep", "--H", "2", "--V", "2", "--p", "1", "--k", "1..3",
                 "--out", csv}) == 0);
    const std::string bytes = rtprof::read_text_file(csv);
    CHECK(bytes.rfind("graph_id,r,p,lower_bound,upper_estimate,slope_running",
                      0) == 0);

    const std::string fit_out = tmp.file("fit.json");
    REQUIRE(run({"fit", "--in", csv, "--out", fit_out}) == 0);
    json fit = json::parse(rtprof::read_text_file(fit_out));
    CHECK(fit.at("slope").get<double>() > 0.0);
    CHECK(fit.at("r_squared").get<double>() > 0.5);
    CHECK(fit.at("sample_count") == 3);

    SUBCASE("sweep output is byte-identical across reruns") {
        const std::string csv2 = tmp.file("sweep2.csv");
        REQUIRE(run({"sweep", "--H", "2", "--V", "2", "--p", "1", "--k",
                     "1..3", "--out", csv2}) == 0);
        CHECK(rtprof::read_text_file(csv2) == bytes);
    }
}

TEST_CASE("cut and congestion subcommands") {
    TempDir tmp;
    const std::string graph = tmp.file("p5.json");
    rtprof::write_text_file(graph,
                            "{\"n\":5,\"edges\":[[0,1],[1,2],[2,3],[3,4]]}\n");

    const std::string cut_out = tmp.file("cut.json");
    REQUIRE(run({"cut", "--in", graph, "--out", cut_out}) == 0);
    json cut = json::parse(rtprof::read_text_file(cut_out));
    CHECK(cut.at("size") == 1);
    CHECK(cut.at("method") == "exact");
    CHECK(cut.at("optimal") == true);

    const std::string cert_out = tmp.file("cert.json");
    REQUIRE(run({"congestion", "--in", graph, "--p", "1", "--out", cert_out,
                 "--loads", tmp.file("loads.csv")}) == 0);
    json cert = json::parse(rtprof::read_text_file(cert_out));
    CHECK(cert.at("bound").get<double>() == doctest::Approx(5.0 / 12.0));
    CHECK(cert.at("certified") == true);
    CHECK(rtprof::read_text_file(tmp.file("loads.csv")).rfind("u,v,m_e\n", 0) ==
          0);

    REQUIRE(run({"congestion", "--H", "2", "--V", "2", "--p", "1.5", "--k",
                 "2", "--out", tmp.file("yk-cert.json")}) == 0);
    json yk_cert = json::parse(rtprof::read_text_file(tmp.file("yk-cert.json")));
    CHECK(yk_cert.at("p").get<double>() == 1.5);
    CHECK(yk_cert.at("bound").get<double>() > 0.0);
}

TEST_CASE("sep-scan and cantor-check and cone-build") {
    TempDir tmp;
    const std::string csv = tmp.file("sep.csv");
    REQUIRE(run({"sep-scan", "--H", "2", "--depths", "3..5", "--out", csv}) == 0);
    const std::string bytes = rtprof::read_text_file(csv);
    CHECK(bytes.rfind("graph_id,r,cut_size,method,epsilon", 0) == 0);

    REQUIRE(run({"fit", "--in", csv, "--ycol", "cut_size", "--model", "log"}) ==
            0);

    const std::string report = tmp.file("cantor.json");
    REQUIRE(run({"cantor-check", "--H", "2", "--V", "2", "--depth", "4",
                 "--out", report}) == 0);
    json doc = json::parse(rtprof::read_text_file(report));
    CHECK(doc.at("balls_exact") == true);
    CHECK(doc.at("q_z").get<double>() == doctest::Approx(1.0));

    REQUIRE(run({"cone-build", "--H", "2", "--V", "2", "--depth", "2", "--out",
                 tmp.file("cone.json")}) == 0);
    CHECK(rtprof::read_graph_json(tmp.file("cone.json")).graph.num_vertices() ==
          21);
}

TEST_CASE("exit codes: usage 2, budget 3 with manifest") {
    TempDir tmp;
    CHECK(run({"rt-build", "--bogus", "1"}) == 2);
    CHECK(run({"no-such-command"}) == 2);
    CHECK(run({"h2", "--in", tmp.file("missing.json")}) == 2);

    const std::string out = tmp.file("huge.json");
    CHECK(run({"rt-build", "--H", "2", "--V", "2", "--depth", "30", "--out",
               out, "--manifest", tmp.file("huge.manifest.json")}) == 3);
    json manifest =
        json::parse(rtprof::read_text_file(tmp.file("huge.manifest.json")));
    CHECK(manifest.at("error").get<std::string>().find("budget") !=
          std::string::npos);

    // budget overrides propagate
    CHECK(run({"rt-build", "--H", "2", "--V", "2", "--depth", "6",
               "--vertex-budget", "100", "--out", tmp.file("small.json"),
               "--manifest", tmp.file("small.manifest.json")}) == 3);
}
