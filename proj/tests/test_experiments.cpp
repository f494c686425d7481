#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "seqdef/config.hpp"
#include "seqdef/errors.hpp"
#include "seqdef/experiments.hpp"

using namespace seqdef;

namespace {

const std::filesystem::path data_dir = SEQDEF_TEST_DATA;

std::string run(const ExperimentConfig& config)
{
    std::ostringstream out;
    run_command(config, out);
    return out.str();
}

ExperimentConfig command(const std::string& name)
{
    ExperimentConfig c;
    c.command = name;
    return c;
}

// Data rows split into fields, header lines and the column row dropped.
std::vector<std::vector<std::string>> body(const std::string& csv)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(csv);
    std::string line;
    bool columns = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (columns) {
            columns = false;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        rows.push_back(fields);
    }
    return rows;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_SUITE("experiments")
{
    TEST_CASE("config files")
    {
        const auto path = write_temp("seqdef_test.ini",
                                     "# comment\n"
                                     "[run]\nseed = 42\n"
                                     "; another comment\n"
                                     "[detector]\npd = 0.7\npf = 0.02\n"
                                     "[sweep]\npd = 0.1, 0.2,0.3\nmc = 1,5\n"
                                     "[model]\nexact_exponential = true\n");
        ExperimentConfig c;
        load_config(path, c);
        CHECK(c.seed == 42);
        CHECK(c.p_d == 0.7);
        CHECK(*c.p_f == 0.02);
        CHECK(c.p_d_grid == std::vector<double>{0.1, 0.2, 0.3});
        CHECK(c.mc_grid == std::vector<std::uint64_t>{1, 5});
        CHECK(c.exact_exponential);

        // flags applied afterwards win
        set_config_value(c, "pd", "0.8");
        set_config_value(c, "sweep.pf", "0.5");
        CHECK(c.p_d == 0.8);
        CHECK(c.p_f_grid == std::vector<double>{0.5});

        CHECK_THROWS_AS(set_config_value(c, "nonsense", "1"), ConfigError);
        CHECK_THROWS_AS(set_config_value(c, "pd", "abc"), ConfigError);
        CHECK_THROWS_AS(set_config_value(c, "seed", "-1"), ConfigError);
        CHECK_THROWS_AS(set_config_value(c, "sweep.pd", ""), ConfigError);

        const auto bad = write_temp("seqdef_bad.ini", "[detector]\nunknown = 1\n");
        CHECK_THROWS_AS(load_config(bad, c), ConfigError);
        const auto broken = write_temp("seqdef_broken.ini", "[detector\npd = 1\n");
        CHECK_THROWS_AS(load_config(broken, c), ConfigError);
        CHECK_THROWS_AS(load_config("/nonexistent/seqdef.ini", c), ConfigError);
    }

    TEST_CASE("headers carry the whole config")
    {
        auto c = command("operation-curves");
        c.seed = 77;
        const auto csv = run(c);
        CHECK(csv.rfind("# seqdef operation-curves\n", 0) == 0);
        CHECK(csv.find("# run.seed = 77\n") != std::string::npos);
        CHECK(csv.find("# detector.pf = 0.001\n") != std::string::npos);
        CHECK(csv.find("# sweep.mc = 1,2,5,10,20,50\n") != std::string::npos);
        CHECK_THROWS_AS(run(command("nope")), ConfigError);
    }

    TEST_CASE("qc sweep")
    {
        auto c = command("qc-sweep");
        c.mean_degree_grid = {1.5, 4.0};
        const auto rows = body(run(c));
        REQUIRE(rows.size() == 6);
        CHECK(rows[3][0] == "er");
        CHECK(std::stod(rows[3][4]) == doctest::Approx(0.75).epsilon(1e-12));
        for (const auto& r : rows) {
            REQUIRE(r.size() == 6);
            if (r[4] == "nan" || r[5] == "nan" || std::stod(r[4]) == 0.0) continue;
            CHECK(std::stod(r[5]) < std::stod(r[4]));
        }
    }

    TEST_CASE("m1 surfaces")
    {
        auto c = command("m1");
        c.p_d_grid = {0.5};
        c.p_f_grid = {0.01};
        const auto rows = body(run(c));
        double previous = INFINITY;
        int random_rows = 0;
        for (const auto& r : rows) {
            if (r[0] != "random") continue;
            ++random_rows;
            const double m1 = std::stod(r[6]);
            if (std::isnan(m1)) continue;
            CHECK(m1 < previous);
            previous = m1;
        }
        CHECK(random_rows == 10);
        // surface rows: larger ER mean degree means a larger qc and fewer reports
        std::vector<double> er;
        for (const auto& r : rows)
            if (r[0] == "surface" && r[1] == "er") er.push_back(std::stod(r[6]));
        REQUIRE(er.size() == 9);
        for (std::size_t i = 1; i < er.size(); ++i) CHECK(er[i] < er[i - 1]);
    }

    TEST_CASE("worst-case sweep")
    {
        const auto rows = body(run(command("worst-case")));
        CHECK(rows.size() == 2 * 3 * 10);
        double previous = -1.0;
        for (const auto& r : rows) {
            REQUIRE(r.size() == 15);
            for (int col = 5; col <= 8; ++col) {
                const double v = std::stod(r[col]);
                if (std::isnan(v)) continue;
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
            if (r[0] == "random" && r[1] == "0.9") {
                const double accept = std::stod(r[5]);
                if (!std::isnan(accept)) {
                    CHECK(accept >= previous - 1e-12);
                    previous = accept;
                }
            }
        }
        CHECK(previous > 0.99);
    }

    TEST_CASE("empirical networks")
    {
        const auto rows = body(run(command("empirical")));
        CHECK(rows.size() == 3 * 2 * 27);
        bool seen = false;
        for (const auto& r : rows)
            if (r[0] == "www" && r[4] == "random") {
                CHECK(r[6] == "322780");
                seen = true;
            }
        CHECK(seen);
    }

    TEST_CASE("operation curves")
    {
        const auto rows = body(run(command("operation-curves")));
        CHECK(rows.size() == 60);
        for (const auto& r : rows) {
            CHECK((r[3] == "true" || r[3] == "false"));
            CHECK((r[3] == "true") == (r[2] != "nan"));
        }
    }

    TEST_CASE("detect")
    {
        auto c = command("detect");
        c.trials = 500;
        c.q = 0.3;
        c.p_d = 0.5;
        c.p_f = 0.01;
        c.n = 100000;
        const auto first = run(c);
        CHECK(first == run(c));
        const auto rows = body(first);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0][0] == "attack");
        CHECK(rows[1][0] == "null");
        c.seed = 2;
        CHECK(first != run(c));
    }

    TEST_CASE("graph info and powergrid on a fixture")
    {
        auto c = command("graph-info");
        c.graph = (data_dir / "small.edges").string();
        auto rows = body(run(c));
        std::map<std::string, std::string> info;
        for (const auto& r : rows) info[r[0]] = r[1];
        CHECK(info["nodes"] == "6");
        CHECK(info["edges"] == "4");
        CHECK(info["self_loops_dropped"] == "1");
        CHECK(info["duplicate_edges_dropped"] == "1");

        auto generated = command("graph-info");
        generated.n = 2000;
        generated.k_hat = 4;
        const auto once = run(generated);
        CHECK(once == run(generated));

        auto p = command("powergrid");
        p.graph = c.graph;
        p.steps = 3;
        p.trials = 4;
        const auto csv = run(p);
        CHECK(csv.find("# nodes = 6\n") != std::string::npos);
        CHECK(csv.find("# edges = 4\n") != std::string::npos);
        rows = body(csv);
        int curve = 0, marker = 0;
        for (const auto& r : rows) {
            if (r[0] == "curve") ++curve;
            if (r[0] == "marker") ++marker;
        }
        CHECK(curve == 9);
        CHECK(marker == 15);
        CHECK(csv == run(p));

        p.graph = (data_dir / "missing.edges").string();
        CHECK_THROWS_AS(run(p), ConfigError);
        p.graph = (data_dir / "bad.edges").string();
        CHECK_THROWS_AS(run(p), ParseError);
    }
}
