#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "curvebill/cli.hpp"
#include "curvebill/measure.hpp"
#include "support.hpp"

using namespace curvebill;
using testing::kPi;

namespace {

namespace fs = std::filesystem;

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "curvebill_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::vector<std::string> data_lines(const std::string& csv)
{
    std::vector<std::string> rows;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    return rows;
}

std::vector<double> column(const std::string& csv, std::size_t col)
{
    std::vector<double> v;
    const auto rows = data_lines(csv);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::istringstream row(rows[i]);
        std::string cell;
        for (std::size_t c = 0; c <= col; ++c) std::getline(row, cell, ',');
        v.push_back(std::stod(cell));
    }
    return v;
}

}  // namespace

TEST_CASE("config text round-trips through --config")
{
    ExperimentConfig c;
    c.command = "measure-scan";
    c.table = "fourier_perturbed_circle(kappa=-1,r=1,amplitudes=[0 0.01])";
    c.seed = 18446744073709551615ULL;
    c.n = 12345;
    c.eps0 = 0.1 + 0.2;
    c.halvings = 5;
    c.period = 2;
    c.multistarts = 7;
    c.workers = 3;
    c.out = temp_file("x y.csv").string();
    c.format = "json";
    c.debug_flip_kg_sign = true;
    const fs::path file = temp_file("roundtrip.toml");
    write(file, to_config_text(c));
    const ParseOutcome p = parse_arguments({"measure-scan", "--config", file.string()});
    REQUIRE(p.config.has_value());
    CHECK(*p.config == c);
}

TEST_CASE("flags override the config file, which overrides the environment")
{
    const fs::path file = temp_file("override.toml");
    write(file, "table = \"ellipse_euclidean(a=1.2,b=1)\"\nn = 500\nseed = 5\n");
    ::setenv("CURVEBILL_SEED", "99", 1);
    auto p = parse_arguments({"measure-scan", "--config", file.string(), "--n", "700"});
    REQUIRE(p.config);
    CHECK(p.config->n == 700);
    CHECK(p.config->seed == 5);
    CHECK(p.config->table == "ellipse_euclidean(a=1.2,b=1)");
    p = parse_arguments({"find-orbits"});
    REQUIRE(p.config);
    CHECK(p.config->seed == 99);
    p = parse_arguments({"find-orbits", "--seed", "3"});
    CHECK(p.config->seed == 3);
    ::unsetenv("CURVEBILL_SEED");
    p = parse_arguments({"find-orbits"});
    CHECK(p.config->seed == 0);
}

TEST_CASE("configuration errors exit with code 2")
{
    const fs::path bad = temp_file("bad.toml");
    write(bad, "table = \"octant_s2\"\nunknown_key = 1\n");
    CHECK(run({"measure-scan", "--config", bad.string()}).code == kExitConfigError);
    CHECK(run({"measure-scan", "--config", temp_file("missing.toml").string()}).code == kExitConfigError);
    CHECK(run({}).code == kExitConfigError);
    CHECK(run({"frobnicate"}).code == kExitConfigError);
    CHECK(run({"measure-scan", "--n", "many"}).code == kExitConfigError);
    CHECK(run({"measure-scan", "--format", "xml"}).code == kExitConfigError);
    CHECK(run({"measure-scan", "--halvings", "2"}).code == kExitConfigError);
    CHECK(run({"measure-scan", "--eps0", "0"}).code == kExitConfigError);
    CHECK(run({"find-orbits", "--table", "geodesic_circle(kappa=1,r=2)"}).code == kExitConfigError);
    CHECK(run({"find-orbits", "--table", "blob"}).code == kExitConfigError);
    const Run help = run({"--help"});
    CHECK(help.code == kExitOk);
    CHECK(help.out.find("measure-scan") != std::string::npos);
}

TEST_CASE("runtime errors exit with code 3")
{
    const Run r = run({"measure-scan", "--n", "10", "--out", "/nonexistent-dir/x/y.csv"});
    CHECK(r.code == kExitRuntimeError);
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("find-orbits: octant and unit circle")
{
    Run r = run({"find-orbits", "--table", "octant_s2", "--multistarts", "5", "--seed", "1"});
    REQUIRE(r.code == kExitOk);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    REQUIRE(!doc["orbits"].empty());
    for (const auto& o : doc["orbits"]) CHECK(o["classification"] == "SphericalSpecialCandidate");
    CHECK(doc["summary"]["spherical_special_candidates"] == doc["orbits"].size());
    CHECK(doc["config"]["seed"] == 1);
    CHECK(doc["config"]["table"] == "octant_s2");
    CHECK(r.out.find("SphericalSpecialCandidate") != std::string::npos);

    r = run({"find-orbits", "--table", "geodesic_circle(kappa=0,r=1)", "--multistarts", "20"});
    REQUIRE(r.code == kExitOk);
    doc = nlohmann::json::parse(r.out);
    REQUIRE(!doc["orbits"].empty());
    for (const auto& o : doc["orbits"]) {
        for (double res : o["residuals"]) CHECK(std::abs(res - 0.75) < 1e-9);
        for (double phi : o["angles_phi"]) CHECK(std::abs(phi - kPi / 3) < 1e-8);
        CHECK(o["perimeter"].get<double>() == doctest::Approx(3 * std::sqrt(3.0)).epsilon(1e-8));
    }
}

TEST_CASE("measure-scan: CSV layout and embedded config")
{
    const Run r = run({"measure-scan", "--table", "octant_s2", "--n", "2000", "--eps0", "1e-3", "--seed", "4"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("# command = measure-scan\n") == 0);
    CHECK(r.out.find("# seed = 4\n") != std::string::npos);
    CHECK(r.out.find("# table = \"octant_s2\"\n") != std::string::npos);
    const auto rows = data_lines(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "eps,fraction,stderr,n_effective,n_excluded");
    const auto fr = column(r.out, 1);
    for (double f : fr) CHECK(f == doctest::Approx(fr[0]).epsilon(1e-12));

    const Run e = run({"measure-scan", "--table", "ellipse_euclidean(a=1.2,b=1)", "--n", "20000", "--eps0", "1e-2"});
    const auto fe = column(e.out, 1);
    REQUIRE(fe.size() == 4);
    for (std::size_t k = 1; k < fe.size(); ++k) CHECK(fe[k] < fe[k - 1]);

    // Values are written with 17 significant digits and match the library.
    const BoundaryCurve b = make_family(EuclideanEllipse{1.2, 1.0});
    const MeasureScan s = scaling_study(b, 20000, 1e-2, 3, 0);
    for (std::size_t k = 0; k < fe.size(); ++k) CHECK(fe[k] == s.rows[k].fraction);
}

TEST_CASE("measure-scan: JSON output")
{
    const Run r = run({"measure-scan", "--table", "hemisphere_s2", "--period", "2", "--n", "300", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["rows"].size() == 4);
    CHECK(doc["period"] == 2);
    for (const auto& row : doc["rows"]) CHECK(row["fraction"].get<double>() >= 0.99);
    CHECK(doc["config"]["command"] == "measure-scan");
}

TEST_CASE("measure-scan output is byte-identical across runs and worker counts")
{
    const std::string table = "fourier_perturbed_circle(kappa=-1,r=1,amplitudes=[0 0.01])";
    std::vector<std::string> outputs;
    for (const char* w : {"1", "1", "4"}) {
        const fs::path out = temp_file(std::string("scan_") + w + std::to_string(outputs.size()) + ".csv");
        const Run r = run({"measure-scan", "--table", table, "--n", "3000", "--seed", "77", "--eps0", "1e-2",
                           "--workers", w, "--out", out.string()});
        REQUIRE(r.code == kExitOk);
        outputs.push_back(slurp(out));
    }
    CHECK(!outputs[0].empty());
    CHECK(outputs[0] == outputs[1]);
    CHECK(outputs[0] == outputs[2]);
    CHECK(outputs[0].find("workers") == std::string::npos);
}

TEST_CASE("verify: default battery passes, debug switches fail the right checks")
{
    Run r = run({"verify", "--n", "20000"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("FAIL") == std::string::npos);

    r = run({"verify", "--n", "20000", "--debug-printed-sphere-matrix"});
    CHECK(r.code == kExitVerifyFailed);
    CHECK(r.out.find("FAIL  top-right-identity S2") != std::string::npos);
    CHECK(r.out.find("PASS  top-right-identity H2") != std::string::npos);

    r = run({"verify", "--n", "20000", "--debug-flip-kg-sign"});
    CHECK(r.code == kExitVerifyFailed);
    CHECK(r.out.find("FAIL  trace-conjugacy") != std::string::npos);
    CHECK(r.out.find("FAIL  top-right") == std::string::npos);
}

TEST_CASE("octant-demo: rows, perimeters, exclusions")
{
    const Run r = run({"octant-demo", "--n", "100", "--seed", "12"});
    REQUIRE(r.code == kExitOk);
    const auto rows = data_lines(r.out);
    std::size_t excluded = 0;
    std::istringstream in(r.out);
    for (std::string line; std::getline(in, line);) excluded += line.rfind("# excluded orbit", 0) == 0;
    CHECK(rows.size() - 1 + excluded == 100);
    for (double L : column(r.out, 3)) CHECK(std::abs(L - kPi) < 1e-8);
    for (double err : column(r.out, 4)) CHECK(err < 1e-8);
    CHECK(rows[0].rfind("orbit,s0,phi0,perimeter,return_error,x0,y0,z0", 0) == 0);

    const BoundaryCurve oct = make_family(SphericalOctant{});
    const auto traces = trace_orbits(oct, {{0.4, kPi / 2}, {0.4, 1.0}}, 3);
    REQUIRE(traces.size() == 2);
    CHECK(traces[0].excluded);
    CHECK(traces[0].failure == CollisionFailure::corner_hit);
    CHECK_FALSE(traces[1].excluded);
    CHECK(traces[1].vertices.size() == 4);
    CHECK(testing::max_abs_diff(traces[1].vertices.front(), traces[1].vertices.back()) < 1e-8);
}

TEST_CASE("format_double writes round-trip exact values")
{
    testing::Gen g(60);
    for (int i = 0; i < 1000; ++i) {
        const double v = std::exp(g.uniform(-30.0, 30.0)) * (i % 2 ? 1 : -1);
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.1) == "0.10000000000000001");
}
