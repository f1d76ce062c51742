#include "curvebill/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvebill/measure.hpp"
#include "curvebill/periodic.hpp"
#include "curvebill/verify.hpp"

namespace curvebill {

using nlohmann::json;

namespace {

const std::vector<std::string> kCommands = {"find-orbits", "measure-scan", "verify", "octant-demo"};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

json config_json(const ExperimentConfig& c)
{
    return {{"command", c.command},   {"table", c.table},         {"seed", c.seed},
            {"n", c.n},               {"eps0", c.eps0},           {"halvings", c.halvings},
            {"period", c.period},     {"multistarts", c.multistarts}, {"format", c.format},
            {"debug_printed_sphere_matrix", c.debug_printed_sphere_matrix},
            {"debug_flip_kg_sign", c.debug_flip_kg_sign}};
}

std::string csv_header(const ExperimentConfig& c)
{
    std::string out = "# command = " + c.command + "\n";
    std::istringstream lines(to_config_text(c, false));
    for (std::string line; std::getline(lines, line);) out += "# " + line + "\n";
    return out;
}

void validate(const ExperimentConfig& c)
{
    try {
        make_family(parse_family(c.table));
    } catch (const std::exception& e) {
        throw ConfigError("invalid table '" + c.table + "': " + e.what());
    }
    if (c.n < 1) throw ConfigError("n must be >= 1");
    if (!(c.eps0 > 0.0)) throw ConfigError("eps0 must be positive");
    if (c.halvings < 3) throw ConfigError("halvings must be >= 3");
    if (c.period < 1) throw ConfigError("period must be >= 1");
    if (c.multistarts < 1) throw ConfigError("multistarts must be >= 1");
    if (c.workers < 1) throw ConfigError("workers must be >= 1");
}

json orbit_json(const CompatibilityReport& r, const PeriodicOrbit& po)
{
    json pts = json::array();
    for (const Vec3& p : r.points) pts.push_back({p.x, p.y, p.z});
    return {{"vertices_s", r.orbit.vertices},
            {"angles_phi", r.orbit.angles},
            {"sides", r.orbit.sides},
            {"perimeter", r.orbit.perimeter},
            {"points", pts},
            {"kg", r.kg},
            {"residuals", r.residuals},
            {"F", r.f_value},
            {"classification", to_string(r.classification)},
            {"degenerate", po.degenerate},
            {"hessian_min_singular", po.hessian_min_singular},
            {"gradient_norm", po.gradient_norm},
            {"return_error", po.return_error}};
}

void find_orbits(const ExperimentConfig& c, const BoundaryCurve& b, std::ostream& os)
{
    const auto orbits = find_3period(b, c.multistarts, c.seed, c.workers);
    std::vector<CompatibilityReport> reports;
    json arr = json::array();
    for (const PeriodicOrbit& po : orbits) {
        reports.push_back(compatibility_report(b, po));
        arr.push_back(orbit_json(reports.back(), po));
    }
    const Theorem2Summary sum = classify_theorem2(reports);
    json checks = json::array();
    for (const SpecialCandidateCheck& sc : sum.special_checks)
        checks.push_back({{"orbit", sc.report_index},
                          {"max_abs_cos", sc.max_abs_cos},
                          {"mutually_orthogonal", sc.mutually_orthogonal}});
    json doc = {{"config", config_json(c)},
                {"table", to_string(parse_family(c.table))},
                {"curvature", to_int(b.curvature())},
                {"total_length", b.total_length()},
                {"probe_radius", kGreatCircleProbeRadius},
                {"orbits", arr},
                {"summary",
                 {{"generic_isolated", sum.generic_isolated},
                  {"spherical_special_candidates", sum.special_candidates},
                  {"degenerate", sum.degenerate},
                  {"special_checks", checks}}}};
    os << doc.dump(2) << "\n";
}

void measure_scan(const ExperimentConfig& c, const BoundaryCurve& b, std::ostream& os)
{
    MeasureScan scan = scaling_study(b, c.n, c.eps0, c.halvings, c.seed, c.period, c.workers);
    scan.table = to_string(parse_family(c.table));
    if (c.format == "json") {
        json rows = json::array();
        for (const FractionEstimate& f : scan.rows)
            rows.push_back({{"eps", f.eps},
                            {"fraction", f.fraction},
                            {"stderr", f.stderr_},
                            {"hits", f.hits},
                            {"n_effective", f.n_effective},
                            {"n_excluded", f.n_excluded}});
        json doc = {{"config", config_json(c)},
                    {"table", scan.table},
                    {"n", scan.n},
                    {"seed", scan.seed},
                    {"period", scan.period},
                    {"rows", rows},
                    {"excluded",
                     {{"corner_hit", scan.corner_hits},
                      {"grazing_reflection", scan.grazing},
                      {"no_intersection", scan.no_intersection}}}};
        os << doc.dump(2) << "\n";
        return;
    }
    os << csv_header(c);
    os << "# excluded: corner_hit = " << scan.corner_hits << ", grazing_reflection = " << scan.grazing
       << ", no_intersection = " << scan.no_intersection << "\n";
    os << "eps,fraction,stderr,n_effective,n_excluded\n";
    for (const FractionEstimate& f : scan.rows)
        os << format_double(f.eps) << ',' << format_double(f.fraction) << ',' << format_double(f.stderr_) << ','
           << f.n_effective << ',' << f.n_excluded << "\n";
}

void octant_demo(const ExperimentConfig& c, std::ostream& os)
{
    const BoundaryCurve b = make_family(SphericalOctant{});
    const auto traces = trace_orbits(b, sample_mu(b, c.n, c.seed), 3);
    ExperimentConfig echo = c;
    echo.table = "octant_s2";
    os << csv_header(echo);
    for (std::size_t i = 0; i < traces.size(); ++i)
        if (traces[i].excluded)
            os << "# excluded orbit " << i << ": s0 = " << format_double(traces[i].start.s)
               << ", phi0 = " << format_double(traces[i].start.phi) << ", " << to_string(traces[i].failure) << "\n";
    os << "orbit,s0,phi0,perimeter,return_error";
    for (int v = 0; v <= 3; ++v) os << ",x" << v << ",y" << v << ",z" << v;
    os << "\n";
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const OrbitTrace& t = traces[i];
        if (t.excluded) continue;
        os << i << ',' << format_double(t.start.s) << ',' << format_double(t.start.phi) << ','
           << format_double(t.perimeter) << ',' << format_double(t.return_error);
        for (const Vec3& p : t.vertices)
            os << ',' << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.z);
        os << "\n";
    }
}

bool verify(const ExperimentConfig& c, std::ostream& os)
{
    VerifyOptions opt;
    opt.seed = c.seed;
    opt.workers = c.workers;
    opt.invariance_n = c.n;
    opt.jacobi.printed_sphere_evolution = c.debug_printed_sphere_matrix;
    opt.jacobi.kg_sign = c.debug_flip_kg_sign ? -1.0 : 1.0;
    const auto results = run_verification(opt);
    std::size_t width = 0;
    for (const CheckResult& r : results) width = std::max(width, r.name.size());
    os << csv_header(c);
    bool all = true;
    for (const CheckResult& r : results) {
        all = all && r.pass;
        os << (r.pass ? "PASS  " : "FAIL  ") << r.name << std::string(width - r.name.size() + 2, ' ') << r.detail
           << "\n";
    }
    os << (all ? "all checks passed" : "verification FAILED") << "\n";
    return all;
}

}  // namespace

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string to_config_text(const ExperimentConfig& c, bool include_execution)
{
    std::ostringstream os;
    os << "table = " << quoted(c.table) << "\n";
    os << "seed = " << c.seed << "\n";
    os << "n = " << c.n << "\n";
    os << "eps0 = " << format_double(c.eps0) << "\n";
    os << "halvings = " << c.halvings << "\n";
    os << "period = " << c.period << "\n";
    os << "multistarts = " << c.multistarts << "\n";
    os << "format = " << quoted(c.format) << "\n";
    os << "debug-printed-sphere-matrix = " << (c.debug_printed_sphere_matrix ? "true" : "false") << "\n";
    os << "debug-flip-kg-sign = " << (c.debug_flip_kg_sign ? "true" : "false") << "\n";
    if (include_execution) {
        os << "workers = " << c.workers << "\n";
        os << "out = " << quoted(c.out) << "\n";
    }
    return os.str();
}

ParseOutcome parse_arguments(const std::vector<std::string>& args)
{
    ExperimentConfig c;
    CLI::App app{"Billiards on constant-curvature surfaces", "curvebill"};
    app.set_config("--config", "", "TOML file with option values; flags given on the command line take precedence");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1, 1);

    app.add_option("--table", c.table, "Table descriptor, e.g. ellipse_euclidean(a=1.2,b=1)");
    app.add_option("--seed", c.seed, "Random seed")->envname("CURVEBILL_SEED");
    app.add_option("--n", c.n, "Number of samples");
    app.add_option("--eps0", c.eps0, "Largest phase-distance tolerance");
    app.add_option("--halvings", c.halvings, "Number of tolerance halvings (>= 3)");
    app.add_option("--period", c.period, "Return period for measure-scan");
    app.add_option("--multistarts", c.multistarts, "Random starts for the orbit finder");
    app.add_option("--workers", c.workers, "Worker threads (results do not depend on it)");
    app.add_option("--out", c.out, "Output file, - for stdout");
    app.add_option("--format", c.format, "measure-scan output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--debug-printed-sphere-matrix", c.debug_printed_sphere_matrix,
                 "verify: use [[cos, sin], [sin, cos]] as the S2 flight matrix");
    app.add_flag("--debug-flip-kg-sign", c.debug_flip_kg_sign, "verify: negate k_g in reflection matrices");

    for (const std::string& name : kCommands) app.add_subcommand(name)->fallthrough();
    app.get_subcommand("find-orbits")->description("Find 3-periodic orbits and their compatibility residuals (JSON)");
    app.get_subcommand("measure-scan")->description("Fraction of returning samples versus tolerance");
    app.get_subcommand("verify")->description("Run the verification battery");
    app.get_subcommand("octant-demo")->description("Sampled octant orbits as polylines (CSV)");

    ParseOutcome outcome;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        outcome.exit_code = app.exit(e, out, err) == 0 ? kExitOk : kExitConfigError;
        outcome.message = out.str() + err.str();
        return outcome;
    }
    for (const std::string& name : kCommands)
        if (app.got_subcommand(name)) c.command = name;
    try {
        validate(c);
    } catch (const ConfigError& e) {
        outcome.exit_code = kExitConfigError;
        outcome.message = std::string("config error: ") + e.what() + "\n";
        return outcome;
    }
    outcome.config = c;
    return outcome;
}

std::vector<OrbitTrace> trace_orbits(const BoundaryCurve& b, const std::vector<PhasePoint>& starts, int period)
{
    std::vector<OrbitTrace> out;
    out.reserve(starts.size());
    for (const PhasePoint& p : starts) {
        OrbitTrace t;
        t.start = p;
        try {
            const Orbit o = iterate(b, p, period);
            for (double s : o.vertices) t.vertices.push_back(b.point_at(s).coords);
            t.vertices.push_back(b.point_at(o.final_point.s).coords);
            t.perimeter = o.perimeter;
            t.return_error = phase_distance(b, o.final_point, {b.wrap(p.s), p.phi});
        } catch (const BilliardError& e) {
            t.excluded = true;
            t.failure = e.kind();
            t.vertices.clear();
        }
        out.push_back(std::move(t));
    }
    return out;
}

int run_command(const ExperimentConfig& c, std::ostream& stdout_stream, std::ostream& err)
{
    try {
        std::ofstream file;
        std::ostream* os = &stdout_stream;
        if (c.out != "-") {
            file.open(c.out, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open output file " + c.out);
            os = &file;
        }
        const BoundaryCurve b = make_family(parse_family(c.table));
        int code = kExitOk;
        if (c.command == "find-orbits")
            find_orbits(c, b, *os);
        else if (c.command == "measure-scan")
            measure_scan(c, b, *os);
        else if (c.command == "octant-demo")
            octant_demo(c, *os);
        else if (c.command == "verify")
            code = verify(c, *os) ? kExitOk : kExitVerifyFailed;
        else
            throw std::runtime_error("unknown command '" + c.command + "'");
        os->flush();
        if (!*os) throw std::runtime_error("write failed");
        return code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& stdout_stream, std::ostream& err)
{
    const ParseOutcome p = parse_arguments(args);
    if (!p.config) {
        (p.exit_code == kExitOk ? stdout_stream : err) << p.message;
        return p.exit_code;
    }
    return run_command(*p.config, stdout_stream, err);
}

}  // namespace curvebill
