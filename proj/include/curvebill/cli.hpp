#pragma once

// Command-line front end: config parsing, the four subcommands and their
// output formats.
//
// Exit codes: 0 success, 1 verification failure, 2 config error,
// 3 runtime error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "curvebill/billiard.hpp"

namespace curvebill {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;

struct ExperimentConfig {
    std::string command;  // find-orbits, measure-scan, verify, octant-demo
    std::string table = "octant_s2";
    std::uint64_t seed = 0;
    std::size_t n = 10000;
    double eps0 = 1e-3;
    int halvings = 3;
    int period = 3;
    int multistarts = 20;
    int workers = 1;
    std::string out = "-";  // "-" is stdout
    std::string format = "csv";
    bool debug_printed_sphere_matrix = false;
    bool debug_flip_kg_sign = false;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// TOML key = value lines accepted by --config. The subcommand is not part
/// of the file. With include_execution = false, `workers` and `out` are
/// left out; this is the echo embedded in output files, which therefore does
/// not depend on how a run was executed.
std::string to_config_text(const ExperimentConfig& c, bool include_execution = true);

struct ParseOutcome {
    std::optional<ExperimentConfig> config;  // empty on error or --help
    int exit_code = kExitOk;
    std::string message;
};

/// Parses arguments (without the program name). Precedence: flags, then the
/// --config file, then CURVEBILL_SEED for the seed, then defaults.
ParseOutcome parse_arguments(const std::vector<std::string>& args);

/// Runs an already parsed config; writes results to c.out and diagnostics
/// to err.
int run_command(const ExperimentConfig& c, std::ostream& stdout_stream, std::ostream& err);

int run_cli(const std::vector<std::string>& args, std::ostream& stdout_stream, std::ostream& err);

/// One sampled orbit for plotting: the visited boundary points with the
/// return point appended, or the reason it was dropped.
struct OrbitTrace {
    PhasePoint start;
    bool excluded = false;
    CollisionFailure failure = CollisionFailure::no_intersection;
    std::vector<Vec3> vertices;
    double perimeter = 0.0;
    double return_error = 0.0;
};

std::vector<OrbitTrace> trace_orbits(const BoundaryCurve& b, const std::vector<PhasePoint>& starts, int period);

/// Shortest decimal with 17 significant digits.
std::string format_double(double v);

}  // namespace curvebill
