#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "polymod/error.hpp"

namespace polymod {

/// Knobs shared by all subcommands. Loaded from the JSON file named by
/// POLYMOD_CONFIG (if set), then overridden by flags.
struct RunConfig {
    double tol_sum = 1e-12;
    double tol_ideal = 1e-9;
    double tol = 1e-9;  // round trip, route agreement, orthogonality
    std::uint64_t samples = 1000;
    std::uint64_t seed = 1;
    std::string format = "json";
    int jobs = 1;

    /// Throws Error(BadInput) on non-positive tolerances or jobs < 1.
    void validate() const;
};

/// Reads the keys of RunConfig from a JSON object; unknown keys are an
/// error, missing keys keep the value from `base`.
RunConfig merge_config(const nlohmann::json& doc, RunConfig base);

/// One angle: a real number, `pi`, or products, quotients, sums of those,
/// e.g. `2pi/5`, `1/6*2pi`, `pi/3-0.05`. Throws Error(BadInput).
double parse_angle(std::string_view text);

/// Comma-separated angles.
std::vector<double> parse_angle_list(std::string_view text);

/// 2 for input errors, 3 NoIntersection, 4 InconsistentPair,
/// 5 NotEqualWeight, 1 for internal faults.
int exit_code_for(ErrorCode code);

/// Entry point of the `polymod` tool. stdout gets data, stderr diagnostics.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience for tests: argv[0] is supplied.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polymod
