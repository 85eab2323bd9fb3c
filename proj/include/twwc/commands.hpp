#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twwc/serialize.hpp"

namespace twwc {

// Knobs shared by the command front ends (CLI and python). Unset optionals
// defer to the input spec or the documented defaults.
struct CommandOptions {
  std::string format = "json";  // "json" | "csv"
  bool bits = false;
  std::uint64_t seed = 1;
  std::optional<int> s_grid;                  // s-grid point count
  std::optional<int> grid;                    // law / power lattice resolution
  std::optional<long> trials;
  std::optional<std::string> factor_mode;     // "exact" | "bound"
  std::optional<std::string> flavor;          // "joint" | "individual" | "outer"
  std::optional<std::pair<double, double>> cost_budgets;
  std::vector<std::string> eliminate;         // fm command
};

// Each command consumes a parsed spec and returns the artifact; the caller
// owns file placement. `csv_out` is filled only when options.format == "csv".
Json region_command(const Json& spec, const CommandOptions& opt, std::string* csv_out);
Json exponent_command(const Json& spec, const CommandOptions& opt, std::string* csv_out);
Json simulate_command(const Json& spec, const CommandOptions& opt, std::string* csv_out);
Json verify_resolvability_command(const Json& spec, const CommandOptions& opt, std::string* csv_out);
Json verify_gallager_command(const Json& spec, const CommandOptions& opt, std::string* csv_out);
Json fm_command(const Json& spec, const CommandOptions& opt, std::string* csv_out);

// Dispatch by command name ("region", "exponent", "simulate",
// "verify-resolvability", "verify-gallager", "fm").
Json run_command(const std::string& command, const Json& spec, const CommandOptions& opt,
                 std::string* csv_out);

}  // namespace twwc
