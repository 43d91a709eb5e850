#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace jinv {

inline constexpr const char* kReportSchema = "report_v1";

/// Output of one CLI run. `results` must depend only on (subcommand, parameters, seed);
/// wall-clock data goes to `elapsed_ms` and `timings`.
struct RunReport {
  std::string subcommand;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  bool pass = false;
  std::int64_t elapsed_ms = 0;
  std::uint64_t seed = 0;
  nlohmann::json timings = nlohmann::json::object();
  std::string diagnostic;
};

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j{{"schema", kReportSchema},   {"subcommand", r.subcommand}, {"parameters", r.parameters},
                   {"results", r.results},      {"pass", r.pass},             {"elapsed_ms", r.elapsed_ms},
                   {"seed", r.seed}};
  if (!r.timings.empty()) j["timings"] = r.timings;
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

}  // namespace jinv
