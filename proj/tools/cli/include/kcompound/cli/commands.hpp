#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kcompound/cli/problem.hpp"

namespace kcompound::cli {

/// What a subcommand produced. `report` holds the task-specific keys; the
/// driver adds task, input_digest, inputs and timing_ms.
struct CommandOutput {
  nlohmann::json report = nlohmann::json::object();
  int exit_code = 0;
  std::optional<std::string> csv;
  /// Printed to stderr by the driver.
  std::vector<std::string> warnings;
};

CommandOutput run_compound(const Params& params);
CommandOutput run_measure(const Params& params);
CommandOutput run_certify(const Params& params);
CommandOutput run_simulate(const Params& params);
CommandOutput run_trace(const Params& params);

/// Golden checks of the worked examples; exit_code 1 if any fails.
CommandOutput run_selftest();

}  // namespace kcompound::cli
