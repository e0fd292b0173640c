#pragma once

// Command dispatch behind the CLI: one input document in, one JSON report out.

#include "monalg/canonical.hpp"
#include "monalg/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace monalg::cli {

inline constexpr const char *kReportSchema = "monalg-report/1";

struct CommandFlags {
  std::string input_role; ///< "graph" or "clutter": the input must read as one
  std::vector<std::string> algebras; ///< empty: the command's default
  std::vector<std::string> systems;  ///< empty: all three
  bool oracle = false;
  int box = 3;
  std::size_t down_set_cap = kDefaultDownSetCap;
  std::size_t scan_cap = CanonicalOptions{}.scan_cap;
  std::size_t candidate_cap = HilbertOptions{}.candidate_cap;
  std::size_t oracle_state_cap = RoundingOptions{}.oracle_state_cap;
  // sweep
  std::string experiment = "bipartite-eq1";
  int max_vertices = 5;
  int max_edges = 5;
};

struct CommandResult {
  int exit_code = 0; ///< 0 computed, 1 domain, 2 resource cap, 3 soundness
  nlohmann::json report;
  std::string diagnostic; ///< for stderr, empty on success
};

const std::vector<std::string> &command_names();
bool command_needs_input(const std::string &name);

/// Runs a command on an already parsed input (none for sweep).
CommandResult run_command(const std::string &name, const std::optional<InputDocument> &input,
                          const CommandFlags &flags);

/// Parses `text` (JSON when `json`) and runs the command; parse and
/// validation failures come back as exit code 1 with a report.
CommandResult run_command_on_text(const std::string &name, const std::optional<std::string> &text,
                                  bool json, const CommandFlags &flags);

} // namespace monalg::cli
