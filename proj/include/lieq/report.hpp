#ifndef LIEQ_REPORT_HPP
#define LIEQ_REPORT_HPP

#include "lieq/problem.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace lieq {

using Json = nlohmann::ordered_json;

enum ExitCode { exit_ok = 0, exit_negative = 1, exit_input = 2, exit_non_regular = 3 };

struct CommandArgs {
  std::string command;
  /** Prolongation depth; negative selects the per-command default. */
  int depth = -1;
  /** Order of the bracket table; 0 means the equation order. */
  int order = 0;
  std::string equation;
  std::string target;
  std::string section;
  std::string connection;
};

struct Report {
  std::string command;
  int truncation = 0;
  Json results = Json::array();
  std::vector<std::string> warnings;
  /** Set when the command failed: kind, message and, for parse errors, line and column. */
  std::optional<Json> error;
  int exit_code = exit_ok;
};

const std::vector<std::string>& command_names();

/** Dispatches one command. Library errors become an error entry with the matching exit code. */
Report run_command(const ProblemSpec& spec, const CommandArgs& args);

/** Report for a failure before any command could run (unreadable file, parse error). */
Report error_report(const std::string& command, const std::exception& e);

std::string emit_json(const Report& r);
std::string emit_text(const Report& r);

}  // namespace lieq

#endif
