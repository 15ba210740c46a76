#include "lieq/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lieq::InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal computations with intransitive linear Lie equations"};
  std::string input;
  std::string format = "json";
  std::optional<int> truncation;
  lieq::CommandArgs args;
  bool print = false;
  app.add_option("--input", input, "problem file")->required();
  app.add_option("--command", args.command, "command to run")
      ->check(CLI::IsMember(lieq::command_names()))
      ->excludes(app.add_flag("--print", print, "print the normalized problem and exit"));
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--truncation", truncation, "series truncation order T")->check(CLI::Range(1, 40));
  app.add_option("--depth", args.depth, "prolongation depth")->check(CLI::Range(0, 12));
  app.add_option("--order", args.order, "bracket table order")->check(CLI::Range(1, 12));
  app.add_option("--equation", args.equation, "equation name (default: first)");
  app.add_option("--target", args.target, "target equation for verify-iso (default: --equation)");
  app.add_option("--section", args.section, "section name (default: first)");
  app.add_option("--connection", args.connection, "connection name (default: first)");
  try {
    app.parse(argc, argv);
    if (args.command.empty() && !print) throw CLI::RequiredError("--command");
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : lieq::exit_input;
  }

  lieq::Report rep;
  try {
    lieq::ProblemSpec spec = lieq::parse_problem(read_file(input), truncation);
    if (print) {
      std::cout << lieq::print_problem(spec);
      return lieq::exit_ok;
    }
    rep = lieq::run_command(spec, args);
  } catch (const std::exception& e) {
    rep = lieq::error_report(print ? "print" : args.command, e);
  }
  std::cout << (format == "text" ? lieq::emit_text(rep) : lieq::emit_json(rep));
  if (rep.error && format == "text") std::cerr << "error: " << (*rep.error)["message"].get<std::string>() << "\n";
  return rep.exit_code;
}
