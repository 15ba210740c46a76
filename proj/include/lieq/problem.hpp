#ifndef LIEQ_PROBLEM_HPP
#define LIEQ_PROBLEM_HPP

#include "lieq/connection.hpp"
#include "lieq/groupoid.hpp"
#include "lieq/lie_equation.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lieq {

/** Input error with a 1-based source position. */
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, int line, int column)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct EquationSpec {
  std::string name;
  int order = 0;
  /** "on V": coordinates of the non-fiber components are constrained to vanish. */
  bool on_v = true;
  std::vector<LinearRelation> relations;
  int line = 0;
};

struct SectionSpec {
  std::string name;
  int order = 0;
  std::vector<Series> base;
  /** Explicit jets (component, multi-index); the others come from the base map. */
  std::vector<std::pair<JetCoordinate, Series>> jets;
  int line = 0;
};

struct ConnectionSpec {
  std::string name;
  /** Order of omega, one above the sections it differentiates. */
  int order = 0;
  /** Per fiber direction: explicit jets of omega(d/d var) beyond the order-zero part. */
  std::map<int, std::vector<std::pair<JetCoordinate, Series>>> values;
  int line = 0;
};

struct ProblemSpec {
  int dim = 0;
  std::vector<std::string> vars;
  std::vector<int> fiber;
  int truncation = 8;
  std::vector<EquationSpec> equations;
  /** Variables set to zero on the transversal. */
  std::optional<std::vector<int>> transversal_zero;
  std::optional<std::pair<Series, Series>> plane_symbol;
  std::vector<SectionSpec> sections;
  std::vector<ConnectionSpec> connections;

  const EquationSpec& equation(const std::string& name) const;
  const SectionSpec& section(const std::string& name) const;
  const ConnectionSpec& connection(const std::string& name) const;
};

/**
 * Parses the line-oriented problem language. A truncation override replaces the file's
 * truncation statement before any series is built. Throws ParseError.
 */
ProblemSpec parse_problem(const std::string& text, std::optional<int> truncation_override = std::nullopt);

/** Normalized text of a problem; parsing it again gives the same problem. */
std::string print_problem(const ProblemSpec& spec);

LinearLieEquation build_equation(const ProblemSpec& spec, const EquationSpec& eq);
GroupoidSection build_section(const ProblemSpec& spec, const SectionSpec& sec);
PartialConnection build_connection(const ProblemSpec& spec, const ConnectionSpec& conn);

}  // namespace lieq

#endif
