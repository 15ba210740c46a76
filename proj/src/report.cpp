#include "lieq/report.hpp"

#include "lieq/intransitive_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace lieq {

namespace {

using Names = std::vector<std::string>;

std::string series_str(const Series& s, const Names& names) { return to_string(s, names); }

Json field_json(const VectorField& v, const Names& names) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(series_str(s, names));
  return out;
}

/** Nonzero jets of a section keyed by coordinate. */
Json jets_json(const JetSection& xi, const Names& names) {
  Json out = Json::object();
  for (int i = 0; i < xi.n_base(); ++i)
    for (int a = 0; a < xi.jet_count(); ++a)
      if (!xi.at(i, a).is_zero()) out[coordinate_string(JetCoordinate{i, xi.index(a)}, names)] = series_str(xi.at(i, a), names);
  return out;
}

/** Relation strings, leaving out the p_<non-fiber>[..] = 0 rows implied by "on V". */
Json relations_json(const LinearLieEquation& R, const Names& names) {
  Json out = Json::array();
  for (int r = 0; r < R.rank(); ++r) {
    if (R.restricted()) {
      int nonzero = 0;
      for (const auto& s : R.rows()[r]) nonzero += s.is_zero() ? 0 : 1;
      const int comp = R.coordinate(R.pivots()[r]).component;
      if (nonzero == 1 && !std::binary_search(R.fiber().begin(), R.fiber().end(), comp)) continue;
    }
    out.push_back(R.relation_string(r, names));
  }
  return out;
}

std::string symbol_vector_string(const SymbolSpace& g, int col, const Names& names) {
  auto labels = symbol_basis(g.n_base, g.order);
  std::string out;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    const Rational& c = g.basis(i, col);
    if (c == 0) continue;
    std::string lab = symbol_label_string(labels[i], names);
    std::string coeff = to_string(c < 0 ? Rational(-c) : c);
    if (!out.empty())
      out += c < 0 ? " - " : " + ";
    else if (c < 0)
      out += "-";
    out += (coeff == "1" ? "" : coeff + "*") + lab;
  }
  return out.empty() ? "0" : out;
}

const EquationSpec& pick_equation(const ProblemSpec& spec, const std::string& name) { return spec.equation(name); }

int default_depth(const CommandArgs& a, int fallback) { return a.depth >= 0 ? a.depth : fallback; }

void cmd_prolong(const ProblemSpec& spec, const CommandArgs& args, Report& rep) {
  const Names& names = spec.vars;
  LinearLieEquation R = build_equation(spec, pick_equation(spec, args.equation));
  const int depth = default_depth(args, 1);
  for (int l = 0;; ++l) {
    Json step;
    step["kind"] = "prolongation";
    step["order"] = R.order();
    step["fiber_dim"] = R.fiber_dim();
    step["rank"] = R.rank();
    step["symbol_dim"] = equation_symbol(R).dim();
    if (l == 0) step["relations"] = relations_json(R, names);
    rep.results.push_back(std::move(step));
    if (l == depth) break;
    if (R.order() + 1 > R.trunc()) {
      rep.warnings.push_back("derivative budget: order " + std::to_string(R.order() + 1) + " exceeds truncation " +
                             std::to_string(R.trunc()) + "; stopped after " + std::to_string(l) + " prolongations");
      break;
    }
    R = prolong_equation(R);
  }
}

void cmd_symbol(const ProblemSpec& spec, const CommandArgs& args, Report& rep) {
  const Names& names = spec.vars;
  LinearLieEquation R = build_equation(spec, pick_equation(spec, args.equation));
  SymbolSpace g = equation_symbol(R);
  Json res;
  res["kind"] = "symbol";
  res["order"] = g.order;
  res["dim"] = g.dim();
  res["ambient_dim"] = g.ambient_dim();
  Json basis = Json::array();
  for (int c = 0; c < g.dim(); ++c) basis.push_back(symbol_vector_string(g, c, names));
  res["basis"] = std::move(basis);
  auto acyc = two_acyclicity(g, std::max(2, default_depth(args, 4)));
  res["two_acyclic"] = acyc.two_acyclic;
  rep.results.push_back(std::move(res));
  for (std::size_t s = 0; s < acyc.steps.size(); ++s) {
    Json row;
    row["kind"] = "delta_cohomology";
    row["l"] = static_cast<int>(s) + 2;
    row["cohomology"] = acyc.steps[s].cohomology;
    row["exact"] = acyc.steps[s].exact();
    rep.results.push_back(std::move(row));
  }
}

void cmd_integrability(const ProblemSpec& spec, const CommandArgs& args, Report& rep) {
  LinearLieEquation R = build_equation(spec, pick_equation(spec, args.equation));
  const int depth = default_depth(args, 3);
  if (R.order() + depth > R.trunc())
    rep.warnings.push_back("derivative budget: order " + std::to_string(R.order()) + " plus depth " +
                           std::to_string(depth) + " exceeds truncation " + std::to_string(R.trunc()));
  auto ir = check_formal_integrability(R, depth);
  for (const auto& s : ir.steps) {
    Json row;
    row["kind"] = "integrability_step";
    row["order"] = s.order;
    row["fiber_dim"] = s.fiber_dim;
    row["symbol_dim"] = s.symbol_dim;
    row["prolonged_fiber_dim"] = s.prolonged_fiber_dim;
    row["projected_dim"] = s.projected_dim;
    row["surjective"] = s.surjective;
    row["two_acyclic"] = s.two_acyclic;
    rep.results.push_back(std::move(row));
  }
  // Symbol dimensions along the whole requested tower, also past an early verdict.
  Json gdims = Json::array();
  for (int l = 0;; ++l) {
    gdims.push_back(equation_symbol(R).dim());
    if (l == depth || R.order() + 1 > R.trunc()) break;
    R = prolong_equation(R);
  }
  Json v;
  v["kind"] = "verdict";
  v["verdict"] = to_string(ir.verdict);
  v["depth"] = ir.depth;
  v["symbol_dims"] = std::move(gdims);
  rep.results.push_back(std::move(v));
  if (ir.verdict == Integrability::not_formally_integrable) rep.exit_code = exit_negative;
  if (ir.verdict == Integrability::inconclusive)
    rep.warnings.push_back("inconclusive within depth " + std::to_string(ir.depth) + "; raise --depth or --truncation");
}

void cmd_bracket_table(const ProblemSpec& spec, const CommandArgs& args, Report& rep) {
  const Names& names = spec.vars;
  LinearLieEquation R = build_equation(spec, pick_equation(spec, args.equation));
  auto closure = check_lie_closure(R);
  if (!closure.closed) {
    std::string why = closure.witness_pair ? "the bracket of two spanning sections leaves the equation"
                                           : "a derivative of a relation is not implied by the prolongation";
    throw ClosureError("equation is not closed under the bracket: " + why);
  }
  const int j = args.order > 0 ? args.order : R.order();
  if (j > R.trunc()) throw OrderError("bracket table order exceeds the truncation");
  IntransitiveAlgebra alg = bracket_table(R, j);
  Json head;
  head["kind"] = "algebra";
  head["order"] = alg.order;
  Json tv = Json::array();
  for (int t : alg.transversal) tv.push_back(names[t]);
  head["transversal"] = std::move(tv);
  head["generators"] = alg.labels;
  head["basis"] = alg.lower_labels;
  rep.results.push_back(std::move(head));
  for (const auto& e : alg.table) {
    Json row;
    row["kind"] = "bracket";
    row["left"] = alg.labels[e.a];
    row["right"] = alg.labels[e.b];
    Json coeffs = Json::object();
    for (std::size_t i = 0; i < e.coefficients.size(); ++i)
      if (!e.coefficients[i].is_zero()) coeffs[alg.lower_labels[i]] = series_str(e.coefficients[i], names);
    row["structure_functions"] = std::move(coeffs);
    rep.results.push_back(std::move(row));
  }
}

/** exp(y beta d/dx) theta(x): a formal solution of xi_y = beta xi_x. */
Series transported_solution(const Series& beta, const Series& theta) {
  const int T = theta.trunc();
  Series y = Series::variable(2, T, 1);
  Series term = theta;
  Series sum = theta;
  for (int j = 1; j <= T; ++j) {
    term = beta * term.derive(0) * y * Rational(1, j);
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

void cmd_classify_plane(const ProblemSpec& spec, const CommandArgs& args, Report& rep) {
  if (spec.dim != 2) throw InputError("classify-plane needs manifold dim 2");
  if (spec.fiber != std::vector<int>{1})
    throw InputError("classify-plane needs distribution V = span(d/d" + spec.vars[1] + ")");
  const Names& names = spec.vars;
  std::pair<Series, Series> AB;
  if (spec.plane_symbol && args.equation.empty())
    AB = *spec.plane_symbol;
  else
    AB = plane_symbol(build_equation(spec, pick_equation(spec, args.equation)));
  PlaneClassification c = classify_plane_rank1(AB.first, AB.second);
  LinearLieEquation nf = plane_normal_form(c, spec.truncation);
  const int T = spec.truncation;
  Series x = Series::variable(2, T, 0);
  Series y = Series::variable(2, T, 1);
  // Sample theta(t) = t + t^2/2 + t^3 checks the family pointwise.
  auto theta = [&](const Series& t) { return t + t * t * Rational(1, 2) + t * t * t; };
  std::string note;
  Series xi;
  if (c.case_number == 1) {
    note = "theta(" + names[1] + ") d/d" + names[1];
    xi = theta(y);
  } else {
    Series beta = c.normal_form_beta.resized(T, true);
    if (!c.valuation)
      note = "theta(" + names[0] + ") d/d" + names[1];
    else if (*c.valuation == 1)
      note = "theta(" + names[0] + "*exp(" + names[1] + ")) d/d" + names[1];
    else
      note = "exp(" + names[1] + "*" + series_str(beta, names) + "*d/d" + names[0] + ") theta(" + names[0] + ") d/d" +
             names[1];
    xi = transported_solution(beta, theta(x));
  }
  Json res;
  res["kind"] = "classification";
  res["A"] = series_str(AB.first, names);
  res["B"] = series_str(AB.second, names);
  res["case"] = c.case_number;
  res["valuation"] = c.valuation ? Json(*c.valuation) : Json(nullptr);
  res["beta"] = series_str(c.normal_form_beta, names);
  res["precision"] = c.precision;
  res["normal_form"] = relations_json(nf, names);
  res["solution_family"] = note;
  res["family_verified"] = check_solution_family(nf, VectorField{Series(2, T), xi});
  rep.results.push_back(std::move(res));
}

void cmd_verify_iso(const ProblemSpec& spec, const CommandArgs& args, Report& rep) {
  const Names& names = spec.vars;
  const SectionSpec& ss = spec.section(args.section);
  GroupoidSection F = build_section(spec, ss);
  LinearLieEquation R = build_equation(spec, pick_equation(spec, args.equation));
  LinearLieEquation Rp = args.target.empty() ? R : build_equation(spec, spec.equation(args.target));
  auto iso = verify_formal_isomorphism(F, R, Rp);
  Json res;
  res["kind"] = "isomorphism";
  res["section"] = ss.name;
  res["base_preserves_leaves"] = iso.base_ok;
  res["pushforward_matches"] = iso.pushforward_ok;
  res["spencer_in_equation"] = iso.spencer_ok;
  res["passed"] = iso.passed();
  if (iso.witness_direction) {
    Json w;
    w["direction"] = names[*iso.witness_direction];
    w["relation"] = R.relation_string(iso.witness_relation, names);
    res["witness"] = std::move(w);
  } else {
    res["witness"] = nullptr;
  }
  rep.results.push_back(std::move(res));
  if (!iso.passed()) rep.exit_code = exit_negative;
}

void cmd_spencer_d(const ProblemSpec& spec, const CommandArgs& args, Report& rep) {
  const Names& names = spec.vars;
  const SectionSpec& ss = spec.section(args.section);
  GroupoidSection F = build_section(spec, ss);
  SpencerOneForm u = nonlinear_spencer_D(F);
  bool zero = true;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j].is_zero()) continue;
    zero = false;
    Json row;
    row["kind"] = "spencer_component";
    row["direction"] = names[j];
    row["jets"] = jets_json(u[j], names);
    rep.results.push_back(std::move(row));
  }
  Json res;
  res["kind"] = "spencer_summary";
  res["section"] = ss.name;
  res["order"] = F.order();
  res["holonomic"] = zero;
  if (F.order() >= 2) res["d1_vanishes"] = d1_curvature(u).is_zero();
  rep.results.push_back(std::move(res));
}

void cmd_connection_curvature(const ProblemSpec& spec, const CommandArgs& args, Report& rep) {
  const Names& names = spec.vars;
  const ConnectionSpec& cs = spec.connection(args.connection);
  PartialConnection conn = build_connection(spec, cs);
  auto cr = curvature(conn);
  for (const auto& [pair, c] : cr.components) {
    if (c.is_zero()) continue;
    Json row;
    row["kind"] = "curvature_component";
    row["directions"] = Json::array({names[conn.fiber()[pair.first]], names[conn.fiber()[pair.second]]});
    row["horizontal"] = field_json(c.horizontal, names);
    row["vertical"] = jets_json(c.vertical, names);
    rep.results.push_back(std::move(row));
  }
  Json res;
  res["kind"] = "curvature";
  res["connection"] = cs.name;
  res["order"] = conn.order();
  res["flat"] = cr.flat;
  rep.results.push_back(std::move(res));
  if (!cr.flat) rep.exit_code = exit_negative;
}

struct ErrorKind {
  std::string name;
  int exit_code;
};

ErrorKind classify_error(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return {"parse_error", exit_input};
  if (dynamic_cast<const NonRegularError*>(&e)) return {"non_regular", exit_non_regular};
  if (dynamic_cast<const ClosureError*>(&e)) return {"not_closed", exit_negative};
  if (dynamic_cast<const ObstructionError*>(&e)) return {"obstruction", exit_negative};
  if (dynamic_cast<const InputError*>(&e)) return {"input_error", exit_input};
  if (dynamic_cast<const OrderError*>(&e)) return {"order_error", exit_input};
  if (dynamic_cast<const DimensionError*>(&e)) return {"dimension_error", exit_input};
  if (dynamic_cast<const NonUnitError*>(&e)) return {"non_unit", exit_input};
  if (dynamic_cast<const RecenteringError*>(&e)) return {"recentering_error", exit_input};
  if (dynamic_cast<const TildeError*>(&e)) return {"tilde_error", exit_input};
  if (dynamic_cast<const Error*>(&e)) return {"error", exit_input};
  return {"internal_error", exit_input};
}

using Handler = void (*)(const ProblemSpec&, const CommandArgs&, Report&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h{
      {"prolong", cmd_prolong},
      {"symbol", cmd_symbol},
      {"check-integrability", cmd_integrability},
      {"bracket-table", cmd_bracket_table},
      {"classify-plane", cmd_classify_plane},
      {"verify-iso", cmd_verify_iso},
      {"spencer-d", cmd_spencer_d},
      {"connection-curvature", cmd_connection_curvature},
  };
  return h;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
    return s + "]";
  }
  if (v.is_object()) {
    std::string s;
    for (auto it = v.begin(); it != v.end(); ++it) s += (s.empty() ? "" : "; ") + it.key() + ": " + scalar_text(it.value());
    return s.empty() ? "0" : s;
  }
  return v.dump();
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, h] : handlers()) out.push_back(n);
    return out;
  }();
  return names;
}

Report error_report(const std::string& command, const std::exception& e) {
  Report rep;
  rep.command = command;
  ErrorKind k = classify_error(e);
  Json err;
  err["kind"] = k.name;
  err["message"] = e.what();
  if (auto pe = dynamic_cast<const ParseError*>(&e)) {
    err["line"] = pe->line();
    err["column"] = pe->column();
  }
  rep.error = std::move(err);
  rep.exit_code = k.exit_code;
  return rep;
}

Report run_command(const ProblemSpec& spec, const CommandArgs& args) {
  Report rep;
  rep.command = args.command;
  rep.truncation = spec.truncation;
  auto it = std::find_if(handlers().begin(), handlers().end(), [&](const auto& h) { return h.first == args.command; });
  try {
    if (it == handlers().end()) throw InputError("unknown command '" + args.command + "'");
    it->second(spec, args, rep);
  } catch (const std::exception& e) {
    Report err = error_report(args.command, e);
    err.truncation = spec.truncation;
    err.warnings = rep.warnings;
    return err;
  }
  return rep;
}

std::string emit_json(const Report& r) {
  Json out;
  out["schema"] = 1;
  out["command"] = r.command;
  out["truncation"] = r.truncation;
  out["results"] = r.results;
  out["warnings"] = r.warnings;
  if (r.error) out["error"] = *r.error;
  out["exit_code"] = r.exit_code;
  return out.dump(2) + "\n";
}

std::string emit_text(const Report& r) {
  std::ostringstream out;
  out << "command: " << r.command << "   truncation: " << r.truncation << "\n";
  // Consecutive results of one kind share a table.
  std::size_t i = 0;
  while (i < r.results.size()) {
    const std::string kind = r.results[i].value("kind", "");
    std::size_t j = i;
    std::vector<std::string> cols;
    while (j < r.results.size() && r.results[j].value("kind", "") == kind) {
      for (auto it = r.results[j].begin(); it != r.results[j].end(); ++it)
        if (it.key() != "kind" && std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
      ++j;
    }
    out << "\n[" << kind << "]\n";
    if (j - i == 1) {
      std::size_t w = 0;
      for (const auto& c : cols) w = std::max(w, c.size());
      for (const auto& c : cols)
        out << "  " << c << std::string(w - c.size(), ' ') << " : " << scalar_text(r.results[i][c]) << "\n";
    } else {
      std::vector<std::vector<std::string>> cells;
      std::vector<std::size_t> w;
      for (const auto& c : cols) w.push_back(c.size());
      for (std::size_t k = i; k < j; ++k) {
        std::vector<std::string> row;
        for (std::size_t c = 0; c < cols.size(); ++c) {
          const Json& obj = r.results[k];
          row.push_back(obj.contains(cols[c]) ? scalar_text(obj[cols[c]]) : "");
          w[c] = std::max(w[c], row.back().size());
        }
        cells.push_back(std::move(row));
      }
      auto line = [&](const std::vector<std::string>& row) {
        std::string s = " ";
        for (std::size_t c = 0; c < row.size(); ++c) s += " " + row[c] + std::string(w[c] - row[c].size(), ' ');
        while (!s.empty() && s.back() == ' ') s.pop_back();
        out << s << "\n";
      };
      line(cols);
      for (const auto& row : cells) line(row);
    }
    i = j;
  }
  for (const auto& w : r.warnings) out << "\nwarning: " << w << "\n";
  if (r.error) {
    out << "\nerror (" << (*r.error)["kind"].get<std::string>() << "): " << (*r.error)["message"].get<std::string>() << "\n";
  }
  out << "\nexit code: " << r.exit_code << "\n";
  return out.str();
}

}  // namespace lieq
