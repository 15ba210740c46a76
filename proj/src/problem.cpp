#include "lieq/problem.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lieq {

namespace {

using JetKey = std::pair<int, MultiIndex>;

/** Linear form sum c * p plus a scalar part. */
struct Value {
  Series scalar;
  std::map<JetKey, Series> jets;

  bool is_scalar() const {
    return std::all_of(jets.begin(), jets.end(), [](const auto& kv) { return kv.second.is_zero(); });
  }
};

Value add(Value a, const Value& b, int sign) {
  if (sign > 0)
    a.scalar += b.scalar;
  else
    a.scalar -= b.scalar;
  for (const auto& [k, c] : b.jets) {
    auto it = a.jets.find(k);
    if (it == a.jets.end())
      a.jets.emplace(k, sign > 0 ? c : -c);
    else if (sign > 0)
      it->second += c;
    else
      it->second -= c;
  }
  return a;
}

Value scale(Value a, const Series& s) {
  a.scalar = a.scalar * s;
  for (auto& [k, c] : a.jets) c = c * s;
  return a;
}

struct Context {
  int dim = 0;
  std::vector<std::string> vars;
  std::vector<int> fiber;
  int trunc = 8;
  /** Highest order a jet coordinate may have; -1 forbids jet coordinates. */
  int jet_limit = -1;
};

class Cursor {
 public:
  Cursor(const std::string& text, int line) : s_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, line_, static_cast<int>(at) + 1);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eof() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  std::size_t pos() const { return pos_; }
  int line() const { return line_; }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_ident() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  std::string ident() {
    if (!at_ident()) fail("expected a name");
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  bool accept_word(const std::string& w) {
    skip_ws();
    std::size_t save = pos_;
    if (at_ident() && ident() == w) return true;
    pos_ = save;
    return false;
  }
  void expect_word(const std::string& w) {
    if (!accept_word(w)) fail("expected '" + w + "'");
  }
  int integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ - start > 6) fail("integer too large", start);
    return std::stoi(s_.substr(start, pos_ - start));
  }
  /** Exact decimal literal. */
  Rational number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string digits = s_.substr(start, pos_ - start);
    Integer den = 1;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (fs == pos_) fail("malformed number", start);
      digits += s_.substr(fs, pos_ - fs);
      for (std::size_t i = fs; i < pos_; ++i) den *= 10;
    }
    if (digits.empty()) fail("expected a number", start);
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      fail("non-rational literal", start);
    // A leading zero would make the string constructor read octal.
    std::size_t nz = digits.find_first_not_of('0');
    return Rational(nz == std::string::npos ? Integer(0) : Integer(digits.substr(nz)), den);
  }
  std::string rest() {
    skip_ws();
    return s_.substr(pos_);
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
};

std::string join_index(const MultiIndex& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s;
}

int var_index(const Context& ctx, const std::string& name) {
  auto it = std::find(ctx.vars.begin(), ctx.vars.end(), name);
  return it == ctx.vars.end() ? -1 : static_cast<int>(it - ctx.vars.begin());
}

class ExprParser {
 public:
  ExprParser(Cursor& c, const Context& ctx) : c_(c), ctx_(ctx) {}

  Value expr() {
    Value v = term();
    for (;;) {
      if (c_.accept('+'))
        v = add(v, term(), 1);
      else if (c_.accept('-'))
        v = add(v, term(), -1);
      else
        return v;
    }
  }

  /** Parses "p[...]" or "p_<var>[...]" once the name has been read. */
  JetKey jet_coordinate(const std::string& name, std::size_t at, const std::string& prefix) {
    int comp = -1;
    if (name == prefix) {
      if (ctx_.fiber.size() != 1)
        c_.fail(prefix + "[...] needs a component suffix such as " + prefix + "_" + ctx_.vars.back() + " when dim V != 1", at);
      comp = ctx_.fiber[0];
    } else {
      comp = var_index(ctx_, name.substr(prefix.size() + 1));
      if (comp < 0) c_.fail("unknown variable '" + name.substr(prefix.size() + 1) + "'", at);
    }
    c_.expect('[');
    MultiIndex a;
    do a.push_back(c_.integer());
    while (c_.accept(','));
    c_.expect(']');
    if (static_cast<int>(a.size()) != ctx_.dim)
      c_.fail("multi-index needs " + std::to_string(ctx_.dim) + " entries", at);
    if (ctx_.jet_limit >= 0 && order(a) > ctx_.jet_limit)
      c_.fail(name + "[" + join_index(a) + "] has order " + std::to_string(order(a)) + " above the declared order " +
                  std::to_string(ctx_.jet_limit),
              at);
    return {comp, a};
  }

 private:
  Series zero() const { return Series(ctx_.dim, ctx_.trunc); }
  Value scalar(Series s) const { return Value{std::move(s), {}}; }

  Value term() {
    Value v = unary();
    for (;;) {
      std::size_t at = c_.pos();
      if (c_.accept('*')) {
        Value w = unary();
        if (w.is_scalar())
          v = scale(v, w.scalar);
        else if (v.is_scalar())
          v = scale(w, v.scalar);
        else
          c_.fail("product of two jet coordinates is not linear", at);
      } else if (c_.accept('/')) {
        Value w = unary();
        if (!w.is_scalar()) c_.fail("division by a jet coordinate", at);
        if (w.scalar.constant_term() == 0) c_.fail("division by a series that vanishes at the origin", at);
        v = scale(v, w.scalar.reciprocal());
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (c_.accept('-')) {
      Value v = unary();
      return add(scalar(zero()), v, -1);
    }
    if (c_.accept('+')) return unary();
    return power();
  }

  Value power() {
    Value base = primary();
    std::size_t at = c_.pos();
    if (!c_.accept('^')) return base;
    if (!base.is_scalar()) c_.fail("power of a jet coordinate is not linear", at);
    int e = c_.integer();
    Series r = Series::constant(ctx_.dim, ctx_.trunc, 1);
    for (int i = 0; i < e && !r.is_zero(); ++i) r = r * base.scalar;
    return scalar(r);
  }

  Value primary() {
    std::size_t at = (c_.skip_ws(), c_.pos());
    char ch = c_.peek();
    if (ch == '(') {
      c_.expect('(');
      Value v = expr();
      c_.expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.')
      return scalar(Series::constant(ctx_.dim, ctx_.trunc, c_.number()));
    if (!c_.at_ident()) c_.fail("expected an expression");
    std::string name = c_.ident();
    if (name == "p" || name.rfind("p_", 0) == 0) {
      if (ctx_.jet_limit < 0) c_.fail("jet coordinates are not allowed here", at);
      JetKey k = jet_coordinate(name, at, "p");
      Value v = scalar(zero());
      v.jets.emplace(k, Series::constant(ctx_.dim, ctx_.trunc, 1));
      return v;
    }
    if (name == "exp") {
      c_.expect('(');
      Value arg = expr();
      c_.expect(')');
      if (!arg.is_scalar()) c_.fail("exp of a jet coordinate", at);
      if (arg.scalar.constant_term() != 0) c_.fail("non-rational value: exp needs an argument vanishing at the origin", at);
      Series sum = Series::constant(ctx_.dim, ctx_.trunc, 1);
      Series term = sum;
      for (int k = 1; k <= ctx_.trunc; ++k) {
        term = term * arg.scalar * Rational(1, k);
        sum += term;
      }
      return scalar(sum);
    }
    int v = var_index(ctx_, name);
    if (v < 0) c_.fail("unknown variable '" + name + "'", at);
    return scalar(Series::variable(ctx_.dim, ctx_.trunc, v));
  }

  Cursor& c_;
  const Context& ctx_;
};

Series parse_scalar(Cursor& c, const Context& ctx) {
  Context scalar_ctx = ctx;
  scalar_ctx.jet_limit = -1;
  ExprParser p(c, scalar_ctx);
  return p.expr().scalar;
}

LinearRelation parse_relation(Cursor& c, const Context& ctx) {
  std::size_t at = (c.skip_ws(), c.pos());
  ExprParser p(c, ctx);
  Value lhs = p.expr();
  c.expect('=');
  Value rhs = p.expr();
  Value v = add(lhs, rhs, -1);
  if (!v.scalar.is_zero()) c.fail("relation has a term without a jet coordinate", at);
  LinearRelation rel;
  for (const auto& [k, coeff] : v.jets)
    if (!coeff.is_zero()) rel.terms.push_back({JetCoordinate{k.first, k.second}, coeff});
  if (rel.terms.empty()) c.fail("relation is identically zero", at);
  return rel;
}

std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

/** Reads "d/d<var>". */
int direction(Cursor& c, const Context& ctx) {
  std::size_t at = (c.skip_ws(), c.pos());
  std::string d = c.ident();
  if (d != "d") c.fail("expected d/d<var>", at);
  c.expect('/');
  std::string dv = c.ident();
  if (dv.size() < 2 || dv[0] != 'd') c.fail("expected d/d<var>", at);
  int v = var_index(ctx, dv.substr(1));
  if (v < 0) c.fail("unknown variable '" + dv.substr(1) + "'", at);
  return v;
}

void expect_end(Cursor& c) {
  if (!c.eof()) c.fail("unexpected text '" + c.rest() + "'");
}

}  // namespace

const EquationSpec& ProblemSpec::equation(const std::string& name) const {
  if (equations.empty()) throw InputError("the problem declares no equation");
  if (name.empty()) return equations.front();
  for (const auto& e : equations)
    if (e.name == name) return e;
  throw InputError("no equation named '" + name + "'");
}

const SectionSpec& ProblemSpec::section(const std::string& name) const {
  if (sections.empty()) throw InputError("the problem declares no section");
  if (name.empty()) return sections.front();
  for (const auto& s : sections)
    if (s.name == name) return s;
  throw InputError("no section named '" + name + "'");
}

const ConnectionSpec& ProblemSpec::connection(const std::string& name) const {
  if (connections.empty()) throw InputError("the problem declares no connection");
  if (name.empty()) return connections.front();
  for (const auto& s : connections)
    if (s.name == name) return s;
  throw InputError("no connection named '" + name + "'");
}

ProblemSpec parse_problem(const std::string& text, std::optional<int> truncation_override) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) lines.push_back(strip_comment(l));
  }
  ProblemSpec spec;
  bool have_dim = false;
  bool have_vars = false;
  bool have_dist = false;
  int vars_line = 0;
  // Header statements first: they fix the ring every expression lives in.
  for (std::size_t li = 0; li < lines.size(); ++li) {
    Cursor c(lines[li], static_cast<int>(li) + 1);
    if (c.eof()) continue;
    std::size_t at = c.pos();
    std::string kw = c.ident();
    if (kw == "manifold") {
      if (have_dim) c.fail("manifold declared twice", at);
      c.expect_word("dim");
      spec.dim = c.integer();
      if (spec.dim < 1 || spec.dim > 6) c.fail("manifold dimension must be between 1 and 6", at);
      have_dim = true;
      expect_end(c);
    } else if (kw == "vars") {
      if (have_vars) c.fail("vars declared twice", at);
      while (!c.eof()) {
        std::size_t vat = c.pos();
        std::string v = c.ident();
        if (v == "p" || v.rfind("p_", 0) == 0 || v.rfind("s_", 0) == 0 || v == "exp" || v == "d")
          c.fail("reserved name '" + v + "'", vat);
        if (std::find(spec.vars.begin(), spec.vars.end(), v) != spec.vars.end()) c.fail("duplicate variable", vat);
        spec.vars.push_back(v);
        c.accept(',');
      }
      have_vars = true;
      vars_line = static_cast<int>(li) + 1;
    } else if (kw == "truncation") {
      spec.truncation = c.integer();
      if (spec.truncation < 1 || spec.truncation > 40) c.fail("truncation must be between 1 and 40", at);
      expect_end(c);
    }
  }
  if (!have_dim) throw ParseError("missing 'manifold dim <n>'", 1, 1);
  if (!have_vars) {
    spec.vars = default_var_names(spec.dim);
  } else if (static_cast<int>(spec.vars.size()) != spec.dim) {
    throw ParseError("vars lists " + std::to_string(spec.vars.size()) + " names for dimension " +
                         std::to_string(spec.dim),
                     vars_line, 1);
  }
  if (truncation_override) {
    if (*truncation_override < 1 || *truncation_override > 40) throw InputError("truncation must be between 1 and 40");
    spec.truncation = *truncation_override;
  }
  Context ctx;
  ctx.dim = spec.dim;
  ctx.vars = spec.vars;
  ctx.trunc = spec.truncation;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    Cursor c(lines[li], static_cast<int>(li) + 1);
    if (c.eof()) continue;
    std::size_t at = c.pos();
    std::string kw = c.ident();
    if (kw != "distribution") continue;
    if (have_dist) c.fail("distribution declared twice", at);
    std::string name = c.ident();
    (void)name;
    c.expect('=');
    c.expect_word("span");
    c.expect('(');
    while (!c.accept(')')) {
      int v = direction(c, ctx);
      if (std::find(spec.fiber.begin(), spec.fiber.end(), v) != spec.fiber.end()) c.fail("repeated direction", at);
      spec.fiber.push_back(v);
      c.accept(',');
      if (c.eof()) c.fail("expected ')'");
    }
    std::sort(spec.fiber.begin(), spec.fiber.end());
    expect_end(c);
    have_dist = true;
  }
  ctx.fiber = spec.fiber;

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const int line = static_cast<int>(li) + 1;
    Cursor c(lines[li], line);
    if (c.eof()) continue;
    std::size_t at = c.pos();
    std::string kw = c.ident();
    if (kw == "manifold" || kw == "vars" || kw == "truncation" || kw == "distribution") continue;
    if (kw == "equation") {
      EquationSpec eq;
      eq.line = line;
      eq.name = c.ident();
      for (const auto& e : spec.equations)
        if (e.name == eq.name) c.fail("equation '" + eq.name + "' declared twice", at);
      c.expect_word("order");
      eq.order = c.integer();
      if (eq.order > spec.truncation) c.fail("equation order above the truncation", at);
      c.expect_word("on");
      std::size_t sat = c.pos();
      std::string space = c.ident();
      if (space == "V") {
        if (spec.fiber.empty()) c.fail("'on V' needs a distribution statement", sat);
        eq.on_v = true;
      } else if (space == "T") {
        eq.on_v = false;
      } else {
        c.fail("expected 'V' or 'T'", sat);
      }
      c.expect(':');
      Context ectx = ctx;
      ectx.jet_limit = eq.order;
      while (!c.eof()) {
        eq.relations.push_back(parse_relation(c, ectx));
        if (!c.accept(';')) expect_end(c);
      }
      spec.equations.push_back(std::move(eq));
    } else if (kw == "transversal") {
      if (spec.transversal_zero) c.fail("transversal declared twice", at);
      c.ident();
      c.expect(':');
      std::vector<int> zero;
      while (!c.eof()) {
        std::size_t vat = c.pos();
        std::string v = c.ident();
        int idx = var_index(ctx, v);
        if (idx < 0) c.fail("unknown variable '" + v + "'", vat);
        c.expect('=');
        if (c.integer() != 0) c.fail("transversal must be given as <var>=0", vat);
        zero.push_back(idx);
        c.accept(',');
      }
      std::sort(zero.begin(), zero.end());
      if (zero != spec.fiber) c.fail("transversal must set exactly the fiber variables to zero", at);
      spec.transversal_zero = zero;
    } else if (kw == "symbol") {
      c.expect_word("A");
      c.expect('=');
      Series A = parse_scalar(c, ctx);
      c.expect(',');
      c.expect_word("B");
      c.expect('=');
      Series B = parse_scalar(c, ctx);
      expect_end(c);
      spec.plane_symbol = std::make_pair(A, B);
    } else if (kw == "section") {
      SectionSpec sec;
      sec.line = line;
      sec.name = c.ident();
      c.expect_word("order");
      sec.order = c.integer();
      if (sec.order < 1 || sec.order > spec.truncation) c.fail("section order must be between 1 and the truncation", at);
      c.expect(':');
      c.expect_word("base");
      c.expect('=');
      c.expect('(');
      do sec.base.push_back(parse_scalar(c, ctx));
      while (c.accept(','));
      c.expect(')');
      if (static_cast<int>(sec.base.size()) != spec.dim) c.fail("base map needs one entry per variable", at);
      while (c.accept(';')) {
        if (c.eof()) break;
        std::size_t jat = c.pos();
        std::string name = c.ident();
        if (name.rfind("s_", 0) != 0) c.fail("expected s_<var>[...]", jat);
        Context jctx = ctx;
        jctx.jet_limit = sec.order;
        ExprParser p(c, jctx);
        JetKey k = p.jet_coordinate(name, jat, "s");
        if (order(k.second) == 0) c.fail("the base map is set by 'base', not by order-zero jets", jat);
        c.expect('=');
        sec.jets.push_back({JetCoordinate{k.first, k.second}, parse_scalar(c, ctx)});
      }
      expect_end(c);
      spec.sections.push_back(std::move(sec));
    } else if (kw == "connection") {
      std::string name = c.ident();
      c.expect_word("order");
      int ord = c.integer();
      if (ord < 1 || ord > spec.truncation) c.fail("connection order must be between 1 and the truncation", at);
      int dir = direction(c, ctx);
      if (std::find(spec.fiber.begin(), spec.fiber.end(), dir) == spec.fiber.end())
        c.fail("connection direction must lie in the distribution", at);
      c.expect(':');
      ConnectionSpec* conn = nullptr;
      for (auto& cs : spec.connections)
        if (cs.name == name) conn = &cs;
      if (!conn) {
        spec.connections.push_back(ConnectionSpec{name, ord, {}, line});
        conn = &spec.connections.back();
      }
      if (conn->order != ord) c.fail("connection '" + name + "' declared with two orders", at);
      if (conn->values.count(dir)) c.fail("direction declared twice for connection '" + name + "'", at);
      auto& vals = conn->values[dir];
      Context jctx = ctx;
      jctx.jet_limit = ord;
      while (!c.eof()) {
        std::size_t jat = (c.skip_ws(), c.pos());
        std::string jn = c.ident();
        if (jn != "p" && jn.rfind("p_", 0) != 0) c.fail("expected p_<var>[...]", jat);
        ExprParser p(c, jctx);
        JetKey k = p.jet_coordinate(jn, jat, "p");
        if (order(k.second) == 0) c.fail("the order-zero part of a connection is fixed to its direction", jat);
        c.expect('=');
        vals.push_back({JetCoordinate{k.first, k.second}, parse_scalar(c, ctx)});
        if (!c.accept(';')) expect_end(c);
      }
    } else {
      c.fail("unknown statement '" + kw + "'", at);
    }
  }
  return spec;
}

namespace {

std::string coord_text(const std::string& prefix, const JetCoordinate& jc, const std::vector<std::string>& vars) {
  std::string s = prefix + "_" + vars[jc.component] + "[";
  for (std::size_t i = 0; i < jc.alpha.size(); ++i) s += (i ? "," : "") + std::to_string(jc.alpha[i]);
  return s + "]";
}

std::string paren(const Series& s, const std::vector<std::string>& vars) { return "(" + to_string(s, vars) + ")"; }

}  // namespace

std::string print_problem(const ProblemSpec& spec) {
  std::ostringstream out;
  const auto& V = spec.vars;
  out << "manifold dim " << spec.dim << "\n";
  out << "vars";
  for (const auto& v : V) out << " " << v;
  out << "\n";
  if (!spec.fiber.empty()) {
    out << "distribution V = span(";
    for (std::size_t i = 0; i < spec.fiber.size(); ++i) out << (i ? " " : "") << "d/d" << V[spec.fiber[i]];
    out << ")\n";
  }
  out << "truncation " << spec.truncation << "\n";
  for (const auto& eq : spec.equations) {
    out << "equation " << eq.name << " order " << eq.order << " on " << (eq.on_v ? "V" : "T") << ":";
    for (std::size_t r = 0; r < eq.relations.size(); ++r) {
      out << (r ? "; " : " ");
      const auto& terms = eq.relations[r].terms;
      for (std::size_t t = 0; t < terms.size(); ++t)
        out << (t ? " + " : "") << paren(terms[t].second, V) << "*" << coord_text("p", terms[t].first, V);
      out << " = 0";
    }
    out << "\n";
  }
  if (spec.transversal_zero) {
    out << "transversal N:";
    for (std::size_t i = 0; i < spec.transversal_zero->size(); ++i)
      out << (i ? ", " : " ") << V[(*spec.transversal_zero)[i]] << "=0";
    out << "\n";
  }
  if (spec.plane_symbol)
    out << "symbol A = " << paren(spec.plane_symbol->first, V) << ", B = " << paren(spec.plane_symbol->second, V) << "\n";
  for (const auto& sec : spec.sections) {
    out << "section " << sec.name << " order " << sec.order << ": base = (";
    for (std::size_t i = 0; i < sec.base.size(); ++i) out << (i ? ", " : "") << to_string(sec.base[i], V);
    out << ")";
    for (const auto& [jc, s] : sec.jets) out << "; " << coord_text("s", jc, V) << " = " << paren(s, V);
    out << "\n";
  }
  for (const auto& conn : spec.connections)
    for (const auto& [dir, vals] : conn.values) {
      out << "connection " << conn.name << " order " << conn.order << " d/d" << V[dir] << ":";
      for (std::size_t i = 0; i < vals.size(); ++i)
        out << (i ? "; " : " ") << coord_text("p", vals[i].first, V) << " = " << paren(vals[i].second, V);
      out << "\n";
    }
  return out.str();
}

LinearLieEquation build_equation(const ProblemSpec& spec, const EquationSpec& eq) {
  return LinearLieEquation::build(spec.dim, eq.order, spec.truncation, spec.fiber, eq.on_v, eq.relations);
}

GroupoidSection build_section(const ProblemSpec& spec, const SectionSpec& sec) {
  JetSection J = holonomic_lift(sec.base, sec.order, spec.dim);
  for (const auto& [jc, s] : sec.jets) J.at(jc.component, jc.alpha) = s;
  try {
    return GroupoidSection(std::move(J));
  } catch (const Error& e) {
    throw ParseError(std::string("section '") + sec.name + "': " + e.what(), sec.line, 1);
  }
}

PartialConnection build_connection(const ProblemSpec& spec, const ConnectionSpec& conn) {
  std::vector<int> fiber;
  std::vector<JetSection> omega;
  for (int w : spec.fiber) {
    JetSection om(spec.dim, conn.order, spec.dim, spec.truncation);
    om.at(w, 0) = Series::constant(spec.dim, spec.truncation, 1);
    auto it = conn.values.find(w);
    if (it != conn.values.end())
      for (const auto& [jc, s] : it->second) om.at(jc.component, jc.alpha) = s;
    fiber.push_back(w);
    omega.push_back(std::move(om));
  }
  return PartialConnection(std::move(fiber), std::move(omega));
}

}  // namespace lieq
