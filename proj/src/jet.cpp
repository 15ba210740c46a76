#include "lieq/jet.hpp"

#include <algorithm>

namespace lieq {

JetSection::JetSection(int n_base, int order, int series_vars, int trunc)
    : n_base_(n_base), order_(order), series_vars_(series_vars), trunc_(trunc) {
  if (n_base < 1) throw DimensionError("jet section needs n_base >= 1");
  if (order < 0) throw OrderError("negative jet order");
  if (series_vars < n_base) throw DimensionError("coefficient series need at least the base variables");
  layout_ = MonomialLayout::get(n_base, order);
  count_ = layout_->size();
  comps_.assign(static_cast<std::size_t>(n_base) * count_, Series(series_vars, trunc));
}

JetSection JetSection::zero_like(const JetSection& other, int order) {
  return JetSection(other.n_base_, order, other.series_vars_, other.trunc_);
}

Series& JetSection::at(int i, const MultiIndex& a) {
  int p = position(a);
  if (p < 0) throw OrderError("multi-index " + to_string(a) + " exceeds jet order");
  return at(i, p);
}

const Series& JetSection::at(int i, const MultiIndex& a) const {
  int p = position(a);
  if (p < 0) throw OrderError("multi-index " + to_string(a) + " exceeds jet order");
  return at(i, p);
}

bool JetSection::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Series& s) { return s.is_zero(); });
}

int JetSection::min_prec() const {
  int p = trunc_;
  for (const auto& s : comps_) p = std::min(p, s.prec());
  return p;
}

void JetSection::check_compatible(const JetSection& b) const {
  if (n_base_ != b.n_base_ || order_ != b.order_ || series_vars_ != b.series_vars_ || trunc_ != b.trunc_)
    throw DimensionError("jet sections disagree in base, order or coefficient ring");
}

JetSection& JetSection::operator+=(const JetSection& b) {
  check_compatible(b);
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += b.comps_[i];
  return *this;
}

JetSection& JetSection::operator-=(const JetSection& b) {
  check_compatible(b);
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= b.comps_[i];
  return *this;
}

JetSection JetSection::operator-() const {
  JetSection r(*this);
  for (auto& s : r.comps_) s = -s;
  return r;
}

JetSection operator*(const Series& f, const JetSection& a) {
  JetSection r(a);
  for (auto& s : r.comps_) s = f * s;
  return r;
}

JetSection operator*(const Rational& c, const JetSection& a) {
  JetSection r(a);
  for (auto& s : r.comps_) s = s * c;
  return r;
}

bool operator==(const JetSection& a, const JetSection& b) { return (a - b).is_zero(); }

CheckedSection& CheckedSection::operator+=(const CheckedSection& b) {
  if (horizontal.size() != b.horizontal.size()) throw DimensionError("horizontal parts differ in size");
  for (std::size_t i = 0; i < horizontal.size(); ++i) horizontal[i] += b.horizontal[i];
  vertical += b.vertical;
  return *this;
}

CheckedSection& CheckedSection::operator-=(const CheckedSection& b) {
  if (horizontal.size() != b.horizontal.size()) throw DimensionError("horizontal parts differ in size");
  for (std::size_t i = 0; i < horizontal.size(); ++i) horizontal[i] -= b.horizontal[i];
  vertical -= b.vertical;
  return *this;
}

CheckedSection CheckedSection::operator-() const {
  CheckedSection r;
  for (const auto& h : horizontal) r.horizontal.push_back(-h);
  r.vertical = -vertical;
  return r;
}

CheckedSection operator*(const Series& f, const CheckedSection& a) {
  CheckedSection r;
  for (const auto& h : a.horizontal) r.horizontal.push_back(f * h);
  r.vertical = f * a.vertical;
  return r;
}

bool CheckedSection::is_zero() const {
  return vertical.is_zero() && std::all_of(horizontal.begin(), horizontal.end(), [](const Series& s) { return s.is_zero(); });
}

bool operator==(const CheckedSection& a, const CheckedSection& b) { return (a - b).is_zero(); }

VectorField zero_field(const JetSection& like) { return VectorField(like.n_base(), like.zero_series()); }

Series apply_field(const VectorField& v, const Series& f, int n_base) {
  Series r = f.zero_like();
  for (int j = 0; j < n_base; ++j)
    if (!v[j].is_exact_zero()) r += v[j] * f.derive(j);
  // keep the precision of a derivative even when v vanishes
  r.lower_prec(f.prec() - 1);
  return r;
}

VectorField field_bracket(const VectorField& v, const VectorField& w, int n_base) {
  if (static_cast<int>(v.size()) != n_base || static_cast<int>(w.size()) != n_base)
    throw DimensionError("vector fields must have one component per base variable");
  VectorField r;
  for (int i = 0; i < n_base; ++i) r.push_back(apply_field(v, w[i], n_base) - apply_field(w, v[i], n_base));
  return r;
}

JetSection holonomic_lift(const VectorField& theta, int k, int n_base) {
  if (theta.empty()) throw DimensionError("empty vector field");
  if (n_base < 0) n_base = static_cast<int>(theta.size());
  if (static_cast<int>(theta.size()) != n_base) throw DimensionError("vector field needs n_base components");
  if (k < 0) throw OrderError("negative lift order");
  if (k > theta[0].trunc()) throw OrderError("lift order exceeds the series truncation");
  JetSection out(n_base, k, theta[0].n_vars(), theta[0].trunc());
  for (int i = 0; i < n_base; ++i) {
    out.at(i, 0) = theta[i];
    for (int a = 1; a < out.jet_count(); ++a) {
      const MultiIndex& e = out.index(a);
      int var = 0;
      while (e[var] == 0) ++var;
      int prev = out.index_layout().lower(a, var);
      out.at(i, a) = out.at(i, prev).derive(var);
    }
  }
  return out;
}

std::vector<JetSection> spencer_D(const JetSection& xi) {
  if (xi.order() < 1) throw OrderError("linear Spencer operator needs order >= 1");
  const int n = xi.n_base();
  std::vector<JetSection> out;
  for (int j = 0; j < n; ++j) {
    JetSection d = JetSection::zero_like(xi, xi.order() - 1);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < d.jet_count(); ++a) {
        int up = xi.index_layout().raise(a, j);
        d.at(i, a) = xi.at(i, a).derive(j) - xi.at(i, up);
      }
    out.push_back(d);
  }
  return out;
}

JetSection contract_D(const VectorField& v, const JetSection& xi) {
  auto d = spencer_D(xi);
  JetSection out = JetSection::zero_like(xi, xi.order() - 1);
  for (int j = 0; j < xi.n_base(); ++j)
    if (!v[j].is_exact_zero()) out += v[j] * d[j];
  return out;
}

JetSection project(const JetSection& xi, int l) {
  if (l < 0 || l > xi.order()) throw OrderError("projection order out of range");
  JetSection out = JetSection::zero_like(xi, l);
  for (int i = 0; i < xi.n_base(); ++i)
    for (int a = 0; a < out.jet_count(); ++a) out.at(i, a) = xi.at(i, a);
  return out;
}

JetSection zero_extend(const JetSection& xi, int l) {
  if (l < xi.order()) throw OrderError("zero extension must not lower the order");
  JetSection out = JetSection::zero_like(xi, l);
  for (int i = 0; i < xi.n_base(); ++i)
    for (int a = 0; a < xi.jet_count(); ++a) out.at(i, a) = xi.at(i, a);
  return out;
}

VectorField beta(const JetSection& xi) {
  VectorField v;
  for (int i = 0; i < xi.n_base(); ++i) v.push_back(xi.at(i, 0));
  return v;
}

VectorField beta(const CheckedSection& s) {
  VectorField v = s.horizontal;
  for (int i = 0; i < s.n_base(); ++i) v[i] += s.vertical.at(i, 0);
  return v;
}

CheckedSection vertical_only(const JetSection& xi) { return CheckedSection{zero_field(xi), xi}; }

CheckedSection tilde(const JetSection& xi) { return CheckedSection{beta(xi), xi}; }

bool is_tilde(const CheckedSection& s) {
  for (int i = 0; i < s.n_base(); ++i)
    if (!(s.horizontal[i] == s.vertical.at(i, 0))) return false;
  return true;
}

CheckedSection project(const CheckedSection& s, int l) { return CheckedSection{s.horizontal, project(s.vertical, l)}; }

JetForm JetForm::from_section(const JetSection& xi) { return monomial({}, xi); }

JetForm JetForm::monomial(const std::vector<int>& I, const JetSection& xi) {
  JetForm f;
  f.degree = static_cast<int>(I.size());
  f.n_base = xi.n_base();
  f.order = xi.order();
  f.terms.emplace(I, xi);
  return f;
}

JetForm& JetForm::operator+=(const JetForm& b) {
  if (b.terms.empty()) return *this;
  if (terms.empty()) return *this = b;
  if (degree != b.degree || order != b.order || n_base != b.n_base) throw DimensionError("forms of different type");
  for (const auto& [I, xi] : b.terms) {
    auto it = terms.find(I);
    if (it == terms.end())
      terms.emplace(I, xi);
    else
      it->second += xi;
  }
  return *this;
}

bool JetForm::is_zero() const {
  return std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.second.is_zero(); });
}

JetSection JetForm::component(const std::vector<int>& I, const JetSection& like) const {
  auto it = terms.find(I);
  if (it == terms.end()) return JetSection::zero_like(like, order);
  return it->second;
}

int wedge_sign(int j, const std::vector<int>& I, std::vector<int>& out) {
  int passed = 0;
  out.clear();
  for (int v : I) {
    if (v == j) return 0;
    if (v < j) ++passed;
  }
  out = I;
  out.insert(std::upper_bound(out.begin(), out.end(), j), j);
  return passed % 2 == 0 ? 1 : -1;
}

JetForm spencer_D(const JetForm& u) {
  JetForm out;
  out.degree = u.degree + 1;
  out.n_base = u.n_base;
  out.order = u.order - 1;
  std::vector<int> J;
  for (const auto& [I, xi] : u.terms) {
    auto d = spencer_D(xi);
    for (int j = 0; j < u.n_base; ++j) {
      int s = wedge_sign(j, I, J);
      if (s == 0) continue;
      JetSection term = s > 0 ? d[j] : -d[j];
      auto it = out.terms.find(J);
      if (it == out.terms.end())
        out.terms.emplace(J, term);
      else
        it->second += term;
    }
  }
  return out;
}

}  // namespace lieq
