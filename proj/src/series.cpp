#include "lieq/series.hpp"

namespace lieq {

std::vector<std::string> default_var_names(int n) {
  if (n <= 3) {
    static const char* base[] = {"x", "y", "z"};
    return std::vector<std::string>(base, base + n);
  }
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

std::string to_string(const Series& s, const std::vector<std::string>& names_in) {
  auto names = names_in.empty() ? default_var_names(s.n_vars()) : names_in;
  std::string out;
  const int end = s.layout().count_up_to(s.prec());
  for (int i = 0; i < end; ++i) {
    const Rational& c = s.coeff(i);
    if (c == 0) continue;
    const MultiIndex& e = s.layout().exponent(i);
    std::string mono;
    for (int v = 0; v < s.n_vars(); ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[v];
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    Rational mag = c < 0 ? Rational(-c) : c;
    std::string term;
    if (mono.empty())
      term = to_string(mag);
    else if (mag == 1)
      term = mono;
    else
      term = to_string(mag) + "*" + mono;
    if (out.empty())
      out = (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

Series make_series(int n_vars, int trunc, const std::vector<std::pair<MultiIndex, Rational>>& terms) {
  Series s(n_vars, trunc);
  for (const auto& [e, c] : terms) {
    if (order(e) > trunc) continue;
    s.set(e, s.coeff(e) + c);
  }
  return s;
}

}  // namespace lieq
