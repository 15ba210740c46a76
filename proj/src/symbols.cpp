#include "lieq/symbols.hpp"

#include "lieq/errors.hpp"

namespace lieq {

std::vector<SymbolLabel> symbol_basis(int n, int k) {
  std::vector<SymbolLabel> out;
  auto exps = multi_index_homogeneous(n, k);
  for (int l = 0; l < n; ++l)
    for (const auto& a : exps) out.push_back({l, a});
  return out;
}

int symbol_dim(int n, int k) {
  if (k < 0) return 0;
  return n * static_cast<int>(multi_index_homogeneous(n, k).size());
}

int symbol_position(int n, int k, int component, const MultiIndex& a) {
  if (k < 0 || order(a) != k) return -1;
  auto exps = multi_index_homogeneous(n, k);
  for (std::size_t p = 0; p < exps.size(); ++p)
    if (exps[p] == a) return component * static_cast<int>(exps.size()) + static_cast<int>(p);
  return -1;
}

bool SymbolSpace::contains(const RationalVector& v) const {
  if (v.size() != ambient_dim()) return false;
  if (dim() == 0) return v.isZero();
  return exact_solve(basis, v).has_value();
}

bool SymbolSpace::same_span(const SymbolSpace& other) const {
  if (n_base != other.n_base || order != other.order) return false;
  if (dim() != other.dim()) return false;
  if (dim() == 0) return true;
  return same_column_span(basis, other.basis);
}

SymbolSpace SymbolSpace::from_spanning(int n, int k, const RationalMatrix& vectors) {
  SymbolSpace s{n, k, RationalMatrix(symbol_dim(n, k), 0)};
  if (vectors.cols() == 0) return s;
  if (vectors.rows() != symbol_dim(n, k)) throw DimensionError("symbol vectors have the wrong length");
  // Keep the independent columns, in order.
  std::vector<Eigen::Index> keep;
  RationalMatrix acc(vectors.rows(), 0);
  Eigen::Index rank = 0;
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    RationalMatrix trial(vectors.rows(), acc.cols() + 1);
    trial << acc, vectors.col(c);
    Eigen::Index r = exact_rank(trial);
    if (r > rank) {
      acc = trial;
      rank = r;
    }
  }
  s.basis = acc;
  return s;
}

SymbolSpace SymbolSpace::full(int n, int k) {
  const int d = symbol_dim(n, k);
  return SymbolSpace{n, k, RationalMatrix::Identity(d, d)};
}

SymbolSpace SymbolSpace::zero(int n, int k) { return SymbolSpace{n, k, RationalMatrix(symbol_dim(n, k), 0)}; }

namespace {

void subsets_rec(int n, int r, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == r) {
    out.push_back(cur);
    return;
  }
  for (int v = start; v < n; ++v) {
    cur.push_back(v);
    subsets_rec(n, r, v + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> form_indices(int n, int r) {
  std::vector<std::vector<int>> out;
  if (r < 0 || r > n) return out;
  std::vector<int> cur;
  subsets_rec(n, r, 0, cur, out);
  return out;
}

int form_symbol_dim(int n, int r, int k) {
  return static_cast<int>(form_indices(n, r).size()) * symbol_dim(n, k);
}

int form_symbol_position(int n, int r, int k, const std::vector<int>& I, int component, const MultiIndex& a) {
  auto subsets = form_indices(n, r);
  for (std::size_t s = 0; s < subsets.size(); ++s)
    if (subsets[s] == I) {
      int p = symbol_position(n, k, component, a);
      if (p < 0) return -1;
      return static_cast<int>(s) * symbol_dim(n, k) + p;
    }
  return -1;
}

RationalMatrix delta_matrix(int n, int r, int k) {
  const int rows = form_symbol_dim(n, r + 1, k - 1);
  const int cols = form_symbol_dim(n, r, k);
  RationalMatrix m = RationalMatrix::Zero(rows, cols);
  if (rows == 0 || cols == 0) return m;
  auto subsets = form_indices(n, r);
  auto labels = symbol_basis(n, k);
  const int sd = symbol_dim(n, k);
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    for (std::size_t b = 0; b < labels.size(); ++b) {
      const int col = static_cast<int>(s) * sd + static_cast<int>(b);
      for (int i = 0; i < n; ++i) {
        if (labels[b].exponent[i] == 0) continue;
        MultiIndex lowered = labels[b].exponent;
        lowered[i] -= 1;
        // e^i ^ e^I sorted: sign from the number of entries of I below i.
        int below = 0;
        bool repeated = false;
        for (int v : subsets[s]) {
          if (v == i) repeated = true;
          if (v < i) ++below;
        }
        if (repeated) continue;
        std::vector<int> J = subsets[s];
        J.insert(std::upper_bound(J.begin(), J.end(), i), i);
        const int sign = below % 2 == 0 ? 1 : -1;
        const int row = form_symbol_position(n, r + 1, k - 1, J, labels[b].component, lowered);
        m(row, col) -= sign;
      }
    }
  }
  return m;
}

RationalVector delta_map(int n, int r, int k, const RationalVector& xi) {
  if (xi.size() != form_symbol_dim(n, r, k)) throw DimensionError("delta argument has the wrong length");
  return delta_matrix(n, r, k) * xi;
}

RationalVector symbol_power(const std::vector<Rational>& linear_form, int k, int component) {
  const int n = static_cast<int>(linear_form.size());
  RationalVector v = RationalVector::Zero(symbol_dim(n, k));
  for (const auto& a : multi_index_homogeneous(n, k)) {
    Rational c = 1;
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < a[i]; ++t) c *= linear_form[i];
    v(symbol_position(n, k, component, a)) = c;
  }
  return v;
}

SymbolSpace symbol_prolong(const SymbolSpace& g) {
  const int n = g.n_base;
  const int k = g.order;
  const int amb = symbol_dim(n, k);
  // rows annihilating g^k
  RationalMatrix ann;
  if (g.dim() == 0)
    ann = RationalMatrix::Identity(amb, amb);
  else
    ann = exact_kernel(RationalMatrix(g.basis.transpose())).transpose();
  RationalMatrix d = delta_matrix(n, 0, k + 1);  // rows: (i, l, a) with I = {i}
  RationalMatrix cond = RationalMatrix::Zero(n * ann.rows(), d.cols());
  for (int i = 0; i < n; ++i)
    cond.middleRows(i * ann.rows(), ann.rows()) = ann * d.middleRows(i * amb, amb);
  RationalMatrix ker = exact_kernel(cond);
  return SymbolSpace{n, k + 1, ker};
}

bool DeltaCohomology::exact() const {
  for (int c : cohomology)
    if (c != 0) return false;
  return true;
}

namespace {

/** Basis of r-forms with values in g, as columns in the ambient form coordinates. */
RationalMatrix forms_with_values(const SymbolSpace& g, int r) {
  const int n = g.n_base;
  auto subsets = form_indices(n, r);
  const int sd = symbol_dim(n, g.order);
  RationalMatrix m = RationalMatrix::Zero(static_cast<int>(subsets.size()) * sd, subsets.size() * g.dim());
  for (std::size_t s = 0; s < subsets.size(); ++s)
    m.block(s * sd, s * g.dim(), sd, g.dim()) = g.basis;
  return m;
}

}  // namespace

DeltaCohomology delta_cohomology(const std::vector<SymbolSpace>& chain) {
  DeltaCohomology out;
  if (chain.empty()) return out;
  const int n = chain[0].n_base;
  const int m = chain[0].order;
  for (std::size_t r = 0; r < chain.size(); ++r)
    if (chain[r].n_base != n || chain[r].order != m - static_cast<int>(r))
      throw ChainError("chain entries must have orders m, m-1, m-2, ...");
  RationalMatrix prev_image;  // delta of the previous space, in the current ambient coordinates
  for (std::size_t r = 0; r < chain.size(); ++r) {
    const int ri = static_cast<int>(r);
    const int k = m - ri;
    RationalMatrix W = forms_with_values(chain[r], ri);
    const int dimW = static_cast<int>(W.cols());
    RationalMatrix image = delta_matrix(n, ri, k) * W;
    const int rank_out = dimW == 0 ? 0 : static_cast<int>(exact_rank(image));
    int image_in = 0;
    if (r > 0 && prev_image.cols() > 0) {
      image_in = static_cast<int>(exact_rank(prev_image));
      if (image_in > 0) {
        if (dimW == 0) throw ChainError("delta leaves the declared space at position " + std::to_string(r));
        RationalMatrix both(W.rows(), W.cols() + prev_image.cols());
        both << W, prev_image;
        if (exact_rank(both) != dimW) throw ChainError("delta leaves the declared space at position " + std::to_string(r));
      }
    }
    out.space_dims.push_back(dimW);
    out.kernel_dims.push_back(dimW - rank_out);
    out.image_dims.push_back(image_in);
    out.cohomology.push_back(dimW - rank_out - image_in);
    prev_image = image;
  }
  return out;
}

AcyclicityReport two_acyclicity(const SymbolSpace& g, int max_l) {
  AcyclicityReport rep;
  std::vector<SymbolSpace> tower{g};
  for (int l = 1; l <= max_l; ++l) tower.push_back(symbol_prolong(tower.back()));
  for (int l = 2; l <= max_l; ++l) {
    auto coh = delta_cohomology({tower[l], tower[l - 1], tower[l - 2]});
    rep.steps.push_back(coh);
    if (!coh.exact() && rep.two_acyclic) {
      rep.two_acyclic = false;
      rep.failing_l = l;
    }
  }
  return rep;
}

std::string symbol_label_string(const SymbolLabel& s, const std::vector<std::string>& names_in) {
  auto names = names_in;
  if (names.empty()) {
    const char* base[] = {"x", "y", "z"};
    for (std::size_t i = 0; i < s.exponent.size(); ++i)
      names.push_back(s.exponent.size() <= 3 ? base[i] : "x" + std::to_string(i));
  }
  std::string e;
  for (std::size_t i = 0; i < s.exponent.size(); ++i) {
    if (i) e += ",";
    e += std::to_string(s.exponent[i]);
  }
  return "f^{" + e + "}_" + names[s.component];
}

}  // namespace lieq
