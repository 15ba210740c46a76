#include "lieq/multi_index.hpp"

#include "lieq/errors.hpp"

#include <numeric>

namespace lieq {

int order(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

MultiIndex unit_index(int n, int j) {
  MultiIndex e(n, 0);
  e[j] = 1;
  return e;
}

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

MultiIndex subtract(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] -= b[i];
    if (r[i] < 0) return {};
  }
  return r;
}

bool dominated(const MultiIndex& d, const MultiIndex& g) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > g[i]) return false;
  return true;
}

long long multi_binomial(const MultiIndex& g, const MultiIndex& d) {
  long long r = 1;
  for (std::size_t i = 0; i < g.size(); ++i) {
    long long c = 1;
    for (int t = 1; t <= d[i]; ++t) c = c * (g[i] - d[i] + t) / t;
    r *= c;
  }
  return r;
}

long long multi_factorial(const MultiIndex& a) {
  long long r = 1;
  for (int v : a)
    for (int t = 2; t <= v; ++t) r *= t;
  return r;
}

std::string to_string(const MultiIndex& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

namespace {

void homogeneous_rec(int n, int pos, int remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos == n - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[pos] = v;
    homogeneous_rec(n, pos + 1, remaining - v, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> multi_index_homogeneous(int n, int k) {
  std::vector<MultiIndex> out;
  if (n < 1) throw DimensionError("multi-index enumeration needs n >= 1");
  if (k < 0) return out;
  MultiIndex cur(n, 0);
  homogeneous_rec(n, 0, k, cur, out);
  return out;
}

std::vector<MultiIndex> multi_index_enum(int n, int k) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= k; ++d) {
    auto h = multi_index_homogeneous(n, d);
    out.insert(out.end(), h.begin(), h.end());
  }
  return out;
}

int multi_index_count(int n, int k) {
  if (k < 0) return 0;
  long long c = 1;
  for (int i = 1; i <= n; ++i) c = c * (k + i) / i;
  return static_cast<int>(c);
}

MonomialLayout::MonomialLayout(int n_vars, int trunc) : n_(n_vars), trunc_(trunc) {
  if (n_vars < 0 || trunc < 0) throw DimensionError("negative layout size");
  if (n_vars == 0) {
    exps_.push_back({});
    degs_.push_back(0);
  } else {
    exps_ = multi_index_enum(n_vars, trunc);
    for (auto& e : exps_) degs_.push_back(order(e));
  }
  std::vector<int> counts(trunc + 1, 0);
  for (int deg : degs_) counts[deg]++;
  prefix_.assign(trunc + 2, 0);
  for (int d = 0; d <= trunc; ++d) prefix_[d + 1] = prefix_[d] + counts[d];
  for (int i = 0; i < size(); ++i) index_[exps_[i]] = i;
  up_.assign(n_, std::vector<int>(size(), -1));
  down_.assign(n_, std::vector<int>(size(), -1));
  for (int v = 0; v < n_; ++v) {
    for (int i = 0; i < size(); ++i) {
      MultiIndex e = exps_[i];
      e[v] += 1;
      up_[v][i] = index_of(e);
      e[v] -= 2;
      if (e[v] >= 0) down_[v][i] = index_of(e);
    }
  }
}

int MonomialLayout::count_up_to(int d) const {
  if (d < 0) return 0;
  if (d > trunc_) d = trunc_;
  return prefix_[d + 1];
}

int MonomialLayout::index_of(const MultiIndex& a) const {
  auto it = index_.find(a);
  return it == index_.end() ? -1 : it->second;
}

int MonomialLayout::product_index(int i, int j) const {
  std::call_once(product_once_, [this] {
    const int s = size();
    product_.assign(static_cast<std::size_t>(s) * s, -1);
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b)
        if (degs_[a] + degs_[b] <= trunc_) product_[static_cast<std::size_t>(a) * s + b] = index_of(add(exps_[a], exps_[b]));
  });
  return product_[static_cast<std::size_t>(i) * size() + j];
}

std::shared_ptr<const MonomialLayout> MonomialLayout::get(int n_vars, int trunc) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialLayout>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n_vars, trunc);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto layout = std::make_shared<const MonomialLayout>(n_vars, trunc);
  cache.emplace(key, layout);
  return layout;
}

}  // namespace lieq
