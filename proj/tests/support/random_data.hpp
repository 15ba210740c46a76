#ifndef LIEQ_TESTS_RANDOM_DATA_HPP
#define LIEQ_TESTS_RANDOM_DATA_HPP

#include "lieq/groupoid.hpp"
#include "lieq/lie_equation.hpp"

#include <random>

namespace lieq::testing {

/** Deterministic generator for property tests. */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }
  /** Small rational p/q with |p| <= 3, 1 <= q <= 3. */
  Rational rational(bool nonzero = false);

 private:
  std::mt19937_64 gen_;
};

/** Polynomial of degree <= deg with random small coefficients, min_deg <= monomial degree. */
Series random_series(Rng& rng, int n_vars, int trunc, int deg, int min_deg = 0, double density = 0.6);

JetSection random_jet(Rng& rng, int n_base, int order, int trunc, int deg, int series_vars = -1);
VectorField random_field(Rng& rng, int n_base, int trunc, int deg, int series_vars = -1);
CheckedSection random_checked(Rng& rng, int n_base, int order, int trunc, int deg);

/** x + unitriangular mixing + higher terms: a polynomial map with f(0) = 0 and invertible linear part. */
std::vector<Series> random_diffeo(Rng& rng, int n_base, int trunc, int deg, int series_vars = -1);

/** Generic (non-holonomic) invertible section. */
GroupoidSection random_groupoid(Rng& rng, int n_base, int order, int trunc, int deg);

}  // namespace lieq::testing

#endif
