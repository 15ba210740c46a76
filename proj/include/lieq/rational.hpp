#ifndef LIEQ_RATIONAL_HPP
#define LIEQ_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <string>

namespace lieq {

/** Exact rational scalar. Expression templates are off so the type is a plain value inside Eigen. */
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/** "num/den", or "num" when the denominator is 1. */
std::string to_string(const Rational& q);

/** Parses "a", "-a", "a/b". Throws std::invalid_argument on malformed text or zero denominator. */
Rational parse_rational(const std::string& text);

Rational factorial(int n);
Rational binomial(int n, int k);

}  // namespace lieq

namespace Eigen {

template <>
struct NumTraits<lieq::Rational> : GenericNumTraits<lieq::Rational> {
  typedef lieq::Rational Real;
  typedef lieq::Rational NonInteger;
  typedef lieq::Rational Nested;
  typedef lieq::Rational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 50
  };
  static inline lieq::Rational epsilon() { return 0; }
  static inline lieq::Rational dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif
