#ifndef LIEQ_BRACKET_HPP
#define LIEQ_BRACKET_HPP

#include "lieq/jet.hpp"

#include <optional>

namespace lieq {

/**
 * Pointwise bracket of k-jets, value of order k-1:
 * {X,Y}^i_g = sum_{d<=g} C(g,d) (X^j_d Y^i_{g-d+e_j} - Y^j_d X^i_{g-d+e_j}).
 */
JetSection algebraic_bracket(const JetSection& X, const JetSection& Y);

/**
 * Same value computed the long way: Taylor polynomial representatives, their bracket as
 * vector fields, and the (k-1)-jet of the result at the point.
 */
JetSection algebraic_bracket_oracle(const JetSection& X, const JetSection& Y);

/** [[v+xi, w+eta]]_k = [v,w] + i(v)D eta - i(w)D xi + {xi,eta}; order drops by one. */
CheckedSection first_bracket(const CheckedSection& a, const CheckedSection& b);

/**
 * Bracket on tilde sections without order drop. Lifts default to zero extension; supplied
 * lifts must project onto the arguments.
 */
CheckedSection second_bracket(const CheckedSection& a, const CheckedSection& b,
                              const std::optional<JetSection>& lift_a = std::nullopt,
                              const std::optional<JetSection>& lift_b = std::nullopt);

/** a of order k+1 in tilde form acting on b of order k; lift of b defaults to zero extension. */
CheckedSection third_bracket(const CheckedSection& a, const CheckedSection& b,
                             const std::optional<JetSection>& lift_b = std::nullopt);

}  // namespace lieq

#endif
