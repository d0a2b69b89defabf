#pragma once

#include "sld/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace sld {

// Closed symbolic family of discounting functions d : N -> [0,1],
// non-increasing with limit 0. Keeping the family symbolic (instead of
// accepting arbitrary callables) is what makes exact evaluation and the
// crossing-index queries of the bounded-scan algorithms possible.
//
// Variants:
//   exponential(l)          d(i) = l^i,  0 < l < 1
//   hyperbolic()            d(i) = 1/(i+1)
//   scaled(c, g)            d(i) = c * g(i),  0 < c <= 1
//   shifted(g, k)           d(i) = g(i+k)
//   table_then_tail(T, g)   d(i) = T[i] for i < |T|, else g(i)
//                           (the tail is indexed absolutely)
class DiscountFn {
public:
  enum class Kind { Exponential, Hyperbolic, Scaled, Shifted, TableThenTail };

  static DiscountFn exponential(const Rational& lambda);
  static DiscountFn hyperbolic();
  static DiscountFn scaled(const Rational& factor, const DiscountFn& inner);
  static DiscountFn shifted(const DiscountFn& inner, unsigned long k);
  static DiscountFn table_then_tail(std::vector<Rational> table, const DiscountFn& tail);

  Kind kind() const;

  // Exact value d(i).
  Rational at(unsigned long i) const;

  // The function g with g(i) = d(i+k). Normalizations:
  //   shift(d, 0)                 = d
  //   shift(shift(d, a), b)       = shift(d, a+b)
  //   shift(exponential(l), k)    = scaled(l^k, exponential(l))
  //   shift(scaled(c, g), k)      = scaled(c, shift(g, k))
  DiscountFn shift(unsigned long k) const;

  // Least i with d(i) <= bound; throws std::invalid_argument for
  // bound <= 0 (no finite crossing is guaranteed there).
  unsigned long crossing_index(const Rational& bound) const;

  // True when d(i) > 0 for every i (decided from the shape).
  bool strictly_positive() const;

  bool operator==(const DiscountFn& o) const;
  bool operator!=(const DiscountFn& o) const { return !(*this == o); }

  std::string str() const;

  // Variant accessors; throw std::logic_error when the kind does not match.
  const Rational& lambda() const;
  const Rational& factor() const;
  DiscountFn inner() const;
  unsigned long shift_amount() const;
  const std::vector<Rational>& table() const;

  struct Node;  // implementation detail, defined in discount.cpp

private:
  explicit DiscountFn(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Free-function names for the core queries.
inline Rational discount_value(const DiscountFn& d, unsigned long i) { return d.at(i); }
inline DiscountFn shift_discount(const DiscountFn& d, unsigned long k) { return d.shift(k); }
inline unsigned long crossing_index(const DiscountFn& d, const Rational& bound) {
  return d.crossing_index(bound);
}

}  // namespace sld
