#ifndef PERIODICA_INTERVAL_HPP
#define PERIODICA_INTERVAL_HPP

#include <algorithm>
#include <initializer_list>

#include "periodica/exact.hpp"

namespace periodica {

/// Closed interval with rational endpoints.  Arithmetic returns
/// enclosures: the result interval contains every pointwise result of
/// the operation applied to points of the operands.
struct RatInterval {
  Rat lo;
  Rat hi;

  RatInterval() : lo(0), hi(0) {}
  RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw DomainError("RatInterval: lo > hi");
  }
  static RatInterval point(const Rat& q) { return RatInterval(q, q); }

  bool contains(const Rat& q) const { return lo <= q && q <= hi; }
  Rat width() const { return hi - lo; }
  Rat midpoint() const { return (lo + hi) / 2; }

  bool strictly_positive() const { return lo > 0; }
  bool nonpositive() const { return hi <= 0; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
};

inline RatInterval operator+(const RatInterval& a, const RatInterval& b) {
  return RatInterval(a.lo + b.lo, a.hi + b.hi);
}

inline RatInterval operator-(const RatInterval& a) {
  return RatInterval(-a.hi, -a.lo);
}

inline RatInterval operator-(const RatInterval& a, const RatInterval& b) {
  return a + (-b);
}

inline RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return RatInterval(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

inline RatInterval operator*(const Rat& c, const RatInterval& a) {
  return RatInterval::point(c) * a;
}

/// Sharp enclosure of x^e over the interval; even powers of a
/// zero-straddling interval get the [0, max] form instead of the naive
/// product.
inline RatInterval pow_interval(const RatInterval& a, unsigned long e) {
  if (e == 0) return RatInterval(Rat(1), Rat(1));
  Rat plo, phi;
  mpz_pow_ui(plo.get_num().get_mpz_t(), a.lo.get_num().get_mpz_t(), e);
  mpz_pow_ui(plo.get_den().get_mpz_t(), a.lo.get_den().get_mpz_t(), e);
  mpz_pow_ui(phi.get_num().get_mpz_t(), a.hi.get_num().get_mpz_t(), e);
  mpz_pow_ui(phi.get_den().get_mpz_t(), a.hi.get_den().get_mpz_t(), e);
  if (e % 2 == 1) return RatInterval(plo, phi);
  if (a.lo >= 0) return RatInterval(plo, phi);
  if (a.hi <= 0) return RatInterval(phi, plo);
  return RatInterval(Rat(0), std::max(plo, phi));
}

}  // namespace periodica

#endif  // PERIODICA_INTERVAL_HPP
