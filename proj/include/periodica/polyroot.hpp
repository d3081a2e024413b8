#ifndef PERIODICA_POLYROOT_HPP
#define PERIODICA_POLYROOT_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "periodica/creal.hpp"
#include "periodica/exact.hpp"
#include "periodica/interval.hpp"

namespace periodica {

class NoSignChangeError : public std::runtime_error {
 public:
  explicit NoSignChangeError(const std::string& what)
      : std::runtime_error(what) {}
};

class MultipleRootError : public std::runtime_error {
 public:
  explicit MultipleRootError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Coefficients in ascending order: poly[i] is the coefficient of X^i.
using RatPoly = std::vector<Rat>;

inline Rat eval_poly(const RatPoly& p, const Rat& x) {
  Rat acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline RatInterval eval_poly(const std::vector<RatInterval>& p,
                             const RatInterval& x) {
  RatInterval acc = RatInterval::point(Rat(0));
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline RatPoly derivative(const RatPoly& p) {
  RatPoly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(Rat(long(i)) * p[i]);
  return d;
}

namespace detail {

inline void trim_poly(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RatPoly poly_rem(RatPoly a, const RatPoly& b) {
  trim_poly(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rat factor = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= factor * b[i];
    a.pop_back();
    trim_poly(a);
  }
  return a;
}

inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
  trim_poly(a);
  trim_poly(b);
  while (!b.empty()) {
    RatPoly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rat lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

inline RatPoly poly_div_exact(const RatPoly& a, const RatPoly& b) {
  RatPoly rem = a;
  trim_poly(rem);
  RatPoly q(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, Rat(0));
  while (rem.size() >= b.size() && !rem.empty()) {
    Rat factor = rem.back() / b.back();
    size_t shift = rem.size() - b.size();
    q[shift] = factor;
    for (size_t i = 0; i < b.size(); ++i) rem[i + shift] -= factor * b[i];
    rem.pop_back();
    trim_poly(rem);
  }
  return q;
}

inline int sign_of(const Rat& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

inline int sturm_variations(const std::vector<RatPoly>& chain, const Rat& x) {
  int count = 0, last = 0;
  for (const auto& p : chain) {
    int s = sign_of(eval_poly(p, x));
    if (s != 0) {
      if (last != 0 && s != last) ++count;
      last = s;
    }
  }
  return count;
}

}  // namespace detail

/// Strip repeated factors: P / gcd(P, P').
inline RatPoly square_free(const RatPoly& p0) {
  RatPoly p = p0;
  detail::trim_poly(p);
  if (p.size() <= 1) return p;
  RatPoly g = detail::poly_gcd(p, derivative(p));
  if (g.size() <= 1) return p;
  return detail::poly_div_exact(p, g);
}

/// Isolating intervals for the real roots of a rational-coefficient
/// polynomial via Sturm chains.  Each returned interval contains
/// exactly one root; exact rational roots come back as point intervals.
inline std::vector<RatInterval> isolate_roots(const RatPoly& poly) {
  RatPoly p = square_free(poly);
  if (p.size() <= 1) return {};
  std::vector<RatPoly> chain{p, derivative(p)};
  for (;;) {
    RatPoly r = detail::poly_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  // Cauchy bound: all roots lie in [-B, B].
  Rat b(1);
  for (size_t i = 0; i + 1 < p.size(); ++i)
    b = std::max(b, Rat(abs(p[i] / p.back())));
  b += 1;

  std::vector<RatInterval> found;
  struct Span {
    Rat lo, hi;
    int vlo, vhi;
  };
  std::vector<Span> work{{-b, b, detail::sturm_variations(chain, -b),
                          detail::sturm_variations(chain, b)}};
  while (!work.empty()) {
    Span s = work.back();
    work.pop_back();
    int roots = s.vlo - s.vhi;
    if (roots == 0) continue;
    if (roots == 1) {
      found.emplace_back(s.lo, s.hi);
      continue;
    }
    Rat mid = (s.lo + s.hi) / 2;
    if (eval_poly(p, mid) == 0) {
      found.push_back(RatInterval::point(mid));
      // Count the midpoint out of both halves by nudging the split.
      Rat eps = (s.hi - s.lo) / 1024;
      Rat l = mid - eps, r = mid + eps;
      while (eval_poly(p, l) == 0) l = (s.lo + l) / 2;
      while (eval_poly(p, r) == 0) r = (r + s.hi) / 2;
      work.push_back({s.lo, l, s.vlo, detail::sturm_variations(chain, l)});
      work.push_back({r, s.hi, detail::sturm_variations(chain, r), s.vhi});
    } else {
      int vmid = detail::sturm_variations(chain, mid);
      work.push_back({s.lo, mid, s.vlo, vmid});
      work.push_back({mid, s.hi, vmid, s.vhi});
    }
  }
  std::sort(found.begin(), found.end(),
            [](const RatInterval& a, const RatInterval& b) { return a.lo < b.lo; });
  return found;
}

namespace detail {

/// P(point) as a computable real, coefficients given as computable reals.
inline CReal eval_creal_poly(const std::vector<CReal>& coeffs, const Rat& at) {
  CReal acc = from_rational(Rat(0));
  Rat power(1);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    acc = arith(acc, scale_rational(coeffs[i], power), ArithOp::Add);
    power *= at;
  }
  return acc;
}

}  // namespace detail

/// A simple real root of P(X) = sum coeffs[i] X^i inside the bracket
/// [a, b], as a computable real.
///
/// The bracket must be certified: P changes sign strictly between the
/// endpoints (checked with the given fuel), and the derivative's
/// interval enclosure over the bracket must exclude zero, which is what
/// makes the root simple and yields the two-sided slope bounds
/// c |X - zeta| <= |P(X)| <= d |X - zeta|.  Rational-coefficient input
/// should be square_free()d first; for oracle coefficients the enclosure
/// check is the enforcement.
///
/// The approximation at index x splits the bracket into x+1 equal
/// parts, evaluates the degree-k approximation P_x (coefficients frozen
/// at index x) on the midpoints, and takes the leftmost midpoint where
/// |P_x| falls under (d(b-a)+2q)/(2(x+1)), with q the coefficient-error
/// envelope sum_i max(|a|,|b|)^i.  That midpoint is within
/// (d(b-a)+4q)/(2c(x+1)) of the root; one final reindex normalizes the
/// modulus to 1/(x+1).
inline CReal poly_root(const std::vector<CReal>& coeffs_in,
                       std::pair<Rat, Rat> bracket,
                       Fuel fuel = Fuel(Nat(10000))) {
  if (coeffs_in.size() < 2)
    throw DomainError("poly_root: need degree >= 1");
  if (bracket.first >= bracket.second)
    throw DomainError("poly_root: empty bracket");
  std::vector<CReal> coeffs;
  coeffs.reserve(coeffs_in.size());
  for (const auto& c : coeffs_in) coeffs.push_back(detail::as_inverse(c));
  const Rat a = bracket.first, b = bracket.second;
  const size_t k = coeffs.size() - 1;

  // Derivative enclosure over the bracket, refining the coefficient
  // probe index until |P'| is certified away from zero.
  RatInterval span(a, b);
  Rat c_low, d_high;
  bool certified = false;
  Nat probe = 15;
  for (int round = 0; round < 8 && !certified; ++round, probe = 2 * probe + 1) {
    Rat eps = make_rat(1, probe + 1);
    std::vector<RatInterval> dcoeffs;
    for (size_t i = 1; i <= k; ++i) {
      Rat mid = coeffs[i].approx(probe) * Rat(long(i));
      Rat wid = eps * Rat(long(i));
      dcoeffs.emplace_back(mid - wid, mid + wid);
    }
    RatInterval dp = eval_poly(dcoeffs, span);
    if (!dp.contains_zero()) {
      c_low = std::min(abs(dp.lo), abs(dp.hi));
      d_high = std::max(abs(dp.lo), abs(dp.hi));
      certified = true;
    }
  }
  if (!certified)
    throw MultipleRootError(
        "poly_root: derivative enclosure straddles zero on the whole "
        "bracket; root may be multiple or the bracket too wide");

  // Certified sign change at the endpoints.
  Cmp sa = cmp_rational(detail::eval_creal_poly(coeffs, a), Rat(0), fuel);
  Cmp sb = cmp_rational(detail::eval_creal_poly(coeffs, b), Rat(0), fuel);
  if (sa == Cmp::Unknown || sb == Cmp::Unknown || sa == sb)
    throw NoSignChangeError(
        "poly_root: could not certify a strict sign change at the bracket "
        "endpoints");

  // Coefficient-error envelope q and the slope constants.
  Rat big = std::max(abs(a), abs(b));
  Rat q(0), power(1);
  for (size_t i = 0; i <= k; ++i) {
    q += power;
    power *= big;
  }
  Rat width = b - a;
  Rat bound_const = (d_high * width + 4 * q) / (2 * c_low);
  Nat m = ceil_rat(bound_const);
  if (m < 1) m = 1;
  Rat threshold_num = d_high * width + 2 * q;

  ClassTag cls = ClassTag::lower_elementary();
  for (const auto& c : coeffs) cls = class_join(cls, c.cls());

  // Admissible midpoints (those with |P_x| under the threshold) can
  // only lie within (d(b-a)+4q)/(2c(x+1)) of the root: away from it,
  // |P_x| >= c|X - zeta| - q/(x+1) already exceeds the threshold.  In
  // grid units that is a window of constant width, so the leftmost
  // admissible index is found by bisecting for the sign flip of P_x and
  // scanning the window around it; the result is identical to a full
  // left-to-right scan.
  Nat window = ceil_rat((d_high * width + 4 * q) / (c_low * width)) + 2;

  auto raw = [coeffs, a, width, threshold_num, window, k](const Nat& y) {
    std::vector<Rat> cx(k + 1);
    for (size_t i = 0; i <= k; ++i) cx[i] = coeffs[i].approx(y);
    Rat threshold = threshold_num / (2 * (Rat(y) + 1));
    auto mid_at = [&](const Nat& j) -> Rat {
      return a + width * make_rat(2 * j + 1, 2 * (y + 1));
    };
    auto p_at = [&](const Nat& j) {
      Rat mid = mid_at(j);
      Rat acc(0);
      for (size_t i = k + 1; i-- > 0;) acc = acc * mid + cx[i];
      return acc;
    };
    auto scan = [&](const Nat& from, const Nat& to) -> std::optional<Rat> {
      for (Nat j = from; j <= to; ++j) {
        Rat mid = mid_at(j);
        Rat acc(0);
        for (size_t i = k + 1; i-- > 0;) acc = acc * mid + cx[i];
        if (abs(acc) <= threshold) return mid;
      }
      return std::nullopt;
    };
    Rat p_lo = p_at(Nat(0)), p_hi = p_at(y);
    if (p_lo == 0 || p_hi == 0 || (p_lo > 0) == (p_hi > 0)) {
      // No clean sign flip on the grid (root hugging an endpoint);
      // fall back to the dense scan.
      if (auto r = scan(Nat(0), y)) return *r;
      throw DomainError("poly_root: no admissible midpoint (broken bounds)");
    }
    Nat lo = 0, hi = y;
    while (hi - lo > 1) {
      Nat mid_j = (lo + hi) / 2;
      Rat v = p_at(mid_j);
      if (v == 0) {
        lo = mid_j;
        break;
      }
      if ((v > 0) == (p_lo > 0))
        lo = mid_j;
      else
        hi = mid_j;
    }
    Nat from = lo > window ? Nat(lo - window) : Nat(0);
    Nat to = lo + window < y ? Nat(lo + window) : y;
    if (auto r = scan(from, to)) return *r;
    if (auto r = scan(Nat(0), y)) return *r;
    throw DomainError("poly_root: no admissible midpoint (broken bounds)");
  };

  return CReal(
      [raw, m](const Nat& x) { return raw(m * x + m); },
      ModulusKind::Inverse, cls, "polynomial root");
}

/// Convenience overload for rational coefficients: square-free
/// reduction is applied before the procedure runs.
inline CReal poly_root(const RatPoly& poly, std::pair<Rat, Rat> bracket,
                       Fuel fuel = Fuel(Nat(10000))) {
  RatPoly p = square_free(poly);
  std::vector<CReal> coeffs;
  for (const auto& c : p) coeffs.push_back(from_rational(c));
  return poly_root(coeffs, std::move(bracket), std::move(fuel));
}

}  // namespace periodica

#endif  // PERIODICA_POLYROOT_HPP
