#ifndef PERIODICA_EXACT_HPP
#define PERIODICA_EXACT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

/// Exact scalar kernel: unbounded integers, normalized rationals, and the
/// small helpers the rest of the library leans on.  There is no floating
/// point anywhere; every quantity is an integer or a normalized fraction.
namespace periodica {

/// Unbounded integer.
using Int = mpz_class;
/// Unbounded integer used where only nonnegative values are meaningful.
/// The nonnegativity is a usage convention enforced by the operations
/// below (see monus), not by the type.
using Nat = mpz_class;
/// Normalized rational: canonical form has positive denominator and
/// gcd(|num|, den) = 1.  All mpq_class operators keep values canonical.
using Rat = mpq_class;

class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what)
      : std::runtime_error(what) {}
};

inline Rat make_rat(Int num, Int den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rat q;
  q.get_num() = std::move(num);
  q.get_den() = std::move(den);
  q.canonicalize();
  return q;
}

inline const Int& num(const Rat& q) { return q.get_num(); }
inline const Int& den(const Rat& q) { return q.get_den(); }

/// x - y on naturals, clamped at zero.
inline Nat monus(const Nat& x, const Nat& y) {
  return x >= y ? Nat(x - y) : Nat(0);
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int floor_rat(const Rat& q) { return floor_div(num(q), den(q)); }
inline Int ceil_rat(const Rat& q) { return ceil_div(num(q), den(q)); }

/// Nearest integer to a/b with halves rounded toward +infinity.
inline Int round_half_up(const Int& a, const Int& b) {
  if (b <= 0) throw DomainError("round_half_up: positive denominator required");
  return floor_div(2 * a + b, 2 * b);
}

/// Nearest integer to q, halves toward +infinity.
inline Int round_rat(const Rat& q) { return round_half_up(num(q), den(q)); }

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int pow2(unsigned long e) {
  Int r = 1;
  r <<= e;
  return r;
}

/// 2^(-e) as an exact rational.
inline Rat pow2_neg(unsigned long e) { return make_rat(1, pow2(e)); }

/// floor of the k-th root, k >= 1.
inline Int kth_root_floor(const Int& a, unsigned long k) {
  if (a < 0) throw DomainError("kth_root_floor: negative radicand");
  Int r;
  mpz_root(r.get_mpz_t(), a.get_mpz_t(), k);
  return r;
}

/// least m with m^k >= a (a >= 0).
inline Int kth_root_ceil(const Int& a, unsigned long k) {
  Int r = kth_root_floor(a, k);
  if (pow_int(r, k) < a) ++r;
  return r;
}

inline unsigned long to_ulong(const Int& a) {
  if (a < 0 || !a.fits_ulong_p())
    throw DomainError("value does not fit in unsigned long");
  return a.get_ui();
}

enum class RatOp { Add, Sub, Mul, Div };

/// Exact field arithmetic; division by zero is a domain error.
inline Rat rat_arith(const Rat& a, const Rat& b, RatOp op) {
  switch (op) {
    case RatOp::Add: return a + b;
    case RatOp::Sub: return a - b;
    case RatOp::Mul: return a * b;
    case RatOp::Div:
      if (b == 0) throw DomainError("rat_arith: division by zero");
      return a / b;
  }
  throw DomainError("rat_arith: bad op");
}

enum class RoundMode { TowardNegInf, TowardPosInf, Nearest };

/// Fixed-point decimal rendering of q with `digits` places after the
/// point and an explicit rounding direction.
inline std::string to_decimal_string(const Rat& q, unsigned digits,
                                     RoundMode mode = RoundMode::Nearest) {
  Int scale = pow_int(10, digits);
  Int scaled_num = num(q) * scale;
  const Int& d = den(q);
  Int t;
  switch (mode) {
    case RoundMode::TowardNegInf: t = floor_div(scaled_num, d); break;
    case RoundMode::TowardPosInf: t = ceil_div(scaled_num, d); break;
    case RoundMode::Nearest: t = round_half_up(scaled_num, d); break;
  }
  bool neg = t < 0;
  Int mag = neg ? Int(-t) : t;
  Int ip = mag / scale;
  Int fp = mag % scale;
  std::string s = neg ? "-" : "";
  s += ip.get_str();
  if (digits > 0) {
    std::string frac = fp.get_str();
    s += ".";
    s += std::string(digits - frac.size(), '0');
    s += frac;
  }
  return s;
}

inline std::string to_fraction_string(const Rat& q) {
  std::string s = num(q).get_str();
  if (den(q) != 1) s += "/" + den(q).get_str();
  return s;
}

}  // namespace periodica

#endif  // PERIODICA_EXACT_HPP
