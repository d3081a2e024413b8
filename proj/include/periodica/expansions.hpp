#ifndef PERIODICA_EXPANSIONS_HPP
#define PERIODICA_EXPANSIONS_HPP

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "periodica/creal.hpp"
#include "periodica/exact.hpp"

/// Alternative representations of reals: approximation pairs (A, E)
/// with E decreasing to zero, nested interval sequences, and base-b
/// digit expansions, with the conversions between them and to
/// computable reals.
namespace periodica {

using RatFn1 = std::function<Rat(const Nat&)>;

/// |A(x) - alpha| <= E(x), E monotonically decreasing to 0.
struct ApproxPair {
  RatFn1 A;
  RatFn1 E;
};

/// f nondecreasing, g nonincreasing, f(x) <= alpha <= g(x), widths -> 0.
struct NestedIntervals {
  RatFn1 f;
  RatFn1 g;
};

/// alpha = integer_part + sum_{n>=1} digits(n)/base^n, digits in
/// {0..base-1}.
struct DigitStream {
  Nat base;
  Nat integer_part;
  std::function<Nat(const Nat&)> digits;
};

/// f(x) = max_{n<=x}(A - E), g(x) = min_{n<=x}(A + E): the running
/// extremes turn an approximation pair into nested intervals.
inline NestedIntervals approx_to_nested(const ApproxPair& p) {
  struct State {
    std::vector<std::pair<Rat, Rat>> cache;
    std::mutex mu;
  };
  auto st = std::make_shared<State>();
  auto at = [st, p](const Nat& x) {
    std::lock_guard<std::mutex> lock(st->mu);
    unsigned long need = to_ulong(x);
    while (st->cache.size() <= need) {
      Nat n(st->cache.size());
      Rat lo = p.A(n) - p.E(n);
      Rat hi = p.A(n) + p.E(n);
      if (!st->cache.empty()) {
        lo = std::max(lo, st->cache.back().first);
        hi = std::min(hi, st->cache.back().second);
      }
      st->cache.emplace_back(lo, hi);
    }
    return st->cache[need];
  };
  return NestedIntervals{[at](const Nat& x) { return at(x).first; },
                         [at](const Nat& x) { return at(x).second; }};
}

/// Midpoint / half-width; monotonicity of the widths makes E decreasing.
inline ApproxPair nested_to_approx(const NestedIntervals& ni) {
  auto f = ni.f;
  auto g = ni.g;
  return ApproxPair{[f, g](const Nat& x) -> Rat { return (g(x) + f(x)) / 2; },
                    [f, g](const Nat& x) -> Rat { return (g(x) - f(x)) / 2; }};
}

/// A computable real is its own approximation pair with E = modulus.
inline ApproxPair pr_approximation(const CReal& a) {
  return ApproxPair{[a](const Nat& x) { return a.approx(x); },
                    [a](const Nat& x) { return a.modulus(x); }};
}

/// Consume an approximation pair as a computable real by rescanning for
/// the first index whose error drops under 1/(x+1).  The scan length is
/// governed by how fast E decreases; it terminates because inf E = 0.
inline CReal creal_from_approx(const ApproxPair& p, ClassTag cls,
                               std::string provenance) {
  return CReal(
      [p](const Nat& x) {
        Rat target = make_rat(1, x + 1);
        for (Nat n = 0;; ++n)
          if (p.E(n) <= target) return p.A(n);
      },
      ModulusKind::Inverse, cls, std::move(provenance));
}

/// Reconstruction: index x sums the digits through position x+1, which
/// leaves a geometric remainder of at most base^-(x+1) <= 2^-x.
inline CReal badic_to_creal(const DigitStream& d) {
  if (d.base < 2) throw DomainError("badic_to_creal: base must be > 1");
  Nat base = d.base;
  Nat ip = d.integer_part;
  auto digits = d.digits;
  return CReal(
      [base, ip, digits](const Nat& x) {
        unsigned long top = to_ulong(x) + 1;
        Int numer = ip;
        for (unsigned long n = 1; n <= top; ++n) {
          Nat dn = digits(Nat(n));
          if (dn < 0 || dn >= base)
            throw DomainError("badic_to_creal: digit out of range");
          numer = numer * base + dn;
        }
        return make_rat(numer, pow_int(base, top));
      },
      ModulusKind::DyadicExp, ClassTag::recursive(), "digit expansion");
}

/// Outcome of digit extraction: digits up to the first position (if
/// any) where the comparisons could not separate the value from a cut
/// point within fuel.  Position k is the k-th fractional digit,
/// 1-based; position 0 means even the integer part was not separable.
struct DigitExtraction {
  Nat base;
  Nat integer_part;
  std::vector<Nat> digits;  // digits[i] is position i+1
  std::optional<Nat> unknown_at;

  bool complete() const { return !unknown_at.has_value(); }

  /// View as a stream; positions beyond the extracted prefix read 0, so
  /// the stream denotes the truncated rational.
  DigitStream to_stream() const {
    auto ds = std::make_shared<std::vector<Nat>>(digits);
    return DigitStream{base, integer_part, [ds](const Nat& n) {
                         if (n < 1 || n > Nat(ds->size())) return Nat(0);
                         return (*ds)[to_ulong(Nat(n - 1))];
                       }};
  }
};

/// Base-b digit extraction.  Exact rational inputs take the long
/// division path and always succeed; oracle inputs maintain the strict
/// bracket  s < alpha < s + b^-k  and pick each digit by fuelled
/// comparison against the b candidate cut points.  A cut point that
/// cannot be separated (the value may sit exactly on it) yields
/// Unknown-at-position rather than a guessed digit.
inline DigitExtraction extract_digits(const CReal& a, const Nat& base,
                                      const Nat& positions, const Fuel& fuel) {
  if (base < 2) throw DomainError("extract_digits: base must be > 1");
  DigitExtraction out{base, Nat(0), {}, std::nullopt};

  if (a.exact_value()) {
    Rat q = *a.exact_value();
    if (q < 0) throw DomainError("extract_digits: negative value");
    out.integer_part = floor_rat(q);
    Int p = num(q) - out.integer_part * den(q);
    const Int& d = den(q);
    for (Nat k = 1; k <= positions; ++k) {
      p *= base;
      out.digits.push_back(Nat(p / d));
      p %= d;
    }
    return out;
  }

  // Integer part: find ip with ip < alpha < ip + 1.
  if (cmp_rational(a, Rat(0), fuel) != Cmp::Greater) {
    out.unknown_at = 0;
    return out;
  }
  Nat hi = ceil_rat(abs(a.approx(0))) + 2;
  std::optional<Nat> ip;
  for (Nat k = 0; k < hi; ++k) {
    Cmp c = cmp_rational(a, Rat(k + 1), fuel);
    if (c == Cmp::Less) {
      ip = k;
      break;
    }
    if (c == Cmp::Unknown) {
      out.unknown_at = 0;
      return out;
    }
  }
  if (!ip) {
    out.unknown_at = 0;
    return out;
  }
  out.integer_part = *ip;

  Rat s(out.integer_part);
  Rat step(1);
  for (Nat k = 1; k <= positions; ++k) {
    step /= Rat(base);
    Nat digit = base - 1;
    for (Nat j = 1; j < base; ++j) {
      Cmp c = cmp_rational(a, s + Rat(j) * step, fuel);
      if (c == Cmp::Less) {
        digit = j - 1;
        break;
      }
      if (c == Cmp::Unknown) {
        out.unknown_at = k;
        return out;
      }
    }
    out.digits.push_back(digit);
    s += Rat(digit) * step;
  }
  return out;
}

/// Recover the k-th digit of a base-4 expansion with digits in {0, 1}
/// from any rational within 4^-(k+1) of the value:
/// [( [2 4^k q + 1/2] mod 4 ) / 2].
inline Nat digit_recovery(const Rat& q, const Nat& k) {
  Int scale = 2 * pow_int(4, to_ulong(k));
  Rat t = Rat(scale) * q + make_rat(1, 2);
  Int fl = floor_rat(t);
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), fl.get_mpz_t(), 4);
  return Nat(r / 2);
}

/// alpha = sum over the support of chi of 2^-n, bracketed by the
/// partial sums: s_x <= alpha <= s_x + 2^-x.
inline CReal subset_sum_real(std::function<bool(const Nat&)> chi,
                             ClassTag kind) {
  return CReal(
      [chi](const Nat& x) {
        unsigned long top = to_ulong(x);
        Int numer = 0;
        for (unsigned long n = 0; n <= top; ++n)
          if (chi(Nat(n))) numer += pow2(top - n);
        return make_rat(numer, pow2(top));
      },
      ModulusKind::DyadicExp, kind, "subset sum");
}

}  // namespace periodica

#endif  // PERIODICA_EXPANSIONS_HPP
