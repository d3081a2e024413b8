#ifndef PERIODICA_SERIES_HPP
#define PERIODICA_SERIES_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "periodica/accumulator.hpp"
#include "periodica/creal.hpp"
#include "periodica/exact.hpp"
#include "periodica/fseq.hpp"

/// Certified series summation.  A series is described by approximations
/// of its terms (a normalized two-index presentation with denominator
/// x+1) together with a tail cutoff xi satisfying
///
///   |sum_{n > xi(x)} alpha(n)| <= 1/(x+1),
///
/// which is exactly what makes the sum a computable real: evaluate the
/// partial sum up to xi(2x+1) at a working index fine enough that the
/// per-term errors and the tail each fit in half the budget.
namespace periodica {

struct SeriesSpec {
  /// Term approximations: value(x, n) is within 1/(x+1) of alpha(n).
  F2Sequence term;
  /// Nondecreasing tail cutoff.
  NatFn1 xi;
  /// Signed numerator of term at working index y (equals f - g); kept
  /// separate so summation does one oracle call per term.
  std::function<Int(const Nat&, const Nat&)> signed_num;
  /// Optional certificate that |alpha(n')| < 1/(2(y+1)) for all n' >= n,
  /// letting the summation loop stop early.  Null when unknown.
  std::function<bool(const Nat& y, const Nat& n)> negligible;
  ClassTag cls;
  std::string label;
};

namespace detail {

inline SeriesSpec make_spec(std::function<Int(const Nat&, const Nat&)> num,
                            NatFn1 xi,
                            std::function<bool(const Nat&, const Nat&)> neg,
                            ClassTag cls, std::string label) {
  F2Sequence term{
      [num](const Nat& x, const Nat& n) {
        Int s = num(x, n);
        return s > 0 ? Nat(s) : Nat(0);
      },
      [num](const Nat& x, const Nat& n) {
        Int s = num(x, n);
        return s < 0 ? Nat(-s) : Nat(0);
      },
      [](const Nat& x, const Nat&) { return x; }, cls};
  return SeriesSpec{std::move(term), std::move(xi), std::move(num),
                    std::move(neg),  cls,           std::move(label)};
}

inline Nat next_pow2(const Nat& v) {
  return pow2(mpz_sizeinbase(v.get_mpz_t(), 2));
}

}  // namespace detail

/// Running partial sums of a term presentation: if alpha is tracked to
/// within 1/(x+1) with denominator x+1, then summing the first m+1 term
/// numerators at working index xm+x+m tracks sum_{n<=m} alpha(n) to
/// within 1/(x+1) again, the m+1 per-term errors telescoping into the
/// coarser denominator.
inline F2Sequence partial_sums(const F2Sequence& alpha) {
  auto af = alpha.f;
  auto ag = alpha.g;
  return F2Sequence{
      [af](const Nat& x, const Nat& m) {
        Nat y = x * m + x + m, s = 0;
        for (Nat n = 0; n <= m; ++n) s += af(y, n);
        return s;
      },
      [ag](const Nat& x, const Nat& m) {
        Nat y = x * m + x + m, s = 0;
        for (Nat n = 0; n <= m; ++n) s += ag(y, n);
        return s;
      },
      [](const Nat& x, const Nat& m) { return x * m + x + m; }, alpha.cls};
}

/// The sum of the series as a computable real.  Index x is served by
/// the partial sum to m = xi(2x+1) evaluated at working index
/// (2x+2)(m+1) - 1; the per-term errors contribute at most 1/(2x+2) in
/// total and the tail at most another 1/(2x+2).
inline CReal skordev_sum(const SeriesSpec& spec) {
  auto num = spec.signed_num;
  auto xi = spec.xi;
  auto neg = spec.negligible;
  return CReal(
      [num, xi, neg](const Nat& x) {
        Nat big_x = 2 * x + 1;
        Nat m = xi(big_x);
        Nat y = (big_x + 1) * (m + 1) - 1;
        Int s = 0;
        for (Nat n = 0; n <= m; ++n) {
          if (neg && neg(y, n)) break;
          s += num(y, n);
        }
        return make_rat(s, y + 1);
      },
      ModulusKind::Inverse, spec.cls, spec.label);
}

// ---------------------------------------------------------------------------
// Constants catalog.

struct ConstantId {
  enum Kind { E, Pi, LnN, CatalanG, EulerGamma, LiouvilleL, Zeta, LnPi };
  Kind kind;
  unsigned long param = 0;

  static ConstantId e() { return {E}; }
  static ConstantId pi() { return {Pi}; }
  static ConstantId ln_n(unsigned long n) { return {LnN, n}; }
  static ConstantId catalan() { return {CatalanG}; }
  static ConstantId euler_gamma() { return {EulerGamma}; }
  static ConstantId liouville() { return {LiouvilleL}; }
  static ConstantId zeta(unsigned long k) { return {Zeta, k}; }
  static ConstantId ln_pi() { return {LnPi}; }
};

namespace detail {

inline Int factorial(const Nat& n) {
  Int f = 1;
  for (Nat i = 2; i <= n; ++i) f *= i;
  return f;
}

inline int parity_sign(const Nat& n) { return mpz_odd_p(n.get_mpz_t()) ? -1 : 1; }

/// terms 1/n!; the paper's floor presentation [ (y+1)/n! ].
inline SeriesSpec e_spec() {
  auto num = [](const Nat& y, const Nat& n) {
    return floor_div(y + 1, factorial(n));
  };
  auto neg = [](const Nat& y, const Nat& n) {
    return factorial(n) > 2 * (y + 1);
  };
  auto xi = [](const Nat& x) {
    if (x == 0) return Nat(1);
    if (x == 1) return Nat(2);
    return x;
  };
  return make_spec(num, xi, neg, ClassTag::lower_elementary(),
                   "factorial-series");
}

/// terms (-1)^n/(2n+1); sums to a quarter of pi.
inline SeriesSpec pi_quarter_spec() {
  auto num = [](const Nat& y, const Nat& n) {
    Int t = round_half_up(y + 1, 2 * n + 1);
    return parity_sign(n) > 0 ? t : Int(-t);
  };
  auto neg = [](const Nat& y, const Nat& n) { return 2 * n + 1 > 2 * (y + 1); };
  auto xi = [](const Nat& x) { return x; };
  return make_spec(num, xi, neg, ClassTag::lower_elementary(),
                   "leibniz-series");
}

/// terms (-1)^n/((n+1) N^(n+1)); sums to ln(1 + 1/N).
inline SeriesSpec ln_step_spec(unsigned long base) {
  Nat nb(base);
  auto den_at = [nb](const Nat& n) {
    return Int((n + 1) * pow_int(nb, to_ulong(Nat(n + 1))));
  };
  auto num = [den_at](const Nat& y, const Nat& n) {
    Int t = round_half_up(y + 1, den_at(n));
    return parity_sign(n) > 0 ? t : Int(-t);
  };
  auto neg = [nb](const Nat& y, const Nat& n) {
    // (n+1) b^(n+1) > 2(y+1), checked in bits first so the power is
    // only materialized when it is small.
    Nat cap = 2 * (y + 1);
    if (n + 1 >= cap) return true;
    if (nb >= 2) {
      size_t bits = mpz_sizeinbase(cap.get_mpz_t(), 2);
      if (n + 1 >= Nat(bits)) return true;
    }
    return Int((n + 1) * pow_int(nb, to_ulong(Nat(n + 1)))) > cap;
  };
  auto xi = [](const Nat& x) { return x; };
  return make_spec(num, xi, neg, ClassTag::lower_elementary(), "log-series");
}

/// terms (-1)^n/(2n+1)^2.
inline SeriesSpec catalan_spec() {
  auto num = [](const Nat& y, const Nat& n) {
    Nat d = (2 * n + 1) * (2 * n + 1);
    Int t = round_half_up(y + 1, d);
    return parity_sign(n) > 0 ? t : Int(-t);
  };
  auto neg = [](const Nat& y, const Nat& n) {
    return (2 * n + 1) * (2 * n + 1) > 2 * (y + 1);
  };
  auto xi = [](const Nat& x) { return x; };
  return make_spec(num, xi, neg, ClassTag::lower_elementary(),
                   "catalan-series");
}

/// terms 10^(-(n+1)!).
inline SeriesSpec liouville_spec() {
  auto neg = [](const Nat& y, const Nat& n) {
    // 10^((n+1)!) > 2(y+1) certified by decimal digit count.
    Int f = factorial(n + 1);
    size_t digits = mpz_sizeinbase(Nat(2 * (y + 1)).get_mpz_t(), 10);
    return f >= Int(static_cast<unsigned long>(digits));
  };
  auto num = [](const Nat& y, const Nat& n) {
    Int d = pow_int(10, to_ulong(factorial(n + 1)));
    return round_half_up(y + 1, d);
  };
  auto xi = [](const Nat& x) { return x; };
  return make_spec(num, xi, neg, ClassTag::lower_elementary(),
                   "liouville-series");
}

/// terms 1/(n+1)^k, k >= 2; the tail obeys the integral estimate
/// sum_{j > M} j^-k <= M^(1-k)/(k-1), so xi(x) = ceil((x+1)^(1/(k-1))).
inline SeriesSpec zeta_spec(unsigned long k) {
  if (k < 2) throw DomainError("zeta requires exponent >= 2");
  auto num = [k](const Nat& y, const Nat& n) {
    return round_half_up(y + 1, pow_int(Nat(n + 1), k));
  };
  auto neg = [k](const Nat& y, const Nat& n) {
    Nat cap = 2 * (y + 1);
    size_t cap_bits = mpz_sizeinbase(cap.get_mpz_t(), 2);
    size_t n1_bits = mpz_sizeinbase(Nat(n + 1).get_mpz_t(), 2);
    // (n+1)^k >= 2^(k (n1_bits - 1)); compare bit counts before
    // materializing the power.
    if (k * (n1_bits - 1) >= cap_bits) return true;
    return Int(pow_int(Nat(n + 1), k)) > cap;
  };
  auto xi = [k](const Nat& x) { return Nat(kth_root_ceil(x + 1, k - 1)); };
  return make_spec(num, xi, neg, ClassTag::lower_elementary(), "zeta-series");
}

/// Inner series of the double sum for Euler's constant:
/// sum_m (-1)^m/((m+2) p^(m+2)) = 1/p - ln(1 + 1/p), summed directly
/// with integer operations (the loop is long when p = 1).
inline CReal gamma_inner_creal(const Nat& p) {
  return CReal(
      [p](const Nat& x) {
        Nat big_x = 2 * x + 1;
        Nat m_max = big_x;  // xi(x) = x
        Nat y = (big_x + 1) * (m_max + 1) - 1;
        Nat yp1 = y + 1;
        Nat cap = 2 * yp1;
        Int s = 0;
        Int pw = Int(p) * p;  // p^(m+2)
        bool negative = false;
        for (Nat m = 0; m <= m_max; ++m) {
          Int d = (m + 2) * pw;
          if (d > cap) break;
          Int t = round_half_up(yp1, d);
          if (negative)
            s -= t;
          else
            s += t;
          negative = !negative;
          pw *= p;
        }
        return make_rat(s, yp1);
      },
      ModulusKind::Inverse, ClassTag::lower_elementary(), "inner log series");
}

/// Outer series for Euler's constant: alpha(n) = 1/(n+1) - ln(1+1/(n+1)),
/// each term queried from its inner sum at a power-of-two index (so
/// distinct working indices share cached inner evaluations).
inline SeriesSpec euler_gamma_spec() {
  auto cache = std::make_shared<std::map<Nat, CReal>>();
  auto mu = std::make_shared<std::mutex>();
  auto inner = [cache, mu](const Nat& p) {
    std::lock_guard<std::mutex> lock(*mu);
    auto it = cache->find(p);
    if (it == cache->end())
      it = cache->emplace(p, gamma_inner_creal(p)).first;
    return it->second;
  };
  auto num = [inner](const Nat& y, const Nat& n) {
    Nat yq = next_pow2(2 * y + 1);
    Rat v = inner(n + 1).approx(yq);
    return round_rat((y + 1) * v);
  };
  auto neg = [](const Nat& y, const Nat& n) {
    // |alpha(n)| <= 1/(2(n+1)^2)
    return (n + 1) * (n + 1) > y + 1;
  };
  auto xi = [](const Nat& x) { return x; };
  return make_spec(num, xi, neg, ClassTag::lower_elementary(),
                   "harmonic-log-series");
}

}  // namespace detail

inline CReal constant(const ConstantId& id);

namespace detail {

/// Series half of ln(pi): terms zeta(2n+2)/(2(n+1) 2^(2n+1)), fed from
/// the zeta catalog entries.
inline SeriesSpec ln_pi_spec() {
  auto cache = std::make_shared<std::map<unsigned long, CReal>>();
  auto mu = std::make_shared<std::mutex>();
  auto zeta_at = [cache, mu](unsigned long k) {
    std::lock_guard<std::mutex> lock(*mu);
    auto it = cache->find(k);
    if (it == cache->end())
      it = cache->emplace(k, skordev_sum(zeta_spec(k))).first;
    return it->second;
  };
  auto coeff_den = [](const Nat& n) {
    return Int(2 * (n + 1) * pow2(to_ulong(Nat(2 * n + 1))));
  };
  auto num = [zeta_at, coeff_den](const Nat& y, const Nat& n) {
    // |zeta/(coeff_den)| with zeta in (1,2): query at >= y so that the
    // propagated error stays under 1/(2(y+1)), then round.
    Nat yq = next_pow2(y);
    Rat v = zeta_at(2 * to_ulong(n) + 2).approx(yq);
    return round_rat((y + 1) * v / Rat(coeff_den(n)));
  };
  auto neg = [](const Nat& y, const Nat& n) {
    // |alpha(n)| <= 2/(2(n+1) 2^(2n+1)) = 1/((n+1) 2^(2n+1))
    Nat cap = 2 * (y + 1);
    size_t bits = mpz_sizeinbase(cap.get_mpz_t(), 2);
    if (2 * n + 1 >= Nat(bits)) return true;
    return Int((n + 1) * pow2(to_ulong(Nat(2 * n + 1)))) > cap;
  };
  auto xi = [](const Nat& x) { return x; };
  return make_spec(num, xi, neg, ClassTag::lower_elementary(),
                   "log-pi-series");
}

/// ln(pi) itself: ln 2 plus the series, with the budget split
/// 1/(4(x+1)) for ln 2 and 3/(4(x+1)) for the series.  The series is
/// truncated by its geometric tail bound and each zeta value is queried
/// at a precision proportional to 4^-n, keeping the inner error below a
/// third of the series budget; the remaining third absorbs the
/// fixed-point accumulation error.
inline CReal ln_pi_creal() {
  CReal ln2 = constant(ConstantId::ln_n(2));
  auto cache = std::make_shared<std::map<unsigned long, CReal>>();
  auto mu = std::make_shared<std::mutex>();
  auto zeta_at = [cache, mu](unsigned long k) {
    std::lock_guard<std::mutex> lock(*mu);
    auto it = cache->find(k);
    if (it == cache->end())
      it = cache->emplace(k, skordev_sum(zeta_spec(k))).first;
    return it->second;
  };
  return CReal(
      [ln2, zeta_at](const Nat& x) {
        Rat ln2_val = ln2.approx(4 * x + 3);
        Rat budget = make_rat(3, 4 * (x + 1));
        Rat b3 = budget / 3;
        // Truncation: tail after M is below (4/3) / ((M+2) 2^(2M+3)).
        unsigned long m_cut = 0;
        while (make_rat(4, 3 * (m_cut + 2)) / Rat(pow2(2 * m_cut + 3)) > b3)
          ++m_cut;
        unsigned long scale =
            mpz_sizeinbase(Nat(16 * (x + 1) * (m_cut + 2)).get_mpz_t(), 2) + 2;
        TrackedAccumulator acc(scale);
        for (unsigned long n = 0; n <= m_cut; ++n) {
          Rat coeff = make_rat(1, Int(2 * (n + 1)) * pow2(2 * n + 1));
          // zeta error delta_n with coeff * delta_n <= b3 * 2^-(n+1)
          Rat delta = b3 * Rat(long(n + 1)) * Rat(pow2(n + 1));
          Nat idx = ceil_rat(1 / delta);
          Rat z = zeta_at(2 * n + 2).approx(idx);
          acc.absorb(z * coeff);
        }
        return Rat(ln2_val + acc.value());
      },
      ModulusKind::Inverse, ClassTag::lower_elementary(), "log-pi-series");
}

}  // namespace detail

/// The tail-cutoff description of a catalog constant's defining series.
/// For Pi this is the series of pi/4; for LnN(N) the series of
/// ln(1 + 1/N) used in the inductive step.
inline SeriesSpec series_spec(const ConstantId& id) {
  switch (id.kind) {
    case ConstantId::E: return detail::e_spec();
    case ConstantId::Pi: return detail::pi_quarter_spec();
    case ConstantId::LnN:
      if (id.param < 1) throw DomainError("ln(N) requires N >= 1");
      return detail::ln_step_spec(id.param);
    case ConstantId::CatalanG: return detail::catalan_spec();
    case ConstantId::EulerGamma: return detail::euler_gamma_spec();
    case ConstantId::LiouvilleL: return detail::liouville_spec();
    case ConstantId::Zeta: return detail::zeta_spec(id.param);
    case ConstantId::LnPi: return detail::ln_pi_spec();
  }
  throw DomainError("series_spec: bad id");
}

/// The constant itself as a computable real with modulus 1/(x+1).
inline CReal constant(const ConstantId& id) {
  switch (id.kind) {
    case ConstantId::E: return skordev_sum(detail::e_spec());
    case ConstantId::Pi:
      return scale_rational(skordev_sum(detail::pi_quarter_spec()), Rat(4));
    case ConstantId::LnN: {
      if (id.param < 1) throw DomainError("ln(N) requires N >= 1");
      if (id.param == 1) return from_rational(Rat(0));
      // ln N = sum of the steps ln(1+1/j), j = 1..N-1, folded as a
      // balanced tree so reindexing depth grows like log N.
      std::vector<CReal> steps;
      for (unsigned long j = 1; j < id.param; ++j)
        steps.push_back(skordev_sum(detail::ln_step_spec(j)));
      while (steps.size() > 1) {
        std::vector<CReal> next;
        for (size_t i = 0; i + 1 < steps.size(); i += 2)
          next.push_back(arith(steps[i], steps[i + 1], ArithOp::Add));
        if (steps.size() % 2 == 1) next.push_back(steps.back());
        steps = std::move(next);
      }
      return steps[0];
    }
    case ConstantId::CatalanG: return skordev_sum(detail::catalan_spec());
    case ConstantId::EulerGamma:
      return skordev_sum(detail::euler_gamma_spec());
    case ConstantId::LiouvilleL: return skordev_sum(detail::liouville_spec());
    case ConstantId::Zeta: return skordev_sum(detail::zeta_spec(id.param));
    case ConstantId::LnPi: return detail::ln_pi_creal();
  }
  throw DomainError("constant: bad id");
}

/// sum_{n>=0} r^(n+1) for rational 0 < |r| < 1; the cutoff comes from
/// the exact geometric tail |r|^(m+2)/(1-|r|).
inline SeriesSpec geometric_spec(const Rat& ratio) {
  if (!(abs(ratio) < 1) || ratio == 0)
    throw DomainError("geometric_spec: need 0 < |ratio| < 1");
  auto num = [ratio](const Nat& y, const Nat& n) {
    Rat p(1);
    for (Nat i = 0; i <= n; ++i) p *= ratio;  // bounded by the cutoff below
    return round_rat((y + 1) * p);
  };
  Rat a = abs(ratio);
  auto neg = [a](const Nat& y, const Nat& n) {
    Rat p(1);
    Rat bound = make_rat(1, 2 * (y + 1));
    for (Nat i = 0; i <= n; ++i) {
      p *= a;
      if (p < bound) return true;
    }
    return p < bound;
  };
  auto xi = [a](const Nat& x) {
    // least m with a^(m+2)/(1-a) <= 1/(x+1)
    Rat tail = a * a / (1 - a);
    Nat m = 0;
    Rat target = make_rat(1, x + 1);
    while (tail > target) {
      tail *= a;
      ++m;
    }
    return m;
  };
  return detail::make_spec(num, xi, neg, ClassTag::lower_elementary(),
                           "geometric-series");
}

}  // namespace periodica

#endif  // PERIODICA_SERIES_HPP
