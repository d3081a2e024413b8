#ifndef PERIODICA_CREAL_HPP
#define PERIODICA_CREAL_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "periodica/classtag.hpp"
#include "periodica/exact.hpp"
#include "periodica/fseq.hpp"

namespace periodica {

class FuelExhaustedError : public std::runtime_error {
 public:
  explicit FuelExhaustedError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Budget for semi-decidable searches: the largest approximation index a
/// comparison or witness scan may query.
struct Fuel {
  Nat budget;
  explicit Fuel(Nat b) : budget(std::move(b)) {
    if (budget < 1) throw DomainError("Fuel: budget must be >= 1");
  }
};

enum class ModulusKind { Inverse, DyadicExp };

/// A computable real: a deterministic oracle x -> Rat with the contract
/// |approx(x) - alpha| <= modulus(x), where the modulus is 1/(x+1) or
/// 2^(-x).  Approximations are memoized per value; the oracle must be
/// pure, so concurrent queries at the same index agree.
class CReal {
 public:
  CReal() = default;
  CReal(std::function<Rat(const Nat&)> fn, ModulusKind kind, ClassTag cls,
        std::string provenance, std::optional<Rat> exact = std::nullopt)
      : impl_(std::make_shared<Impl>()) {
    impl_->fn = std::move(fn);
    impl_->kind = kind;
    impl_->cls = cls;
    impl_->provenance = std::move(provenance);
    impl_->exact = std::move(exact);
  }

  Rat approx(const Nat& x) const {
    if (x < 0) throw DomainError("approx: negative index");
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->memo.find(x);
    if (it != impl_->memo.end()) return it->second;
    Rat v = impl_->fn(x);
    impl_->memo.emplace(x, v);
    return v;
  }

  Rat modulus(const Nat& x) const {
    if (impl_->kind == ModulusKind::Inverse) return make_rat(1, x + 1);
    return pow2_neg(to_ulong(x));
  }

  ModulusKind modulus_kind() const { return impl_->kind; }
  const ClassTag& cls() const { return impl_->cls; }
  const std::string& provenance() const { return impl_->provenance; }
  const std::optional<Rat>& exact_value() const { return impl_->exact; }
  bool valid() const { return impl_ != nullptr; }

 private:
  struct Impl {
    std::function<Rat(const Nat&)> fn;
    ModulusKind kind;
    ClassTag cls;
    std::string provenance;
    std::optional<Rat> exact;
    mutable std::map<Nat, Rat> memo;
    mutable std::mutex mu;
  };
  std::shared_ptr<Impl> impl_;
};

inline CReal from_rational(const Rat& q) {
  return CReal([q](const Nat&) { return q; }, ModulusKind::Inverse,
               ClassTag::lower_elementary(), "rational " + to_fraction_string(q),
               q);
}

/// Wrap an F-sequence that is claimed to satisfy |A(x) - alpha| <= 1/(x+1).
inline CReal creal_from_fseq(const FSequence& s, std::string provenance) {
  return CReal([s](const Nat& x) { return s.value(x); }, ModulusKind::Inverse,
               s.cls, std::move(provenance));
}

namespace detail {

/// View any CReal through the 1/(x+1) modulus: for a dyadic-modulus
/// oracle, index x maps to the bit length of x+1, since 2^(-bits) <= 1/(x+1).
inline CReal as_inverse(const CReal& a) {
  if (a.modulus_kind() == ModulusKind::Inverse) return a;
  return CReal(
      [a](const Nat& x) {
        Nat k(mpz_sizeinbase(Nat(x + 1).get_mpz_t(), 2));
        return a.approx(k);
      },
      ModulusKind::Inverse, a.cls(), a.provenance(), a.exact_value());
}

inline Nat ceil_abs(const Rat& q) {
  Rat a = abs(q);
  return ceil_rat(a);
}

}  // namespace detail

/// alpha + q and q * alpha for exact rational q; cheaper than the
/// general field ops because no second oracle is involved.
inline CReal shift_rational(const CReal& a0, const Rat& q) {
  CReal a = detail::as_inverse(a0);
  std::optional<Rat> exact;
  if (a.exact_value()) exact = *a.exact_value() + q;
  return CReal([a, q](const Nat& x) -> Rat { return q + a.approx(x); },
               ModulusKind::Inverse, a.cls(), "sum", exact);
}

inline CReal scale_rational(const CReal& a0, const Rat& q) {
  if (q == 0) return from_rational(Rat(0));
  CReal a = detail::as_inverse(a0);
  Nat c = detail::ceil_abs(q);
  std::optional<Rat> exact;
  if (a.exact_value()) exact = *a.exact_value() * q;
  return CReal(
      [a, q, c](const Nat& x) -> Rat { return q * a.approx(c * (x + 1) - 1); },
      ModulusKind::Inverse, a.cls(), "product", exact);
}

inline CReal negate(const CReal& a) { return scale_rational(a, Rat(-1)); }

enum class ArithOp { Add, Sub, Mul };

/// Field operations.  Sums reindex both operands by 2x+1 so the two
/// halves of the error budget add back up to 1/(x+1).  Products reindex
/// by Kx+K with K a coarse magnitude bound derived from the index-0
/// approximations: |alpha| <= |A(0)| + 1 always holds.
inline CReal arith(const CReal& a0, const CReal& b0, ArithOp op) {
  CReal a = detail::as_inverse(a0);
  CReal b = detail::as_inverse(b0);
  ClassTag cls = class_join(a.cls(), b.cls());
  std::optional<Rat> exact;
  if (a.exact_value() && b.exact_value()) {
    switch (op) {
      case ArithOp::Add: exact = *a.exact_value() + *b.exact_value(); break;
      case ArithOp::Sub: exact = *a.exact_value() - *b.exact_value(); break;
      case ArithOp::Mul: exact = *a.exact_value() * *b.exact_value(); break;
    }
  }
  switch (op) {
    case ArithOp::Add:
      return CReal(
          [a, b](const Nat& x) -> Rat {
            Nat y = 2 * x + 1;
            return a.approx(y) + b.approx(y);
          },
          ModulusKind::Inverse, cls, "sum", exact);
    case ArithOp::Sub:
      return CReal(
          [a, b](const Nat& x) -> Rat {
            Nat y = 2 * x + 1;
            return a.approx(y) - b.approx(y);
          },
          ModulusKind::Inverse, cls, "difference", exact);
    case ArithOp::Mul: {
      Nat k = detail::ceil_abs(a.approx(0)) + detail::ceil_abs(b.approx(0)) + 3;
      return CReal(
          [a, b, k](const Nat& x) -> Rat {
            Nat y = k * x + k;
            return a.approx(y) * b.approx(y);
          },
          ModulusKind::Inverse, cls, "product", exact);
    }
  }
  throw DomainError("arith: bad op");
}

inline CReal creal_abs(const CReal& a) {
  std::optional<Rat> exact;
  if (a.exact_value()) exact = abs(*a.exact_value());
  return CReal([a](const Nat& x) { return Rat(abs(a.approx(x))); },
               a.modulus_kind(), a.cls(), "absolute value", exact);
}

namespace detail {

/// Geometric probe schedule 0, 1, 3, 7, ..., always ending at the
/// budget itself.  Any witness found on the schedule is as good as one
/// found by a dense scan, at a factor-two loss in the budget needed.
template <typename Probe>
bool probe_schedule(const Nat& budget, Probe&& probe) {
  Nat x = 0;
  for (;;) {
    if (probe(x)) return true;
    if (x >= budget) return false;
    x = 2 * x + 1;
    if (x > budget) x = budget;
  }
}

}  // namespace detail

enum class Cmp { Less, Greater, Unknown };

/// Semi-decidable order test against a rational cut.  A verdict other
/// than Unknown is certified: approx(x) separated from q by more than
/// the modulus pins alpha to one side.  Equality is never witnessed.
inline Cmp cmp_rational(const CReal& a, const Rat& q, const Fuel& fuel) {
  // Dyadic moduli shrink geometrically; probing past ~2^20 would
  // materialize absurdly long denominators for no extra decision power.
  Nat budget = fuel.budget;
  if (a.modulus_kind() == ModulusKind::DyadicExp && budget > 1048576)
    budget = 1048576;
  Cmp verdict = Cmp::Unknown;
  detail::probe_schedule(budget, [&](const Nat& x) {
    Rat v = a.approx(x);
    Rat m = a.modulus(x);
    if (v - q > m) {
      verdict = Cmp::Greater;
      return true;
    }
    if (q - v > m) {
      verdict = Cmp::Less;
      return true;
    }
    return false;
  });
  return verdict;
}

/// 1/alpha.  First certify alpha != 0 by scanning for a witness index c
/// with |A(c)| > 2/(c+1); from that witness, |alpha| > 1/(c+1) and
/// |A(c+k)| > 0 for all k >= 1, giving |1/A(c+k) - 1/alpha| <= (c+1)^2/k.
/// Reindexing by (c+1)^2 (x+1) lands the final modulus at 1/(x+1).
inline CReal reciprocal(const CReal& a0,
                        std::optional<Fuel> fuel = std::nullopt) {
  CReal a = detail::as_inverse(a0);
  std::optional<Nat> witness;
  auto probe = [&](const Nat& x) {
    if (abs(a.approx(x)) * (x + 1) > 2) {
      witness = x;
      return true;
    }
    return false;
  };
  if (fuel) {
    detail::probe_schedule(fuel->budget, probe);
  } else {
    for (Nat x = 0; !probe(x); x = 2 * x + 1) {
    }
  }
  if (!witness)
    throw FuelExhaustedError(
        "reciprocal: could not certify a nonzero value within budget");
  Nat c = *witness;
  Nat m = (c + 1) * (c + 1);
  std::optional<Rat> exact;
  if (a.exact_value()) exact = 1 / *a.exact_value();
  return CReal(
      [a, c, m](const Nat& x2) {
        Rat v = a.approx(c + m * (x2 + 1));
        return Rat(1 / v);
      },
      ModulusKind::Inverse, a.cls(), "reciprocal", exact);
}

/// Decimal rendering with a certified total error bound: the queried
/// index makes the modulus at most 10^-digits, and nearest rounding of
/// the approximation adds at most half of that again.
struct DecimalResult {
  std::string digits_text;
  Rat approx_value;
  Rat error_bound;
  unsigned digits;

  std::string bound_text() const {
    return "2e-" + std::to_string(digits);
  }
  std::string text() const { return digits_text + " ± " + bound_text(); }
};

inline DecimalResult to_decimal(const CReal& a, unsigned digits) {
  Int target = pow_int(10, digits);
  Nat x;
  if (a.modulus_kind() == ModulusKind::Inverse) {
    x = target;  // 1/(x+1) < 10^-digits
  } else {
    x = Nat(mpz_sizeinbase(target.get_mpz_t(), 2));  // 2^-x <= 10^-digits
  }
  Rat v = a.approx(x);
  std::string s = to_decimal_string(v, digits, RoundMode::Nearest);
  Rat bound = a.modulus(x) + make_rat(1, 2 * target);
  return DecimalResult{s, v, bound, digits};
}

}  // namespace periodica

#endif  // PERIODICA_CREAL_HPP
