#ifndef PERIODICA_FSEQ_HPP
#define PERIODICA_FSEQ_HPP

#include <functional>
#include <utility>

#include "periodica/classtag.hpp"
#include "periodica/exact.hpp"

/// Rational sequences presented as (f(x) - g(x)) / (h(x) + 1) with f, g,
/// h natural-valued.  The components may be opaque callables; the class
/// tag records the claimed function class of the presentation.
namespace periodica {

using NatFn1 = std::function<Nat(const Nat&)>;
using NatFn2 = std::function<Nat(const Nat&, const Nat&)>;

struct FSequence {
  NatFn1 f, g, h;
  ClassTag cls;

  Rat value(const Nat& x) const { return make_rat(f(x) - g(x), h(x) + 1); }
};

struct F2Sequence {
  NatFn2 f, g, h;
  ClassTag cls;

  Rat value(const Nat& x, const Nat& n) const {
    return make_rat(f(x, n) - g(x, n), h(x, n) + 1);
  }
};

inline Rat eval_fseq(const FSequence& s, const Nat& x) { return s.value(x); }

/// Constant sequence with value q, in the canonical f = r, g = 0,
/// h = s - 1 presentation (numerator split across f and g when q < 0).
inline FSequence constant_fseq(const Rat& q,
                               ClassTag cls = ClassTag::lower_elementary()) {
  Nat f_val = q >= 0 ? Nat(num(q)) : Nat(0);
  Nat g_val = q >= 0 ? Nat(0) : Nat(-num(q));
  Nat h_val = den(q) - 1;
  return FSequence{[f_val](const Nat&) { return f_val; },
                   [g_val](const Nat&) { return g_val; },
                   [h_val](const Nat&) { return h_val; }, cls};
}

enum class SeqOp { Add, Sub, Mul };

/// Pointwise field operations at the representation level: the result's
/// components are built from the operands' components over the common
/// denominator (h_a+1)(h_b+1).
inline FSequence combine(const FSequence& a, const FSequence& b, SeqOp op) {
  ClassTag cls = class_join(a.cls, b.cls);
  auto af = a.f, ag = a.g, ah = a.h;
  auto bf = b.f, bg = b.g, bh = b.h;
  switch (op) {
    case SeqOp::Add:
      return FSequence{
          [=](const Nat& x) -> Nat { return af(x) * (bh(x) + 1) + bf(x) * (ah(x) + 1); },
          [=](const Nat& x) -> Nat { return ag(x) * (bh(x) + 1) + bg(x) * (ah(x) + 1); },
          [=](const Nat& x) -> Nat { return (ah(x) + 1) * (bh(x) + 1) - 1; }, cls};
    case SeqOp::Sub:
      return FSequence{
          [=](const Nat& x) -> Nat { return af(x) * (bh(x) + 1) + bg(x) * (ah(x) + 1); },
          [=](const Nat& x) -> Nat { return ag(x) * (bh(x) + 1) + bf(x) * (ah(x) + 1); },
          [=](const Nat& x) -> Nat { return (ah(x) + 1) * (bh(x) + 1) - 1; }, cls};
    case SeqOp::Mul:
      // (f_a - g_a)(f_b - g_b) = (f_a f_b + g_a g_b) - (f_a g_b + g_a f_b)
      return FSequence{
          [=](const Nat& x) -> Nat { return af(x) * bf(x) + ag(x) * bg(x); },
          [=](const Nat& x) -> Nat { return af(x) * bg(x) + ag(x) * bf(x); },
          [=](const Nat& x) -> Nat { return (ah(x) + 1) * (bh(x) + 1) - 1; }, cls};
  }
  throw DomainError("combine: bad op");
}

/// Pointwise reciprocal, computed by exact inversion of the evaluated
/// value.  A zero value at evaluation time signals a violated
/// precondition.
inline FSequence reciprocal_fseq(const FSequence& a) {
  auto value_at = [a](const Nat& x) {
    Rat v = a.value(x);
    if (v == 0)
      throw DomainError("reciprocal_fseq: sequence value is zero at x = " +
                        x.get_str());
    return Rat(1 / v);
  };
  return FSequence{
      [value_at](const Nat& x) {
        Rat r = value_at(x);
        return r >= 0 ? Nat(num(r)) : Nat(0);
      },
      [value_at](const Nat& x) {
        Rat r = value_at(x);
        return r >= 0 ? Nat(0) : Nat(-num(r));
      },
      [value_at](const Nat& x) { return Nat(den(value_at(x)) - 1); }, a.cls};
}

/// x -> A(phi(x)).
inline FSequence compose_reindex(const FSequence& a, NatFn1 phi,
                                 ClassTag phi_cls = ClassTag::lower_elementary()) {
  auto af = a.f, ag = a.g, ah = a.h;
  return FSequence{[af, phi](const Nat& x) { return af(phi(x)); },
                   [ag, phi](const Nat& x) { return ag(phi(x)); },
                   [ah, phi](const Nat& x) { return ah(phi(x)); },
                   class_join(a.cls, phi_cls)};
}

/// C(i, j) = [i/(j+1) + 1/2]; differs from i/(j+1) by at most 1/2.
inline Nat round_div(const Nat& i, const Nat& j) {
  if (i < 0 || j < 0) throw DomainError("round_div: natural arguments required");
  return round_half_up(i, j + 1);
}

/// Denominator normalization: returns a presentation with h(x,n) = x
/// whose values stay within 1/(x+1) of whatever the input tracked to
/// within 1/(x+1).  First reindex by 2x+1 (halving the modulus), then
/// round the scaled numerator onto denominator x+1; the rounding costs
/// at most 1/(2(x+1)).
inline F2Sequence normalize_denominator(const F2Sequence& a) {
  auto af = a.f, ag = a.g, ah = a.h;
  auto f0 = [af](const Nat& x, const Nat& n) { return af(2 * x + 1, n); };
  auto g0 = [ag](const Nat& x, const Nat& n) { return ag(2 * x + 1, n); };
  auto h0 = [ah](const Nat& x, const Nat& n) { return ah(2 * x + 1, n); };
  return F2Sequence{
      [f0, g0, h0](const Nat& x, const Nat& n) {
        return round_div((x + 1) * monus(f0(x, n), g0(x, n)), h0(x, n));
      },
      [f0, g0, h0](const Nat& x, const Nat& n) {
        return round_div((x + 1) * monus(g0(x, n), f0(x, n)), h0(x, n));
      },
      [](const Nat& x, const Nat&) { return x; }, a.cls};
}

/// Unary variant with a strict output modulus: reindexing by 2(x+1)+1
/// gives error < 1/(2(x+1)), and the rounding step adds at most
/// 1/(2(x+1)), keeping the total strictly below 1/(x+1).
inline FSequence strict_normalize(const FSequence& a) {
  auto af = a.f, ag = a.g, ah = a.h;
  auto f0 = [af](const Nat& x) { return af(2 * (x + 1) + 1); };
  auto g0 = [ag](const Nat& x) { return ag(2 * (x + 1) + 1); };
  auto h0 = [ah](const Nat& x) { return ah(2 * (x + 1) + 1); };
  return FSequence{
      [f0, g0, h0](const Nat& x) {
        return round_div((x + 1) * monus(f0(x), g0(x)), h0(x));
      },
      [f0, g0, h0](const Nat& x) {
        return round_div((x + 1) * monus(g0(x), f0(x)), h0(x));
      },
      [](const Nat& x) { return x; }, a.cls};
}

}  // namespace periodica

#endif  // PERIODICA_FSEQ_HPP
