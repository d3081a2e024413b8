#ifndef PERIODICA_ACCUMULATOR_HPP
#define PERIODICA_ACCUMULATOR_HPP

#include "periodica/exact.hpp"

namespace periodica {

/// Fixed-denominator accumulator for long sums of rationals.  Terms are
/// rounded to the nearest multiple of 2^(-scale) before being absorbed,
/// so the running sum is a single integer and denominators never grow.
/// The rounding error committed so far is tracked exactly:
///
///   |true partial sum - value()| <= error_bound() <= k * 2^(-scale)
///
/// after k absorbed terms.  Callers pick the scale from their target
/// precision plus log2 of the expected term count.
class TrackedAccumulator {
 public:
  explicit TrackedAccumulator(unsigned long scale)
      : scale_(scale), sum_(0), inexact_count_(0) {}

  /// Absorb a term, rounding it to the grid.  Error bound grows by
  /// 2^(-scale-1) when the term is not exactly representable, by zero
  /// otherwise.
  void absorb(const Rat& term) {
    Rat scaled = term;
    scaled.get_num() <<= scale_;
    scaled.canonicalize();
    if (den(scaled) == 1) {
      sum_ += num(scaled);
    } else {
      sum_ += round_rat(scaled);
      ++inexact_count_;
    }
  }

  unsigned long scale() const { return scale_; }
  const Int& raw_sum() const { return sum_; }

  /// Current value sum / 2^scale as an exact rational.
  Rat value() const { return make_rat(sum_, pow2(scale_)); }

  /// Exact bound on the accumulated rounding error.
  Rat error_bound() const {
    return make_rat(inexact_count_, pow2(scale_ + 1));
  }

 private:
  unsigned long scale_;
  Int sum_;
  Int inexact_count_;
};

}  // namespace periodica

#endif  // PERIODICA_ACCUMULATOR_HPP
