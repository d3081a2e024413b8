#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "periodica/creal.hpp"
#include "periodica/polyroot.hpp"
#include "periodica/series.hpp"

using namespace periodica;

namespace {

// |a.approx(x) - (alpha within the oracle enclosure)| <= modulus(x)
void check_modulus(const CReal& a, const oracle::Approx& target, const Nat& x) {
  Rat err = abs(a.approx(x) - target.value);
  REQUIRE(err <= a.modulus(x) + target.bound);
}

const std::vector<long> kSampleIndices{0, 1, 3, 7, 15, 31, 63, 127, 255, 511};

}  // namespace

TEST_CASE("rational constants are exact at every index") {
  CReal zero = from_rational(Rat(0));
  CReal neg1 = from_rational(Rat(-1));
  CReal q = from_rational(make_rat(22, 7));
  for (long x : {0, 5, 1000}) {
    CHECK(zero.approx(Nat(x)) == 0);
    CHECK(neg1.approx(Nat(x)) == -1);
    CHECK(q.approx(Nat(x)) == make_rat(22, 7));
  }
  CHECK(q.exact_value().has_value());
}

TEST_CASE("field operations satisfy the modulus contract") {
  CReal e = constant(ConstantId::e());
  oracle::Approx e_hat = oracle::e();

  SECTION("cancellation within modulus") {
    CReal diff = arith(e, e, ArithOp::Sub);
    for (long x : kSampleIndices)
      REQUIRE(abs(diff.approx(Nat(x))) <= diff.modulus(Nat(x)));
  }
  SECTION("rational product") {
    CReal prod = arith(from_rational(make_rat(1, 2)), from_rational(Rat(2)),
                       ArithOp::Mul);
    for (long x : kSampleIndices)
      REQUIRE(abs(prod.approx(Nat(x)) - 1) <= prod.modulus(Nat(x)));
  }
  SECTION("e + e tracks its oracle") {
    CReal twice = arith(e, e, ArithOp::Add);
    oracle::Approx target{2 * e_hat.value, 2 * e_hat.bound};
    for (long x : kSampleIndices) check_modulus(twice, target, Nat(x));
  }
  SECTION("e * e tracks its oracle") {
    CReal sq = arith(e, e, ArithOp::Mul);
    oracle::Approx target{e_hat.value * e_hat.value,
                          5 * e_hat.bound};  // |d/dx x^2| < 2e+1
    for (long x : kSampleIndices) check_modulus(sq, target, Nat(x));
  }
}

TEST_CASE("shift and scale by exact rationals") {
  CReal e = constant(ConstantId::e());
  oracle::Approx e_hat = oracle::e();
  CReal shifted = shift_rational(e, Rat(-3));
  CReal shifted_abs = creal_abs(shifted);
  oracle::Approx target{3 - e_hat.value, e_hat.bound};  // 3 - e > 0
  for (long x : kSampleIndices) check_modulus(shifted_abs, target, Nat(x));

  CReal scaled = scale_rational(e, make_rat(-1, 2));
  oracle::Approx starget{-e_hat.value / 2, e_hat.bound};
  for (long x : kSampleIndices) check_modulus(scaled, starget, Nat(x));
}

TEST_CASE("absolute value keeps the modulus") {
  CReal a = from_rational(make_rat(-3, 4));
  CHECK(creal_abs(a).approx(Nat(10)) == make_rat(3, 4));
  CHECK(creal_abs(from_rational(Rat(0))).approx(Nat(3)) == 0);
}

TEST_CASE("reciprocal certifies a nonzero witness first") {
  CReal r = reciprocal(from_rational(make_rat(2, 3)));
  for (long x : kSampleIndices)
    REQUIRE(abs(r.approx(Nat(x)) - make_rat(3, 2)) <= r.modulus(Nat(x)));

  CReal e = constant(ConstantId::e());
  CReal inv_e = reciprocal(e);
  oracle::Approx target = oracle::exp_neg1();
  for (long x : kSampleIndices) check_modulus(inv_e, target, Nat(x));

  CHECK_THROWS_AS(reciprocal(from_rational(Rat(0)), Fuel(Nat(1000))),
                  FuelExhaustedError);
}

TEST_CASE("comparisons are sound and equality stays unknown") {
  CHECK(cmp_rational(from_rational(make_rat(1, 2)), make_rat(1, 3),
                     Fuel(Nat(10))) == Cmp::Greater);
  CHECK(cmp_rational(from_rational(make_rat(1, 3)), make_rat(1, 3),
                     Fuel(Nat(100000))) == Cmp::Unknown);

  CReal root2 = poly_root(RatPoly{Rat(-2), Rat(0), Rat(1)},
                          {Rat(1), Rat(2)});
  CHECK(cmp_rational(root2, make_rat(3, 2), Fuel(Nat(64))) == Cmp::Less);

  // Randomized soundness: certified verdicts always match the true order.
  unsigned long state = 31337;
  auto next = [&state] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  int decided = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Rat a = make_rat(static_cast<long>(next() % 2001) - 1000, next() % 50 + 1);
    Rat b = make_rat(static_cast<long>(next() % 2001) - 1000, next() % 50 + 1);
    Cmp got = cmp_rational(from_rational(a), b, Fuel(Nat(1 + next() % 2000)));
    if (got == Cmp::Less) {
      REQUIRE(a < b);
      ++decided;
    } else if (got == Cmp::Greater) {
      REQUIRE(a > b);
      ++decided;
    }
  }
  CHECK(decided > 800);  // fuel is ample for most gaps
}

TEST_CASE("approximations are memoized and pure") {
  int calls = 0;
  CReal counting([&calls](const Nat&) {
    ++calls;
    return Rat(1);
  }, ModulusKind::Inverse, ClassTag::lower_elementary(), "test");
  CHECK(counting.approx(Nat(5)) == 1);
  CHECK(counting.approx(Nat(5)) == 1);
  CHECK(calls == 1);
}

TEST_CASE("a dyadic-modulus oracle is usable through the inverse view") {
  // alpha = 1/3 seen through 2^-x approximations.
  CReal dyadic(
      [](const Nat& x) {
        Int scale = pow2(to_ulong(x));
        return make_rat(floor_div(scale, 3), scale);
      },
      ModulusKind::DyadicExp, ClassTag::lower_elementary(), "dyadic third");
  CReal sum = arith(dyadic, from_rational(make_rat(2, 3)), ArithOp::Add);
  for (long x : kSampleIndices)
    REQUIRE(abs(sum.approx(Nat(x)) - 1) <= sum.modulus(Nat(x)));
}

TEST_CASE("field laws hold up to certified error") {
  CReal e = constant(ConstantId::e());
  CReal pi = constant(ConstantId::pi());
  CReal ln2 = constant(ConstantId::ln_n(2));
  CReal ab_c = arith(arith(e, pi, ArithOp::Add), ln2, ArithOp::Add);
  CReal a_bc = arith(e, arith(pi, ln2, ArithOp::Add), ArithOp::Add);
  for (long x : {0, 1, 7, 63}) {
    Rat gap = abs(ab_c.approx(Nat(x)) - a_bc.approx(Nat(x)));
    REQUIRE(gap <= 2 * make_rat(1, x + 1));
  }
}

TEST_CASE("decimal output carries a certified bound") {
  DecimalResult third = to_decimal(from_rational(make_rat(1, 3)), 5);
  CHECK(third.digits_text == "0.33333");
  CHECK(third.text() == "0.33333 ± 2e-5");
  CHECK(third.error_bound <= make_rat(2, 100000));

  DecimalResult e6 = to_decimal(constant(ConstantId::e()), 6);
  CHECK(e6.digits_text == "2.718282");

  DecimalResult pi4 = to_decimal(constant(ConstantId::pi()), 4);
  CHECK(pi4.digits_text == "3.1416");

  oracle::Approx l = oracle::liouville();
  DecimalResult l6 = to_decimal(constant(ConstantId::liouville()), 6);
  CHECK(abs(oracle::parse_decimal(l6.digits_text) - l.value) <=
        l6.error_bound + l.bound);
}
