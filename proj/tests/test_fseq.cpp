#include <catch2/catch_amalgamated.hpp>

#include "periodica/fseq.hpp"

using namespace periodica;

namespace {

FSequence identity_seq() {
  return FSequence{[](const Nat& x) { return x; },
                   [](const Nat&) { return Nat(0); },
                   [](const Nat&) { return Nat(0); },
                   ClassTag::lower_elementary()};
}

}  // namespace

TEST_CASE("constant and identity presentations") {
  FSequence half = constant_fseq(make_rat(1, 2));
  for (long x : {0, 1, 7, 100}) CHECK(eval_fseq(half, Nat(x)) == make_rat(1, 2));

  FSequence zero{[](const Nat& x) { return x; }, [](const Nat& x) { return x; },
                 [](const Nat&) { return Nat(3); }, ClassTag::lower_elementary()};
  CHECK(eval_fseq(zero, Nat(12)) == 0);

  CHECK(eval_fseq(identity_seq(), Nat(42)) == 42);

  FSequence neg = constant_fseq(make_rat(-7, 5));
  CHECK(eval_fseq(neg, Nat(3)) == make_rat(-7, 5));
}

TEST_CASE("combine computes pointwise field ops at the representation level") {
  FSequence a = constant_fseq(make_rat(1, 2));
  FSequence b = constant_fseq(make_rat(1, 3));
  FSequence sum = combine(a, b, SeqOp::Add);
  FSequence diff = combine(a, a, SeqOp::Sub);
  FSequence prod = combine(constant_fseq(make_rat(2, 3)),
                           constant_fseq(make_rat(3, 2)), SeqOp::Mul);
  for (long x : {0, 3, 50}) {
    CHECK(eval_fseq(sum, Nat(x)) == make_rat(5, 6));
    CHECK(eval_fseq(diff, Nat(x)) == 0);
    CHECK(eval_fseq(prod, Nat(x)) == 1);
  }
}

TEST_CASE("combine semantics match direct rational arithmetic") {
  FSequence a{[](const Nat& x) { return Nat(3 * x + 1); },
              [](const Nat& x) { return x; },
              [](const Nat& x) { return Nat(x + 2); },
              ClassTag::lower_elementary()};
  FSequence b{[](const Nat& x) { return Nat(x * x); },
              [](const Nat&) { return Nat(5); },
              [](const Nat& x) { return Nat(2 * x); },
              ClassTag::lower_elementary()};
  FSequence sum = combine(a, b, SeqOp::Add);
  FSequence diff = combine(a, b, SeqOp::Sub);
  FSequence prod = combine(a, b, SeqOp::Mul);
  for (long x = 0; x <= 500; ++x) {
    Nat input(x);
    Rat va = eval_fseq(a, input), vb = eval_fseq(b, input);
    REQUIRE(eval_fseq(sum, input) == va + vb);
    REQUIRE(eval_fseq(diff, input) == va - vb);
    REQUIRE(eval_fseq(prod, input) == va * vb);
  }
}

TEST_CASE("reciprocal inverts values exactly") {
  CHECK(eval_fseq(reciprocal_fseq(constant_fseq(make_rat(2, 3))), Nat(9)) ==
        make_rat(3, 2));
  CHECK(eval_fseq(reciprocal_fseq(constant_fseq(Rat(-5))), Nat(2)) ==
        make_rat(-1, 5));

  FSequence inv_x1{[](const Nat& x) { return Nat(x + 1); },
                   [](const Nat&) { return Nat(0); },
                   [](const Nat&) { return Nat(0); },
                   ClassTag::lower_elementary()};
  FSequence r = reciprocal_fseq(inv_x1);
  for (long x = 0; x <= 500; ++x)
    REQUIRE(eval_fseq(r, Nat(x)) == make_rat(1, x + 1));

  FSequence zero = constant_fseq(Rat(0));
  FSequence rz = reciprocal_fseq(zero);
  CHECK_THROWS_AS(eval_fseq(rz, Nat(0)), DomainError);
}

TEST_CASE("reindexing composes through the presentation") {
  FSequence inv{[](const Nat&) { return Nat(1); },
                [](const Nat&) { return Nat(0); },
                [](const Nat& x) { return x; },
                ClassTag::lower_elementary()};  // 1/(x+1)
  FSequence same = compose_reindex(inv, [](const Nat& x) { return x; });
  FSequence doubled = compose_reindex(inv, [](const Nat& x) { return Nat(2 * x + 1); });
  FSequence affine = compose_reindex(inv, [](const Nat& x) { return Nat(3 * x + 3); });
  for (long x = 0; x <= 500; ++x) {
    REQUIRE(eval_fseq(same, Nat(x)) == make_rat(1, x + 1));
    REQUIRE(eval_fseq(doubled, Nat(x)) == make_rat(1, 2 * x + 2));
    REQUIRE(eval_fseq(affine, Nat(x)) == make_rat(1, 3 * x + 4));
  }
}

TEST_CASE("round_div rounds half up and stays within a half") {
  CHECK(round_div(Nat(0), Nat(7)) == 0);
  CHECK(round_div(Nat(7), Nat(2)) == 2);  // [7/3 + 1/2] = [17/6]
  CHECK(round_div(Nat(5), Nat(1)) == 3);  // exact half rounds up
}

TEST_CASE("round_div bound is exhaustive for i <= 10^4, j <= 100") {
  for (unsigned long j = 0; j <= 100; ++j) {
    for (unsigned long i = 0; i <= 10000; ++i) {
      Nat c = round_div(Nat(i), Nat(j));
      Rat err = abs(Rat(c) - make_rat(i, j + 1));
      if (!(err <= make_rat(1, 2))) {
        FAIL("round_div out of bound at i=" << i << " j=" << j);
      }
    }
  }
  SUCCEED();
}

namespace {

// An F-2-sequence tracking the constant q with modulus 1/(x+1) and a
// deliberately awkward denominator.
F2Sequence skewed_constant(const Rat& q, unsigned long salt) {
  return F2Sequence{
      [q, salt](const Nat& x, const Nat& n) -> Nat {
        Nat h = (salt + 3) * x + 7 + n;
        // f - g = round((h+1) q) + x-dependent jitter within the modulus
        Int target = round_rat(Rat(h + 1) * q);
        Int jitter = (to_ulong(Nat(x % 3)) == 0) ? Int((x % 2 == 0) ? 1 : -1) : Int(0);
        Int f = target + jitter;
        return f > 0 ? Nat(f) : Nat(0);
      },
      [q, salt](const Nat& x, const Nat& n) -> Nat {
        Nat h = (salt + 3) * x + 7 + n;
        Int target = round_rat(Rat(h + 1) * q);
        Int jitter = (to_ulong(Nat(x % 3)) == 0) ? Int((x % 2 == 0) ? 1 : -1) : Int(0);
        Int f = target + jitter;
        return f < 0 ? Nat(-f) : Nat(0);
      },
      [salt](const Nat& x, const Nat& n) { return Nat((salt + 3) * x + 7 + n); },
      ClassTag::lower_elementary()};
}

}  // namespace

TEST_CASE("skewed constant presentations really track their limits") {
  F2Sequence s = skewed_constant(make_rat(-3, 7), 2);
  for (long x = 0; x <= 50; ++x)
    REQUIRE(abs(s.value(Nat(x), Nat(1)) - make_rat(-3, 7)) <=
            make_rat(1, x + 1));
}

TEST_CASE("denominator normalization keeps the modulus") {
  unsigned long state = 1234;
  auto next = [&state] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  for (int inst = 0; inst < 100; ++inst) {
    long numer = static_cast<long>(next() % 41) - 20;
    unsigned long denom = next() % 19 + 1;
    Rat q = make_rat(numer, denom);
    F2Sequence a = skewed_constant(q, next() % 5);
    F2Sequence normal = normalize_denominator(a);
    for (long x : {0, 1, 2, 3, 5, 10, 50, 200}) {
      REQUIRE(normal.h(Nat(x), Nat(0)) == Nat(x));
      Rat err = abs(normal.value(Nat(x), Nat(0)) - q);
      REQUIRE(err <= make_rat(1, x + 1));
    }
  }
}

TEST_CASE("normalization of an exact constant stays within half the modulus") {
  // Raw values are exactly 1/3 at every index, so the output only pays
  // the rounding step: within 1/(2(x+1)).
  Rat q = make_rat(1, 3);
  F2Sequence clean{[](const Nat& x, const Nat&) { return Nat(x + 1); },
                   [](const Nat&, const Nat&) { return Nat(0); },
                   [](const Nat& x, const Nat&) { return Nat(3 * x + 2); },
                   ClassTag::lower_elementary()};
  F2Sequence normal = normalize_denominator(clean);
  for (long x = 0; x <= 100; ++x) {
    Rat err = abs(normal.value(Nat(x), Nat(0)) - q);
    REQUIRE(err <= make_rat(1, 2 * (x + 1)));
  }
}

TEST_CASE("normalization forces f to zero when f0 < g0") {
  F2Sequence negative{[](const Nat&, const Nat&) { return Nat(1); },
                      [](const Nat&, const Nat&) { return Nat(5); },
                      [](const Nat& x, const Nat&) { return Nat(9 * (x + 1) - 1); },
                      ClassTag::lower_elementary()};
  F2Sequence normal = normalize_denominator(negative);
  for (long x : {0, 1, 5, 20}) CHECK(normal.f(Nat(x), Nat(0)) == 0);
}

TEST_CASE("strict normalization lands strictly inside the modulus") {
  FSequence half = constant_fseq(make_rat(1, 2));
  FSequence strict = strict_normalize(half);
  for (long x = 0; x <= 100; ++x) {
    REQUIRE(strict.h(Nat(x)) == Nat(x));
    Rat err = abs(strict.value(Nat(x)) - make_rat(1, 2));
    REQUIRE(err < make_rat(1, x + 1));
  }

  // The reindex step alone: modulus at 2(x+1)+1 is 1/(2x+4) < 1/(2(x+1)).
  for (long x = 0; x <= 100; ++x)
    REQUIRE(make_rat(1, 2 * (x + 1) + 2) < make_rat(1, 2 * (x + 1)));
}
