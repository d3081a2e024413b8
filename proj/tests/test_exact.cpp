#include <catch2/catch_amalgamated.hpp>

#include "periodica/accumulator.hpp"
#include "periodica/exact.hpp"
#include "periodica/interval.hpp"

using namespace periodica;

TEST_CASE("rational arithmetic is exact and normalized") {
  CHECK(rat_arith(make_rat(1, 3), make_rat(1, 6), RatOp::Add) == make_rat(1, 2));
  CHECK(rat_arith(make_rat(5, 7), Rat(0), RatOp::Mul) == 0);
  CHECK(rat_arith(Rat(1), Rat(3), RatOp::Div) == make_rat(1, 3));
  CHECK_THROWS_AS(rat_arith(Rat(1), Rat(0), RatOp::Div), DomainError);

  Rat q = rat_arith(make_rat(6, 4), make_rat(10, 4), RatOp::Add);
  CHECK(num(q) == 4);
  CHECK(den(q) == 1);
}

TEST_CASE("monus and integer helpers") {
  CHECK(monus(5, 3) == 2);
  CHECK(monus(3, 5) == 0);
  CHECK(floor_rat(make_rat(7, 3)) == 2);
  CHECK(floor_rat(make_rat(-7, 3)) == -3);
  CHECK(ceil_rat(make_rat(7, 3)) == 3);
  CHECK(round_rat(make_rat(5, 2)) == 3);   // half rounds up
  CHECK(round_rat(make_rat(-5, 2)) == -2);
  CHECK(kth_root_ceil(26, 3) == 3);
  CHECK(kth_root_ceil(27, 3) == 3);
  CHECK(kth_root_ceil(28, 3) == 4);
}

TEST_CASE("decimal rendering with rounding directions") {
  Rat third = make_rat(1, 3);
  CHECK(to_decimal_string(third, 5, RoundMode::TowardNegInf) == "0.33333");
  CHECK(to_decimal_string(third, 5, RoundMode::TowardPosInf) == "0.33334");
  CHECK(to_decimal_string(third, 5, RoundMode::Nearest) == "0.33333");
  CHECK(to_decimal_string(make_rat(-1, 6), 3, RoundMode::Nearest) == "-0.167");
  CHECK(to_decimal_string(Rat(2), 0, RoundMode::Nearest) == "2");
}

TEST_CASE("accumulator absorbs terms on the dyadic grid") {
  TrackedAccumulator acc(8);
  acc.absorb(make_rat(1, 3));
  CHECK(acc.raw_sum() == 85);  // nearest multiple of 1/256 to 1/3
  CHECK(acc.error_bound() <= make_rat(1, 256));
  Rat before = acc.error_bound();
  acc.absorb(Rat(0));
  CHECK(acc.raw_sum() == 85);
  CHECK(acc.error_bound() == before);
  acc.absorb(make_rat(1, 2));  // dyadic, exact
  CHECK(acc.raw_sum() == 85 + 128);
  CHECK(acc.error_bound() == before);
}

TEST_CASE("accumulator error bound holds under exact replay") {
  // Deterministic pseudo-random rationals, replayed exactly.
  const unsigned long k = 10000;
  TrackedAccumulator acc(30);
  Rat exact(0);
  unsigned long state = 0x2545F491u;
  auto next = [&state] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  for (unsigned long i = 0; i < k; ++i) {
    long n = static_cast<long>(next() % 2001) - 1000;
    unsigned long d = next() % 997 + 1;
    Rat term = make_rat(n, d);
    acc.absorb(term);
    exact += term;
  }
  Rat err = abs(exact - acc.value());
  CHECK(err <= acc.error_bound());
  CHECK(acc.error_bound() <= make_rat(k, pow2(30)));
}

TEST_CASE("interval arithmetic returns enclosures") {
  unsigned long state = 9001;
  auto next = [&state] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  auto random_rat = [&]() {
    long n = static_cast<long>(next() % 401) - 200;
    return make_rat(n, next() % 40 + 1);
  };
  for (int trial = 0; trial < 1000; ++trial) {
    Rat a = random_rat(), b = random_rat();
    if (a > b) std::swap(a, b);
    RatInterval x(a, b);
    Rat c = random_rat(), d = random_rat();
    if (c > d) std::swap(c, d);
    RatInterval y(c, d);
    // A point of each interval, by convex combination.
    unsigned long wa = next() % 11, wb = next() % 11;
    Rat px = (x.lo * Rat(long(wa)) + x.hi * Rat(long(10 - wa))) / 10;
    Rat py = (y.lo * Rat(long(wb)) + y.hi * Rat(long(10 - wb))) / 10;
    switch (trial % 4) {
      case 0: REQUIRE((x + y).contains(px + py)); break;
      case 1: REQUIRE((x - y).contains(px - py)); break;
      case 2: REQUIRE((x * y).contains(px * py)); break;
      case 3: {
        unsigned long e = next() % 5;
        REQUIRE(pow_interval(x, e).contains([&] {
          Rat p(1);
          for (unsigned long i = 0; i < e; ++i) p *= px;
          return p;
        }()));
        break;
      }
    }
  }
}

TEST_CASE("even powers of zero-straddling intervals stay tight") {
  RatInterval x(Rat(-2), Rat(3));
  RatInterval sq = pow_interval(x, 2);
  CHECK(sq.lo == 0);
  CHECK(sq.hi == 9);
}
