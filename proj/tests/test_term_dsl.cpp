#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "periodica/term.hpp"
#include "periodica/term_catalog.hpp"
#include "periodica/term_parse.hpp"

using namespace periodica;

namespace {

Nat ev(const TermPtr& t, std::initializer_list<long> args) {
  std::vector<Nat> v;
  for (long a : args) v.emplace_back(a);
  return eval_term(t, v);
}

// Reference Ackermann, memoized independently of the evaluator.
Nat ack_oracle(unsigned long m, const Nat& n) {
  static std::map<std::pair<unsigned long, Nat>, Nat> memo;
  auto key = std::make_pair(m, n);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Nat r;
  if (m == 0)
    r = n + 1;
  else if (n == 0)
    r = ack_oracle(m - 1, Nat(1));
  else
    r = ack_oracle(m - 1, ack_oracle(m, Nat(n - 1)));
  memo.emplace(key, r);
  return r;
}

}  // namespace

TEST_CASE("parser handles the worked grammar forms") {
  TermPtr one = parse_term("comp(S, [Z])");
  CHECK(one->arity == 1);
  CHECK(ev(one, {17}) == 1);

  CHECK_THROWS_AS(parse_term("proj(3,4)"), ArityError);
  CHECK_THROWS_AS(parse_term("comp(S,[Z],[Z])"), ParseError);
  CHECK_THROWS_AS(parse_term("comp(add,[Z])"), ArityError);

  TermPtr addition = parse_term("primrec(proj(1,1), comp(S,[proj(3,2)]))");
  CHECK(addition->arity == 2);
  CHECK(ev(addition, {3, 4}) == 7);
  CHECK(ev(addition, {0, 9}) == 9);
  CHECK(classify_term(addition).kind == ClassTag::PrimitiveRecursive);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_term("comp(S,[Z)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 9);
  }
  CHECK_THROWS_AS(parse_term("frobnicate"), ParseError);
  CHECK_THROWS_AS(parse_term(""), ParseError);
}

TEST_CASE("parser is whitespace insensitive and round-trips") {
  TermPtr a = parse_term("  comp( S ,[ proj(2,1) ] ) ");
  TermPtr b = parse_term(term_to_string(a));
  CHECK(ev(a, {5, 8}) == ev(b, {5, 8}));
}

TEST_CASE("modified subtraction clamps at zero") {
  TermPtr sub = builtin("sub");
  CHECK(ev(sub, {5, 3}) == 2);
  CHECK(ev(sub, {3, 5}) == 0);
}

TEST_CASE("catalog evaluation matches direct arithmetic") {
  TermPtr sgn = builtin("sgn"), div = builtin("div"), fact = builtin("factorial");
  CHECK(ev(sgn, {7}) == 1);
  CHECK(ev(sgn, {0}) == 0);
  CHECK(ev(div, {7, 2}) == 2);  // [7/3]
  CHECK(ev(fact, {5}) == 120);
  CHECK(ev(builtin("abs_diff"), {3, 9}) == 6);
  CHECK(ev(builtin("min"), {4, 11}) == 4);
  CHECK(ev(builtin("max"), {4, 11}) == 11);
  CHECK(ev(builtin("gt"), {5, 4}) == 1);
  CHECK(ev(builtin("gt"), {4, 4}) == 0);
  CHECK(ev(builtin("pow"), {3, 4}) == 81);
  CHECK(ev(builtin("pow"), {0, 0}) == 1);
  CHECK_THROWS_AS(builtin("no_such_function"), DomainError);
}

TEST_CASE("addition is exhaustively correct up to 200") {
  TermPtr add = builtin("add");
  Evaluator evl;
  for (long x = 0; x <= 200; ++x)
    for (long y = 0; y <= 200; ++y) {
      if (evl.eval(add, {Nat(x), Nat(y)}) != Nat(x + y)) {
        FAIL("add mismatch at " << x << "," << y);
      }
    }
  SUCCEED();
}

TEST_CASE("Ackermann values") {
  TermPtr ack = builtin("ackermann");
  for (long n = 0; n <= 5; ++n) CHECK(ev(ack, {0, n}) == n + 1);
  CHECK(ev(ack, {2, 3}) == 9);
  CHECK(ev(ack, {3, 3}) == 61);
  for (unsigned long m = 0; m <= 3; ++m)
    for (long n = 0; n <= 5; ++n)
      CHECK(ev(ack, {(long)m, n}) == ack_oracle(m, Nat(n)));
}

TEST_CASE("ladder functions") {
  // Unrolling the recurrence at level 3 gives exponentiation.
  CHECK(ev(builtin("ladder(3)"), {2, 5}) == 32);
  for (long x = 0; x <= 8; ++x)
    for (long y = 0; y <= 8; ++y) {
      Nat expect;
      mpz_ui_pow_ui(expect.get_mpz_t(), x, y);
      CHECK(ev(builtin("ladder(3)"), {x, y}) == expect);
    }
  CHECK(ev(builtin("ladder(0)"), {7, 3}) == 8);
  CHECK(ev(builtin("ladder(1)"), {7, 3}) == 10);
  CHECK(ev(builtin("ladder(2)"), {7, 3}) == 21);
  CHECK(ev(builtin("ladder(4)"), {2, 3}) == 16);  // 2^(2^2)
}

TEST_CASE("bounded sum equals brute force") {
  // f(t, y) = t * y summed for t <= x.
  TermPtr f = term_compose(term_mul(), {term_proj(2, 1), term_proj(2, 2)});
  TermPtr summed = term_bounded_sum(f);
  Evaluator evl;
  for (long x = 0; x <= 100; ++x) {
    long y = (x * 7) % 13 + 1;
    Nat expect(0);
    for (long t = 0; t <= x; ++t) expect += t * y;
    REQUIRE(evl.eval(summed, {Nat(x), Nat(y)}) == expect);
  }
}

TEST_CASE("minimizer agrees with a brute-force scan") {
  // Random arity-2 terms built from the base generators.
  unsigned long state = 77;
  auto next = [&state] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  auto random_term = [&](auto&& self, int depth) -> TermPtr {
    if (depth == 0) {
      switch (next() % 3) {
        case 0: return term_proj(2, 1 + next() % 2);
        case 1: return term_const(Int(next() % 4));
        default: return term_compose(term_monus(), {term_proj(2, 1), term_proj(2, 2)});
      }
    }
    TermPtr g;
    switch (next() % 3) {
      case 0: g = term_add(); break;
      case 1: g = term_mul(); break;
      default: g = term_monus(); break;
    }
    return term_compose(g, {self(self, depth - 1), self(self, depth - 1)});
  };
  Evaluator evl;
  for (int trial = 0; trial < 60; ++trial) {
    TermPtr f = random_term(random_term, 2);
    TermPtr mu = term_minimizer(f);
    Nat x1(next() % 20), bound(next() % 51);
    Nat got = evl.eval(mu, {x1, bound});
    Nat expect = bound;
    for (Nat j = 0; j <= bound; ++j)
      if (evl.eval(f, {x1, j}) == 0) {
        expect = j;
        break;
      }
    REQUIRE(got == expect);
  }
}

TEST_CASE("bounded primitive recursion checks its bound") {
  // f(x) = x! bounded by j(x) = x^x + 1: fine for all x.
  TermPtr fact_step = term_compose(
      term_mul(), {term_compose(term_succ(), {term_proj(2, 1)}), term_proj(2, 2)});
  TermPtr loose = term_compose(
      term_succ(),
      {term_compose(builtin("pow"), {term_proj(1, 1), term_proj(1, 1)})});
  TermPtr bounded = term_bounded_primrec(term_const(1, 0), fact_step, loose);
  CHECK(eval_term(bounded, {Nat(5)}) == 120);

  // Same recursion bounded by j(x) = x + 1 must trip at x >= 3.
  TermPtr tight = term_compose(term_succ(), {term_proj(1, 1)});
  TermPtr violating = term_bounded_primrec(term_const(1, 0), fact_step, tight);
  CHECK_THROWS_AS(eval_term(violating, {Nat(5)}), BoundViolationError);
}

TEST_CASE("classifier assigns the expected tags") {
  CHECK(classify_term(builtin("add")) == ClassTag::lower_elementary());
  CHECK(classify_term(builtin("div")) == ClassTag::lower_elementary());
  CHECK(classify_term(builtin("pow")) == ClassTag::elementary());
  CHECK(classify_term(builtin("ackermann")) == ClassTag::recursive());
  CHECK(classify_term(builtin("factorial")) == ClassTag::primitive_recursive());
  CHECK(classify_term(builtin("ladder(4)")) == ClassTag::grzegorczyk(4));
  CHECK(classify_term(builtin("ladder(3)")) == ClassTag::elementary());
  CHECK(classify_term(builtin("ladder(2)")) == ClassTag::lower_elementary());

  // Bounded primitive recursion alone lands in E^2.
  TermPtr b = term_bounded_primrec(
      term_const(1, 0),
      term_compose(term_add(), {term_proj(2, 1), term_proj(2, 2)}),
      term_compose(builtin("pow"), {term_proj(1, 1), term_proj(1, 1)}));
  CHECK(classify_term(b).rank() >= ClassTag::grzegorczyk(2).rank());

  // E^2 and lower-elementary stay distinct tags.
  CHECK_FALSE(ClassTag::grzegorczyk(2) == ClassTag::lower_elementary());
  CHECK(class_leq(ClassTag::lower_elementary(), ClassTag::grzegorczyk(2)));
}

TEST_CASE("classification is monotone under composition wrappers") {
  unsigned long state = 4242;
  auto next = [&state] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  std::vector<TermPtr> samples{
      builtin("add"),     builtin("pow"),       builtin("ackermann"),
      builtin("div"),     builtin("factorial"), builtin("ladder(4)"),
      builtin("abs_diff")};
  for (const auto& t : samples) {
    ClassTag before = classify_term(t);
    // Wrap with projections to the same arity.
    std::vector<TermPtr> inner;
    for (unsigned i = 1; i <= t->arity; ++i)
      inner.push_back(term_proj(t->arity, 1 + next() % t->arity));
    ClassTag after = classify_term(term_compose(t, inner));
    CHECK(class_leq(before, after));
    CHECK(class_leq(after, before));  // projections add nothing
  }
}

TEST_CASE("evaluation rejects arity mismatches") {
  CHECK_THROWS_AS(eval_term(builtin("add"), {Nat(1)}), ArityError);
  CHECK_THROWS_AS(eval_term(builtin("sgn"), {Nat(1), Nat(2)}), ArityError);
}
