#ifndef PERIODICA_TERM_HPP
#define PERIODICA_TERM_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "periodica/classtag.hpp"
#include "periodica/exact.hpp"

/// Function terms over the naturals: the initial functions plus the
/// closure operators (composition, primitive recursion and its bounded
/// form, bounded sum/product, bounded minimization), the ladder
/// functions, and the Ackermann function.  Terms are immutable ASTs with
/// checked arities; evaluation is exact on unbounded naturals.
namespace periodica {

class ArityError : public std::runtime_error {
 public:
  explicit ArityError(const std::string& what) : std::runtime_error(what) {}
};

class BoundViolationError : public std::runtime_error {
 public:
  explicit BoundViolationError(const std::string& what)
      : std::runtime_error(what) {}
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum Kind {
    Zero,            // Z(x) = 0, unary
    Succ,            // S(x) = x + 1, unary
    Proj,            // P_i^n, a = n, b = i (1-based)
    Const,           // constant a, stored arity (parser builds arity 1)
    Add,             // x + y        } base generators: together with the
    Mul,             // x * y        } initial functions they generate the
    Monus,           // x - y, >= 0  } lower-elementary class
    Compose,         // kids = [g, h1..hm]
    PrimRec,         // kids = [g, h]
    BoundedPrimRec,  // kids = [g, h, j]
    BoundedSum,      // kids = [f], sum_{t<=x1} f(t, x2..)
    BoundedProd,     // kids = [f]
    Minimizer,       // kids = [f], least j <= x_last with f(.., j) = 0
    Ladder,          // a = n: ladder function at level n, binary
    Ackermann,       // binary
  };

  Kind kind;
  unsigned arity;
  unsigned long a = 0;
  unsigned long b = 0;
  Int c;  // constant payload
  std::vector<TermPtr> kids;
  std::string label;  // optional catalog name, used for printing only
};

namespace detail {
inline TermPtr mk(Term t) { return std::make_shared<const Term>(std::move(t)); }
}

inline TermPtr term_zero() { return detail::mk({Term::Zero, 1}); }
inline TermPtr term_succ() { return detail::mk({Term::Succ, 1}); }

inline TermPtr term_proj(unsigned long n, unsigned long i) {
  if (n == 0 || i < 1 || i > n)
    throw ArityError("proj(" + std::to_string(n) + "," + std::to_string(i) +
                     "): index out of range");
  Term t{Term::Proj, static_cast<unsigned>(n)};
  t.a = n;
  t.b = i;
  return detail::mk(std::move(t));
}

inline TermPtr term_const(Int value, unsigned arity = 1) {
  Term t{Term::Const, arity};
  t.c = std::move(value);
  return detail::mk(std::move(t));
}

inline TermPtr term_add() { return detail::mk({Term::Add, 2}); }
inline TermPtr term_mul() { return detail::mk({Term::Mul, 2}); }
inline TermPtr term_monus() { return detail::mk({Term::Monus, 2}); }

inline TermPtr term_compose(TermPtr g, std::vector<TermPtr> hs) {
  if (hs.empty()) throw ArityError("comp: needs at least one inner term");
  if (g->arity != hs.size())
    throw ArityError("comp: outer arity " + std::to_string(g->arity) +
                     " != inner count " + std::to_string(hs.size()));
  unsigned n = hs[0]->arity;
  for (const auto& h : hs)
    if (h->arity != n)
      throw ArityError("comp: inner terms disagree on arity");
  Term t{Term::Compose, n};
  t.kids.push_back(std::move(g));
  for (auto& h : hs) t.kids.push_back(std::move(h));
  return detail::mk(std::move(t));
}

inline TermPtr term_primrec(TermPtr g, TermPtr h) {
  unsigned m = g->arity + 1;
  if (h->arity != m + 1)
    throw ArityError("primrec: step arity " + std::to_string(h->arity) +
                     ", expected " + std::to_string(m + 1));
  Term t{Term::PrimRec, m};
  t.kids = {std::move(g), std::move(h)};
  return detail::mk(std::move(t));
}

inline TermPtr term_bounded_primrec(TermPtr g, TermPtr h, TermPtr j) {
  unsigned m = g->arity + 1;
  if (h->arity != m + 1)
    throw ArityError("bprimrec: step arity " + std::to_string(h->arity) +
                     ", expected " + std::to_string(m + 1));
  if (j->arity != m)
    throw ArityError("bprimrec: bound arity " + std::to_string(j->arity) +
                     ", expected " + std::to_string(m));
  Term t{Term::BoundedPrimRec, m};
  t.kids = {std::move(g), std::move(h), std::move(j)};
  return detail::mk(std::move(t));
}

inline TermPtr term_bounded_sum(TermPtr f) {
  if (f->arity < 1) throw ArityError("bsum: inner term must have arity >= 1");
  Term t{Term::BoundedSum, f->arity};
  t.kids = {std::move(f)};
  return detail::mk(std::move(t));
}

inline TermPtr term_bounded_prod(TermPtr f) {
  if (f->arity < 1) throw ArityError("bprod: inner term must have arity >= 1");
  Term t{Term::BoundedProd, f->arity};
  t.kids = {std::move(f)};
  return detail::mk(std::move(t));
}

inline TermPtr term_minimizer(TermPtr f) {
  if (f->arity < 1) throw ArityError("mu: inner term must have arity >= 1");
  Term t{Term::Minimizer, f->arity};
  t.kids = {std::move(f)};
  return detail::mk(std::move(t));
}

inline TermPtr term_ladder(unsigned long n) {
  Term t{Term::Ladder, 2};
  t.a = n;
  return detail::mk(std::move(t));
}

inline TermPtr term_ackermann() { return detail::mk({Term::Ackermann, 2}); }

/// Evaluates terms on exact naturals.  Results of primitive recursion
/// and of the Ackermann function are memoized per evaluator instance;
/// everything else is cheap enough to recompute.
class Evaluator {
 public:
  Nat eval(const TermPtr& t, const std::vector<Nat>& args) {
    if (args.size() != t->arity)
      throw ArityError("eval: got " + std::to_string(args.size()) +
                       " arguments for arity-" + std::to_string(t->arity) +
                       " term");
    for (const auto& a : args)
      if (a < 0) throw DomainError("eval: negative argument");
    return eval_unchecked(*t, args);
  }

 private:
  using Key = std::pair<const Term*, std::vector<Nat>>;
  std::map<Key, Nat> memo_;

  Nat eval_unchecked(const Term& t, const std::vector<Nat>& args) {
    switch (t.kind) {
      case Term::Zero: return 0;
      case Term::Succ: return args[0] + 1;
      case Term::Proj: return args[t.b - 1];
      case Term::Const: return t.c;
      case Term::Add: return args[0] + args[1];
      case Term::Mul: return args[0] * args[1];
      case Term::Monus: return monus(args[0], args[1]);
      case Term::Compose: {
        std::vector<Nat> inner(t.kids.size() - 1);
        for (size_t i = 1; i < t.kids.size(); ++i)
          inner[i - 1] = eval_unchecked(*t.kids[i], args);
        return eval_unchecked(*t.kids[0], inner);
      }
      case Term::PrimRec: return eval_primrec(t, args, /*bounded=*/false);
      case Term::BoundedPrimRec: return eval_primrec(t, args, /*bounded=*/true);
      case Term::BoundedSum:
      case Term::BoundedProd: {
        const Term& f = *t.kids[0];
        Nat acc = t.kind == Term::BoundedSum ? 0 : 1;
        std::vector<Nat> inner = args;
        for (Nat i = 0; i <= args[0]; ++i) {
          inner[0] = i;
          Nat v = eval_unchecked(f, inner);
          if (t.kind == Term::BoundedSum)
            acc += v;
          else
            acc *= v;
        }
        return acc;
      }
      case Term::Minimizer: {
        const Term& f = *t.kids[0];
        const Nat& bound = args.back();
        std::vector<Nat> inner = args;
        for (Nat j = 0; j <= bound; ++j) {
          inner.back() = j;
          if (eval_unchecked(f, inner) == 0) return j;
        }
        return bound;
      }
      case Term::Ladder: return eval_ladder(t.a, args[0], args[1]);
      case Term::Ackermann: return eval_ackermann(&t, args[0], args[1]);
    }
    throw DomainError("eval: bad node");
  }

  Nat eval_primrec(const Term& t, const std::vector<Nat>& args, bool bounded) {
    Key key{&t, args};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Term& g = *t.kids[0];
    const Term& h = *t.kids[1];
    std::vector<Nat> rest(args.begin() + 1, args.end());
    std::vector<Nat> hargs(args.size() + 1);
    for (size_t i = 0; i < rest.size(); ++i) hargs[i + 2] = rest[i];
    std::vector<Nat> jargs;
    if (bounded) jargs = args;

    Nat cur = eval_unchecked(g, rest);
    if (bounded) check_bound(t, 0, cur, jargs);
    for (Nat x = 0; x < args[0]; ++x) {
      hargs[0] = x;
      hargs[1] = cur;
      cur = eval_unchecked(*t.kids[1], hargs);
      (void)h;
      if (bounded) check_bound(t, Nat(x + 1), cur, jargs);
    }
    memo_.emplace(std::move(key), cur);
    return cur;
  }

  void check_bound(const Term& t, Nat x, const Nat& value,
                   std::vector<Nat>& jargs) {
    jargs[0] = std::move(x);
    Nat limit = eval_unchecked(*t.kids[2], jargs);
    if (value > limit)
      throw BoundViolationError(
          "bprimrec: trace value exceeds its bound at recursion step " +
          jargs[0].get_str());
  }

  // f0(x,y)=x+1, f1=x+y, f2=xy, f_{n+1}(x,0)=1,
  // f_{n+1}(x,y+1)=f_n(x, f_{n+1}(x,y)).
  Nat eval_ladder(unsigned long n, const Nat& x, const Nat& y) {
    if (n == 0) return x + 1;
    if (n == 1) return x + y;
    if (n == 2) return x * y;
    Nat cur = 1;
    for (Nat i = 0; i < y; ++i) cur = eval_ladder(n - 1, x, cur);
    return cur;
  }

  Nat eval_ackermann(const Term* t, const Nat& m, const Nat& n) {
    Key key{t, {m, n}};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Nat r;
    if (m == 0) {
      r = n + 1;
    } else if (n == 0) {
      r = eval_ackermann(t, Nat(m - 1), Nat(1));
    } else {
      Nat inner = eval_ackermann(t, m, Nat(n - 1));
      r = eval_ackermann(t, Nat(m - 1), inner);
    }
    memo_.emplace(std::move(key), r);
    return r;
  }
};

/// One-shot evaluation with a fresh memo table.
inline Nat eval_term(const TermPtr& t, const std::vector<Nat>& args) {
  Evaluator ev;
  return ev.eval(t, args);
}

/// Syntactic, conservative class tag: an upper bound for the class the
/// term's function belongs to.  Semantic membership is undecidable, so
/// a term may be tagged above its true class but never below what its
/// shape guarantees.
inline ClassTag classify_term(const TermPtr& t) {
  switch (t->kind) {
    case Term::Zero:
    case Term::Succ:
    case Term::Proj:
    case Term::Const:
    case Term::Add:
    case Term::Mul:
    case Term::Monus:
      return ClassTag::lower_elementary();
    case Term::Compose:
    case Term::BoundedSum:
    case Term::Minimizer: {
      // Bounded minimization is derivable from bounded summation, so it
      // stays in the base class.
      ClassTag tag = ClassTag::lower_elementary();
      for (const auto& k : t->kids) tag = class_join(tag, classify_term(k));
      return tag;
    }
    case Term::BoundedProd: {
      return class_join(ClassTag::elementary(), classify_term(t->kids[0]));
    }
    case Term::BoundedPrimRec: {
      ClassTag tag = ClassTag::grzegorczyk(2);
      for (const auto& k : t->kids) tag = class_join(tag, classify_term(k));
      return tag;
    }
    case Term::PrimRec: {
      ClassTag tag = ClassTag::primitive_recursive();
      for (const auto& k : t->kids) tag = class_join(tag, classify_term(k));
      return tag;
    }
    case Term::Ladder:
      return t->a <= 2 ? ClassTag::lower_elementary()
                       : ClassTag::grzegorczyk(static_cast<unsigned>(t->a));
    case Term::Ackermann:
      return ClassTag::recursive();
  }
  return ClassTag::recursive();
}

}  // namespace periodica

#endif  // PERIODICA_TERM_HPP
