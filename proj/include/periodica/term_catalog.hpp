#ifndef PERIODICA_TERM_CATALOG_HPP
#define PERIODICA_TERM_CATALOG_HPP

#include <string>
#include <vector>

#include "periodica/term.hpp"

/// Named catalog of worked function terms.  Everything here is spelled
/// out from the base generators so the classifier can see the class
/// from the shape alone (factorial, which genuinely uses primitive
/// recursion, is the exception and is tagged accordingly).
namespace periodica {

namespace detail {

inline TermPtr p(unsigned long n, unsigned long i) { return term_proj(n, i); }

// sgn(x) = 1 - (1 - x), arity 1
inline TermPtr sgn_term() {
  TermPtr one = term_const(1);
  return term_compose(
      term_monus(),
      {one, term_compose(term_monus(), {one, p(1, 1)})});
}

// gt(x,y) = sgn(x - y)
inline TermPtr gt_term() {
  return term_compose(sgn_term(),
                      {term_compose(term_monus(), {p(2, 1), p(2, 2)})});
}

// geq(x,y) = 1 - sgn(y - x), used by div below
inline TermPtr geq_term() {
  TermPtr one = term_compose(term_const(1), {p(2, 1)});
  TermPtr sgn_of_diff = term_compose(
      sgn_term(), {term_compose(term_monus(), {p(2, 2), p(2, 1)})});
  return term_compose(term_monus(), {one, sgn_of_diff});
}

// |x - y| = (x - y) + (y - x)
inline TermPtr abs_diff_term() {
  return term_compose(term_add(),
                      {term_compose(term_monus(), {p(2, 1), p(2, 2)}),
                       term_compose(term_monus(), {p(2, 2), p(2, 1)})});
}

// min(x,y) = x - (x - y), max(x,y) = y + (x - y)
inline TermPtr min_term() {
  return term_compose(term_monus(),
                      {p(2, 1), term_compose(term_monus(), {p(2, 1), p(2, 2)})});
}
inline TermPtr max_term() {
  return term_compose(term_add(),
                      {p(2, 2), term_compose(term_monus(), {p(2, 1), p(2, 2)})});
}

// div(x,y) = [x/(y+1)] = (sum_{i<=x} geq(x, i*(y+1))) - 1
inline TermPtr div_term() {
  // summand(i, x, y) = geq(x, i*(y+1))
  TermPtr i_times_y1 = term_compose(
      term_mul(),
      {p(3, 1), term_compose(term_succ(), {p(3, 3)})});
  TermPtr summand = term_compose(geq_term(), {p(3, 2), i_times_y1});
  // bsum gives (i_bound, x, y) -> sum_{t<=i_bound}; tie i_bound to x.
  TermPtr summed = term_compose(term_bounded_sum(summand),
                                {p(2, 1), p(2, 1), p(2, 2)});
  TermPtr one = term_compose(term_const(1), {p(2, 1)});
  return term_compose(term_monus(), {summed, one});
}

// pow(n,m) = n^m as a bounded product of g(t,n) = sgn(t)*n + (1 - sgn(t)):
// the t = 0 factor is 1, every later factor is n.
inline TermPtr pow_term() {
  TermPtr sgn_t = term_compose(sgn_term(), {p(2, 1)});
  TermPtr factor = term_compose(
      term_add(),
      {term_compose(term_mul(), {sgn_t, p(2, 2)}),
       term_compose(term_monus(),
                    {term_compose(term_const(1), {p(2, 1)}), sgn_t})});
  // bprod gives (t_bound, n); pow(n,m) swaps the argument order.
  return term_compose(term_bounded_prod(factor), {p(2, 2), p(2, 1)});
}

// 0! = 1, (n+1)! = (n+1) * n!
inline TermPtr factorial_term() {
  TermPtr step = term_compose(
      term_mul(), {term_compose(term_succ(), {p(2, 1)}), p(2, 2)});
  return term_primrec(term_const(1, 0), step);
}

inline TermPtr with_label(TermPtr t, const std::string& name) {
  Term copy = *t;
  copy.label = name;
  return std::make_shared<const Term>(std::move(copy));
}

}  // namespace detail

/// Catalog lookup; throws DomainError for unknown names.
/// Accepts: add mul sub abs_diff min max sgn gt div pow factorial
/// ladder(n) ackermann.
inline TermPtr builtin(const std::string& name) {
  using namespace detail;
  if (name == "add") return with_label(term_add(), name);
  if (name == "mul") return with_label(term_mul(), name);
  if (name == "sub") return with_label(term_monus(), name);
  if (name == "abs_diff") return with_label(abs_diff_term(), name);
  if (name == "min") return with_label(min_term(), name);
  if (name == "max") return with_label(max_term(), name);
  if (name == "sgn") return with_label(sgn_term(), name);
  if (name == "gt") return with_label(gt_term(), name);
  if (name == "div") return with_label(div_term(), name);
  if (name == "pow") return with_label(pow_term(), name);
  if (name == "factorial") return with_label(factorial_term(), name);
  if (name == "ackermann") return with_label(term_ackermann(), name);
  if (name.rfind("ladder(", 0) == 0 && name.back() == ')') {
    std::string inner = name.substr(7, name.size() - 8);
    return with_label(term_ladder(std::stoul(inner)), name);
  }
  throw DomainError("unknown builtin: " + name);
}

}  // namespace periodica

#endif  // PERIODICA_TERM_CATALOG_HPP
