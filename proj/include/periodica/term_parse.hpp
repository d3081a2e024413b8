#ifndef PERIODICA_TERM_PARSE_HPP
#define PERIODICA_TERM_PARSE_HPP

#include <cctype>
#include <string>
#include <vector>

#include "periodica/term.hpp"
#include "periodica/term_catalog.hpp"

namespace periodica {

class ParseError : public std::runtime_error {
 public:
  ParseError(size_t pos, const std::string& what)
      : std::runtime_error("parse error at " + std::to_string(pos) + ": " +
                           what),
        position(pos) {}
  size_t position;
};

namespace detail {

/// Recursive-descent parser for the prefix term grammar.  Whitespace is
/// ignored everywhere; errors carry the offending position.
class TermParser {
 public:
  explicit TermParser(const std::string& src) : src_(src) {}

  TermPtr parse() {
    TermPtr t = parse_term();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input");
    return t;
  }

 private:
  const std::string& src_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(pos_, msg);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool try_consume(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!try_consume(c)) fail(std::string("expected '") + c + "'");
  }

  Nat parse_nat() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    if (pos_ == start) fail("expected a natural number");
    return Nat(src_.substr(start, pos_ - start));
  }

  std::string parse_ident() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected a term");
    return src_.substr(start, pos_ - start);
  }

  TermPtr parse_term() {
    size_t at = pos_;
    std::string head = parse_ident();
    try {
      if (head == "Z") return term_zero();
      if (head == "S") return term_succ();
      if (head == "ackermann") return builtin("ackermann");
      if (head == "proj") {
        expect('(');
        Nat n = parse_nat();
        expect(',');
        Nat i = parse_nat();
        expect(')');
        return term_proj(to_ulong(n), to_ulong(i));
      }
      if (head == "const") {
        expect('(');
        Nat c = parse_nat();
        expect(')');
        return term_const(c);
      }
      if (head == "ladder") {
        expect('(');
        Nat n = parse_nat();
        expect(')');
        return builtin("ladder(" + n.get_str() + ")");
      }
      if (head == "comp") {
        expect('(');
        TermPtr g = parse_term();
        expect(',');
        expect('[');
        std::vector<TermPtr> hs;
        hs.push_back(parse_term());
        while (try_consume(',')) hs.push_back(parse_term());
        expect(']');
        expect(')');
        return term_compose(std::move(g), std::move(hs));
      }
      if (head == "primrec") {
        expect('(');
        TermPtr g = parse_term();
        expect(',');
        TermPtr h = parse_term();
        expect(')');
        return term_primrec(std::move(g), std::move(h));
      }
      if (head == "bprimrec") {
        expect('(');
        TermPtr g = parse_term();
        expect(',');
        TermPtr h = parse_term();
        expect(',');
        TermPtr j = parse_term();
        expect(')');
        return term_bounded_primrec(std::move(g), std::move(h), std::move(j));
      }
      if (head == "bsum" || head == "bprod" || head == "mu") {
        expect('(');
        TermPtr f = parse_term();
        expect(')');
        if (head == "bsum") return term_bounded_sum(std::move(f));
        if (head == "bprod") return term_bounded_prod(std::move(f));
        return term_minimizer(std::move(f));
      }
      return builtin(head);
    } catch (const ArityError&) {
      throw;
    } catch (const ParseError&) {
      throw;
    } catch (const DomainError& e) {
      throw ParseError(at, e.what());
    }
  }
};

}  // namespace detail

/// Parse a term from the prefix grammar.  Arity mismatches surface as
/// ArityError naming the operator; malformed input as ParseError with a
/// position.
inline TermPtr parse_term(const std::string& source) {
  return detail::TermParser(source).parse();
}

inline std::string term_to_string(const TermPtr& t) {
  if (!t->label.empty()) return t->label;
  switch (t->kind) {
    case Term::Zero: return "Z";
    case Term::Succ: return "S";
    case Term::Proj:
      return "proj(" + std::to_string(t->a) + "," + std::to_string(t->b) + ")";
    case Term::Const: return "const(" + t->c.get_str() + ")";
    case Term::Add: return "add";
    case Term::Mul: return "mul";
    case Term::Monus: return "sub";
    case Term::Compose: {
      std::string s = "comp(" + term_to_string(t->kids[0]) + ",[";
      for (size_t i = 1; i < t->kids.size(); ++i) {
        if (i > 1) s += ",";
        s += term_to_string(t->kids[i]);
      }
      return s + "])";
    }
    case Term::PrimRec:
      return "primrec(" + term_to_string(t->kids[0]) + "," +
             term_to_string(t->kids[1]) + ")";
    case Term::BoundedPrimRec:
      return "bprimrec(" + term_to_string(t->kids[0]) + "," +
             term_to_string(t->kids[1]) + "," + term_to_string(t->kids[2]) +
             ")";
    case Term::BoundedSum: return "bsum(" + term_to_string(t->kids[0]) + ")";
    case Term::BoundedProd: return "bprod(" + term_to_string(t->kids[0]) + ")";
    case Term::Minimizer: return "mu(" + term_to_string(t->kids[0]) + ")";
    case Term::Ladder: return "ladder(" + std::to_string(t->a) + ")";
    case Term::Ackermann: return "ackermann";
  }
  return "?";
}

}  // namespace periodica

#endif  // PERIODICA_TERM_PARSE_HPP
