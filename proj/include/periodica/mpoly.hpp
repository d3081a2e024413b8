#ifndef PERIODICA_MPOLY_HPP
#define PERIODICA_MPOLY_HPP

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "periodica/exact.hpp"
#include "periodica/interval.hpp"

namespace periodica {

/// Multivariate polynomial with rational coefficients in expanded
/// monomial form.  Zero coefficients are never stored.
struct MPoly {
  unsigned nvars = 0;
  std::map<std::vector<unsigned long>, Rat> terms;

  static MPoly zero(unsigned nvars) { return MPoly{nvars, {}}; }

  static MPoly constant(unsigned nvars, const Rat& c) {
    MPoly p{nvars, {}};
    if (c != 0) p.terms[std::vector<unsigned long>(nvars, 0)] = c;
    return p;
  }

  /// x_i, 0-based.
  static MPoly var(unsigned nvars, unsigned i) {
    if (i >= nvars) throw DomainError("MPoly::var: index out of range");
    MPoly p{nvars, {}};
    std::vector<unsigned long> e(nvars, 0);
    e[i] = 1;
    p.terms[e] = 1;
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const std::vector<unsigned long>& e, const Rat& c) {
    auto it = terms.find(e);
    if (it == terms.end()) {
      if (c != 0) terms[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  /// Same polynomial seen in a larger variable space.
  MPoly lifted(unsigned new_nvars) const {
    if (new_nvars < nvars) throw DomainError("MPoly::lifted: shrinking space");
    MPoly p{new_nvars, {}};
    for (const auto& [e, c] : terms) {
      std::vector<unsigned long> e2 = e;
      e2.resize(new_nvars, 0);
      p.terms[std::move(e2)] = c;
    }
    return p;
  }

  Rat eval(const std::vector<Rat>& point) const {
    if (point.size() != nvars) throw DomainError("MPoly::eval: bad point");
    Rat acc(0);
    for (const auto& [e, c] : terms) {
      Rat m = c;
      for (unsigned i = 0; i < nvars; ++i)
        for (unsigned long k = 0; k < e[i]; ++k) m *= point[i];
      acc += m;
    }
    return acc;
  }

  /// Interval enclosure over a box, monomial by monomial.
  RatInterval enclosure(const std::vector<RatInterval>& box) const {
    if (box.size() != nvars) throw DomainError("MPoly::enclosure: bad box");
    RatInterval acc = RatInterval::point(Rat(0));
    for (const auto& [e, c] : terms) {
      RatInterval m = RatInterval::point(c);
      for (unsigned i = 0; i < nvars; ++i)
        if (e[i] > 0) m = m * pow_interval(box[i], e[i]);
      acc = acc + m;
    }
    return acc;
  }
};

inline MPoly operator+(const MPoly& a, const MPoly& b) {
  if (a.nvars != b.nvars) throw DomainError("MPoly +: dimension mismatch");
  MPoly r = a;
  for (const auto& [e, c] : b.terms) r.add_term(e, c);
  return r;
}

inline MPoly operator-(const MPoly& a) {
  MPoly r = a;
  for (auto& [e, c] : r.terms) c = -c;
  return r;
}

inline MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

inline MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.nvars != b.nvars) throw DomainError("MPoly *: dimension mismatch");
  MPoly r = MPoly::zero(a.nvars);
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::vector<unsigned long> e(a.nvars);
      for (unsigned i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

class PolyParseError : public std::runtime_error {
 public:
  PolyParseError(size_t pos, const std::string& what)
      : std::runtime_error("polynomial parse error at " + std::to_string(pos) +
                           ": " + what),
        position(pos) {}
  size_t position;
};

/// Parse an expanded-monomial polynomial over variables x1..x<nvars>,
/// e.g. "1 - x1^2 - 3/2 x1 x2".  Juxtaposition multiplies; '*' is
/// accepted too.  For univariate input, a bare "x" or "X" means x1.
inline MPoly parse_mpoly(const std::string& src, unsigned nvars) {
  size_t pos = 0;
  auto skip = [&] {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  };
  auto parse_number = [&]() -> Rat {
    size_t start = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
      ++pos;
    if (pos == start) throw PolyParseError(pos, "expected a number");
    Int numerator(src.substr(start, pos - start));
    skip();
    if (pos < src.size() && src[pos] == '/') {
      ++pos;
      skip();
      size_t dstart = pos;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
        ++pos;
      if (pos == dstart) throw PolyParseError(pos, "expected a denominator");
      return make_rat(numerator, Int(src.substr(dstart, pos - dstart)));
    }
    return Rat(numerator);
  };
  auto parse_exponent = [&]() -> unsigned long {
    skip();
    if (pos < src.size() && src[pos] == '^') {
      ++pos;
      skip();
      size_t start = pos;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
        ++pos;
      if (pos == start) throw PolyParseError(pos, "expected an exponent");
      return std::stoul(src.substr(start, pos - start));
    }
    return 1;
  };

  MPoly result = MPoly::zero(nvars);
  skip();
  bool first = true;
  while (pos < src.size()) {
    int sign = 1;
    skip();
    if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) {
      sign = src[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw PolyParseError(pos, "expected '+' or '-'");
    }
    first = false;
    skip();
    // One monomial: optional coefficient, then variable powers.
    Rat coeff(sign);
    std::vector<unsigned long> expo(nvars, 0);
    bool saw_factor = false;
    for (;;) {
      skip();
      if (pos < src.size() && src[pos] == '*') {
        ++pos;
        skip();
      }
      if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        coeff *= parse_number();
        saw_factor = true;
        continue;
      }
      if (pos < src.size() && (src[pos] == 'x' || src[pos] == 'X')) {
        size_t vstart = pos;
        ++pos;
        size_t istart = pos;
        while (pos < src.size() &&
               std::isdigit(static_cast<unsigned char>(src[pos])))
          ++pos;
        unsigned long index;
        if (istart == pos) {
          if (nvars != 1)
            throw PolyParseError(vstart, "bare 'x' needs a variable index");
          index = 1;
        } else {
          index = std::stoul(src.substr(istart, pos - istart));
        }
        if (index < 1 || index > nvars)
          throw PolyParseError(vstart, "variable index out of range");
        expo[index - 1] += parse_exponent();
        saw_factor = true;
        continue;
      }
      break;
    }
    if (!saw_factor) throw PolyParseError(pos, "expected a monomial");
    result.add_term(expo, coeff);
  }
  return result;
}

}  // namespace periodica

#endif  // PERIODICA_MPOLY_HPP
