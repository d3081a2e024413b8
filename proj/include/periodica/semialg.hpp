#ifndef PERIODICA_SEMIALG_HPP
#define PERIODICA_SEMIALG_HPP

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "periodica/creal.hpp"
#include "periodica/exact.hpp"
#include "periodica/expansions.hpp"
#include "periodica/interval.hpp"
#include "periodica/mpoly.hpp"

/// Semialgebraic sets in disjunctive normal form, certified volume
/// bounds by adaptive dyadic subdivision, and integrals of rational
/// functions realized as volume differences of lifted sets.
namespace periodica {

class DimensionError : public std::runtime_error {
 public:
  explicit DimensionError(const std::string& what)
      : std::runtime_error(what) {}
};

struct SignCondition {
  MPoly poly;
  enum Rel { EqZero, Gt } rel;
};

/// Union over conjunctions of sign conditions (DNF).  An empty DNF is
/// the empty set; an empty conjunction is all of R^n.
struct SemialgSet {
  unsigned nvars = 0;
  std::vector<std::vector<SignCondition>> dnf;
};

struct Box {
  std::vector<RatInterval> sides;

  unsigned nvars() const { return static_cast<unsigned>(sides.size()); }

  Rat volume() const {
    Rat v(1);
    for (const auto& s : sides) v *= s.width();
    return v;
  }

  /// One dyadic refinement level: every side halved, 2^n children in
  /// lexicographic low/high order.
  std::vector<Box> split_all() const {
    std::vector<Box> cells{Box{{}}};
    for (const auto& side : sides) {
      Rat mid = side.midpoint();
      std::vector<Box> next;
      next.reserve(cells.size() * 2);
      for (const auto& c : cells) {
        Box lo = c, hi = c;
        lo.sides.emplace_back(side.lo, mid);
        hi.sides.emplace_back(mid, side.hi);
        next.push_back(std::move(lo));
        next.push_back(std::move(hi));
      }
      cells = std::move(next);
    }
    return cells;
  }
};

struct VolumeResult {
  Rat lower;
  Rat upper;
  unsigned long depth = 0;
  unsigned long cells_classified = 0;
};

inline SemialgSet make_set(unsigned nvars,
                           std::vector<std::vector<SignCondition>> dnf) {
  for (const auto& conj : dnf)
    for (const auto& cond : conj)
      if (cond.poly.nvars != nvars)
        throw DimensionError("make_set: condition dimension mismatch");
  return SemialgSet{nvars, std::move(dnf)};
}

inline SemialgSet set_union(const SemialgSet& a, const SemialgSet& b) {
  if (a.nvars != b.nvars) throw DimensionError("set_union: dimension mismatch");
  SemialgSet r = a;
  r.dnf.insert(r.dnf.end(), b.dnf.begin(), b.dnf.end());
  return r;
}

inline SemialgSet set_intersect(const SemialgSet& a, const SemialgSet& b) {
  if (a.nvars != b.nvars)
    throw DimensionError("set_intersect: dimension mismatch");
  SemialgSet r{a.nvars, {}};
  for (const auto& ca : a.dnf)
    for (const auto& cb : b.dnf) {
      auto conj = ca;
      conj.insert(conj.end(), cb.begin(), cb.end());
      r.dnf.push_back(std::move(conj));
    }
  return r;
}

/// Complement via condition-wise negation and distribution back to DNF:
/// (f = 0)^c = (f > 0) or (-f > 0), (g > 0)^c = (g = 0) or (-g > 0).
inline SemialgSet set_complement(const SemialgSet& a) {
  std::vector<std::vector<SignCondition>> acc{{}};
  for (const auto& conj : a.dnf) {
    std::vector<SignCondition> negated;
    for (const auto& cond : conj) {
      if (cond.rel == SignCondition::EqZero) {
        negated.push_back({cond.poly, SignCondition::Gt});
        negated.push_back({-cond.poly, SignCondition::Gt});
      } else {
        negated.push_back({cond.poly, SignCondition::EqZero});
        negated.push_back({-cond.poly, SignCondition::Gt});
      }
    }
    std::vector<std::vector<SignCondition>> next;
    for (const auto& partial : acc)
      for (const auto& atom : negated) {
        auto conj2 = partial;
        conj2.push_back(atom);
        next.push_back(std::move(conj2));
      }
    acc = std::move(next);
  }
  return SemialgSet{a.nvars, std::move(acc)};
}

/// X x Y: concatenated variable spaces.
inline SemialgSet set_product(const SemialgSet& a, const SemialgSet& b) {
  unsigned nvars = a.nvars + b.nvars;
  SemialgSet r{nvars, {}};
  for (const auto& ca : a.dnf)
    for (const auto& cb : b.dnf) {
      std::vector<SignCondition> conj;
      for (const auto& cond : ca) conj.push_back({cond.poly.lifted(nvars), cond.rel});
      for (const auto& cond : cb) {
        // Shift b's variables past a's.
        MPoly shifted = MPoly::zero(nvars);
        for (const auto& [e, c] : cond.poly.terms) {
          std::vector<unsigned long> e2(nvars, 0);
          for (unsigned i = 0; i < b.nvars; ++i) e2[a.nvars + i] = e[i];
          shifted.add_term(e2, c);
        }
        conj.push_back({std::move(shifted), cond.rel});
      }
      r.dnf.push_back(std::move(conj));
    }
  return r;
}

enum class BoxClass { Inside, Outside, Boundary };

/// Interval-certified membership of a whole box.  Inside demands some
/// conjunction hold at every point of the box, which an enclosure can
/// certify only for strict inequalities (an equality can be certified
/// Inside only by the zero polynomial).  Outside demands every
/// conjunction provably miss the box.
inline BoxClass classify_box(const SemialgSet& s, const Box& box) {
  if (box.nvars() != s.nvars)
    throw DimensionError("classify_box: dimension mismatch");
  bool all_missed = true;
  for (const auto& conj : s.dnf) {
    bool conj_true_everywhere = true;
    bool conj_false_everywhere = false;
    for (const auto& cond : conj) {
      if (cond.rel == SignCondition::Gt) {
        RatInterval e = cond.poly.enclosure(box.sides);
        if (!e.strictly_positive()) conj_true_everywhere = false;
        if (e.nonpositive()) {
          conj_false_everywhere = true;
          break;
        }
      } else {
        if (!cond.poly.is_zero()) conj_true_everywhere = false;
        RatInterval e = cond.poly.enclosure(box.sides);
        if (!e.contains_zero()) {
          conj_false_everywhere = true;
          break;
        }
      }
    }
    if (conj_false_everywhere) continue;
    all_missed = false;
    if (conj_true_everywhere) return BoxClass::Inside;
  }
  if (all_missed) return BoxClass::Outside;
  return BoxClass::Boundary;
}

namespace detail {

inline void require_strict(const SemialgSet& s, const char* who) {
  for (const auto& conj : s.dnf)
    for (const auto& cond : conj)
      if (cond.rel == SignCondition::EqZero)
        throw DomainError(std::string(who) +
                          ": equality conditions have no certifiable volume; "
                          "use a strict description");
}

}  // namespace detail

/// Certified two-sided volume bounds by adaptive bisection: cells whose
/// classification stays ambiguous at max_depth count toward the upper
/// bound only.  Bounds are monotone in max_depth by construction.
inline VolumeResult volume_bounds(const SemialgSet& s, const Box& domain,
                                  unsigned long max_depth) {
  if (domain.nvars() != s.nvars)
    throw DimensionError("volume_bounds: dimension mismatch");
  detail::require_strict(s, "volume_bounds");
  VolumeResult out{Rat(0), Rat(0), max_depth, 0};
  struct Cell {
    Box box;
    unsigned long depth;
  };
  std::vector<Cell> work{{domain, 0}};
  while (!work.empty()) {
    Cell cell = std::move(work.back());
    work.pop_back();
    ++out.cells_classified;
    switch (classify_box(s, cell.box)) {
      case BoxClass::Inside:
        out.lower += cell.box.volume();
        out.upper += cell.box.volume();
        break;
      case BoxClass::Outside:
        break;
      case BoxClass::Boundary:
        if (cell.depth >= max_depth) {
          out.upper += cell.box.volume();
        } else {
          for (auto& child : cell.box.split_all())
            work.push_back({std::move(child), cell.depth + 1});
        }
        break;
    }
  }
  return out;
}

/// The volume as a computable real: index x deepens the subdivision
/// until the bound width drops to 2/(x+1) and returns the midpoint.
/// Exceeding the depth ceiling before that is a resource error, not a
/// wrong answer.
inline CReal volume_creal(const SemialgSet& s, const Box& domain,
                          unsigned long depth_ceiling = 48) {
  detail::require_strict(s, "volume_creal");
  return CReal(
      [s, domain, depth_ceiling](const Nat& x) {
        Rat target = make_rat(2, x + 1);
        for (unsigned long d = 0;; ++d) {
          VolumeResult vr = volume_bounds(s, domain, d);
          if (vr.upper - vr.lower <= target)
            return Rat((vr.upper + vr.lower) / 2);
          if (d >= depth_ceiling)
            throw ResourceLimitError(
                "volume_creal: depth ceiling reached before bounds closed");
        }
      },
      ModulusKind::Inverse, ClassTag::lower_elementary(), "volume");
}

/// Nested-interval witness of the same refinement.
inline NestedIntervals volume_nested(const SemialgSet& s, const Box& domain,
                                     unsigned long depth_ceiling = 48) {
  detail::require_strict(s, "volume_nested");
  auto at = [s, domain, depth_ceiling](const Nat& x) {
    unsigned long d = to_ulong(x);
    if (d > depth_ceiling) d = depth_ceiling;
    return volume_bounds(s, domain, d);
  };
  return NestedIntervals{[at](const Nat& x) { return at(x).lower; },
                         [at](const Nat& x) { return at(x).upper; }};
}

/// Integral of num/den over the part of the domain box described by s,
/// realized as vol(X1) - vol(X2) with
///   X1 = s and {t > 0} and {t < num/den},
///   X2 = s and {t < 0} and {t > num/den},
/// both made polynomial and strict by multiplying through with den
/// (whose enclosure must exclude zero on the domain; that also bounds
/// the integrand, giving the lifted t-range).
inline CReal integrate(const SemialgSet& s, const MPoly& num_poly,
                       const MPoly& den_poly, const Box& domain,
                       unsigned long depth_ceiling = 48) {
  if (s.nvars != num_poly.nvars || s.nvars != den_poly.nvars ||
      domain.nvars() != s.nvars)
    throw DimensionError("integrate: dimension mismatch");
  detail::require_strict(s, "integrate");

  RatInterval den_range = den_poly.enclosure(domain.sides);
  if (den_range.contains_zero())
    throw DomainError("integrate: denominator enclosure contains zero");
  bool den_positive = den_range.strictly_positive();

  RatInterval num_range = num_poly.enclosure(domain.sides);
  Rat num_mag = std::max(abs(num_range.lo), abs(num_range.hi));
  Rat den_min = std::min(abs(den_range.lo), abs(den_range.hi));
  Rat bound = num_mag / den_min + 1;

  unsigned lifted_n = s.nvars + 1;
  MPoly t = MPoly::var(lifted_n, s.nvars);
  MPoly p = num_poly.lifted(lifted_n);
  MPoly q = den_poly.lifted(lifted_n);
  MPoly upper_gap = den_positive ? p - t * q : t * q - p;  // > 0 iff t < P/Q
  MPoly lower_gap = den_positive ? t * q - p : p - t * q;  // > 0 iff t > P/Q

  auto lift_conjs = [&](const MPoly& t_sign, const MPoly& gap) {
    std::vector<std::vector<SignCondition>> dnf;
    for (const auto& conj : s.dnf) {
      std::vector<SignCondition> lifted;
      for (const auto& cond : conj)
        lifted.push_back({cond.poly.lifted(lifted_n), cond.rel});
      lifted.push_back({t_sign, SignCondition::Gt});
      lifted.push_back({gap, SignCondition::Gt});
      dnf.push_back(std::move(lifted));
    }
    return SemialgSet{lifted_n, std::move(dnf)};
  };
  SemialgSet x1 = lift_conjs(t, upper_gap);
  SemialgSet x2 = lift_conjs(-t, lower_gap);

  Box dom1 = domain, dom2 = domain;
  dom1.sides.push_back(RatInterval(Rat(0), bound));
  dom2.sides.push_back(RatInterval(-bound, Rat(0)));

  return arith(volume_creal(x1, dom1, depth_ceiling),
               volume_creal(x2, dom2, depth_ceiling), ArithOp::Sub);
}

// ---------------------------------------------------------------------------
// Worked period constructions.

struct PeriodName {
  enum Kind { PiDisk, LnRho } kind;
  Rat rho;  // LnRho only

  static PeriodName pi_disk() { return {PiDisk, Rat(0)}; }
  static PeriodName ln_rho(Rat r) { return {LnRho, std::move(r)}; }
};

/// The open unit disk {1 - x^2 - y^2 > 0}.
inline SemialgSet disk_set() {
  MPoly one = MPoly::constant(2, Rat(1));
  MPoly x = MPoly::var(2, 0), y = MPoly::var(2, 1);
  return make_set(2, {{{one - x * x - y * y, SignCondition::Gt}}});
}

/// {1 < x < rho, 0 < xy < 1}; its area is ln(rho).
inline SemialgSet ln_region_set(const Rat& rho) {
  MPoly one = MPoly::constant(2, Rat(1));
  MPoly c_rho = MPoly::constant(2, rho);
  MPoly x = MPoly::var(2, 0), y = MPoly::var(2, 1);
  return make_set(2, {{{x - one, SignCondition::Gt},
                       {c_rho - x, SignCondition::Gt},
                       {x * y, SignCondition::Gt},
                       {one - x * y, SignCondition::Gt}}});
}

inline CReal period_catalog(const PeriodName& name,
                            unsigned long depth_ceiling = 48) {
  switch (name.kind) {
    case PeriodName::PiDisk: {
      Box dom{{RatInterval(Rat(-1), Rat(1)), RatInterval(Rat(-1), Rat(1))}};
      return volume_creal(disk_set(), dom, depth_ceiling);
    }
    case PeriodName::LnRho: {
      if (!(name.rho > 1))
        throw DomainError("period_catalog: ln region requires rho > 1");
      Box dom{{RatInterval(Rat(1), name.rho), RatInterval(Rat(0), Rat(1))}};
      return volume_creal(ln_region_set(name.rho), dom, depth_ceiling);
    }
  }
  throw DomainError("period_catalog: bad name");
}

// ---------------------------------------------------------------------------
// Text format: header "vars n", then one DNF disjunct per line written
// as '&'-separated atoms "poly > 0" or "poly = 0".  '#' starts a comment.

inline SemialgSet parse_semialg(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  unsigned nvars = 0;
  bool have_header = false;
  SemialgSet set;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    if (!have_header) {
      if (line.rfind("vars", 0) != 0)
        throw DomainError("set file: expected 'vars n' header");
      nvars = static_cast<unsigned>(std::stoul(line.substr(4)));
      set.nvars = nvars;
      have_header = true;
      continue;
    }
    std::vector<SignCondition> conj;
    size_t start = 0;
    while (start <= line.size()) {
      size_t amp = line.find('&', start);
      std::string atom = line.substr(
          start, amp == std::string::npos ? std::string::npos : amp - start);
      size_t rel_pos = atom.find_first_of(">=");
      if (rel_pos == std::string::npos)
        throw DomainError("set file line " + std::to_string(lineno) +
                          ": atom needs '> 0' or '= 0'");
      char rel = atom[rel_pos];
      std::string rhs = atom.substr(rel_pos + 1);
      size_t r0 = rhs.find_first_not_of(" \t");
      size_t r1 = rhs.find_last_not_of(" \t");
      if (r0 == std::string::npos || rhs.substr(r0, r1 - r0 + 1) != "0")
        throw DomainError("set file line " + std::to_string(lineno) +
                          ": right-hand side must be 0");
      MPoly p = parse_mpoly(atom.substr(0, rel_pos), nvars);
      conj.push_back(
          {std::move(p), rel == '>' ? SignCondition::Gt : SignCondition::EqZero});
      if (amp == std::string::npos) break;
      start = amp + 1;
    }
    set.dnf.push_back(std::move(conj));
  }
  if (!have_header) throw DomainError("set file: missing 'vars n' header");
  return set;
}

}  // namespace periodica

#endif  // PERIODICA_SEMIALG_HPP
