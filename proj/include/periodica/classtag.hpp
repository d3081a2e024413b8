#ifndef PERIODICA_CLASSTAG_HPP
#define PERIODICA_CLASSTAG_HPP

#include <string>

#include "periodica/exact.hpp"

namespace periodica {

/// Conservative complexity-class tag for natural-number functions and
/// the reals built from them.  Tags sit on the chain
///
///   lower-elementary <= E^2 <= E^3 = elementary <= E^4 <= ...
///                    <= primitive-recursive <= recursive
///
/// Whether lower-elementary and E^2 coincide is open, so they are kept
/// as distinct tags and never merged.  E^3 and elementary are provably
/// the same class, so E(3) normalizes to Elementary.
struct ClassTag {
  enum Kind {
    LowerElementary,
    Grzegorczyk,  // E^level, level >= 2, level != 3
    Elementary,
    PrimitiveRecursive,
    Recursive,
  };

  Kind kind = LowerElementary;
  unsigned level = 0;  // only meaningful for Grzegorczyk

  static ClassTag lower_elementary() { return {LowerElementary, 0}; }
  static ClassTag elementary() { return {Elementary, 0}; }
  static ClassTag grzegorczyk(unsigned n) {
    if (n < 2) throw DomainError("E^n tag requires n >= 2");
    if (n == 3) return elementary();
    return {Grzegorczyk, n};
  }
  static ClassTag primitive_recursive() { return {PrimitiveRecursive, 0}; }
  static ClassTag recursive() { return {Recursive, 0}; }

  // Rank along the chain; join = max.
  unsigned rank() const {
    switch (kind) {
      case LowerElementary: return 0;
      case Grzegorczyk: return level - 1;  // E^2 -> 1, E^4 -> 3, ...
      case Elementary: return 2;
      case PrimitiveRecursive: return 1000;
      case Recursive: return 1001;
    }
    return 1001;
  }

  std::string name() const {
    switch (kind) {
      case LowerElementary: return "lower-elementary";
      case Grzegorczyk: return "E^" + std::to_string(level);
      case Elementary: return "elementary";
      case PrimitiveRecursive: return "primitive-recursive";
      case Recursive: return "recursive";
    }
    return "?";
  }
};

inline bool operator==(const ClassTag& a, const ClassTag& b) {
  return a.kind == b.kind && a.level == b.level;
}

inline bool class_leq(const ClassTag& a, const ClassTag& b) {
  return a.rank() <= b.rank();
}

inline ClassTag class_join(const ClassTag& a, const ClassTag& b) {
  return a.rank() >= b.rank() ? a : b;
}

}  // namespace periodica

#endif  // PERIODICA_CLASSTAG_HPP
