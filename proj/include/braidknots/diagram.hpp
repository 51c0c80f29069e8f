#pragma once

#include <cstddef>
#include <vector>

#include "braidknots/braid_word.hpp"
#include "braidknots/laurent.hpp"

namespace braidknots {

inline constexpr std::size_t kDefaultCrossingCap = 30;

/// One crossing of a braid closure: letter sign and the 0-based left
/// position of the two strands it exchanges.
struct Crossing {
  int sign = 1;
  int position = 0;
};

/// A pass through a crossing while walking along a component.
struct Visit {
  int crossing = 0;
  bool over = false;
};

/// Closure diagram: one crossing per letter, strands oriented downward and
/// returned through parallel arcs. `components` lists, per link component,
/// the crossings met in traversal order; a component without crossings has
/// an empty list.
struct KnotDiagram {
  int strands = 1;
  std::vector<Crossing> crossings;
  std::vector<std::vector<Visit>> components;

  std::size_t crossing_count() const noexcept { return crossings.size(); }
};

KnotDiagram closure_diagram(const BraidWord& w);

/// Canonical Dowker-Thistlethwaite code of a knot diagram. Throws
/// NotAKnotError for multi-component diagrams.
///
/// Canonical form: the minimum over every traversal start and both
/// orientations, comparing entries by absolute value first and preferring
/// the positive sign on ties.
std::vector<int> dt_code(const KnotDiagram& d);

/// Kauffman bracket <D> in the variable A, normalized so the crossingless
/// circle is 1. Computed by sweeping the braid top to bottom and memoizing
/// the Temperley-Lieb connectivity of the cut. Throws ResourceError when the
/// diagram has more than `crossing_cap` crossings.
Poly kauffman_bracket(const KnotDiagram& d, std::size_t crossing_cap = kDefaultCrossingCap);

/// Jones polynomial of the closure in the quarter-power basis q = t^{1/4}:
/// (-A^3)^{-writhe} <D> with A = q^{-1}. Knots only have exponents
/// divisible by 4.
Poly jones(const BraidWord& w, std::size_t crossing_cap = kDefaultCrossingCap);

/// Jones polynomial with integer t exponents. Throws std::domain_error for
/// links whose polynomial has half-integer powers.
Poly jones_t(const BraidWord& w, std::size_t crossing_cap = kDefaultCrossingCap);

int writhe(const BraidWord& w);

}  // namespace braidknots
