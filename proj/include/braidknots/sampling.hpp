#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "braidknots/braid_word.hpp"
#include "braidknots/diagram.hpp"
#include "braidknots/invariants.hpp"
#include "braidknots/rng.hpp"

namespace braidknots {

inline constexpr std::size_t kDefaultGenerationBudget = 100000;

/// No unknot word with fewer letters survives smart_collapse.
inline constexpr std::size_t kShortestCollapsedUnknot = 4;

/// Which braid relation accompanies each random Markov move while mixing.
enum class MixingRelation { Relation1, Relation2 };

/// Knobs shared by the random generators. `mixing_rounds` == 0 means "use
/// max(4, ceil(n_letters / 2))".
struct GenerationConfig {
  std::size_t mixing_rounds = 0;
  MixingRelation relation = MixingRelation::Relation1;
  std::size_t budget = kDefaultGenerationBudget;  // outer iterations before giving up
};

/// One knot-preserving Markov move with flat probabilities: with probability
/// 1/2 a conjugation [+-j] + w + [-+j] by a generator j already in use,
/// otherwise a stabilization by a new top strand with a random sign. Words on
/// a single strand have no generator to conjugate by and are always stabilized.
BraidWord random_markov_move(const BraidWord& w, Rng& rng);

/// Random braid word of exactly `n_letters` letters whose closure is the
/// unknot: start from the empty word, apply mixing rounds of random Markov
/// moves and braid relations, collapse, and repeat (restarting on overshoot).
/// Throws GenerationError when the budget runs out, and immediately for
/// lengths 1 to 3, where no such word exists.
BraidWord random_unknot(std::size_t n_letters, Rng& rng, const GenerationConfig& config = {});

/// Random braid word of exactly `n_letters` letters whose closure is a knot:
/// uniform letters over Br_{n_strands}, knotify, mix and collapse, retrying
/// until the length matches. The knot may still be trivial; see
/// random_nontrivial_knot.
BraidWord random_knot(std::size_t n_letters, int n_strands, Rng& rng, const GenerationConfig& config = {});

/// random_knot redrawn until unknot_filter reports ProvablyNontrivial.
BraidWord random_nontrivial_knot(std::size_t n_letters, int n_strands, Rng& rng,
                                 const GenerationConfig& config = {},
                                 std::size_t jones_cap = kDefaultCrossingCap);

/// Knot-type census of a sample, identified by Jones polynomial.
struct PriorStats {
  std::size_t total = 0;
  std::size_t unknots = 0;
  std::size_t prime = 0;
  std::size_t composite = 0;
  std::size_t unidentified = 0;  // no table match, or over the crossing cap
  std::map<std::string, std::size_t> by_name;
  std::map<int, std::size_t> by_crossings;  // 0 = unknot

  /// Nontrivial identified knots named 3_1 or m3_1.
  std::size_t trefoils() const;
  std::size_t identified_nontrivial() const noexcept { return prime + composite; }
};

PriorStats prior_stats(const std::vector<BraidWord>& samples, const KnotReferenceTable& table,
                       std::size_t crossing_cap = kDefaultCrossingCap);

}  // namespace braidknots
