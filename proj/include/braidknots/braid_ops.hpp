#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "braidknots/braid_word.hpp"

namespace braidknots {

class Rng;

enum class ShiftDirection { Left, Right };

/// Delete adjacent (+i, -i) / (-i, +i) pairs until none remain.
BraidWord free_reduce(const BraidWord& w);

/// Left: [i1..ik] -> [i2..ik,i1]. Right: -> [ik,i1..ik-1]. No-op on the empty word.
BraidWord cyclic_shift(const BraidWord& w, ShiftDirection direction);

/// [g] + w + [-g]. Throws std::out_of_range unless 1 <= |g| <= strands-1.
BraidWord conjugate_insert(const BraidWord& w, Letter g);

/// w in Br_n -> w sigma_n^{sign} in Br_{n+1}.
BraidWord stabilize(const BraidWord& w, int sign = +1);

/// Remove the single occurrence of the top generator sigma_{n-1} (at any
/// position) and drop to Br_{n-1}. nullopt when it does not occur exactly once.
std::optional<BraidWord> destabilize(const BraidWord& w);

/// Position of the first window [a, b, a] with a, b same sign and
/// ||a| - |b|| = 1, scanning from `start`. With `take_closure` the scan wraps
/// cyclically and windows may straddle the word boundary.
std::optional<std::size_t> find_braid_relation_1(const BraidWord& w, std::size_t start, bool take_closure);

/// Rewrites the first matching window [a, b, a] -> [b, a, b]; at most one
/// rewrite. Unchanged when nothing matches.
BraidWord braid_relation_1(const BraidWord& w, std::size_t start, bool take_closure);

/// First adjacent pair with index gap >= 2, scanning from `start`.
std::optional<std::size_t> find_braid_relation_2(const BraidWord& w, std::size_t start, bool take_closure);

/// Swaps the first commuting adjacent pair at/after `start`.
BraidWord braid_relation_2(const BraidWord& w, std::size_t start, bool take_closure = true);

/// Deletes strands that no letter touches and relabels the rest.
BraidWord remove_free_strands(const BraidWord& w);

/// Removes x ... -x pairs that cancel on the closure: first the pair sitting
/// at the two ends of the word, then pairs whose interior letters all commute
/// with x.
BraidWord remove_nonconsecutive_inverses(const BraidWord& w);

/// Consecutive inverses, free strands, destabilization and non-consecutive
/// inverses, repeated until the word stops changing.
BraidWord smart_collapse(const BraidWord& w);

/// Permutation of {0..strands-1}: strand at position p at the top of the
/// braid ends at position perm[p] at the bottom.
std::vector<int> closure_permutation(const BraidWord& w);

/// Cycles of the closure permutation; each cycle starts at its smallest
/// position and follows the permutation.
std::vector<std::vector<int>> closure_cycles(const BraidWord& w);

/// Number of link components of the closure.
int closure_components(const BraidWord& w);

/// Weave link components together (one random-sign letter at a time) until
/// the closure is a knot. The empty word is returned unchanged.
BraidWord knotify(const BraidWord& w, Rng& rng);

}  // namespace braidknots
