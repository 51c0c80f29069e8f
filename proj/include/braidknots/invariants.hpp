#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "braidknots/braid_word.hpp"
#include "braidknots/diagram.hpp"
#include "braidknots/laurent.hpp"

namespace braidknots {

/// Alexander polynomial of a knot closure from the reduced Burau
/// representation: det(I - rho(w)) (1 - t) / (1 - t^n), normalized to the
/// symmetric representative with value +1 at t = 1. Throws NotAKnotError for
/// links.
BigPoly alexander(const BraidWord& w);

/// Arf invariant from |Delta(-1)| mod 8 (1 or 7 -> 0, 3 or 5 -> 1).
int arf(const BraidWord& w);
int arf_from_alexander(const BigPoly& delta);

enum class FilterVerdict { PassesUnknotValues, ProvablyNontrivial };

std::string_view to_string(FilterVerdict v);

struct InvariantFingerprint {
  int components = 1;
  BigPoly alexander;
  int arf = 0;
  std::optional<Poly> jones;  // quarter-power basis; absent above the crossing cap
};

/// All invariants of a knot closure; Jones only when |w| <= jones_cap.
InvariantFingerprint fingerprint(const BraidWord& w, std::size_t jones_cap = kDefaultCrossingCap);

/// Necessary (not sufficient) unknot test: ProvablyNontrivial as soon as the
/// Arf invariant, Alexander polynomial or (when computed) Jones polynomial
/// differs from the unknot value.
FilterVerdict unknot_filter(const BraidWord& w, std::size_t jones_cap = kDefaultCrossingCap);
FilterVerdict unknot_filter(const InvariantFingerprint& fp);

/// Prime knots up to nine crossings (and their mirrors) keyed by Jones
/// polynomial, together with every connected sum of them with at most nine
/// crossings in total.
class KnotReferenceTable {
 public:
  struct Entry {
    std::string name;
    BraidWord braid;
    std::optional<std::string> mirror_of;
    int crossings = 0;
    Poly jones;  // quarter-power basis
  };

  struct Match {
    std::string name;  // "0_1", "3_1", "m3_1 # 4_1", ...
    int crossings = 0;
    bool prime = false;
  };

  /// Parses JSON lines of {"name", "braid", "mirror_of"?} and computes each
  /// entry's Jones polynomial. Throws std::invalid_argument on malformed
  /// input.
  static KnotReferenceTable from_jsonl(std::string_view text);

  /// The table shipped with the library.
  static const KnotReferenceTable& builtin();

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const Match* lookup(const Poly& jones) const;
  std::size_t composite_count() const noexcept { return composite_count_; }
  /// Distinct knot names sharing a Jones polynomial with an earlier one.
  const std::vector<std::string>& collisions() const noexcept { return collisions_; }

 private:
  void add(const Poly& jones, Match match);

  std::vector<Entry> entries_;
  std::unordered_map<std::string, Match> by_jones_;
  std::size_t composite_count_ = 0;
  std::vector<std::string> collisions_;
};

struct Identification {
  std::optional<KnotReferenceTable::Match> match;  // nullopt: Unknown
  bool resource_limited = false;                   // crossing cap hit
};

Identification identify_small_knot(const BraidWord& w, const KnotReferenceTable& table,
                                   std::size_t crossing_cap = kDefaultCrossingCap);

/// Stable text key of a polynomial, usable for hashing.
std::string poly_key(const Poly& p);

/// Crossing number encoded in a Rolfsen-style name ("m9_42" -> 9).
int crossings_from_name(std::string_view name);

}  // namespace braidknots
