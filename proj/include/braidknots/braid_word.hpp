#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace braidknots {

/// A signed Artin generator: +i is sigma_i, -i is sigma_i^{-1}. Never 0.
using Letter = int;

/// Word in the braid group Br_n. Immutable from the caller's view: every
/// operation in braid_ops returns a fresh word.
class BraidWord {
 public:
  /// Empty word in Br_1, the canonical unknot.
  BraidWord() = default;

  /// Strand count inferred as max(|letter|) + 1.
  explicit BraidWord(std::vector<Letter> letters);
  BraidWord(std::initializer_list<Letter> letters)
      : BraidWord(std::vector<Letter>(letters)) {}

  /// Explicit strand count; throws std::invalid_argument if a letter does not
  /// fit in Br_strands.
  BraidWord(std::vector<Letter> letters, int strands);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::span<const Letter> view() const noexcept { return letters_; }
  int strands() const noexcept { return strands_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  /// Largest |letter|, 0 for the empty word.
  int max_generator() const noexcept;

  /// Exponent sum.
  int writhe() const noexcept;

  std::string to_string() const;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;
  friend auto operator<=>(const BraidWord&, const BraidWord&) = default;

 private:
  std::vector<Letter> letters_;
  int strands_ = 1;
};

/// Negate every letter (mirror image of the closure).
BraidWord mirror(const BraidWord& w);

inline int letter_index(Letter l) noexcept { return l < 0 ? -l : l; }
inline int letter_sign(Letter l) noexcept { return l < 0 ? -1 : 1; }

/// sigma_a and sigma_b commute when their indices differ by at least two.
inline bool letters_commute(Letter a, Letter b) noexcept {
  const int d = letter_index(a) - letter_index(b);
  return d >= 2 || d <= -2;
}

struct BraidWordHash {
  std::size_t operator()(const BraidWord& w) const noexcept;
};

}  // namespace braidknots
