#include "braidknots/braid_word.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace braidknots {

namespace {

int implied_strands(const std::vector<Letter>& letters) {
  int m = 0;
  for (Letter l : letters) m = std::max(m, letter_index(l));
  return m + 1;
}

}  // namespace

BraidWord::BraidWord(std::vector<Letter> letters)
    : letters_(std::move(letters)) {
  for (Letter l : letters_) {
    if (l == 0) throw std::invalid_argument("braid letter 0 is not a generator");
  }
  strands_ = implied_strands(letters_);
}

BraidWord::BraidWord(std::vector<Letter> letters, int strands)
    : letters_(std::move(letters)), strands_(strands) {
  if (strands_ < 1) throw std::invalid_argument("strand count must be >= 1");
  for (Letter l : letters_) {
    if (l == 0) throw std::invalid_argument("braid letter 0 is not a generator");
    if (letter_index(l) > strands_ - 1) {
      throw std::invalid_argument("letter " + std::to_string(l) +
                                  " does not fit in Br_" + std::to_string(strands_));
    }
  }
}

int BraidWord::max_generator() const noexcept {
  return implied_strands(letters_) - 1;
}

int BraidWord::writhe() const noexcept {
  int s = 0;
  for (Letter l : letters_) s += letter_sign(l);
  return s;
}

std::string BraidWord::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << ',';
    os << letters_[i];
  }
  os << "] in Br_" << strands_;
  return os.str();
}

BraidWord mirror(const BraidWord& w) {
  std::vector<Letter> out(w.letters());
  for (Letter& l : out) l = -l;
  return BraidWord(std::move(out), w.strands());
}

std::size_t BraidWordHash::operator()(const BraidWord& w) const noexcept {
  // FNV-1a over (strands, letters)
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(w.strands()));
  for (Letter l : w.letters()) mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(l)));
  return static_cast<std::size_t>(h);
}

}  // namespace braidknots
