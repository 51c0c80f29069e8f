#include "braidknots/braid_ops.hpp"

#include <algorithm>
#include <stdexcept>

#include "braidknots/rng.hpp"

namespace braidknots {

BraidWord free_reduce(const BraidWord& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter l : w.letters()) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return BraidWord(std::move(out), w.strands());
}

BraidWord cyclic_shift(const BraidWord& w, ShiftDirection direction) {
  if (w.size() < 2) return w;
  std::vector<Letter> out(w.letters());
  if (direction == ShiftDirection::Left) {
    std::rotate(out.begin(), out.begin() + 1, out.end());
  } else {
    std::rotate(out.rbegin(), out.rbegin() + 1, out.rend());
  }
  return BraidWord(std::move(out), w.strands());
}

BraidWord conjugate_insert(const BraidWord& w, Letter g) {
  if (g == 0 || letter_index(g) > w.strands() - 1) {
    throw std::out_of_range("conjugating generator " + std::to_string(g) +
                            " outside Br_" + std::to_string(w.strands()));
  }
  std::vector<Letter> out;
  out.reserve(w.size() + 2);
  out.push_back(g);
  out.insert(out.end(), w.letters().begin(), w.letters().end());
  out.push_back(-g);
  return BraidWord(std::move(out), w.strands());
}

BraidWord stabilize(const BraidWord& w, int sign) {
  std::vector<Letter> out(w.letters());
  out.push_back(sign < 0 ? -w.strands() : w.strands());
  return BraidWord(std::move(out), w.strands() + 1);
}

std::optional<BraidWord> destabilize(const BraidWord& w) {
  const int top = w.strands() - 1;
  if (top < 1) return std::nullopt;
  std::size_t count = 0;
  std::size_t where = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (letter_index(w[i]) == top) {
      ++count;
      where = i;
    }
  }
  if (count != 1) return std::nullopt;
  std::vector<Letter> out(w.letters());
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(where));
  return BraidWord(std::move(out), w.strands() - 1);
}

namespace {

bool is_relation_1_window(Letter a, Letter b, Letter c) {
  if (a != c || letter_sign(a) != letter_sign(b)) return false;
  const int d = letter_index(a) - letter_index(b);
  return d == 1 || d == -1;
}

}  // namespace

std::optional<std::size_t> find_braid_relation_1(const BraidWord& w, std::size_t start, bool take_closure) {
  const std::size_t n = w.size();
  const auto& l = w.letters();
  if (take_closure) {
    if (n < 3) return std::nullopt;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = (start + k) % n;
      if (is_relation_1_window(l[i], l[(i + 1) % n], l[(i + 2) % n])) return i;
    }
    return std::nullopt;
  }
  for (std::size_t i = start; i + 2 < n; ++i) {
    if (is_relation_1_window(l[i], l[i + 1], l[i + 2])) return i;
  }
  return std::nullopt;
}

BraidWord braid_relation_1(const BraidWord& w, std::size_t start, bool take_closure) {
  const auto pos = find_braid_relation_1(w, start, take_closure);
  if (!pos) return w;
  const std::size_t n = w.size();
  std::vector<Letter> out(w.letters());
  const Letter a = out[*pos];
  const Letter b = out[(*pos + 1) % n];
  out[*pos] = b;
  out[(*pos + 1) % n] = a;
  out[(*pos + 2) % n] = b;
  return BraidWord(std::move(out), w.strands());
}

std::optional<std::size_t> find_braid_relation_2(const BraidWord& w, std::size_t start, bool take_closure) {
  const std::size_t n = w.size();
  const auto& l = w.letters();
  if (take_closure) {
    if (n < 2) return std::nullopt;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = (start + k) % n;
      if (letters_commute(l[i], l[(i + 1) % n])) return i;
    }
    return std::nullopt;
  }
  for (std::size_t i = start; i + 1 < n; ++i) {
    if (letters_commute(l[i], l[i + 1])) return i;
  }
  return std::nullopt;
}

BraidWord braid_relation_2(const BraidWord& w, std::size_t start, bool take_closure) {
  const auto pos = find_braid_relation_2(w, start, take_closure);
  if (!pos) return w;
  std::vector<Letter> out(w.letters());
  std::swap(out[*pos], out[(*pos + 1) % out.size()]);
  return BraidWord(std::move(out), w.strands());
}

BraidWord remove_free_strands(const BraidWord& w) {
  const int n = w.strands();
  // touched[s] for 1-based strand s
  std::vector<char> touched(static_cast<std::size_t>(n) + 2, 0);
  for (Letter l : w.letters()) {
    touched[static_cast<std::size_t>(letter_index(l))] = 1;
    touched[static_cast<std::size_t>(letter_index(l)) + 1] = 1;
  }
  // free_below[g] = number of free strands s <= g
  std::vector<int> free_below(static_cast<std::size_t>(n) + 1, 0);
  int free_count = 0;
  for (int s = 1; s <= n; ++s) {
    if (!touched[static_cast<std::size_t>(s)]) ++free_count;
    free_below[static_cast<std::size_t>(s)] = free_count;
  }
  if (free_count == 0) return w;
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter l : w.letters()) {
    const int g = letter_index(l) - free_below[static_cast<std::size_t>(letter_index(l))];
    out.push_back(l < 0 ? -g : g);
  }
  return BraidWord(std::move(out), std::max(1, n - free_count));
}

BraidWord remove_nonconsecutive_inverses(const BraidWord& w) {
  std::vector<Letter> l(w.letters());
  while (l.size() >= 2 && l.front() == -l.back()) {
    l.pop_back();
    l.erase(l.begin());
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < l.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < l.size(); ++j) {
        if (l[j] == -l[i]) {
          l.erase(l.begin() + static_cast<std::ptrdiff_t>(j));
          l.erase(l.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
        if (!letters_commute(l[i], l[j])) break;
      }
    }
  }
  return BraidWord(std::move(l), w.strands());
}

BraidWord smart_collapse(const BraidWord& w) {
  BraidWord current = w;
  while (true) {
    BraidWord next = free_reduce(current);
    next = remove_free_strands(next);
    while (auto d = destabilize(next)) next = std::move(*d);
    next = remove_nonconsecutive_inverses(next);
    if (next == current) return next;
    current = std::move(next);
  }
}

std::vector<int> closure_permutation(const BraidWord& w) {
  const int n = w.strands();
  std::vector<int> at(static_cast<std::size_t>(n));  // strand currently at each position
  for (int p = 0; p < n; ++p) at[static_cast<std::size_t>(p)] = p;
  for (Letter l : w.letters()) {
    const auto i = static_cast<std::size_t>(letter_index(l));
    std::swap(at[i - 1], at[i]);
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) perm[static_cast<std::size_t>(at[static_cast<std::size_t>(q)])] = q;
  return perm;
}

std::vector<std::vector<int>> closure_cycles(const BraidWord& w) {
  const auto perm = closure_permutation(w);
  std::vector<char> seen(perm.size(), 0);
  std::vector<std::vector<int>> cycles;
  for (std::size_t p = 0; p < perm.size(); ++p) {
    if (seen[p]) continue;
    std::vector<int> cycle;
    for (auto q = p; !seen[q]; q = static_cast<std::size_t>(perm[q])) {
      seen[q] = 1;
      cycle.push_back(static_cast<int>(q));
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

int closure_components(const BraidWord& w) {
  return static_cast<int>(closure_cycles(w).size());
}

BraidWord knotify(const BraidWord& w, Rng& rng) {
  if (w.empty()) return w;
  BraidWord current(w.letters());
  auto cycles = closure_cycles(current);
  while (!current.empty() && cycles.size() != 1) {
    const int top_strand = current.max_generator() + 1;  // strands are 1..top_strand
    std::vector<int> component_of(static_cast<std::size_t>(top_strand) + 2, -1);
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      for (int p : cycles[c]) component_of[static_cast<std::size_t>(p) + 1] = static_cast<int>(c);
    }
    std::optional<Letter> weave;
    for (std::size_t c = 0; c < cycles.size() && !weave; ++c) {
      for (int p : cycles[c]) {
        const int strand = p + 1;
        const int up = strand + 1;
        const int down = strand - 1;
        const bool negative = rng.coin();
        if (up <= top_strand && component_of[static_cast<std::size_t>(up)] != static_cast<int>(c)) {
          weave = negative ? -strand : strand;
          break;
        }
        if (down >= 1 && component_of[static_cast<std::size_t>(down)] != static_cast<int>(c)) {
          weave = negative ? -(strand - 1) : strand - 1;
          break;
        }
      }
    }
    if (!weave) break;
    std::vector<Letter> out(current.letters());
    out.push_back(*weave);
    current = BraidWord(std::move(out));
    cycles = closure_cycles(current);
  }
  return current;
}

}  // namespace braidknots
