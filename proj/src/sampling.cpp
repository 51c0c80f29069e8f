#include "braidknots/sampling.hpp"

#include <algorithm>
#include <string>

#include "braidknots/braid_ops.hpp"
#include "braidknots/errors.hpp"

namespace braidknots {

namespace {

int random_sign(Rng& rng) { return rng.coin() ? -1 : 1; }

// Fewer rounds cannot grow the empty word past smart_collapse.
constexpr std::size_t kMinDefaultRounds = 4;

std::size_t rounds_for(std::size_t n_letters, const GenerationConfig& config) {
  return config.mixing_rounds == 0 ? std::max(kMinDefaultRounds, (n_letters + 1) / 2) : config.mixing_rounds;
}

/// Markov move followed by a braid relation at a uniformly drawn start.
BraidWord mix(BraidWord w, std::size_t rounds, MixingRelation relation, Rng& rng) {
  for (std::size_t k = 0; k < rounds; ++k) {
    w = random_markov_move(w, rng);
    if (w.empty()) continue;
    const std::size_t start = rng.index(w.size());
    w = relation == MixingRelation::Relation1 ? braid_relation_1(w, start, true) : braid_relation_2(w, start, true);
  }
  return w;
}

}  // namespace

BraidWord random_markov_move(const BraidWord& w, Rng& rng) {
  // conjugating a one-strand word would add a strand, and with it a component
  if (!rng.coin() && w.strands() >= 2) {
    const int top = std::max(1, w.max_generator());
    const auto j = static_cast<Letter>(rng.uniform_int(1, top));
    const Letter g = random_sign(rng) * j;
    std::vector<Letter> letters;
    letters.reserve(w.size() + 2);
    letters.push_back(g);
    letters.insert(letters.end(), w.letters().begin(), w.letters().end());
    letters.push_back(-g);
    return BraidWord(std::move(letters), std::max(w.strands(), j + 1));
  }
  return stabilize(w, random_sign(rng));
}

BraidWord random_unknot(std::size_t n_letters, Rng& rng, const GenerationConfig& config) {
  if (n_letters == 0) return {};
  if (n_letters < kShortestCollapsedUnknot) {
    throw GenerationError("random_unknot: every unknot word of length " + std::to_string(n_letters) +
                          " collapses further");
  }
  const std::size_t rounds = rounds_for(n_letters, config);
  BraidWord w;
  for (std::size_t iter = 0; iter < config.budget; ++iter) {
    if (w.size() > n_letters) w = BraidWord();
    w = smart_collapse(mix(std::move(w), rounds, config.relation, rng));
    if (w.size() == n_letters) return w;
  }
  throw GenerationError("random_unknot: no word of length " + std::to_string(n_letters) + " within " +
                        std::to_string(config.budget) + " iterations");
}

BraidWord random_knot(std::size_t n_letters, int n_strands, Rng& rng, const GenerationConfig& config) {
  if (n_strands < 2) throw std::invalid_argument("random_knot needs at least two strands");
  if (n_letters == 0) return {};
  const std::size_t rounds = rounds_for(n_letters, config);
  BraidWord w;
  for (std::size_t iter = 0; iter < config.budget; ++iter) {
    if (w.size() > n_letters) w = BraidWord();
    std::vector<Letter> letters = w.letters();
    int strands = w.strands();
    while (letters.size() < n_letters) {
      const int sign = random_sign(rng);
      const auto j = static_cast<Letter>(rng.uniform_int(1, n_strands - 1));
      letters.push_back(sign * j);
      strands = std::max(strands, j + 1);
    }
    w = knotify(BraidWord(std::move(letters), strands), rng);
    if (!w.empty()) w = smart_collapse(mix(std::move(w), rounds, config.relation, rng));
    if (w.size() == n_letters) return w;
  }
  throw GenerationError("random_knot: no word of length " + std::to_string(n_letters) + " within " +
                        std::to_string(config.budget) + " iterations");
}

BraidWord random_nontrivial_knot(std::size_t n_letters, int n_strands, Rng& rng, const GenerationConfig& config,
                                 std::size_t jones_cap) {
  for (std::size_t attempt = 0; attempt < config.budget; ++attempt) {
    BraidWord w = random_knot(n_letters, n_strands, rng, config);
    if (unknot_filter(w, jones_cap) == FilterVerdict::ProvablyNontrivial) return w;
  }
  throw GenerationError("random_nontrivial_knot: every draw passed the unknot filter");
}

std::size_t PriorStats::trefoils() const {
  std::size_t n = 0;
  for (const char* name : {"3_1", "m3_1"}) {
    if (auto it = by_name.find(name); it != by_name.end()) n += it->second;
  }
  return n;
}

PriorStats prior_stats(const std::vector<BraidWord>& samples, const KnotReferenceTable& table,
                       std::size_t crossing_cap) {
  PriorStats stats;
  for (const BraidWord& w : samples) {
    ++stats.total;
    const Identification id = identify_small_knot(smart_collapse(w), table, crossing_cap);
    if (!id.match) {
      ++stats.unidentified;
      continue;
    }
    const auto& m = *id.match;
    ++stats.by_name[m.name];
    ++stats.by_crossings[m.crossings];
    if (m.crossings == 0) {
      ++stats.unknots;
    } else if (m.prime) {
      ++stats.prime;
    } else {
      ++stats.composite;
    }
  }
  return stats;
}

}  // namespace braidknots
