#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "braidknots/braid_word.hpp"
#include "braidknots/rl_env.hpp"
#include "braidknots/rng.hpp"

namespace braidknots {

struct EpisodeResult {
  MoveTranscript transcript;
  bool success = false;
};

/// Flat-prior agent: every step draws uniformly from the whole action set.
EpisodeResult random_walker_episode(const EnvConfig& config, const BraidWord& start, Rng& rng);

/// Breadth-first search over action applications from `w`, deduplicating
/// visited words. Returns a shortest action sequence reaching the empty word
/// within `depth` actions (ties broken by action order), or nullopt. Throws
/// ResourceError after visiting `budget` distinct words.
std::optional<MoveTranscript> bfs_certify(const BraidWord& w, int depth, const std::vector<ActionId>& actions,
                                          const EnvConfig& config, std::size_t budget = 2'000'000);

/// Action subsets used with bfs_certify.
std::vector<ActionId> full_actions(const EnvConfig& config);
std::vector<ActionId> actions_without_braid_relations(const EnvConfig& config);

/// Beam search keeping the `width` best states ranked by (length, steps),
/// ties by action order then word order. Stops at the empty word or after
/// `budget` state expansions; returns the transcript to the shortest word
/// seen.
MoveTranscript beam_search_simplify(const BraidWord& w, std::size_t width, std::size_t budget,
                                    const EnvConfig& config);

/// Linear softmax policy over per-action lookahead features with a linear
/// state-value baseline. Both read the encoded state only.
class LinearPolicy {
 public:
  static constexpr std::size_t kActionFeatures = 12;
  static constexpr std::size_t kStateFeatures = 4;

  explicit LinearPolicy(EnvConfig config);

  const EnvConfig& config() const noexcept { return config_; }

  /// Action probabilities for an encoded state (length 2 n_max).
  std::vector<double> probabilities(const std::vector<int>& encoded) const;
  double value(const std::vector<int>& encoded) const;

  ActionId sample(const std::vector<int>& encoded, Rng& rng) const;
  ActionId greedy(const std::vector<int>& encoded) const;

  std::vector<double>& policy_weights() noexcept { return theta_; }
  std::vector<double>& value_weights() noexcept { return psi_; }
  const std::vector<double>& policy_weights() const noexcept { return theta_; }
  const std::vector<double>& value_weights() const noexcept { return psi_; }

  /// Features of every action (row-major, action_count x kActionFeatures).
  std::vector<double> action_features(const BraidWord& w) const;
  std::array<double, kStateFeatures> state_features(const BraidWord& w) const;

  /// Self-describing JSON checkpoint with a format name and version.
  std::string to_json() const;
  /// Throws std::invalid_argument on unknown format, version or shape.
  static LinearPolicy from_json(const std::string& text);

 private:
  std::vector<double> softmax(const std::vector<double>& features) const;

  EnvConfig config_;
  std::vector<double> theta_;
  std::vector<double> psi_;
};

struct TrainingConfig {
  std::size_t iterations = 200;
  std::size_t episodes_per_iteration = 32;
  double learning_rate = 2.0;
  double value_learning_rate = 0.05;
  double entropy_bonus = 0.01;
  double min_entropy = 1e-3;  // mean policy entropy below this aborts
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

struct TrainingLogEntry {
  std::size_t iteration = 0;
  double success_fraction = 0;
  double mean_return = 0;
  double mean_entropy = 0;
};

/// Advantage-weighted policy-gradient training (REINFORCE with a learned
/// value baseline) on fresh random unknots of length n_max. Throws
/// DivergenceError on NaN parameters or collapsed entropy. `log`, when set,
/// receives one entry per iteration.
LinearPolicy policy_gradient_train(const EnvConfig& env, const TrainingConfig& config,
                                   const std::function<void(const TrainingLogEntry&)>& log = {});

/// An agent picks the next action for a state; the Rng is per episode.
using Agent = std::function<ActionId(const EnvState&, Rng&)>;

Agent random_walker_agent(const EnvConfig& config);
/// Samples from the policy (greedy = false) or takes its argmax.
Agent policy_agent(const LinearPolicy& policy, bool greedy = false);

struct EvaluationReport {
  int n_max = 0;
  std::size_t episodes = 0;
  std::size_t successes = 0;
  double success_fraction = 0;
  double mean_actions_on_success = 0;
  std::vector<std::size_t> action_counts;  // per action id
  /// Share of all actions per category: SmartCollapse, ShiftLeft,
  /// ShiftRight, BR1, BR2 and Markov1 (all conjugations, divided by n_max).
  std::map<std::string, double> action_histogram;

  std::string to_json() const;
};

/// Runs one episode per start word with Rng::derive(seed, "episode", i);
/// results are independent of `threads`. Every successful transcript is
/// replayed and checked.
EvaluationReport evaluate(const Agent& agent, const std::vector<BraidWord>& unknots, const EnvConfig& config,
                          std::uint64_t seed, std::size_t threads = 1,
                          std::vector<MoveTranscript>* transcripts = nullptr);

/// Histogram categories in display order.
const std::vector<std::string>& histogram_categories();

}  // namespace braidknots
