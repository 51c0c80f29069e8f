#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "braidknots/braid_word.hpp"

namespace braidknots {

/// Stable action identifiers: 0..4 are the fixed moves, 4 + i is Conj(i).
enum class ActionKind { SmartCollapse = 0, ShiftLeft = 1, ShiftRight = 2, BR1ThenShift = 3, BR2ThenShift = 4, Conj = 5 };

using ActionId = int;

inline constexpr ActionId kNumFixedActions = 5;

/// Conj(i) has id 4 + i, i = 1..n_max.
inline constexpr ActionId conj_action(int generator) { return kNumFixedActions - 1 + generator; }
inline constexpr ActionKind action_kind(ActionId a) {
  return a < kNumFixedActions ? static_cast<ActionKind>(a) : ActionKind::Conj;
}
inline constexpr int conj_generator(ActionId a) { return a - (kNumFixedActions - 1); }

std::string action_name(ActionId a);

struct EnvConfig {
  int n_max = 12;
  int max_steps = 500;
  std::optional<int> illegal_penalty;  // default -4 * n_max
  double discount = 0.99;

  int penalty() const { return illegal_penalty.value_or(-4 * n_max); }
  std::size_t max_length() const { return static_cast<std::size_t>(2 * n_max); }
  std::size_t action_count() const { return static_cast<std::size_t>(kNumFixedActions + n_max); }
};

/// All action ids in order: SmartCollapse, ShiftLeft, ShiftRight,
/// BR1ThenShift, BR2ThenShift, Conj(1)..Conj(n_max).
std::vector<ActionId> action_set(const EnvConfig& config);

/// Result of an action on a word; nullopt when the action is illegal
/// (a conjugation that would exceed 2 n_max letters, or whose generator is
/// not already used by the word).
std::optional<BraidWord> apply_action(const BraidWord& w, ActionId a, const EnvConfig& config);

struct EnvState {
  BraidWord word;
  int steps_taken = 0;
  std::vector<int> encoded;  // 2 n_max entries: letters, then zeros

  bool terminal() const noexcept { return word.empty(); }
};

/// Letters followed by zero padding up to 2 n_max entries. Throws
/// std::length_error if the word is longer.
std::vector<int> encode(const BraidWord& w, const EnvConfig& config);
/// Strips the zero padding; the strand count is inferred from the letters.
BraidWord decode(const std::vector<int>& encoded);

struct Transition {
  EnvState state;
  ActionId action = 0;
  int reward = 0;
  EnvState next_state;
  bool done = false;
  bool illegal = false;
};

/// The unknotting environment. Reward after a legal action is minus the
/// length of the resulting word; an illegal action leaves the word unchanged
/// and costs the illegal penalty. An episode ends at the empty word or after
/// max_steps actions.
class UnknotEnv {
 public:
  explicit UnknotEnv(EnvConfig config) : config_(std::move(config)) {}

  /// Starts an episode. Throws std::invalid_argument if |w| > 2 n_max.
  const EnvState& reset(const BraidWord& w);

  /// Throws ContractViolation once the episode is over, std::out_of_range on
  /// an unknown action id.
  Transition step(ActionId a);

  const EnvState& state() const noexcept { return state_; }
  const EnvConfig& config() const noexcept { return config_; }
  bool done() const noexcept { return done_; }

 private:
  EnvConfig config_;
  EnvState state_;
  bool done_ = true;
};

/// Replayable record of an episode.
struct MoveTranscript {
  BraidWord initial;
  std::vector<ActionId> actions;
  std::vector<int> rewards;
  BraidWord final_word;

  bool success() const noexcept { return final_word.empty(); }
  int total_reward() const;
};

/// Re-applies the actions from `initial`; throws InternalConsistencyError if
/// the rewards or the final word disagree with the record.
BraidWord replay(const MoveTranscript& t, const EnvConfig& config);

}  // namespace braidknots
