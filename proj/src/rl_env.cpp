#include "braidknots/rl_env.hpp"

#include <algorithm>
#include <stdexcept>

#include "braidknots/braid_ops.hpp"
#include "braidknots/errors.hpp"

namespace braidknots {

namespace {

/// Rewrite the `width`-letter block at `pos` to `block`, then rotate so the
/// block ends the word.
BraidWord rewrite_and_rotate(const BraidWord& w, std::size_t pos, std::size_t width,
                             const std::vector<Letter>& block) {
  const auto& l = w.letters();
  std::vector<Letter> out;
  out.reserve(l.size());
  out.insert(out.end(), l.begin() + static_cast<std::ptrdiff_t>(pos + width), l.end());
  out.insert(out.end(), l.begin(), l.begin() + static_cast<std::ptrdiff_t>(pos));
  out.insert(out.end(), block.begin(), block.end());
  return BraidWord(std::move(out), w.strands());
}

}  // namespace

std::string action_name(ActionId a) {
  switch (action_kind(a)) {
    case ActionKind::SmartCollapse: return "SmartCollapse";
    case ActionKind::ShiftLeft: return "ShiftLeft";
    case ActionKind::ShiftRight: return "ShiftRight";
    case ActionKind::BR1ThenShift: return "BR1ThenShift";
    case ActionKind::BR2ThenShift: return "BR2ThenShift";
    case ActionKind::Conj: return "Conj(" + std::to_string(conj_generator(a)) + ")";
  }
  return "?";
}

std::vector<ActionId> action_set(const EnvConfig& config) {
  std::vector<ActionId> ids(config.action_count());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<ActionId>(i);
  return ids;
}

std::optional<BraidWord> apply_action(const BraidWord& w, ActionId a, const EnvConfig& config) {
  if (a < 0 || static_cast<std::size_t>(a) >= config.action_count()) {
    throw std::out_of_range("action id " + std::to_string(a) + " outside the action set");
  }
  switch (action_kind(a)) {
    case ActionKind::SmartCollapse: return smart_collapse(w);
    case ActionKind::ShiftLeft: return cyclic_shift(w, ShiftDirection::Left);
    case ActionKind::ShiftRight: return cyclic_shift(w, ShiftDirection::Right);
    case ActionKind::BR1ThenShift: {
      const auto pos = find_braid_relation_1(w, 0, false);
      if (!pos) return w;
      const Letter a1 = w[*pos];
      const Letter b1 = w[*pos + 1];
      return rewrite_and_rotate(w, *pos, 3, {b1, a1, b1});
    }
    case ActionKind::BR2ThenShift: {
      const auto pos = find_braid_relation_2(w, 0, false);
      if (!pos) return w;
      return rewrite_and_rotate(w, *pos, 2, {w[*pos + 1], w[*pos]});
    }
    case ActionKind::Conj: {
      const int g = conj_generator(a);
      if (w.size() + 2 > config.max_length() || g > w.max_generator()) return std::nullopt;
      return conjugate_insert(w, g);
    }
  }
  return std::nullopt;
}

std::vector<int> encode(const BraidWord& w, const EnvConfig& config) {
  if (w.size() > config.max_length()) throw std::length_error("word longer than 2 n_max");
  std::vector<int> out(config.max_length(), 0);
  std::copy(w.letters().begin(), w.letters().end(), out.begin());
  return out;
}

BraidWord decode(const std::vector<int>& encoded) {
  auto end = std::find(encoded.begin(), encoded.end(), 0);
  return BraidWord(std::vector<Letter>(encoded.begin(), end));
}

const EnvState& UnknotEnv::reset(const BraidWord& w) {
  if (w.size() > config_.max_length()) throw std::invalid_argument("initial word longer than 2 n_max");
  state_ = EnvState{w, 0, encode(w, config_)};
  done_ = w.empty();
  return state_;
}

Transition UnknotEnv::step(ActionId a) {
  if (done_) throw ContractViolation("step called on a finished episode");
  Transition t;
  t.state = state_;
  t.action = a;
  auto next = apply_action(state_.word, a, config_);
  if (next) {
    t.reward = -static_cast<int>(next->size());
    state_.word = std::move(*next);
    state_.encoded = encode(state_.word, config_);
  } else {
    t.reward = config_.penalty();
    t.illegal = true;
  }
  ++state_.steps_taken;
  done_ = state_.word.empty() || state_.steps_taken >= config_.max_steps;
  t.next_state = state_;
  t.done = done_;
  return t;
}

int MoveTranscript::total_reward() const {
  int s = 0;
  for (int r : rewards) s += r;
  return s;
}

BraidWord replay(const MoveTranscript& t, const EnvConfig& config) {
  if (!t.rewards.empty() && t.rewards.size() != t.actions.size()) {
    throw InternalConsistencyError("transcript has mismatched action and reward counts");
  }
  BraidWord w = t.initial;
  for (std::size_t k = 0; k < t.actions.size(); ++k) {
    auto next = apply_action(w, t.actions[k], config);
    const int reward = next ? -static_cast<int>(next->size()) : config.penalty();
    if (!t.rewards.empty() && reward != t.rewards[k]) {
      throw InternalConsistencyError("transcript reward mismatch at step " + std::to_string(k));
    }
    if (next) w = std::move(*next);
  }
  if (w != t.final_word) throw InternalConsistencyError("transcript does not replay to its final word");
  return w;
}

}  // namespace braidknots
