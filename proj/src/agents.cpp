#include "braidknots/agents.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "braidknots/braid_ops.hpp"
#include "braidknots/errors.hpp"
#include "braidknots/sampling.hpp"

namespace braidknots {

namespace {

constexpr const char* kCheckpointFormat = "braidknots-linear-policy";
constexpr int kCheckpointVersion = 1;

/// Runs f(i) for i in [0, n) on up to `threads` workers. Each index is
/// handled by exactly one worker; callers write results by index.
template <class F>
void parallel_for(std::size_t n, std::size_t threads, F f) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

MoveTranscript transcript_from_path(const BraidWord& start, const std::vector<ActionId>& path,
                                    const EnvConfig& config) {
  MoveTranscript t;
  t.initial = start;
  BraidWord w = start;
  for (ActionId a : path) {
    auto next = apply_action(w, a, config);
    t.actions.push_back(a);
    t.rewards.push_back(next ? -static_cast<int>(next->size()) : config.penalty());
    if (next) w = std::move(*next);
  }
  t.final_word = w;
  return t;
}

}  // namespace

EpisodeResult random_walker_episode(const EnvConfig& config, const BraidWord& start, Rng& rng) {
  UnknotEnv env(config);
  env.reset(start);
  EpisodeResult r;
  r.transcript.initial = start;
  const std::size_t n_actions = config.action_count();
  while (!env.done()) {
    const auto a = static_cast<ActionId>(rng.index(n_actions));
    const Transition t = env.step(a);
    r.transcript.actions.push_back(a);
    r.transcript.rewards.push_back(t.reward);
  }
  r.transcript.final_word = env.state().word;
  r.success = r.transcript.success();
  return r;
}

std::vector<ActionId> full_actions(const EnvConfig& config) { return action_set(config); }

std::vector<ActionId> actions_without_braid_relations(const EnvConfig& config) {
  std::vector<ActionId> out;
  for (ActionId a : action_set(config)) {
    const ActionKind k = action_kind(a);
    if (k != ActionKind::BR1ThenShift && k != ActionKind::BR2ThenShift) out.push_back(a);
  }
  return out;
}

std::optional<MoveTranscript> bfs_certify(const BraidWord& w, int depth, const std::vector<ActionId>& actions,
                                          const EnvConfig& config, std::size_t budget) {
  if (w.empty()) return MoveTranscript{w, {}, {}, w};
  struct Node {
    BraidWord word;
    std::size_t parent;
    ActionId action;
    int depth;
  };
  std::vector<Node> nodes{{w, 0, -1, 0}};
  std::unordered_set<BraidWord, BraidWordHash> seen{w};
  auto certificate = [&](std::size_t leaf) {
    std::vector<ActionId> path;
    for (std::size_t i = leaf; i != 0; i = nodes[i].parent) path.push_back(nodes[i].action);
    std::reverse(path.begin(), path.end());
    return transcript_from_path(w, path, config);
  };
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].depth >= depth) break;
    for (ActionId a : actions) {
      auto next = apply_action(nodes[head].word, a, config);
      if (!next || seen.contains(*next)) continue;
      if (seen.size() >= budget) {
        throw ResourceError("bfs_certify: visited-word budget of " + std::to_string(budget) + " exhausted");
      }
      const bool goal = next->empty();
      seen.insert(*next);
      nodes.push_back({std::move(*next), head, a, nodes[head].depth + 1});
      if (goal) return certificate(nodes.size() - 1);
    }
  }
  return std::nullopt;
}

MoveTranscript beam_search_simplify(const BraidWord& w, std::size_t width, std::size_t budget,
                                    const EnvConfig& config) {
  struct State {
    BraidWord word;
    std::vector<ActionId> path;
  };
  std::vector<State> beam{{w, {}}};
  std::unordered_set<BraidWord, BraidWordHash> seen{w};
  State best = beam.front();
  auto better = [](const State& a, const State& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.path.size() < b.path.size();
  };
  const auto actions = action_set(config);
  std::size_t expansions = 0;
  while (!beam.empty() && !best.word.empty() && expansions < budget) {
    std::vector<State> candidates;
    for (const State& s : beam) {
      if (expansions++ >= budget) break;
      for (ActionId a : actions) {
        auto next = apply_action(s.word, a, config);
        if (!next || !seen.insert(*next).second) continue;
        State c{std::move(*next), s.path};
        c.path.push_back(a);
        candidates.push_back(std::move(c));
      }
    }
    // generation order already encodes (beam rank, action order); the word
    // order breaks any remaining tie between equal-length candidates
    std::stable_sort(candidates.begin(), candidates.end(), [](const State& a, const State& b) {
      return a.word.size() < b.word.size();
    });
    if (candidates.size() > width) candidates.resize(width);
    for (const State& c : candidates) {
      if (better(c, best)) best = c;
    }
    beam = std::move(candidates);
  }
  return transcript_from_path(w, best.path, config);
}

LinearPolicy::LinearPolicy(EnvConfig config)
    : config_(std::move(config)), theta_(kActionFeatures, 0.0), psi_(kStateFeatures, 0.0) {}

std::vector<double> LinearPolicy::action_features(const BraidWord& w) const {
  const std::size_t n_actions = config_.action_count();
  const double scale = 1.0 / config_.n_max;
  std::vector<double> f(n_actions * kActionFeatures, 0.0);
  for (std::size_t a = 0; a < n_actions; ++a) {
    double* row = &f[a * kActionFeatures];
    const auto id = static_cast<ActionId>(a);
    const auto kind = static_cast<std::size_t>(action_kind(id));
    row[kind] = 1.0;
    const auto next = apply_action(w, id, config_);
    if (!next) {
      row[6] = 1.0;
      continue;
    }
    if (*next == w) row[7] = 1.0;
    row[8] = (static_cast<double>(next->size()) - static_cast<double>(w.size())) * scale;
    const BraidWord collapsed = action_kind(id) == ActionKind::SmartCollapse ? *next : smart_collapse(*next);
    const double gain = static_cast<double>(next->size() - collapsed.size());
    row[9] = gain * scale;
    row[10] = gain > 0 ? 1.0 : 0.0;
    if (action_kind(id) == ActionKind::Conj) row[11] = conj_generator(id) * scale;
  }
  return f;
}

std::array<double, LinearPolicy::kStateFeatures> LinearPolicy::state_features(const BraidWord& w) const {
  const double scale = 1.0 / config_.n_max;
  const BraidWord collapsed = smart_collapse(w);
  return {1.0, static_cast<double>(w.size()) * scale * 0.5,
          static_cast<double>(w.size() - collapsed.size()) * scale, static_cast<double>(w.strands()) * scale};
}

std::vector<double> LinearPolicy::softmax(const std::vector<double>& features) const {
  const std::size_t n_actions = config_.action_count();
  std::vector<double> p(n_actions);
  for (std::size_t a = 0; a < n_actions; ++a) {
    double z = 0;
    for (std::size_t k = 0; k < kActionFeatures; ++k) z += theta_[k] * features[a * kActionFeatures + k];
    p[a] = z;
  }
  const double top = *std::max_element(p.begin(), p.end());
  double sum = 0;
  for (double& x : p) sum += (x = std::exp(x - top));
  for (double& x : p) x /= sum;
  return p;
}

std::vector<double> LinearPolicy::probabilities(const std::vector<int>& encoded) const {
  return softmax(action_features(decode(encoded)));
}

double LinearPolicy::value(const std::vector<int>& encoded) const {
  const auto g = state_features(decode(encoded));
  return std::inner_product(g.begin(), g.end(), psi_.begin(), 0.0);
}

namespace {

ActionId draw(const std::vector<double>& p, Rng& rng) {
  const double u = rng.uniform01();
  double acc = 0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    acc += p[a];
    if (u < acc) return static_cast<ActionId>(a);
  }
  return static_cast<ActionId>(p.size() - 1);
}

}  // namespace

ActionId LinearPolicy::sample(const std::vector<int>& encoded, Rng& rng) const {
  return draw(probabilities(encoded), rng);
}

ActionId LinearPolicy::greedy(const std::vector<int>& encoded) const {
  const auto p = probabilities(encoded);
  return static_cast<ActionId>(std::max_element(p.begin(), p.end()) - p.begin());
}

std::string LinearPolicy::to_json() const {
  nlohmann::json j;
  j["format"] = kCheckpointFormat;
  j["version"] = kCheckpointVersion;
  j["n_max"] = config_.n_max;
  j["max_steps"] = config_.max_steps;
  j["illegal_penalty"] = config_.penalty();
  j["discount"] = config_.discount;
  j["action_features"] = kActionFeatures;
  j["state_features"] = kStateFeatures;
  j["policy_weights"] = theta_;
  j["value_weights"] = psi_;
  return j.dump(2);
}

LinearPolicy LinearPolicy::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  if (j.value("format", "") != kCheckpointFormat) throw std::invalid_argument("not a linear-policy checkpoint");
  if (j.value("version", 0) != kCheckpointVersion) throw std::invalid_argument("unsupported checkpoint version");
  EnvConfig cfg;
  cfg.n_max = j.at("n_max").get<int>();
  cfg.max_steps = j.at("max_steps").get<int>();
  cfg.illegal_penalty = j.at("illegal_penalty").get<int>();
  cfg.discount = j.at("discount").get<double>();
  LinearPolicy p(cfg);
  auto theta = j.at("policy_weights").get<std::vector<double>>();
  auto psi = j.at("value_weights").get<std::vector<double>>();
  if (theta.size() != kActionFeatures || psi.size() != kStateFeatures) {
    throw std::invalid_argument("checkpoint weight shapes do not match this build");
  }
  p.theta_ = std::move(theta);
  p.psi_ = std::move(psi);
  return p;
}

namespace {

struct StepRecord {
  std::vector<double> features;  // action features at the state
  std::array<double, LinearPolicy::kStateFeatures> state{};
  std::vector<double> probs;
  ActionId action = 0;
  double reward = 0;
};

struct Rollout {
  std::vector<StepRecord> steps;
  bool success = false;
};

Rollout rollout(const LinearPolicy& policy, const BraidWord& start, Rng& rng) {
  const EnvConfig& cfg = policy.config();
  UnknotEnv env(cfg);
  env.reset(start);
  Rollout r;
  while (!env.done()) {
    StepRecord s;
    s.features = policy.action_features(env.state().word);
    s.state = policy.state_features(env.state().word);
    s.probs = policy.probabilities(env.state().encoded);
    s.action = draw(s.probs, rng);
    const Transition t = env.step(s.action);
    s.reward = static_cast<double>(t.reward) / cfg.n_max;
    r.steps.push_back(std::move(s));
  }
  r.success = env.state().word.empty();
  return r;
}

}  // namespace

LinearPolicy policy_gradient_train(const EnvConfig& env, const TrainingConfig& config,
                                   const std::function<void(const TrainingLogEntry&)>& log) {
  LinearPolicy policy(env);
  constexpr std::size_t F = LinearPolicy::kActionFeatures;
  constexpr std::size_t G = LinearPolicy::kStateFeatures;
  const std::size_t n_actions = env.action_count();
  const auto n_letters = static_cast<std::size_t>(env.n_max);

  for (std::size_t it = 0; it < config.iterations; ++it) {
    std::vector<Rollout> rollouts(config.episodes_per_iteration);
    const LinearPolicy snapshot = policy;  // read-only for the workers
    parallel_for(rollouts.size(), config.threads, [&](std::size_t e) {
      const std::uint64_t index = it * config.episodes_per_iteration + e;
      Rng gen = Rng::derive(config.seed, "train-unknot", index);
      Rng act = Rng::derive(config.seed, "train-episode", index);
      rollouts[e] = rollout(snapshot, random_unknot(n_letters, gen), act);
    });

    // discounted returns and advantages
    std::vector<std::vector<double>> returns(rollouts.size());
    std::vector<double> advantages;
    for (std::size_t e = 0; e < rollouts.size(); ++e) {
      const auto& steps = rollouts[e].steps;
      returns[e].assign(steps.size(), 0.0);
      double g = 0;
      for (std::size_t t = steps.size(); t-- > 0;) {
        g = steps[t].reward + env.discount * g;
        returns[e][t] = g;
      }
      for (std::size_t t = 0; t < steps.size(); ++t) {
        const double v = std::inner_product(steps[t].state.begin(), steps[t].state.end(),
                                            policy.value_weights().begin(), 0.0);
        advantages.push_back(returns[e][t] - v);
      }
    }
    double mean = 0, var = 0;
    for (double a : advantages) mean += a;
    mean /= std::max<std::size_t>(1, advantages.size());
    for (double a : advantages) var += (a - mean) * (a - mean);
    const double sd = std::sqrt(var / std::max<std::size_t>(1, advantages.size())) + 1e-8;

    std::vector<double> grad(F, 0.0), vgrad(G, 0.0);
    double entropy_sum = 0;
    std::size_t k = 0, successes = 0;
    double return_sum = 0;
    for (std::size_t e = 0; e < rollouts.size(); ++e) {
      successes += rollouts[e].success ? 1 : 0;
      if (!returns[e].empty()) return_sum += returns[e].front();
      for (std::size_t t = 0; t < rollouts[e].steps.size(); ++t, ++k) {
        const StepRecord& s = rollouts[e].steps[t];
        const double adv = (advantages[k] - mean) / sd;
        std::vector<double> expected(F, 0.0);
        double entropy = 0;
        for (std::size_t b = 0; b < n_actions; ++b) {
          const double pb = s.probs[b];
          if (pb > 0) entropy -= pb * std::log(pb);
          for (std::size_t f = 0; f < F; ++f) expected[f] += pb * s.features[b * F + f];
        }
        entropy_sum += entropy;
        const auto a = static_cast<std::size_t>(s.action);
        for (std::size_t f = 0; f < F; ++f) grad[f] += adv * (s.features[a * F + f] - expected[f]);
        // d(entropy)/d(logit_b) = -p_b (log p_b + H)
        for (std::size_t b = 0; b < n_actions; ++b) {
          const double pb = s.probs[b];
          if (pb <= 0) continue;
          const double dz = -pb * (std::log(pb) + entropy);
          for (std::size_t f = 0; f < F; ++f) grad[f] += config.entropy_bonus * dz * s.features[b * F + f];
        }
        const double v = std::inner_product(s.state.begin(), s.state.end(), policy.value_weights().begin(), 0.0);
        for (std::size_t g = 0; g < G; ++g) vgrad[g] += (returns[e][t] - v) * s.state[g];
      }
    }
    const double steps_total = std::max<double>(1.0, static_cast<double>(k));
    for (std::size_t f = 0; f < F; ++f) policy.policy_weights()[f] += config.learning_rate * grad[f] / steps_total;
    for (std::size_t g = 0; g < G; ++g) {
      policy.value_weights()[g] += config.value_learning_rate * vgrad[g] / steps_total;
    }

    TrainingLogEntry entry{it, static_cast<double>(successes) / static_cast<double>(rollouts.size()),
                           return_sum / static_cast<double>(rollouts.size()), entropy_sum / steps_total};
    if (log) log(entry);
    for (double x : policy.policy_weights()) {
      if (!std::isfinite(x)) throw DivergenceError("policy weights became non-finite at iteration " + std::to_string(it));
    }
    for (double x : policy.value_weights()) {
      if (!std::isfinite(x)) throw DivergenceError("value weights became non-finite at iteration " + std::to_string(it));
    }
    if (entry.mean_entropy < config.min_entropy) {
      throw DivergenceError("policy entropy collapsed to " + std::to_string(entry.mean_entropy) + " at iteration " +
                            std::to_string(it));
    }
  }
  return policy;
}

Agent random_walker_agent(const EnvConfig& config) {
  const std::size_t n = config.action_count();
  return [n](const EnvState&, Rng& rng) { return static_cast<ActionId>(rng.index(n)); };
}

Agent policy_agent(const LinearPolicy& policy, bool greedy) {
  return [policy, greedy](const EnvState& s, Rng& rng) {
    return greedy ? policy.greedy(s.encoded) : policy.sample(s.encoded, rng);
  };
}

const std::vector<std::string>& histogram_categories() {
  static const std::vector<std::string> names{"SmartCollapse", "ShiftLeft", "ShiftRight", "BR1", "BR2", "Markov1"};
  return names;
}

std::string EvaluationReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["n_max"] = n_max;
  j["episodes"] = episodes;
  j["successes"] = successes;
  j["success_fraction"] = success_fraction;
  j["mean_actions_on_success"] = mean_actions_on_success;
  j["action_counts"] = action_counts;
  nlohmann::ordered_json h;
  for (const auto& name : histogram_categories()) h[name] = action_histogram.at(name);
  j["action_histogram"] = h;
  return j.dump();
}

EvaluationReport evaluate(const Agent& agent, const std::vector<BraidWord>& unknots, const EnvConfig& config,
                          std::uint64_t seed, std::size_t threads, std::vector<MoveTranscript>* transcripts) {
  std::vector<MoveTranscript> runs(unknots.size());
  parallel_for(unknots.size(), threads, [&](std::size_t i) {
    Rng rng = Rng::derive(seed, "episode", i);
    UnknotEnv env(config);
    env.reset(unknots[i]);
    MoveTranscript& t = runs[i];
    t.initial = unknots[i];
    while (!env.done()) {
      const ActionId a = agent(env.state(), rng);
      const Transition tr = env.step(a);
      t.actions.push_back(a);
      t.rewards.push_back(tr.reward);
    }
    t.final_word = env.state().word;
  });

  EvaluationReport r;
  r.n_max = config.n_max;
  r.episodes = runs.size();
  r.action_counts.assign(config.action_count(), 0);
  std::size_t success_actions = 0;
  for (const MoveTranscript& t : runs) {
    for (ActionId a : t.actions) ++r.action_counts[static_cast<std::size_t>(a)];
    if (t.success()) {
      replay(t, config);
      ++r.successes;
      success_actions += t.actions.size();
    }
  }
  r.success_fraction = r.episodes ? static_cast<double>(r.successes) / static_cast<double>(r.episodes) : 0.0;
  r.mean_actions_on_success =
      r.successes ? static_cast<double>(success_actions) / static_cast<double>(r.successes) : 0.0;
  const double total = std::max<double>(
      1.0, static_cast<double>(std::accumulate(r.action_counts.begin(), r.action_counts.end(), std::size_t{0})));
  const auto& names = histogram_categories();
  for (std::size_t k = 0; k < 5; ++k) r.action_histogram[names[k]] = static_cast<double>(r.action_counts[k]) / total;
  std::size_t conj = 0;
  for (std::size_t a = kNumFixedActions; a < r.action_counts.size(); ++a) conj += r.action_counts[a];
  r.action_histogram[names[5]] = static_cast<double>(conj) / total / config.n_max;
  if (transcripts) *transcripts = std::move(runs);
  return r;
}

}  // namespace braidknots
