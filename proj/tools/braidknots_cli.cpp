// Command-line front end: generation, simplification, certification,
// invariants, datasets, evaluation, statistics and training.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "braidknots/agents.hpp"
#include "braidknots/braid_ops.hpp"
#include "braidknots/cli_data.hpp"
#include "braidknots/diagram.hpp"
#include "braidknots/errors.hpp"
#include "braidknots/invariants.hpp"
#include "braidknots/rl_env.hpp"
#include "braidknots/sampling.hpp"

using namespace braidknots;
using ordered_json = nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kError = 1, kNotReduced = 2, kNontrivial = 3 };

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t\r\n") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

std::vector<BraidWord> read_words(const std::string& path) {
  std::vector<BraidWord> words;
  for (const auto& line : read_lines(path)) words.push_back(word_from_json_line(line));
  return words;
}

std::string error_json(const std::string& type, const std::string& message) {
  ordered_json j;
  j["error"] = {{"type", type}, {"message", message}};
  return j.dump();
}

MixingRelation parse_relation(const std::string& s) {
  if (s == "br1") return MixingRelation::Relation1;
  if (s == "br2") return MixingRelation::Relation2;
  throw std::invalid_argument("--relation must be br1 or br2");
}

struct GenerationFlags {
  std::size_t mixing_rounds = 0;
  std::size_t budget = kDefaultGenerationBudget;
  std::string relation = "br1";

  void add(CLI::App* app) {
    app->add_option("--mixing-rounds", mixing_rounds, "Markov-move rounds per pass (0: max(4, ceil(n/2)))");
    app->add_option("--budget", budget, "Outer iterations before giving up");
    app->add_option("--relation", relation, "Braid relation used while mixing (br1|br2)");
  }
  GenerationConfig config() const { return {mixing_rounds, parse_relation(relation), budget}; }
};

int env_n_max(int requested, const BraidWord& w) {
  if (requested > 0) return requested;
  return std::max<int>(1, static_cast<int>(w.size()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Braid-word knot tools: random unknots, invariants, unknotting agents"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Random braid words as JSON lines");
  std::string gen_kind = "unknot";
  std::size_t gen_letters = 12, gen_count = 1;
  std::uint64_t gen_seed = 0;
  int gen_strands = 3;
  std::string gen_out;
  GenerationFlags gen_flags;
  gen->add_option("--kind", gen_kind, "unknot | knot | nontrivial")->check(CLI::IsMember({"unknot", "knot", "nontrivial"}));
  gen->add_option("--n-letters", gen_letters, "Word length")->required();
  gen->add_option("--count", gen_count, "Number of words");
  gen->add_option("--seed", gen_seed, "Master seed")->required();
  gen->add_option("--n-strands", gen_strands, "Strands for knot letters");
  gen->add_option("--out", gen_out, "Output file (default stdout)");
  gen_flags.add(gen);

  // simplify
  auto* simp = app.add_subcommand("simplify", "Beam-search simplification of one word");
  std::string simp_word;
  std::size_t simp_width = 32, simp_budget = 5000;
  int simp_nmax = 0;
  simp->add_option("--word", simp_word, "Braid word, e.g. \"[1,-2,1]\"")->required();
  simp->add_option("--beam-width", simp_width, "Beam width");
  simp->add_option("--budget", simp_budget, "State expansions");
  simp->add_option("--n-max", simp_nmax, "Environment length bound (default |w|)");

  // certify
  auto* cert = app.add_subcommand("certify", "Try to prove a word is an unknot");
  std::string cert_word;
  int cert_depth = 8, cert_nmax = 0;
  std::size_t cert_width = 64, cert_budget = 20000, cert_bfs_limit = 8;
  cert->add_option("--word", cert_word, "Braid word")->required();
  cert->add_option("--depth", cert_depth, "Exhaustive search depth for short words");
  cert->add_option("--bfs-max-length", cert_bfs_limit, "Longest word searched exhaustively");
  cert->add_option("--beam-width", cert_width, "Beam width");
  cert->add_option("--budget", cert_budget, "Beam expansions");
  cert->add_option("--n-max", cert_nmax, "Environment length bound (default |w|)");

  // invariants
  auto* inv = app.add_subcommand("invariants", "Knot invariants of a word's closure");
  std::string inv_word;
  std::size_t inv_cap = kDefaultCrossingCap;
  inv->add_option("--word", inv_word, "Braid word")->required();
  inv->add_option("--jones-cap", inv_cap, "Largest word for the Jones polynomial");

  // dataset
  auto* ds = app.add_subcommand("dataset", "Balanced knot/unknot dataset as JSON lines");
  DatasetOptions ds_opts;
  std::string ds_out;
  GenerationFlags ds_flags;
  ds->add_option("--n-letters", ds_opts.n_letters, "Word length")->required();
  ds->add_option("--count", ds_opts.count, "Records (even)")->required();
  ds->add_option("--seed", ds_opts.seed, "Master seed")->required();
  ds->add_option("--n-strands", ds_opts.n_strands, "Strands for the knot class");
  ds->add_flag("--dt", ds_opts.with_dt, "Include DT codes");
  ds->add_option("--jones-cap", ds_opts.jones_cap, "Largest word for the Jones polynomial");
  ds->add_option("--threads", ds_opts.threads, "Worker threads");
  ds->add_option("--out", ds_out, "Output file (default stdout)");
  ds_flags.add(ds);

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Run an agent on a set of unknots");
  std::string ev_agent = "random", ev_checkpoint, ev_input, ev_out, ev_transcripts;
  int ev_nmax = 12, ev_steps = 500;
  std::size_t ev_episodes = 1000, ev_threads = 1;
  std::uint64_t ev_seed = 0;
  bool ev_greedy = false;
  ev->add_option("--agent", ev_agent, "random | policy")->check(CLI::IsMember({"random", "policy"}));
  ev->add_option("--checkpoint", ev_checkpoint, "Policy checkpoint (agent=policy)");
  ev->add_flag("--greedy", ev_greedy, "Take the policy's most likely action");
  ev->add_option("--n-max", ev_nmax, "Unknot length and environment bound");
  ev->add_option("--max-steps", ev_steps, "Action cap per episode");
  ev->add_option("--episodes", ev_episodes, "Generated unknots (ignored with --input)");
  ev->add_option("--input", ev_input, "Unknot words as JSON lines");
  ev->add_option("--seed", ev_seed, "Master seed")->required();
  ev->add_option("--threads", ev_threads, "Worker threads");
  ev->add_option("--transcripts", ev_transcripts, "Write episode transcripts here");
  ev->add_option("--out", ev_out, "Report file (default stdout)");

  // stats
  auto* st = app.add_subcommand("stats", "CSV tables for plotting");
  std::string st_mode = "crossings", st_input, st_out;
  std::size_t st_cap = kDefaultCrossingCap;
  st->add_option("--mode", st_mode, "crossings | knots | actions | jones-score")
      ->check(CLI::IsMember({"crossings", "knots", "actions", "jones-score"}));
  st->add_option("--input", st_input, "Words (JSON lines) or an evaluation report (actions)")->required();
  st->add_option("--jones-cap", st_cap, "Largest word for the Jones polynomial");
  st->add_option("--out", st_out, "Output file (default stdout)");

  // train
  auto* tr = app.add_subcommand("train", "Policy-gradient training of the linear policy");
  TrainingConfig tr_cfg;
  int tr_nmax = 12, tr_steps = 500;
  std::string tr_out, tr_log;
  tr->add_option("--n-max", tr_nmax, "Unknot length");
  tr->add_option("--max-steps", tr_steps, "Action cap per episode");
  tr->add_option("--iterations", tr_cfg.iterations, "Update iterations");
  tr->add_option("--episodes-per-iteration", tr_cfg.episodes_per_iteration, "Episodes per update");
  tr->add_option("--learning-rate", tr_cfg.learning_rate, "Policy step size");
  tr->add_option("--seed", tr_cfg.seed, "Master seed")->required();
  tr->add_option("--threads", tr_cfg.threads, "Rollout threads");
  tr->add_option("--out", tr_out, "Checkpoint file")->required();
  tr->add_option("--log", tr_log, "Training curve CSV");

  // export-dt
  auto* dt = app.add_subcommand("export-dt", "Add DT codes to JSON-line records");
  std::string dt_input, dt_out;
  dt->add_option("--input", dt_input, "Records as JSON lines")->required();
  dt->add_option("--out", dt_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen) {
      Output out(gen_out);
      const GenerationConfig cfg = gen_flags.config();
      for (std::size_t i = 0; i < gen_count; ++i) {
        Rng rng = Rng::derive(gen_seed, "generate", i);
        BraidWord w;
        if (gen_kind == "unknot") {
          w = random_unknot(gen_letters, rng, cfg);
        } else if (gen_kind == "knot") {
          w = random_knot(gen_letters, gen_strands, rng, cfg);
        } else {
          w = random_nontrivial_knot(gen_letters, gen_strands, rng, cfg);
        }
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["seed"] = gen_seed;
        j["index"] = i;
        j["kind"] = gen_kind;
        j["n_strands"] = w.strands();
        j["braid"] = w.letters();
        out.stream() << j.dump() << '\n';
      }
      return kOk;
    }
    if (*simp) {
      const BraidWord w = parse_word(simp_word);
      EnvConfig cfg;
      cfg.n_max = env_n_max(simp_nmax, w);
      std::cout << to_json(beam_search_simplify(w, simp_width, simp_budget, cfg)) << '\n';
      return kOk;
    }
    if (*cert) {
      const BraidWord w = parse_word(cert_word);
      ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["word"] = w.letters();
      if (unknot_filter(w) == FilterVerdict::ProvablyNontrivial) {
        j["verdict"] = "ProvablyNontrivial";
        std::cout << j.dump() << '\n';
        return kNontrivial;
      }
      EnvConfig cfg;
      cfg.n_max = env_n_max(cert_nmax, w);
      std::optional<MoveTranscript> found;
      if (w.size() <= cert_bfs_limit) {
        try {
          found = bfs_certify(w, cert_depth, full_actions(cfg), cfg);
        } catch (const ResourceError&) {
        }
      }
      if (!found) {
        MoveTranscript t = beam_search_simplify(w, cert_width, cert_budget, cfg);
        if (t.success()) found = std::move(t);
      }
      if (found) {
        replay(*found, cfg);
        j["verdict"] = "CertifiedUnknot";
        j["certificate"] = ordered_json::parse(to_json(*found));
        std::cout << j.dump() << '\n';
        return kOk;
      }
      j["verdict"] = "NotReduced";
      std::cout << j.dump() << '\n';
      return kNotReduced;
    }
    if (*inv) {
      const BraidWord w = parse_word(inv_word);
      ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["word"] = w.letters();
      j["n_strands"] = w.strands();
      j["components"] = closure_components(w);
      j["writhe"] = w.writhe();
      if (closure_components(w) == 1) {
        const FingerprintSummary fp = summarize(fingerprint(w, inv_cap));
        j["alexander"] = fp.alexander;
        j["arf"] = fp.arf;
        j["jones"] = fp.jones ? ordered_json(*fp.jones) : ordered_json(nullptr);
        j["dt"] = dt_code(closure_diagram(w));
        j["unknot_filter"] = std::string(to_string(unknot_filter(w, inv_cap)));
        const Identification id = identify_small_knot(smart_collapse(w), KnotReferenceTable::builtin(), inv_cap);
        j["identified_as"] = id.match ? ordered_json(id.match->name) : ordered_json(nullptr);
      } else {
        try {
          j["jones"] = jones(w, inv_cap).to_string("q");
        } catch (const ResourceError&) {
          j["jones"] = nullptr;
        }
      }
      std::cout << j.dump() << '\n';
      return kOk;
    }
    if (*ds) {
      ds_opts.generation = ds_flags.config();
      const auto records = make_dataset(ds_opts);
      Output out(ds_out);
      for (const auto& r : records) out.stream() << to_jsonl(r) << '\n';
      return kOk;
    }
    if (*ev) {
      EnvConfig cfg;
      cfg.n_max = ev_nmax;
      cfg.max_steps = ev_steps;
      std::vector<BraidWord> unknots;
      if (!ev_input.empty()) {
        unknots = read_words(ev_input);
      } else {
        for (std::size_t i = 0; i < ev_episodes; ++i) {
          Rng rng = Rng::derive(ev_seed, "evaluation-unknot", i);
          unknots.push_back(random_unknot(static_cast<std::size_t>(ev_nmax), rng));
        }
      }
      Agent agent;
      if (ev_agent == "random") {
        agent = random_walker_agent(cfg);
      } else {
        if (ev_checkpoint.empty()) throw std::invalid_argument("--checkpoint is required for agent=policy");
        std::ifstream in(ev_checkpoint);
        if (!in) throw std::runtime_error("cannot open checkpoint " + ev_checkpoint);
        std::stringstream buf;
        buf << in.rdbuf();
        LinearPolicy policy = LinearPolicy::from_json(buf.str());
        if (policy.config().n_max != cfg.n_max) throw std::invalid_argument("checkpoint was trained for another n_max");
        agent = policy_agent(policy, ev_greedy);
      }
      std::vector<MoveTranscript> transcripts;
      const EvaluationReport report =
          evaluate(agent, unknots, cfg, ev_seed, ev_threads, ev_transcripts.empty() ? nullptr : &transcripts);
      if (!ev_transcripts.empty()) {
        Output t(ev_transcripts);
        for (const auto& tr_ : transcripts) t.stream() << to_json(tr_) << '\n';
      }
      Output out(ev_out);
      out.stream() << report.to_json() << '\n';
      return kOk;
    }
    if (*st) {
      Output out(st_out);
      if (st_mode == "actions") {
        std::ifstream in(st_input);
        if (!in) throw std::runtime_error("cannot open input file " + st_input);
        const auto j = nlohmann::json::parse(in);
        EvaluationReport r;
        r.n_max = j.at("n_max").get<int>();
        for (const auto& [k, v] : j.at("action_histogram").items()) r.action_histogram[k] = v.get<double>();
        out.stream() << action_usage_csv(r);
      } else if (st_mode == "jones-score") {
        out.stream() << jones_score_csv(read_lines(st_input), st_cap);
      } else {
        const PriorStats stats = prior_stats(read_words(st_input), KnotReferenceTable::builtin(), st_cap);
        out.stream() << (st_mode == "crossings" ? crossing_histogram_csv(stats) : knot_counts_csv(stats));
      }
      return kOk;
    }
    if (*tr) {
      EnvConfig cfg;
      cfg.n_max = tr_nmax;
      cfg.max_steps = tr_steps;
      std::optional<Output> log;
      if (!tr_log.empty()) {
        log.emplace(tr_log);
        log->stream() << "schema_version,iteration,success_fraction,mean_return,mean_entropy\n";
      }
      const LinearPolicy policy = policy_gradient_train(cfg, tr_cfg, [&](const TrainingLogEntry& e) {
        if (log) {
          log->stream() << kSchemaVersion << ',' << e.iteration << ',' << e.success_fraction << ',' << e.mean_return
                        << ',' << e.mean_entropy << '\n';
        }
      });
      Output out(tr_out);
      out.stream() << policy.to_json() << '\n';
      return kOk;
    }
    if (*dt) {
      Output out(dt_out);
      for (const auto& line : export_dt(read_lines(dt_input))) out.stream() << line << '\n';
      return kOk;
    }
  } catch (const GenerationError& e) {
    std::cerr << error_json("GenerationError", e.what()) << '\n';
  } catch (const ResourceError& e) {
    std::cerr << error_json("ResourceError", e.what()) << '\n';
  } catch (const NotAKnotError& e) {
    std::cerr << error_json("NotAKnot", e.what()) << '\n';
  } catch (const DivergenceError& e) {
    std::cerr << error_json("Divergence", e.what()) << '\n';
  } catch (const std::invalid_argument& e) {
    std::cerr << error_json("InvalidArgument", e.what()) << '\n';
  } catch (const std::exception& e) {
    std::cerr << error_json("Error", e.what()) << '\n';
  }
  return kError;
}
