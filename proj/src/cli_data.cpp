#include "braidknots/cli_data.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "braidknots/braid_ops.hpp"
#include "braidknots/diagram.hpp"
#include "braidknots/errors.hpp"

namespace braidknots {

using ordered_json = nlohmann::ordered_json;

FingerprintSummary summarize(const InvariantFingerprint& fp) {
  FingerprintSummary s;
  s.components = fp.components;
  s.alexander = fp.alexander.to_string("t");
  s.arf = fp.arf;
  if (fp.jones) s.jones = fp.jones->to_string("t", 4);
  return s;
}

std::vector<DatasetRecord> make_dataset(const DatasetOptions& options) {
  if (options.count == 0 || options.count % 2 != 0) {
    throw std::invalid_argument("dataset count must be a positive even number");
  }
  std::vector<DatasetRecord> records(options.count);
  auto build = [&](std::size_t i) {
    Rng rng = Rng::derive(options.seed, "dataset", i);
    DatasetRecord& r = records[i];
    r.seed = options.seed;
    r.index = i;
    r.label = i % 2 == 0 ? 0 : 1;
    r.braid = r.label == 0
                  ? random_nontrivial_knot(options.n_letters, options.n_strands, rng, options.generation, options.jones_cap)
                  : random_unknot(options.n_letters, rng, options.generation);
    r.fingerprint = summarize(fingerprint(r.braid, options.jones_cap));
    if (options.with_dt) r.dt = dt_code(closure_diagram(r.braid));
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(options.threads, options.count));
  if (threads == 1) {
    for (std::size_t i = 0; i < options.count; ++i) build(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < options.count; i += threads) build(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return records;
}

std::string to_jsonl(const DatasetRecord& r) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = r.seed;
  j["index"] = r.index;
  j["label"] = r.label;
  j["n_letters"] = r.braid.size();
  j["n_strands"] = r.braid.strands();
  j["braid"] = r.braid.letters();
  ordered_json fp;
  fp["components"] = r.fingerprint.components;
  fp["alexander"] = r.fingerprint.alexander;
  fp["arf"] = r.fingerprint.arf;
  fp["jones"] = r.fingerprint.jones ? ordered_json(*r.fingerprint.jones) : ordered_json(nullptr);
  j["fingerprint"] = fp;
  if (r.dt) j["dt"] = *r.dt;
  return j.dump();
}

std::vector<std::size_t> audit_dataset(const std::vector<DatasetRecord>& records, std::size_t jones_cap) {
  std::vector<std::size_t> bad;
  for (const auto& r : records) {
    const FilterVerdict v = unknot_filter(r.braid, jones_cap);
    const bool ok = r.label == 1 ? v == FilterVerdict::PassesUnknotValues : v == FilterVerdict::ProvablyNontrivial;
    if (!ok) bad.push_back(r.index);
  }
  return bad;
}

BraidWord parse_word(std::string_view text) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\t' || text[i] == '\n' ||
                               text[i] == '[' || text[i] == ']'))
      ++i;
  };
  skip();
  while (i < text.size()) {
    Letter v = 0;
    const char* begin = text.data() + i;
    const char* end = text.data() + text.size();
    if (*begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || v == 0) {
      throw std::invalid_argument("cannot parse braid word: '" + std::string(text) + "'");
    }
    letters.push_back(v);
    i = static_cast<std::size_t>(ptr - text.data());
    if (i < text.size() && text[i] != ' ' && text[i] != ',' && text[i] != ']' && text[i] != '\t' &&
        text[i] != '\n') {
      throw std::invalid_argument("cannot parse braid word: '" + std::string(text) + "'");
    }
    skip();
  }
  return BraidWord(std::move(letters));
}

BraidWord word_from_json_line(std::string_view line) {
  const auto j = nlohmann::json::parse(line);
  const auto& arr = j.is_array() ? j : j.at("braid");
  auto letters = arr.get<std::vector<Letter>>();
  for (Letter l : letters) {
    if (l == 0) throw std::invalid_argument("braid letter 0 is not a generator");
  }
  if (j.is_object() && j.contains("n_strands")) return BraidWord(std::move(letters), j["n_strands"].get<int>());
  return BraidWord(std::move(letters));
}

std::vector<std::string> export_dt(const std::vector<std::string>& lines) {
  std::vector<std::string> out;
  for (const auto& line : lines) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    ordered_json j = ordered_json::parse(line);
    if (j.is_array()) j = ordered_json{{"braid", j}};
    try {
      const BraidWord w = word_from_json_line(line);
      j["dt"] = dt_code(closure_diagram(w));
    } catch (const NotAKnotError& e) {
      j["error"] = {{"type", "NotAKnot"}, {"components", e.components()}, {"message", e.what()}};
    }
    out.push_back(j.dump());
  }
  return out;
}

std::string crossing_histogram_csv(const PriorStats& stats) {
  std::ostringstream os;
  os << "schema_version,crossings,count\n";
  for (const auto& [c, n] : stats.by_crossings) os << kSchemaVersion << ',' << c << ',' << n << '\n';
  os << kSchemaVersion << ",unidentified," << stats.unidentified << '\n';
  return os.str();
}

std::string knot_counts_csv(const PriorStats& stats) {
  std::ostringstream os;
  os << "schema_version,knot,crossings,prime,count\n";
  for (const auto& [name, n] : stats.by_name) {
    const bool composite = name.find('#') != std::string::npos;
    int crossings = 0;
    if (!composite) {
      crossings = crossings_from_name(name);
    } else {
      std::size_t start = 0;
      while (start < name.size()) {
        std::size_t end = name.find(" # ", start);
        crossings += crossings_from_name(name.substr(start, end - start));
        if (end == std::string::npos) break;
        start = end + 3;
      }
    }
    const bool prime = !composite && crossings > 0;
    os << kSchemaVersion << ",\"" << name << "\"," << crossings << ',' << (prime ? 1 : 0) << ',' << n << '\n';
  }
  return os.str();
}

std::string action_usage_csv(const EvaluationReport& report) {
  std::ostringstream os;
  os << "schema_version,n_max,category,frequency\n";
  for (const auto& name : histogram_categories()) {
    os << kSchemaVersion << ',' << report.n_max << ',' << name << ',' << report.action_histogram.at(name) << '\n';
  }
  return os.str();
}

std::string jones_score_csv(const std::vector<std::string>& lines, std::size_t jones_cap) {
  std::ostringstream os;
  os << "schema_version,index,jones_span,score\n";
  std::size_t index = 0;
  for (const auto& line : lines) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    const auto j = nlohmann::json::parse(line);
    const BraidWord w = word_from_json_line(line);
    const std::size_t idx = j.is_object() && j.contains("index") ? j["index"].get<std::size_t>() : index;
    ++index;
    os << kSchemaVersion << ',' << idx << ',';
    try {
      os << jones_t(w, jones_cap).span();
    } catch (const ResourceError&) {
      os << "";
    }
    os << ',';
    if (j.is_object() && j.contains("score") && j["score"].is_number()) os << j["score"].get<double>();
    os << '\n';
  }
  return os.str();
}

std::string to_json(const MoveTranscript& t) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["initial"] = t.initial.letters();
  std::vector<std::string> names;
  for (ActionId a : t.actions) names.push_back(action_name(a));
  j["actions"] = t.actions;
  j["action_names"] = names;
  j["rewards"] = t.rewards;
  j["final"] = t.final_word.letters();
  j["success"] = t.success();
  return j.dump();
}

}  // namespace braidknots
