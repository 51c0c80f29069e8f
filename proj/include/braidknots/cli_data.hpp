#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "braidknots/agents.hpp"
#include "braidknots/braid_word.hpp"
#include "braidknots/invariants.hpp"
#include "braidknots/sampling.hpp"

namespace braidknots {

inline constexpr int kSchemaVersion = 1;

/// Summary of an InvariantFingerprint as plain strings, for serialization.
struct FingerprintSummary {
  int components = 1;
  std::string alexander;
  int arf = 0;
  std::optional<std::string> jones;  // in t; absent above the crossing cap
};

FingerprintSummary summarize(const InvariantFingerprint& fp);

/// One labelled example: label 0 = nontrivial knot, 1 = unknot.
struct DatasetRecord {
  std::uint64_t seed = 0;
  std::size_t index = 0;
  int label = 1;
  BraidWord braid;
  FingerprintSummary fingerprint;
  std::optional<std::vector<int>> dt;
};

struct DatasetOptions {
  std::size_t n_letters = 12;
  std::size_t count = 1000;  // must be even
  std::uint64_t seed = 0;
  int n_strands = 3;  // letter range for the nontrivial class
  GenerationConfig generation;
  bool with_dt = false;
  std::size_t jones_cap = kDefaultCrossingCap;
  std::size_t threads = 1;
};

/// Balanced dataset: even indices hold nontrivial knots (ProvablyNontrivial),
/// odd indices unknots. Record i draws from Rng::derive(seed, "dataset", i),
/// so the output does not depend on the thread count. Throws
/// std::invalid_argument for an odd or zero count.
std::vector<DatasetRecord> make_dataset(const DatasetOptions& options);

/// One JSON object per line, keys in a fixed order.
std::string to_jsonl(const DatasetRecord& r);

/// Re-runs the unknot filter on every record; returns the indices whose
/// label contradicts it.
std::vector<std::size_t> audit_dataset(const std::vector<DatasetRecord>& records,
                                       std::size_t jones_cap = kDefaultCrossingCap);

/// Parses "[1,-2,1]", "1 -2 1" or "1,-2,1" into a word. Throws
/// std::invalid_argument on anything else (including a 0 letter).
BraidWord parse_word(std::string_view text);

/// Reads the "braid" field of a JSON object line, or a bare JSON array.
BraidWord word_from_json_line(std::string_view line);

/// For each input line ({"braid": [...], ...} or a bare array) emits the same
/// object with a "dt" field, or with an "error" field when the closure is not
/// a knot. Blank lines are skipped.
std::vector<std::string> export_dt(const std::vector<std::string>& lines);

/// Plot-ready CSV tables; every table carries a schema_version column.
std::string crossing_histogram_csv(const PriorStats& stats);
std::string knot_counts_csv(const PriorStats& stats);
std::string action_usage_csv(const EvaluationReport& report);
/// Jones span (in t) against the numeric "score" field of each record line.
std::string jones_score_csv(const std::vector<std::string>& lines, std::size_t jones_cap = kDefaultCrossingCap);

std::string to_json(const MoveTranscript& t);

}  // namespace braidknots
