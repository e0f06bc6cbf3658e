#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace rts {

enum class Language { zh, en };

Language parse_language(const std::string& s);
std::string to_string(Language lang);

/// A named real vector computed outside the pipeline (parser or sentiment output).
using SidecarFeatures = std::vector<std::pair<std::string, double>>;

struct Essay {
  std::string id;
  std::string prompt_id;
  std::string text;
  int gold_score = 0;
  std::optional<SidecarFeatures> sidecar_features;
};

/// Score range, lattice step and the configured reference scores of one prompt.
struct PromptSpec {
  std::string id;
  int score_min = 0;
  int score_max = 0;
  int step = 1;
  std::vector<int> reference_scores;  // empty -> auto-select
  Language language = Language::en;
  std::string topic;

  /// Throws ConfigError when an invariant is broken.
  void validate() const;
  bool on_lattice(int score) const noexcept;
  /// Index of an on-lattice score in lattice(*this).
  std::size_t lattice_index(int score) const;
  std::size_t lattice_size() const noexcept;
};

/// Prompt specs keyed by id, loaded from the prompt config file.
class PromptRegistry {
 public:
  PromptRegistry() = default;
  explicit PromptRegistry(std::vector<PromptSpec> prompts);

  static PromptRegistry from_json(const nlohmann::json& j);
  static PromptRegistry load(const std::filesystem::path& path);
  /// HSK and ASAP1-8 ranges, steps and reference scores.
  static PromptRegistry builtin();

  const PromptSpec& at(const std::string& id) const;
  const PromptSpec* find(const std::string& id) const;
  const std::vector<PromptSpec>& all() const noexcept { return prompts_; }

 private:
  std::vector<PromptSpec> prompts_;
};

PromptSpec prompt_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PromptSpec& p);

/// Attainable scores: score_min, score_min + step, ..., score_max.
std::vector<int> lattice(const PromptSpec& prompt);

/// Ordered regex removal rules for annotation markup.
struct CleaningRule {
  std::string name;
  std::string pattern;  // ECMAScript regex
};
using CleaningRules = std::vector<CleaningRule>;

/// The brace-span rule used for the bundled HSK configuration.
CleaningRules default_hsk_cleaning_rules();
CleaningRules cleaning_rules_from_json(const nlohmann::json& j);

struct CleaningResult {
  std::string text;
  std::size_t markers_removed = 0;
};

/// Applies rules in order, then normalizes whitespace: runs of spaces and tabs
/// become one space, lines are trimmed, blank-line runs collapse to one.
CleaningResult clean_text_detailed(const std::string& raw, const CleaningRules& rules);
std::string clean_text(const std::string& raw, const CleaningRules& rules);

struct RejectedRow {
  std::size_t line = 0;
  std::string id;
  std::string reason;
};

struct CleaningLogEntry {
  std::string id;
  std::string original;
  std::size_t markers_removed = 0;
};

struct Provenance {
  std::string source;
  std::vector<CleaningLogEntry> cleaning_log;
};

struct Dataset {
  PromptSpec prompt;
  std::vector<Essay> essays;
  Provenance provenance;
  std::vector<RejectedRow> rejected;

  /// Throws DataError on duplicate ids or foreign essays.
  void validate() const;
  const Essay* find(const std::string& id) const;
};

enum class DatasetFormat { jsonl, tsv };
DatasetFormat parse_format(const std::string& s);
DatasetFormat format_from_extension(const std::filesystem::path& path);

/// Reads essays for one prompt. Off-lattice scores and rows that clean to
/// empty text are collected in Dataset::rejected. Malformed rows throw
/// ParseError with the line number; unknown or mixed prompt ids throw ConfigError.
/// With `expected_prompt` unset the prompt is taken from the first row.
Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                     const PromptRegistry& registry, const CleaningRules& rules = {},
                     const std::optional<std::string>& expected_prompt = std::nullopt);

/// Writes essays as JSONL (id, prompt_id, text, score).
void write_dataset_jsonl(const Dataset& ds, const std::filesystem::path& path);

/// Configured reference scores verbatim; otherwise the middle rule for
/// lattices of up to six scores and equally spaced interior scores beyond that.
std::vector<int> select_reference_scores(const PromptSpec& prompt, std::size_t max_refs = 5);

/// Reference score -> the ids of its reference essays, ascending by score.
struct ReferenceSet {
  std::map<int, std::vector<std::string>> essays;

  std::vector<int> scores() const;
  std::vector<std::string> ids() const;
};

ReferenceSet select_reference_essays(const Dataset& dataset, const std::vector<int>& scores,
                                     std::size_t per_score, std::uint64_t seed);

struct Split {
  Dataset train;
  Dataset test;
};

/// Stratified by gold score. The overall test size is round(N * fraction) and
/// each score bucket lands within one essay of its proportional share.
Split split(const Dataset& dataset, double test_fraction, std::uint64_t seed);

nlohmann::json to_json(const ReferenceSet& refs);

}  // namespace rts
