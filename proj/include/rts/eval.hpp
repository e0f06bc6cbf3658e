#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rts/batch.hpp"
#include "rts/corpus.hpp"
#include "rts/features.hpp"
#include "rts/llm.hpp"
#include "rts/ranking.hpp"
#include "rts/scoring.hpp"

namespace rts {

// --- metrics ------------------------------------------------------------------

/// Quadratic weighted kappa over lattice-index categories.
double qwk(const std::vector<int>& gold, const std::vector<int>& pred, int score_min, int score_max, int step);
double qwk(const std::vector<int>& gold, const std::vector<int>& pred, const PromptSpec& prompt);

// --- configuration ------------------------------------------------------------

struct DatasetEntry {
  std::string prompt_id;
  std::filesystem::path path;
  std::optional<DatasetFormat> format;          // from the extension when unset
  std::optional<std::filesystem::path> sidecar;  // precomputed parser/sentiment features
};

/// kind: oracle | endpoint | stub. `stub` routes the endpoint path through an
/// in-process transport with hash-derived replies.
struct ComparatorChoice {
  std::string kind = "oracle";
  double p = 0.0;
  TieBehavior tie_behavior = TieBehavior::coin;
  EndpointConfig endpoint;
  std::optional<std::filesystem::path> template_path;
};

/// kind: oracle | midpoint | endpoint | stub.
struct ScorerChoice {
  std::string kind = "oracle";
  double noise = 0.0;
  EndpointConfig endpoint;
  std::optional<std::filesystem::path> template_path;
};

struct ExperimentConfig {
  std::optional<std::filesystem::path> prompts_file;  // builtin registry when unset
  std::vector<DatasetEntry> datasets;
  std::vector<std::string> prompt_ids;  // empty -> every dataset
  /// Language ("zh"/"en") -> LexiconResources::load config and the
  /// directory its paths resolve against.
  struct Resources {
    nlohmann::json config;
    std::filesystem::path base;
  };
  std::map<std::string, Resources> resources;
  /// Language -> feature config; absent -> default registry, k = 10.
  std::map<std::string, FeatureConfig> features;
  bool augment = true;
  std::optional<CleaningRules> cleaning_rules;  // unset: brace rule for zh, none for en
  ComparatorChoice comparator;
  ScorerChoice scorer;
  std::uint64_t seed = 20240601;
  double test_fraction = 0.2;
  std::size_t refs_per_score = 2;
  std::size_t pairwise_k = 5;
  double calibration_gap = 0.15;
  std::optional<double> ranker_test_accuracy;  // unset -> measured on the test split
  CorruptionStrategy corruption = CorruptionStrategy::adjacent;
  std::filesystem::path out_dir = "out";
  int jobs = 1;
  bool write_artifacts = true;

  /// Relative paths resolve against `base`.
  static ExperimentConfig from_json(const nlohmann::json& j, const std::filesystem::path& base);
  static ExperimentConfig load(const std::filesystem::path& path);
};

// --- report -------------------------------------------------------------------

struct PromptResult {
  std::string prompt_id;
  std::size_t n_test = 0;
  double qwk = 0.0;
  double candidate_accuracy = 0.0;
  double mean_calls = 0.0;
  std::size_t parse_failures = 0;
  std::size_t clamp_violations = 0;
  std::string error;  // non-empty when the prompt failed

  bool ok() const noexcept { return error.empty(); }
  bool operator==(const PromptResult&) const = default;
};

struct ExperimentReport {
  std::string mode = "rts";  // rts | vanilla
  std::vector<PromptResult> prompts;
  std::vector<std::string> artifacts;  // relative to out_dir

  /// Means of the rates over successful prompts; counts are totals.
  PromptResult average() const;
  nlohmann::ordered_json to_json() const;
  static ExperimentReport from_json(const nlohmann::json& j);
  bool operator==(const ExperimentReport&) const = default;
};

enum class ReportFormat { csv, json, markdown };
ReportFormat parse_report_format(const std::string& s);
std::string render_report(const ExperimentReport& report, ReportFormat format);
/// Throws Error when the file cannot be written.
void emit_report(const ExperimentReport& report, ReportFormat format, const std::filesystem::path& path);

// --- stages -------------------------------------------------------------------

PromptRegistry prompt_registry(const ExperimentConfig& cfg);
const DatasetEntry& dataset_entry(const ExperimentConfig& cfg, const std::string& prompt_id);
/// Prompt ids to run: cfg.prompt_ids, or every dataset entry.
std::vector<std::string> selected_prompts(const ExperimentConfig& cfg);

struct Ingested {
  Dataset dataset;
  Split parts;
};
Ingested ingest(const ExperimentConfig& cfg, const std::string& prompt_id);

struct Featurized {
  FeatureRegistry registry;
  std::vector<FeatureVector> features;  // aligned with dataset.essays
  std::optional<FScoreTable> fscores;   // unset when the selection is configured
  std::vector<std::string> selected;
  std::map<std::string, std::string> augmented;  // id -> text shown to the judges
};
/// `k` overrides the configured selection size.
Featurized featurize(const ExperimentConfig& cfg, const Ingested& in, std::optional<std::size_t> k = std::nullopt);

ReferenceSet choose_references(const ExperimentConfig& cfg, const Ingested& in);
std::shared_ptr<GoldLookup> gold_lookup(const Ingested& in, const Featurized& fz);
std::unique_ptr<Comparator> make_comparator(const ExperimentConfig& cfg, const PromptSpec& prompt,
                                            std::shared_ptr<const GoldLookup> gold);
std::unique_ptr<Scorer> make_scorer(const ExperimentConfig& cfg, const PromptSpec& prompt,
                                    std::shared_ptr<const GoldLookup> gold);
std::vector<batch::Target> test_targets(const Ingested& in, const Featurized& fz);

struct Scored {
  std::vector<int> predictions;
  std::size_t parse_failures = 0;
  std::size_t clamp_violations = 0;
  std::vector<ScoreOutcome> raw;
};
Scored score_all(const Scorer& scorer, const std::vector<batch::Target>& targets,
                 const std::vector<std::vector<int>>& candidates, const PromptSpec& prompt, int jobs);

struct TrainingData {
  PairwiseResult pairwise;
  std::vector<ScorerExample> scorer;
  double target_accuracy = 0.0;
};
TrainingData training_data(const ExperimentConfig& cfg, const Ingested& in, const Featurized& fz,
                           const ReferenceLadder& ladder, double ranker_test_accuracy);

// Artifact writers. Each returns the path it wrote.
std::filesystem::path write_jsonl(const std::filesystem::path& path, const std::vector<nlohmann::ordered_json>& rows);
std::filesystem::path write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc);
nlohmann::ordered_json split_json(const Split& parts);
std::vector<nlohmann::ordered_json> features_rows(const Dataset& ds, const std::vector<FeatureVector>& fvs);
nlohmann::ordered_json selection_json(const Featurized& fz);
std::vector<nlohmann::ordered_json> candidate_rows(const std::vector<batch::Target>& targets,
                                                   const std::vector<int>& golds,
                                                   const std::vector<CandidateScoreSet>& sets,
                                                   const std::string& comparator);
std::vector<nlohmann::ordered_json> prediction_rows(const std::vector<batch::Target>& targets,
                                                    const std::vector<int>& golds,
                                                    const std::vector<std::vector<int>>& candidates,
                                                    const Scored& scored, const PromptSpec& prompt);

// --- pipelines ----------------------------------------------------------------

/// Per prompt: split, features, references, candidate sets, scores, metrics,
/// training data. Artifacts go to out_dir/<prompt_id>/. A failing prompt
/// records its error and the others still run.
ExperimentReport run_rts(const ExperimentConfig& cfg);
/// Same minus ranking: the scorer sees the full lattice. Artifacts go to
/// out_dir/<prompt_id>/vanilla/.
ExperimentReport run_vanilla(const ExperimentConfig& cfg);

// --- simulation ---------------------------------------------------------------

struct ExactRanker {
  double accuracy = 0.0;    // mean over lattice golds
  double mean_calls = 0.0;  // mean over lattice golds
  std::vector<double> per_gold_accuracy;
};

struct SimulationRow {
  double p = 0.0;
  std::size_t trials = 0;
  double mc_accuracy = 0.0;
  double mc_mean_calls = 0.0;
  double exact_accuracy = 0.0;
  double exact_mean_calls = 0.0;
  double mc_stderr = 0.0;  // binomial standard error of mc_accuracy
};

/// A ladder whose reference essays are placeholders; `gold` receives their
/// scores and every batch::simulation_target.
ReferenceLadder simulation_ladder(const PromptSpec& prompt, GoldLookup& gold);

/// Enumerates the 16 outcome patterns at every node, weighting each path by
/// its probability under independent flips, targets uniform on the lattice.
ExactRanker exact_ranker(const ReferenceLadder& ladder, double p, TieBehavior tie = TieBehavior::coin);

std::vector<SimulationRow> simulate_ranker(const PromptSpec& prompt, const std::vector<double>& p_grid,
                                           std::size_t trials, std::uint64_t seed,
                                           TieBehavior tie = TieBehavior::coin, int jobs = 1);

std::string render_simulation_csv(const std::vector<SimulationRow>& rows);

}  // namespace rts
