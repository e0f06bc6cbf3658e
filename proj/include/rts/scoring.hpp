#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rts/corpus.hpp"
#include "rts/ranking.hpp"

namespace rts {

struct ScoreOutcome {
  int score = 0;
  bool parse_failure = false;
};

/// Resolves an essay and its candidate set to one score.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual ScoreOutcome score(const std::string& essay_text, const std::vector<int>& candidates,
                             const PromptSpec& prompt) = 0;
  virtual std::unique_ptr<Scorer> fork(std::uint64_t stream) const = 0;
  virtual std::string name() const = 0;
};

/// Engine-side contract check: off-lattice scores snap to the nearest lattice
/// point (lower on a tie).
struct ClampedScore {
  int score = 0;
  bool violation = false;
};
ClampedScore clamp_to_lattice(int score, const PromptSpec& prompt);

/// Lower-middle element of the candidate set.
class MidpointScorer final : public Scorer {
 public:
  ScoreOutcome score(const std::string&, const std::vector<int>& candidates, const PromptSpec& prompt) override;
  std::unique_ptr<Scorer> fork(std::uint64_t) const override { return std::make_unique<MidpointScorer>(); }
  std::string name() const override { return "midpoint"; }
};

std::unique_ptr<Scorer> midpoint_scorer();
int lower_middle(const std::vector<int>& candidates);

/// Gold when it is in the set, otherwise the nearest candidate. With
/// probability `noise` the answer moves one lattice step, staying in the set.
class OracleScorer final : public Scorer {
 public:
  OracleScorer(std::shared_ptr<const GoldLookup> gold, double noise, std::uint64_t seed, std::uint64_t stream = 0);
  ScoreOutcome score(const std::string& essay_text, const std::vector<int>& candidates,
                     const PromptSpec& prompt) override;
  std::unique_ptr<Scorer> fork(std::uint64_t stream) const override;
  std::string name() const override;

 private:
  std::shared_ptr<const GoldLookup> gold_;
  double noise_;
  std::uint64_t seed_;
  Rng rng_;
};

std::unique_ptr<Scorer> oracle_scorer(std::shared_ptr<const GoldLookup> gold, double noise, std::uint64_t seed);

// --- training data ------------------------------------------------------------

struct PairwiseExample {
  std::string essay_1_id;
  std::string essay_1;
  std::string essay_2_id;
  std::string essay_2;
  int label = 1;  // 1 or 2: which listed essay has the higher score
  int score_1 = 0;
  int score_2 = 0;
};

struct PairwiseResult {
  std::vector<PairwiseExample> examples;
  std::vector<std::string> warnings;
};

/// For each training essay, k partners drawn without replacement from the
/// essays with a different gold score; position order is a fair coin.
/// `augmented` maps essay id -> feature-augmented text (falls back to raw text).
PairwiseResult generate_pairwise_training(const Dataset& train, std::size_t k, std::uint64_t seed,
                                          const std::map<std::string, std::string>& augmented);

enum class CorruptionStrategy { adjacent, random };
CorruptionStrategy parse_corruption_strategy(const std::string& s);

/// Moves to the neighboring outcome (first one on each side that excludes
/// gold); a seeded coin picks the side when both exist.
CandidateScoreSet corrupt_candidate_set(const CandidateScoreSet& set, int gold, const ReferenceLadder& ladder,
                                        std::uint64_t seed,
                                        CorruptionStrategy strategy = CorruptionStrategy::adjacent);

struct CalibrationConfig {
  double ranker_test_accuracy = 1.0;
  double gap = 0.15;
  std::uint64_t seed = 0;
  CorruptionStrategy strategy = CorruptionStrategy::adjacent;

  /// ranker_test_accuracy - gap, clamped to [0, 1].
  double target() const;
};

struct ScorerExample {
  std::string id;
  std::string essay;
  std::vector<int> candidates;
  int gold = 0;
  bool corrupted = false;
};

/// Number of corrupted rows: round((1 - target) * M).
std::size_t corrupted_count(std::size_t m, double target);

/// True candidate sets for every training essay, with exactly
/// corrupted_count(M, target) of them (seeded choice) moved off gold.
std::vector<ScorerExample> generate_scorer_training(const Dataset& train, const ReferenceLadder& ladder,
                                                    const CalibrationConfig& cal);

std::string render_candidates(const std::vector<int>& candidates);

nlohmann::ordered_json to_json(const PairwiseExample& e);
nlohmann::ordered_json to_json(const ScorerExample& e);

}  // namespace rts
