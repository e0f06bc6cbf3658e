#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rts/features.hpp"
#include "rts/ranking.hpp"
#include "rts/scoring.hpp"

// Per-essay kernels. Each parallel kernel has a serial twin with identical
// output; per-item randomness comes from forking on the item id, so the
// thread count never changes results. jobs <= 0 means all available threads.
namespace rts::batch {

int resolve_jobs(int jobs);

std::vector<FeatureVector> extract_features(const std::vector<Essay>& essays, Language language,
                                            const LexiconResources& resources, const FeatureRegistry& registry,
                                            int jobs);
std::vector<FeatureVector> extract_features_serial(const std::vector<Essay>& essays, Language language,
                                                   const LexiconResources& resources,
                                                   const FeatureRegistry& registry);

struct Target {
  std::string id;
  std::string text;
};

/// The comparator is forked once per target with stream fnv1a(id). The first
/// failure (by target order) is rethrown after the loop.
std::vector<CandidateScoreSet> infer(const Comparator& base, const std::vector<Target>& targets,
                                     const ReferenceLadder& ladder, int jobs);
std::vector<CandidateScoreSet> infer_serial(const Comparator& base, const std::vector<Target>& targets,
                                            const ReferenceLadder& ladder);

std::vector<ScoreOutcome> score(const Scorer& base, const std::vector<Target>& targets,
                                const std::vector<std::vector<int>>& candidates, const PromptSpec& prompt, int jobs);
std::vector<ScoreOutcome> score_serial(const Scorer& base, const std::vector<Target>& targets,
                                       const std::vector<std::vector<int>>& candidates, const PromptSpec& prompt);

struct MonteCarlo {
  std::size_t trials = 0;
  std::size_t hits = 0;   // candidate set contained gold
  std::size_t calls = 0;  // comparator calls summed over trials
};

/// Trial t draws its gold uniformly from the lattice and descends with an
/// oracle forked on t. `gold` must map "target@<score>" for every lattice score.
MonteCarlo simulate(const ReferenceLadder& ladder, std::shared_ptr<const GoldLookup> gold, const NoisyOracleConfig& cfg,
                    std::size_t trials, int jobs);
MonteCarlo simulate_serial(const ReferenceLadder& ladder, std::shared_ptr<const GoldLookup> gold,
                           const NoisyOracleConfig& cfg, std::size_t trials);

std::string simulation_target(int score);

}  // namespace rts::batch
