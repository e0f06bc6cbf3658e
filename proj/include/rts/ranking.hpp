#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "rts/corpus.hpp"
#include "rts/error.hpp"
#include "rts/random.hpp"

namespace rts {

/// Pairwise judge. compare(first, second) is true when the first-listed
/// essay is better, false when the second is, and nullopt when the backend
/// produced no usable answer.
class Comparator {
 public:
  virtual ~Comparator() = default;
  virtual std::optional<bool> compare(std::string_view first, std::string_view second) = 0;
  /// An instance with its own random stream. Inference forks one per target
  /// essay so results do not depend on thread scheduling.
  virtual std::unique_ptr<Comparator> fork(std::uint64_t stream) const = 0;
  virtual std::string name() const = 0;
};

/// Raised when a comparator call throws; carries the 1-based call index
/// within the current multi-validation round.
class ComparatorError : public Error {
 public:
  ComparatorError(const std::string& what, int call_index)
      : Error("comparator call " + std::to_string(call_index) + " failed: " + what), call_index_(call_index) {}
  int call_index() const noexcept { return call_index_; }

 private:
  int call_index_;
};

enum class VerdictKind { target_greater, target_lesser, tie };
std::string to_string(VerdictKind v);

struct Verdict {
  VerdictKind kind = VerdictKind::tie;
  /// o1 = target wins (target, refA); o2 = refA wins (refA, target);
  /// o3 = target wins (target, refB); o4 = refB wins (refB, target).
  std::array<int, 4> outcomes{};
  int target_wins = 0;     // o1 + o3
  int reference_wins = 0;  // o2 + o4
  int unparsed = 0;
};

/// The decision rule on the four outcomes: unanimous wins either way are
/// decisive, anything else is a tie.
Verdict verdict_from_outcomes(const std::array<int, 4>& outcomes);

/// Four calls in the fixed order (target, refA), (refA, target), (target, refB),
/// (refB, target). An unparsed call counts as a loss for the target.
Verdict multi_validate(Comparator& cmp, std::string_view target, std::string_view ref_a, std::string_view ref_b);

// --- reference ladder ---------------------------------------------------------

struct LadderNode {
  int score = 0;
  std::array<std::string, 2> essay_ids;
  std::array<std::string, 2> texts;
  int left = -1;   // node index, or -(gap + 1)
  int right = -1;
  std::size_t rank = 0;  // position among the sorted reference scores
};

/// Scores strictly between two consecutive references (or beyond the ends).
struct Gap {
  std::vector<int> scores;  // empty when the neighbors are adjacent on the lattice
};

/// Balanced search tree over the reference scores. Gap g lies between
/// references g-1 and g in sorted order; gap 0 and gap m are the open ends.
class ReferenceLadder {
 public:
  ReferenceLadder() = default;

  const PromptSpec& prompt() const noexcept { return prompt_; }
  const std::vector<LadderNode>& nodes() const noexcept { return nodes_; }
  const std::vector<Gap>& gaps() const noexcept { return gaps_; }
  int root() const noexcept { return root_; }
  std::size_t depth() const noexcept { return depth_; }
  /// Reference scores ascending.
  std::vector<int> reference_scores() const;
  /// Node index of the k-th smallest reference.
  int node_of_rank(std::size_t rank) const { return rank_to_node_.at(rank); }

  /// {r - step, r, r + step} intersected with the lattice.
  std::vector<int> tie_set(int reference_score) const;

  static bool is_gap(int child) noexcept { return child < 0; }
  static std::size_t gap_index(int child) noexcept { return static_cast<std::size_t>(-child - 1); }

 private:
  friend ReferenceLadder build_ladder(const ReferenceSet&, const PromptSpec&,
                                      const std::map<std::string, std::string>&);
  PromptSpec prompt_;
  std::vector<LadderNode> nodes_;
  std::vector<Gap> gaps_;
  std::vector<int> rank_to_node_;
  int root_ = -1;
  std::size_t depth_ = 0;
};

/// `texts` maps essay id -> feature-augmented text for every reference essay.
/// The top-level root is the lower-middle reference; inside a subtree the
/// middle element nearer the parent is chosen.
ReferenceLadder build_ladder(const ReferenceSet& references, const PromptSpec& prompt,
                             const std::map<std::string, std::string>& texts);

enum class LeafKind { gap, tie, collapsed_gap };
std::string to_string(LeafKind k);

struct PathStep {
  int reference_score = 0;
  Verdict verdict;
};

struct CandidateScoreSet {
  std::vector<int> scores;
  std::vector<PathStep> path;
  std::size_t calls = 0;
  LeafKind leaf = LeafKind::gap;

  bool contains(int score) const;
};

/// Raised when a comparator call fails mid-descent; keeps the steps taken so far.
class InferenceError : public Error {
 public:
  InferenceError(const std::string& what, CandidateScoreSet partial)
      : Error(what), partial_(std::move(partial)) {}
  const CandidateScoreSet& partial() const noexcept { return partial_; }

 private:
  CandidateScoreSet partial_;
};

/// Descends from the root: greater -> right, lesser -> left, tie -> stop with
/// the tie set. Reaching a gap returns its scores; an empty gap collapses to
/// the tie set of the last node visited.
CandidateScoreSet infer_candidate_set(Comparator& cmp, std::string_view target, const ReferenceLadder& ladder);

/// How a single reference comparison resolves for a perfect judge.
CandidateScoreSet true_candidate_set(int gold, const ReferenceLadder& ladder);

/// Every set inference can return, in lattice order:
/// gap 0, tie(r1), gap 1, ..., tie(rm), gap m. Empty gaps are skipped.
std::vector<std::vector<int>> ordered_outcomes(const ReferenceLadder& ladder);

double candidate_accuracy(const std::vector<CandidateScoreSet>& sets, const std::vector<int>& golds);

nlohmann::ordered_json to_json(const CandidateScoreSet& c);
CandidateScoreSet candidate_set_from_json(const nlohmann::json& j);

// --- simulated judges -----------------------------------------------------------

enum class TieBehavior { coin, first_wins, second_wins };
TieBehavior parse_tie_behavior(const std::string& s);
std::string to_string(TieBehavior t);

struct NoisyOracleConfig {
  double flip_probability = 0.0;
  std::uint64_t seed = 0;
  TieBehavior tie_behavior = TieBehavior::coin;
};

/// Text -> gold score registry shared by the simulated judges.
class GoldLookup {
 public:
  void add(std::string text, int gold);
  std::optional<int> find(std::string_view text) const;
  int at(std::string_view text) const;
  std::size_t size() const noexcept { return gold_.size(); }

 private:
  std::unordered_map<std::string, int> gold_;
};

/// Answers from gold scores, flipping each answer with the configured
/// probability. Equal golds follow the tie behavior.
class OracleComparator final : public Comparator {
 public:
  OracleComparator(std::shared_ptr<const GoldLookup> gold, NoisyOracleConfig cfg, std::uint64_t stream = 0);

  std::optional<bool> compare(std::string_view first, std::string_view second) override;
  std::unique_ptr<Comparator> fork(std::uint64_t stream) const override;
  std::string name() const override;

 private:
  std::shared_ptr<const GoldLookup> gold_;
  NoisyOracleConfig cfg_;
  Rng rng_;
};

std::unique_ptr<Comparator> oracle_comparator(std::shared_ptr<const GoldLookup> gold, NoisyOracleConfig cfg);

/// Counts calls; used to check call budgets.
class CountingComparator final : public Comparator {
 public:
  explicit CountingComparator(std::unique_ptr<Comparator> inner) : inner_(std::move(inner)) {}
  std::optional<bool> compare(std::string_view first, std::string_view second) override {
    ++calls_;
    return inner_->compare(first, second);
  }
  std::unique_ptr<Comparator> fork(std::uint64_t stream) const override {
    return std::make_unique<CountingComparator>(inner_->fork(stream));
  }
  std::string name() const override { return inner_->name(); }
  std::size_t calls() const noexcept { return calls_; }

 private:
  std::unique_ptr<Comparator> inner_;
  std::size_t calls_ = 0;
};

}  // namespace rts
