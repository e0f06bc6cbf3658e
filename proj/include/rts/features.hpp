#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rts/corpus.hpp"

namespace rts {

// --- tokenization -------------------------------------------------------------

struct Sentence {
  std::vector<std::string> words;
  std::size_t characters = 0;
  /// Each clause as (characters, words).
  std::vector<std::pair<std::size_t, std::size_t>> clauses;
};

struct Paragraph {
  std::size_t characters = 0;
  std::size_t words = 0;
};

struct Tokens {
  /// Non-space, non-punctuation code points, UTF-8 encoded one per entry.
  std::vector<std::string> characters;
  std::vector<std::string> words;
  std::vector<Sentence> sentences;
  std::vector<Paragraph> paragraphs;
  std::size_t commas = 0;
};

/// Longest-match segmentation dictionary for Chinese text.
class Segmenter {
 public:
  Segmenter() = default;
  void add(const std::string& word);
  bool contains(const std::string& word) const { return words_.count(word) != 0; }
  std::size_t max_length() const noexcept { return max_len_; }
  std::size_t size() const noexcept { return words_.size(); }

  /// Greedy longest match over a run of code points; unmatched characters
  /// become single-character words.
  std::vector<std::string> segment(std::u32string_view run) const;

 private:
  std::unordered_set<std::string> words_;
  std::size_t max_len_ = 1;
};

/// English words are maximal alphanumeric runs (internal apostrophes kept),
/// lowercased. Chinese words come from `segmenter`; without one every
/// character is a word. Sentences end at terminal punctuation; a text
/// without any is one sentence. Paragraphs are non-empty lines.
Tokens tokenize(const std::string& text, Language language, const Segmenter* segmenter = nullptr);

// --- resources ----------------------------------------------------------------

/// Read-only lookup tables. Every lookup is total: unknown tokens fall into
/// the unregistered bucket (frequency 0, level 0).
struct LexiconResources {
  std::unordered_map<std::string, double> word_frequency;
  std::unordered_map<std::string, double> char_frequency;
  std::unordered_map<std::string, int> word_level;  // 1..4
  std::unordered_map<std::string, int> char_level;  // 1..4
  std::unordered_map<std::string, int> char_strokes;
  std::unordered_set<std::string> stopwords;
  std::unordered_set<std::string> dictionary;
  std::unordered_set<std::string> prepositions;
  std::unordered_set<std::string> idioms;
  Segmenter segmenter;

  bool has(const std::string& resource) const;

  /// Keys: word_frequency, char_frequency, word_levels[4], char_levels[4],
  /// char_strokes, stopwords, dictionary, prepositions, idioms. Relative paths
  /// resolve against `base`.
  static LexiconResources load(const nlohmann::json& config, const std::filesystem::path& base);
  /// Adds every known word to the segmenter. Called by load().
  void rebuild_segmenter();
};

std::unordered_map<std::string, double> load_frequency_table(const std::filesystem::path& path);
std::unordered_set<std::string> load_word_list(const std::filesystem::path& path);

// --- features -----------------------------------------------------------------

enum class FeatureFamily { character, word, sentence, paragraph, readability };
std::string to_string(FeatureFamily f);

struct FeatureSpec {
  std::string name;
  std::string label;
  FeatureFamily family = FeatureFamily::word;
  std::optional<std::string> requires_resource;
  /// False for features that only arrive through sidecar files.
  bool implemented = true;
  bool english_only = false;
};

using FeatureRegistry = std::vector<FeatureSpec>;

/// Every feature the extractor knows, native and sidecar-only.
const FeatureRegistry& feature_catalog();
const FeatureSpec* find_feature(const std::string& name);

/// Parser-free features applicable to `language` whose resources are present.
FeatureRegistry default_registry(Language language, const LexiconResources& resources);
/// Catalog entries by name, in the given order. Unknown names throw ConfigError.
FeatureRegistry registry_from_names(const std::vector<std::string>& names);

using FeatureVector = std::vector<std::pair<std::string, double>>;

/// Values in `registry` order. Pure.
FeatureVector extract_features(const Essay& essay, Language language, const LexiconResources& resources,
                               const FeatureRegistry& registry);

FeatureVector project(const FeatureVector& fv, const std::vector<std::string>& names);

/// Attaches sidecar features from a JSONL file of {"id": ..., "features": {name: value}}.
/// Rows for unknown ids are ignored.
void attach_sidecar(std::vector<Essay>& essays, const std::filesystem::path& path);

// --- selection ----------------------------------------------------------------

enum class FScoreStatus {
  finite,
  /// Zero within-class variance but separated means: a perfect separator.
  degenerate_separator,
  /// Zero variance and zero separation. Not usable.
  constant,
};

struct FScoreEntry {
  std::string name;
  double f = 0.0;
  FScoreStatus status = FScoreStatus::finite;
};

struct FScoreTable {
  std::vector<FScoreEntry> entries;  // registry order
  std::size_t n_positive = 0;
  std::size_t n_negative = 0;
};

inline constexpr double kFScoreEpsilon = 1e-12;

/// Between-class-mean over within-class-variance ratio per feature column.
/// `values[i][j]` is feature j of essay i. Both classes need two members.
FScoreTable f_score(const std::vector<std::string>& names, const std::vector<std::vector<double>>& values,
                    const std::vector<bool>& positive);

/// score >= lower median -> positive; if that captures everything, score > median.
std::vector<bool> binarize_scores(const std::vector<int>& gold_scores);

/// Top k by F: degenerate separators first, then descending F, ties by registry order.
std::vector<std::string> select_top_k(const FScoreTable& table, std::size_t k = 10);

/// Fixed lists that ship in the feature config; override F-score selection.
struct FeatureConfig {
  std::vector<std::string> enabled;  // empty -> default_registry
  std::size_t k = 10;
  std::map<std::string, std::vector<std::string>> selected_override;  // by prompt id, family ("hsk") or "*"
  std::string augment_template;

  static FeatureConfig from_json(const nlohmann::json& j);
};

// --- augmentation -------------------------------------------------------------

/// {body} and {features} are substituted; `{features}` expands to one
/// "name: value" line per feature, four decimals.
inline constexpr const char* kDefaultAugmentTemplate = "{body}\n\n[Features]\n{features}[/Features]";

std::string augment(const std::string& essay_text, const FeatureVector& fv,
                    const std::string& templ = kDefaultAugmentTemplate);

std::string render_feature_block(const FeatureVector& fv);
std::string format_fixed4(double v);

}  // namespace rts
