#pragma once

// Corpus cleaning: description cleanup, the episode filter chain and the
// train/validation/test split.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "podselect/corpus.hpp"
#include "podselect/text.hpp"

namespace podselect {

struct FilterConfig {
  std::size_t desc_min_chars = 20;
  std::size_t desc_max_chars = 750;
  double duplicate_sim_threshold = 0.9;
  double show_desc_sim_threshold = 0.9;
  std::size_t desc_min_tokens = 10;
  // Empty: the bundled placeholder list.
  std::filesystem::path profanity_list_path;
  double english_stopword_ratio_min = 0.2;

  // Throws ConfigError on min >= max or a threshold outside [0, 1].
  void validate() const;
};

// Filter rules in the order they are applied. Rejection is first-match.
enum class FilterRule {
  kDescriptionLength,
  kDuplicateDescription,
  kSimilarToShowDescription,
  kProfanity,
  kNonEnglishDescription,
  kTooFewTokens,
};
inline constexpr std::size_t kFilterRuleCount = 6;

const char* filter_rule_name(FilterRule rule);

// The length rule reports which bound was crossed; every other rule has a
// single reason named after it.
enum class RejectReason {
  kDescriptionTooShort,
  kDescriptionTooLong,
  kDuplicateDescription,
  kSimilarToShowDescription,
  kProfanity,
  kNonEnglishDescription,
  kTooFewTokens,
};

const char* reject_reason_name(RejectReason reason);
FilterRule rule_of(RejectReason reason);

struct FilterReport {
  std::size_t input_count = 0;
  std::size_t kept_count = 0;
  // Keyed by filter_rule_name; all six rules are present.
  std::map<std::string, std::size_t> rejected_by_rule;
  // episode id -> first reason that rejected it.
  std::map<std::string, RejectReason> reasons;
};

struct FilterOutcome {
  std::vector<Episode> kept;
  FilterReport report;
};

// Drops sponsorship sentences (any configured phrase, matched on word
// boundaries, case-insensitive), cuts "follow us/me ..." clauses to the end
// of their sentence, removes URLs (scheme:// or www.) and @handles, then
// collapses whitespace.
std::string clean_description(std::string_view raw);
std::string clean_description(std::string_view raw,
                              const WordSet& sponsorship_phrases);

// Whole-token, case-insensitive match against the list.
bool contains_profanity(std::string_view text, const WordSet& wordlist);

struct LanguageVerdict {
  bool is_english = false;
  // Fraction of tokens found in the stopword set.
  double stopword_ratio = 0.0;
};

// Throws UndeterminableError when text has no tokens.
LanguageVerdict detect_language_is_english(std::string_view text,
                                           double ratio_min = 0.2);
LanguageVerdict detect_language_is_english(std::string_view text,
                                           double ratio_min,
                                           const WordSet& stopwords);

// 3-token shingles of the normalized token stream; texts of one or two
// tokens yield the whole stream as their single shingle.
std::unordered_set<std::string> description_shingles(std::string_view text);

// Jaccard similarity of the two shingle sets; 0.0 when either is empty.
double description_similarity(std::string_view a, std::string_view b);

// Rules: (1) raw description length in code points, (2) duplicate of an
// earlier surviving description, (3) too similar to its show description,
// (4) profanity in the raw episode or show description, (5) cleaned
// description not English, (6) cleaned description shorter than
// desc_min_tokens tokens. Throws ConfigError if the profanity list is
// missing.
FilterOutcome filter_corpus(const std::vector<Episode>& episodes,
                            const FilterConfig& config);
FilterOutcome filter_corpus(const std::vector<Episode>& episodes,
                            const FilterConfig& config,
                            const WordSet& profanity,
                            const WordSet& sponsorship_phrases);

enum class Split { kTrain, kValidation, kTest };
const char* split_name(Split s);

struct SplitAssignment {
  // In input order.
  std::vector<std::pair<std::string, Split>> assignments;
  std::uint64_t seed = 0;
  std::array<std::size_t, 3> sizes{};
};

// Fisher-Yates shuffle, then slices of floor(ratio * n) for validation and
// test with the remainder going to train; a bucket with a positive ratio
// that floors to zero takes one episode from train. Throws ArgumentError on
// fewer than 3 ids, duplicate ids or ratios not summing to 1 within 1e-9.
SplitAssignment split_dataset(const std::vector<std::string>& episode_ids,
                              std::array<double, 3> ratios, std::uint64_t seed);

}  // namespace podselect
