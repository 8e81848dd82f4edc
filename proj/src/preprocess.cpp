#include "podselect/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "podselect/errors.hpp"
#include "podselect/rng.hpp"

namespace podselect {

namespace {

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' ||
         (static_cast<unsigned char>(c) >= 0x80);
}

// Position of `phrase` in `lower` on word boundaries, or npos.
std::size_t find_phrase(std::string_view lower, std::string_view phrase,
                        std::size_t from = 0) {
  std::size_t pos = lower.find(phrase, from);
  while (pos != std::string_view::npos) {
    const bool left_ok = pos == 0 || !is_word_char(lower[pos - 1]);
    const std::size_t after = pos + phrase.size();
    const bool right_ok = after >= lower.size() || !is_word_char(lower[after]);
    if (left_ok && right_ok) return pos;
    pos = lower.find(phrase, pos + 1);
  }
  return std::string_view::npos;
}

bool starts_with_icase(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && ascii_lower(s.substr(0, prefix.size())) == prefix;
}

bool is_url(std::string_view unit) {
  // Leading brackets or quotes do not protect a link.
  while (!unit.empty() && (unit.front() == '(' || unit.front() == '<' ||
                           unit.front() == '"' || unit.front() == '[')) {
    unit.remove_prefix(1);
  }
  if (starts_with_icase(unit, "www.")) return true;
  const std::size_t scheme = unit.find("://");
  if (scheme == std::string_view::npos || scheme == 0) return false;
  for (std::size_t i = 0; i < scheme; ++i) {
    const char c = unit[i];
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (i > 0 && ((c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.'));
    if (!ok) return false;
  }
  return true;
}

bool is_handle(std::string_view unit) {
  return unit.size() >= 2 && unit[0] == '@' && is_word_char(unit[1]);
}

// Whitespace-delimited units with URLs and handles dropped, joined by one
// space.
std::string strip_links_and_collapse(std::string_view text) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    const std::size_t begin = i;
    while (i < text.size() && !is_ascii_space(text[i])) ++i;
    if (begin == i) break;
    const std::string_view unit = text.substr(begin, i - begin);
    if (is_url(unit) || is_handle(unit)) continue;
    if (!out.empty()) out.push_back(' ');
    out.append(unit);
  }
  return out;
}

std::size_t code_points(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

constexpr std::string_view kFollowClauses[] = {"follow us", "follow me"};

// Order-preserving phrase list for deterministic scanning.
std::vector<std::string> sorted_entries(const WordSet& set) {
  std::vector<std::string> out(set.entries().begin(), set.entries().end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void FilterConfig::validate() const {
  if (desc_min_chars >= desc_max_chars) {
    throw ConfigError("desc_min_chars must be below desc_max_chars");
  }
  auto check_fraction = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ConfigError(std::string(name) + " must lie in [0, 1]");
    }
  };
  check_fraction(duplicate_sim_threshold, "duplicate_sim_threshold");
  check_fraction(show_desc_sim_threshold, "show_desc_sim_threshold");
  check_fraction(english_stopword_ratio_min, "english_stopword_ratio_min");
}

const char* filter_rule_name(FilterRule rule) {
  switch (rule) {
    case FilterRule::kDescriptionLength: return "desc_length";
    case FilterRule::kDuplicateDescription: return "duplicate_description";
    case FilterRule::kSimilarToShowDescription: return "similar_to_show_description";
    case FilterRule::kProfanity: return "profanity";
    case FilterRule::kNonEnglishDescription: return "non_english_description";
    case FilterRule::kTooFewTokens: return "desc_too_few_tokens";
  }
  return "unknown";
}

const char* reject_reason_name(RejectReason reason) {
  switch (reason) {
    case RejectReason::kDescriptionTooShort: return "desc_too_short";
    case RejectReason::kDescriptionTooLong: return "desc_too_long";
    case RejectReason::kDuplicateDescription: return "duplicate_description";
    case RejectReason::kSimilarToShowDescription: return "similar_to_show_description";
    case RejectReason::kProfanity: return "profanity";
    case RejectReason::kNonEnglishDescription: return "non_english_description";
    case RejectReason::kTooFewTokens: return "desc_too_few_tokens";
  }
  return "unknown";
}

FilterRule rule_of(RejectReason reason) {
  switch (reason) {
    case RejectReason::kDescriptionTooShort:
    case RejectReason::kDescriptionTooLong: return FilterRule::kDescriptionLength;
    case RejectReason::kDuplicateDescription: return FilterRule::kDuplicateDescription;
    case RejectReason::kSimilarToShowDescription:
      return FilterRule::kSimilarToShowDescription;
    case RejectReason::kProfanity: return FilterRule::kProfanity;
    case RejectReason::kNonEnglishDescription: return FilterRule::kNonEnglishDescription;
    case RejectReason::kTooFewTokens: return FilterRule::kTooFewTokens;
  }
  return FilterRule::kDescriptionLength;
}

std::string clean_description(std::string_view raw) {
  return clean_description(raw, builtin_sponsorship_phrases());
}

std::string clean_description(std::string_view raw,
                              const WordSet& sponsorship_phrases) {
  static const SentenceSegmenter segmenter;
  const std::vector<std::string> phrases = sorted_entries(sponsorship_phrases);
  std::string kept;
  std::size_t line_begin = 0;
  while (line_begin <= raw.size()) {
    std::size_t line_end = raw.find('\n', line_begin);
    if (line_end == std::string_view::npos) line_end = raw.size();
    const std::string_view line = raw.substr(line_begin, line_end - line_begin);
    for (const ByteSpan& span : segmenter.segment_spans(line)) {
      std::string_view sentence = line.substr(span.begin, span.size());
      const std::string lower = ascii_lower(sentence);
      const bool sponsored = std::any_of(
          phrases.begin(), phrases.end(), [&](const std::string& p) {
            return find_phrase(lower, p) != std::string_view::npos;
          });
      if (sponsored) continue;
      for (std::string_view clause : kFollowClauses) {
        const std::size_t at = find_phrase(lower, clause);
        if (at != std::string_view::npos) {
          sentence = sentence.substr(0, std::min(at, sentence.size()));
        }
      }
      kept.append(sentence);
      kept.push_back(' ');
    }
    line_begin = line_end + 1;
  }
  return strip_links_and_collapse(kept);
}

bool contains_profanity(std::string_view text, const WordSet& wordlist) {
  for (const Token& t : tokenize(text)) {
    if (wordlist.contains(t.text)) return true;
  }
  return false;
}

LanguageVerdict detect_language_is_english(std::string_view text,
                                           double ratio_min) {
  return detect_language_is_english(text, ratio_min, builtin_english_stopwords());
}

LanguageVerdict detect_language_is_english(std::string_view text,
                                           double ratio_min,
                                           const WordSet& stopwords) {
  const std::vector<Token> tokens = tokenize(text);
  if (tokens.empty()) {
    throw UndeterminableError("cannot determine language of text without tokens");
  }
  std::size_t hits = 0;
  for (const Token& t : tokens) {
    if (stopwords.contains(t.text)) ++hits;
  }
  LanguageVerdict v;
  v.stopword_ratio = static_cast<double>(hits) / static_cast<double>(tokens.size());
  v.is_english = v.stopword_ratio >= ratio_min;
  return v;
}

std::unordered_set<std::string> description_shingles(std::string_view text) {
  const std::vector<Token> tokens = tokenize(text);
  std::unordered_set<std::string> shingles;
  if (tokens.empty()) return shingles;
  const std::size_t width = std::min<std::size_t>(3, tokens.size());
  for (std::size_t i = 0; i + width <= tokens.size(); ++i) {
    std::string key = tokens[i].text;
    for (std::size_t k = 1; k < width; ++k) {
      key.push_back(' ');
      key += tokens[i + k].text;
    }
    shingles.insert(std::move(key));
  }
  return shingles;
}

namespace {

double jaccard(const std::unordered_set<std::string>& a,
               const std::unordered_set<std::string>& b) {
  if (a.empty() || b.empty()) return 0.0;
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = &small == &a ? b : a;
  std::size_t common = 0;
  for (const std::string& s : small) common += large.count(s);
  return static_cast<double>(common) /
         static_cast<double>(a.size() + b.size() - common);
}

// Earlier surviving descriptions, looked up through an inverted shingle
// index. Only entries whose set size lies in [t|A|, |A|/t] can reach
// Jaccard >= t, so candidates outside that length band are skipped.
class DuplicateIndex {
 public:
  explicit DuplicateIndex(double threshold) : threshold_(threshold) {}

  // True if `shingles` is a duplicate of an indexed entry; otherwise adds it.
  bool check_and_insert(std::unordered_set<std::string> shingles) {
    if (is_duplicate(shingles)) return true;
    const std::size_t id = sizes_.size();
    sizes_.push_back(shingles.size());
    for (const std::string& s : shingles) postings_[s].push_back(id);
    return false;
  }

 private:
  bool is_duplicate(const std::unordered_set<std::string>& shingles) const {
    if (threshold_ <= 0.0) return !sizes_.empty();
    if (shingles.empty()) return false;
    const double size = static_cast<double>(shingles.size());
    const double lo = threshold_ * size;
    const double hi = size / threshold_;
    std::unordered_map<std::size_t, std::size_t> common;
    for (const std::string& s : shingles) {
      auto it = postings_.find(s);
      if (it == postings_.end()) continue;
      for (std::size_t id : it->second) {
        const double other = static_cast<double>(sizes_[id]);
        if (other < lo || other > hi) continue;
        ++common[id];
      }
    }
    for (const auto& [id, shared] : common) {
      const double uni = size + static_cast<double>(sizes_[id]) -
                         static_cast<double>(shared);
      if (static_cast<double>(shared) / uni >= threshold_) return true;
    }
    return false;
  }

  double threshold_;
  std::vector<std::size_t> sizes_;
  std::unordered_map<std::string, std::vector<std::size_t>> postings_;
};

}  // namespace

double description_similarity(std::string_view a, std::string_view b) {
  return jaccard(description_shingles(a), description_shingles(b));
}

FilterOutcome filter_corpus(const std::vector<Episode>& episodes,
                            const FilterConfig& config) {
  config.validate();
  const WordSet profanity = config.profanity_list_path.empty()
                                ? builtin_profanity_placeholder()
                                : WordSet::load(config.profanity_list_path);
  return filter_corpus(episodes, config, profanity, builtin_sponsorship_phrases());
}

FilterOutcome filter_corpus(const std::vector<Episode>& episodes,
                            const FilterConfig& config,
                            const WordSet& profanity,
                            const WordSet& sponsorship_phrases) {
  config.validate();
  FilterOutcome out;
  FilterReport& report = out.report;
  report.input_count = episodes.size();
  for (std::size_t r = 0; r < kFilterRuleCount; ++r) {
    report.rejected_by_rule[filter_rule_name(static_cast<FilterRule>(r))] = 0;
  }

  DuplicateIndex duplicates(config.duplicate_sim_threshold);
  for (const Episode& ep : episodes) {
    auto verdict = [&]() -> std::optional<RejectReason> {
      const std::size_t chars = code_points(ep.description);
      if (chars < config.desc_min_chars) return RejectReason::kDescriptionTooShort;
      if (chars > config.desc_max_chars) return RejectReason::kDescriptionTooLong;
      if (duplicates.check_and_insert(description_shingles(ep.description))) {
        return RejectReason::kDuplicateDescription;
      }
      if (description_similarity(ep.description, ep.show_description) >=
          config.show_desc_sim_threshold) {
        return RejectReason::kSimilarToShowDescription;
      }
      if (contains_profanity(ep.description, profanity) ||
          contains_profanity(ep.show_description, profanity)) {
        return RejectReason::kProfanity;
      }
      const std::string cleaned = clean_description(ep.description, sponsorship_phrases);
      const std::size_t tokens = tokenize(cleaned).size();
      // No tokens left means the language cannot be judged; rule (6) then
      // rejects the episode.
      if (tokens > 0 && !detect_language_is_english(cleaned,
                                                    config.english_stopword_ratio_min)
                             .is_english) {
        return RejectReason::kNonEnglishDescription;
      }
      if (tokens < config.desc_min_tokens) return RejectReason::kTooFewTokens;
      return std::nullopt;
    }();
    if (verdict) {
      report.reasons[ep.id] = *verdict;
      ++report.rejected_by_rule[filter_rule_name(rule_of(*verdict))];
    } else {
      out.kept.push_back(ep);
    }
  }
  report.kept_count = out.kept.size();
  return out;
}

const char* split_name(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kValidation: return "validation";
    case Split::kTest: return "test";
  }
  return "unknown";
}

SplitAssignment split_dataset(const std::vector<std::string>& episode_ids,
                              std::array<double, 3> ratios, std::uint64_t seed) {
  const std::size_t n = episode_ids.size();
  if (n < 3) {
    throw ArgumentError("need at least 3 episodes to populate train/validation/test, got " +
                        std::to_string(n));
  }
  for (double r : ratios) {
    if (!(r >= 0.0)) throw ArgumentError("split ratios must be non-negative");
  }
  if (std::abs(ratios[0] + ratios[1] + ratios[2] - 1.0) > 1e-9) {
    throw ArgumentError("split ratios must sum to 1");
  }
  {
    std::unordered_set<std::string> seen;
    for (const auto& id : episode_ids) {
      if (!seen.insert(id).second) throw ArgumentError("duplicate episode id " + id);
    }
  }

  std::array<std::size_t, 3> sizes{};
  for (std::size_t b = 1; b < 3; ++b) {
    sizes[b] = static_cast<std::size_t>(
        std::floor(ratios[b] * static_cast<double>(n) + 1e-9));
  }
  sizes[0] = n - sizes[1] - sizes[2];
  for (std::size_t b = 0; b < 3; ++b) {
    if (ratios[b] <= 0.0 || sizes[b] > 0) continue;
    // Borrow from the largest bucket that can spare one.
    const auto donor = static_cast<std::size_t>(
        std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    if (sizes[donor] > 1) {
      --sizes[donor];
      ++sizes[b];
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng.below(i + 1)]);
  }

  std::vector<Split> bucket(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const Split s = pos < sizes[0]              ? Split::kTrain
                    : pos < sizes[0] + sizes[1] ? Split::kValidation
                                                : Split::kTest;
    bucket[order[pos]] = s;
  }

  SplitAssignment out;
  out.seed = seed;
  out.sizes = sizes;
  out.assignments.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.assignments.emplace_back(episode_ids[i], bucket[i]);
  return out;
}

}  // namespace podselect
