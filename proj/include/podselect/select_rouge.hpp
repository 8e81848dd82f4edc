#pragma once

// ROUGE-based sentence selection: the best contiguous window of sentences
// scored against the whole document, and the novelty variant that adds the
// individually best-scoring sentences the window missed.

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "podselect/corpus.hpp"
#include "podselect/rouge.hpp"
#include "podselect/selection.hpp"

namespace podselect {

inline constexpr std::size_t kDefaultWindowSize = 40;
inline constexpr std::size_t kDefaultNoveltyWindowSize = 25;
inline constexpr std::size_t kDefaultNoveltyTopK = 5;
inline constexpr std::size_t kDefaultTokenBudget = 1024;

struct SelectorConfig {
  std::size_t window_size = kDefaultWindowSize;
  std::size_t novelty_top_k = kDefaultNoveltyTopK;
  std::size_t token_budget = kDefaultTokenBudget;
  // Dropping ROUGE-L averages only ROUGE-1/2 F1; much cheaper on long
  // transcripts since LCS has no incremental form.
  bool include_rouge_l = true;

  static SelectorConfig window_defaults() { return {}; }
  static SelectorConfig novelty_defaults() {
    SelectorConfig c;
    c.window_size = kDefaultNoveltyWindowSize;
    return c;
  }

  // Throws ConfigError on window_size == 0 or token_budget == 0.
  void validate() const;
};

// Document tokens interned to dense ids, with unigram and bigram ids and the
// reference multiset each window is compared against. Bigrams that straddle
// a sentence boundary are kept as "boundary" grams so a window's bigrams are
// exactly those of its concatenated token stream.
class WindowNgramIndex {
 public:
  static constexpr std::uint32_t kAbsent = UINT32_MAX;

  // Reference = the document's own token stream.
  explicit WindowNgramIndex(const Document& doc);
  WindowNgramIndex(const Document& doc, TokenSeq reference);

  std::size_t sentence_count() const { return unigrams_.size(); }
  std::size_t gram_count(int n) const;

  const std::vector<std::uint32_t>& sentence_unigrams(std::size_t s) const {
    return unigrams_[s];
  }
  const std::vector<std::uint32_t>& sentence_bigrams(std::size_t s) const {
    return bigrams_[s];
  }
  // Bigram joining the last token of sentence s and the first of s + 1.
  std::uint32_t boundary_bigram(std::size_t s) const { return boundary_[s]; }

  // Reference counts indexed by gram id; reference grams that never occur in
  // the document are only reflected in reference_total().
  const std::vector<std::uint32_t>& reference_counts(int n) const;
  std::size_t reference_total(int n) const;
  // Reference unigram ids; kAbsent for tokens outside the document vocabulary.
  const std::vector<std::uint32_t>& reference_sequence() const {
    return reference_seq_;
  }

 private:
  void build(const Document& doc, TokenSeq reference);

  std::vector<std::vector<std::uint32_t>> unigrams_;
  std::vector<std::vector<std::uint32_t>> bigrams_;
  std::vector<std::uint32_t> boundary_;
  std::size_t unigram_ids_ = 0;
  std::size_t bigram_ids_ = 0;
  std::vector<std::uint32_t> ref_unigram_counts_;
  std::vector<std::uint32_t> ref_bigram_counts_;
  std::size_t ref_unigram_total_ = 0;
  std::size_t ref_bigram_total_ = 0;
  std::vector<std::uint32_t> reference_seq_;
};

// N-gram counts of one window together with the clipped overlap
// Σ min(window(g), reference(g)) for n = 1, 2.
struct WindowCounts {
  std::vector<std::uint32_t> unigram;
  std::vector<std::uint32_t> bigram;
  std::size_t unigram_total = 0;
  std::size_t bigram_total = 0;
  std::size_t unigram_overlap = 0;
  std::size_t bigram_overlap = 0;

  friend bool operator==(const WindowCounts&, const WindowCounts&) = default;
};

// Counts of sentences [start, end) computed from scratch.
WindowCounts count_window(const WindowNgramIndex& index, std::size_t start,
                          std::size_t end);

// Window of `width` sentences whose counts are updated in O(|leaving| +
// |entering|) per slide instead of being rebuilt.
class IncrementalWindow {
 public:
  // Covers [start, min(start + width, N)). Throws ArgumentError when width
  // is 0 or start is out of range.
  IncrementalWindow(const WindowNgramIndex& index, std::size_t start,
                    std::size_t width);

  std::size_t start() const { return start_; }
  std::size_t end() const { return end_; }
  // True while a full-width window can move one sentence right.
  bool can_slide() const;
  void slide();

  const WindowCounts& counts() const { return counts_; }
  RougeScore rouge_n(int n) const;

 private:
  void add_gram(std::vector<std::uint32_t>& counts,
                const std::vector<std::uint32_t>& ref, std::size_t& overlap,
                std::uint32_t id);
  void remove_gram(std::vector<std::uint32_t>& counts,
                   const std::vector<std::uint32_t>& ref, std::size_t& overlap,
                   std::uint32_t id);
  void add_sentence(std::size_t s);
  void remove_sentence(std::size_t s);

  const WindowNgramIndex* index_;
  std::size_t start_;
  std::size_t end_;
  WindowCounts counts_;
};

// One score per start index i in [0, max(1, N - w + 1)); windows are clamped
// at the document end. Throws ArgumentError if w == 0 and EmptyDocumentError
// for an empty document.
std::vector<WindowScore> score_windows(const Document& doc, std::size_t w,
                                       bool include_rouge_l = true);

// Argmax window; ties go to the lowest start index.
SelectionResult select_window(const Document& doc, const SelectorConfig& config);

// Each sentence scored alone against the full document.
std::vector<SentenceScore> score_single_sentences(const Document& doc,
                                                  bool include_rouge_l = true);

// Best window (config.window_size) plus any of the top novelty_top_k single
// sentences (ties to the lower index) not already inside it, merged in
// document order.
SelectionResult select_novelty(const Document& doc, const SelectorConfig& config);

}  // namespace podselect
