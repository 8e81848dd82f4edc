#pragma once

// Text primitives shared by every stage: word lists, sentence segmentation,
// tokenization.

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace podselect {

// A set of lowercase words loaded from a one-entry-per-line list. Blank
// lines and lines starting with '#' are skipped.
class WordSet {
 public:
  WordSet() = default;

  static WordSet parse(std::string_view list_text);
  // Throws ConfigError when the file cannot be read.
  static WordSet load(const std::filesystem::path& path);

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::unordered_set<std::string>& entries() const { return words_; }

 private:
  std::unordered_set<std::string> words_;
};

// Bundled lists, compiled in from data/*.txt.
const WordSet& builtin_abbreviations();
const WordSet& builtin_english_stopwords();
const WordSet& builtin_sponsorship_phrases();
const WordSet& builtin_profanity_placeholder();

struct ByteSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const ByteSpan&, const ByteSpan&) = default;
};

struct Token {
  std::string text;
  // Offsets into the text handed to tokenize() (or, inside a Document, into
  // the episode transcript). begin < end.
  ByteSpan span;

  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenizerConfig {
  bool lowercase = true;
  bool strip_punctuation = true;
  // Plural-suffix stemming; off to match raw ROUGE conventions.
  bool stem = false;
  bool drop_stopwords = false;

  friend bool operator==(const TokenizerConfig&,
                         const TokenizerConfig&) = default;
};

// Rule-based splitter: a sentence ends at a run of . ! ? (plus closing quotes
// or brackets) followed by whitespace or end of text, unless the run is a
// single period closing a word from the abbreviation list.
class SentenceSegmenter {
 public:
  SentenceSegmenter();
  explicit SentenceSegmenter(WordSet abbreviations);

  // Spans exclude surrounding whitespace; the bytes between consecutive
  // spans (and before the first / after the last) are whitespace only.
  std::vector<ByteSpan> segment_spans(std::string_view text) const;
  std::vector<std::string> segment(std::string_view text) const;

 private:
  bool is_abbreviation(std::string_view text, std::size_t period_pos) const;

  WordSet abbreviations_;
};

// Segments with the bundled abbreviation list.
std::vector<std::string> segment_sentences(std::string_view text);

std::vector<Token> tokenize(std::string_view text,
                            const TokenizerConfig& config = {});

std::vector<std::string> token_texts(std::span<const Token> tokens);

// Harman-style plural stripping ("policies" -> "policy", "cats" -> "cat").
std::string stem_plural(std::string_view word);

bool is_ascii_space(char c);
std::string ascii_lower(std::string_view s);

}  // namespace podselect
