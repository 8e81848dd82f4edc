#include "podselect/text.hpp"

#include <fstream>
#include <sstream>

#include "podselect/errors.hpp"

namespace podselect {

namespace lexicon_data {
extern const std::string_view abbreviations;
extern const std::string_view english_stopwords;
extern const std::string_view sponsorship_phrases;
extern const std::string_view profanity_placeholder;
}  // namespace lexicon_data

namespace {

bool is_ascii_punct(unsigned char c) {
  return (c >= 0x21 && c <= 0x2f) || (c >= 0x3a && c <= 0x40) ||
         (c >= 0x5b && c <= 0x60) || (c >= 0x7b && c <= 0x7e);
}

// Length in bytes of a punctuation code point starting at s[pos], or 0.
// Covers ASCII punctuation, U+2010..U+2027 (dashes, curly quotes, ellipsis),
// and the Latin-1 marks ¡ « » ¿.
std::size_t punct_len_at(std::string_view s, std::size_t pos) {
  const auto c = static_cast<unsigned char>(s[pos]);
  if (c < 0x80) return is_ascii_punct(c) ? 1 : 0;
  if (c == 0xC2 && pos + 1 < s.size()) {
    const auto c1 = static_cast<unsigned char>(s[pos + 1]);
    if (c1 == 0xA1 || c1 == 0xAB || c1 == 0xBB || c1 == 0xBF) return 2;
    return 0;
  }
  if (c == 0xE2 && pos + 2 < s.size()) {
    const auto c1 = static_cast<unsigned char>(s[pos + 1]);
    const auto c2 = static_cast<unsigned char>(s[pos + 2]);
    if (c1 == 0x80 && c2 >= 0x90 && c2 <= 0xA7) return 3;
  }
  return 0;
}

// Length of a punctuation code point ending right before s[end], or 0.
std::size_t punct_len_before(std::string_view s, std::size_t end) {
  if (end == 0) return 0;
  const auto last = static_cast<unsigned char>(s[end - 1]);
  if (last < 0x80) return is_ascii_punct(last) ? 1 : 0;
  // Walk back to the lead byte of the final code point.
  std::size_t lead = end - 1;
  while (lead > 0 && (static_cast<unsigned char>(s[lead]) & 0xC0) == 0x80 &&
         end - lead < 4) {
    --lead;
  }
  const std::size_t len = punct_len_at(s, lead);
  return lead + len == end ? len : 0;
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

// Closing quote or bracket that may trail a terminator: ' " ) ] and the
// curly closing quotes U+2019 / U+201D.
std::size_t closer_len_at(std::string_view s, std::size_t pos) {
  const char c = s[pos];
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  if (static_cast<unsigned char>(c) == 0xE2 && pos + 2 < s.size() &&
      static_cast<unsigned char>(s[pos + 1]) == 0x80) {
    const auto c2 = static_cast<unsigned char>(s[pos + 2]);
    if (c2 == 0x99 || c2 == 0x9D) return 3;
  }
  return 0;
}

std::string strip_line(std::string_view line) {
  std::size_t b = 0;
  std::size_t e = line.size();
  while (b < e && is_ascii_space(line[b])) ++b;
  while (e > b && is_ascii_space(line[e - 1])) --e;
  return std::string(line.substr(b, e - b));
}

}  // namespace

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

WordSet WordSet::parse(std::string_view list_text) {
  WordSet set;
  std::size_t pos = 0;
  while (pos <= list_text.size()) {
    std::size_t nl = list_text.find('\n', pos);
    if (nl == std::string_view::npos) nl = list_text.size();
    std::string entry = strip_line(list_text.substr(pos, nl - pos));
    if (!entry.empty() && entry.front() != '#') {
      set.words_.insert(ascii_lower(entry));
    }
    pos = nl + 1;
  }
  return set;
}

WordSet WordSet::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read word list: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

bool WordSet::contains(std::string_view word) const {
  return words_.find(std::string(word)) != words_.end();
}

const WordSet& builtin_abbreviations() {
  static const WordSet set = WordSet::parse(lexicon_data::abbreviations);
  return set;
}

const WordSet& builtin_english_stopwords() {
  static const WordSet set = WordSet::parse(lexicon_data::english_stopwords);
  return set;
}

const WordSet& builtin_sponsorship_phrases() {
  static const WordSet set = WordSet::parse(lexicon_data::sponsorship_phrases);
  return set;
}

const WordSet& builtin_profanity_placeholder() {
  static const WordSet set =
      WordSet::parse(lexicon_data::profanity_placeholder);
  return set;
}

SentenceSegmenter::SentenceSegmenter()
    : abbreviations_(builtin_abbreviations()) {}

SentenceSegmenter::SentenceSegmenter(WordSet abbreviations)
    : abbreviations_(std::move(abbreviations)) {}

bool SentenceSegmenter::is_abbreviation(std::string_view text,
                                        std::size_t period_pos) const {
  std::size_t begin = period_pos;
  while (begin > 0 && !is_ascii_space(text[begin - 1])) --begin;
  std::string_view word = text.substr(begin, period_pos - begin);
  // Drop opening quotes/brackets: "(Dr." -> "Dr".
  while (!word.empty()) {
    const std::size_t len = punct_len_at(word, 0);
    if (len == 0 || word.substr(0, len) == ".") break;
    word.remove_prefix(len);
  }
  if (word.empty()) return false;
  return abbreviations_.contains(ascii_lower(word));
}

std::vector<ByteSpan> SentenceSegmenter::segment_spans(
    std::string_view text) const {
  std::vector<ByteSpan> spans;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    while (start < end && is_ascii_space(text[start])) ++start;
    std::size_t e = end;
    while (e > start && is_ascii_space(text[e - 1])) --e;
    if (e > start) spans.push_back({start, e});
    start = end;
  };

  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    const std::size_t run_begin = i;
    while (i < text.size() && is_terminator(text[i])) ++i;
    const std::size_t run_end = i;
    while (i < text.size()) {
      const std::size_t len = closer_len_at(text, i);
      if (len == 0) break;
      i += len;
    }
    const bool at_boundary = i == text.size() || is_ascii_space(text[i]);
    if (!at_boundary) continue;
    const bool single_period =
        run_end - run_begin == 1 && text[run_begin] == '.';
    if (single_period && is_abbreviation(text, run_begin)) continue;
    emit(i);
  }
  emit(text.size());
  return spans;
}

std::vector<std::string> SentenceSegmenter::segment(
    std::string_view text) const {
  std::vector<std::string> out;
  for (const ByteSpan& s : segment_spans(text)) {
    out.emplace_back(text.substr(s.begin, s.size()));
  }
  return out;
}

std::vector<std::string> segment_sentences(std::string_view text) {
  static const SentenceSegmenter segmenter;
  return segmenter.segment(text);
}

std::string stem_plural(std::string_view word) {
  auto ends_with = [&](std::string_view suffix) {
    return word.size() > suffix.size() &&
           word.substr(word.size() - suffix.size()) == suffix;
  };
  std::string w(word);
  if (ends_with("ies") && !ends_with("eies") && !ends_with("aies")) {
    return w.substr(0, w.size() - 3) + "y";
  }
  if (ends_with("es") && !ends_with("aes") && !ends_with("ees") &&
      !ends_with("oes")) {
    return w.substr(0, w.size() - 1);
  }
  if (ends_with("s") && !ends_with("us") && !ends_with("ss")) {
    return w.substr(0, w.size() - 1);
  }
  return w;
}

std::vector<Token> tokenize(std::string_view text,
                            const TokenizerConfig& config) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    std::size_t begin = i;
    while (i < text.size() && !is_ascii_space(text[i])) ++i;
    std::size_t end = i;
    if (config.strip_punctuation) {
      while (begin < end) {
        const std::size_t len = punct_len_at(text.substr(0, end), begin);
        if (len == 0) break;
        begin += len;
      }
      while (end > begin) {
        const std::size_t len = punct_len_before(text, end);
        if (len == 0 || end - len < begin) break;
        end -= len;
      }
    }
    if (begin >= end) continue;
    std::string word(text.substr(begin, end - begin));
    if (config.lowercase) word = ascii_lower(word);
    if (config.drop_stopwords && builtin_english_stopwords().contains(word)) {
      continue;
    }
    if (config.stem) word = stem_plural(word);
    tokens.push_back({std::move(word), {begin, end}});
  }
  return tokens;
}

std::vector<std::string> token_texts(std::span<const Token> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.text);
  return out;
}

}  // namespace podselect
