#include "podselect/select_rouge.hpp"

#include <algorithm>
#include <numeric>

#include "podselect/errors.hpp"

namespace podselect {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kWindow: return "window";
    case Strategy::kNovelty: return "novelty";
    case Strategy::kTopic: return "topic";
    case Strategy::kNone: return "none";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "window") return Strategy::kWindow;
  if (name == "novelty") return Strategy::kNovelty;
  if (name == "topic") return Strategy::kTopic;
  if (name == "none") return Strategy::kNone;
  throw ConfigError("unknown strategy '" + name +
                    "' (expected window|novelty|topic|none)");
}

std::size_t count_tokens(const Document& doc,
                         const std::vector<std::size_t>& indices) {
  std::size_t total = 0;
  for (std::size_t i : indices) {
    if (i >= doc.size()) {
      throw ArgumentError("sentence index " + std::to_string(i) + " out of range");
    }
    total += doc.sentences[i].tokens.size();
  }
  return total;
}

SelectionResult select_head(const Document& doc) {
  SelectionResult r;
  r.episode_id = doc.episode_id;
  r.strategy = Strategy::kNone;
  r.sentence_indices.resize(doc.size());
  std::iota(r.sentence_indices.begin(), r.sentence_indices.end(), 0);
  r.selected_token_count = doc.total_tokens;
  return r;
}

void SelectorConfig::validate() const {
  if (window_size == 0) throw ConfigError("window size must be >= 1");
  if (token_budget == 0) throw ConfigError("token budget must be >= 1");
}

// ---------------------------------------------------------------------------
// WindowNgramIndex

WindowNgramIndex::WindowNgramIndex(const Document& doc) {
  const std::vector<std::string> tokens = document_token_texts(doc);
  build(doc, tokens);
}

WindowNgramIndex::WindowNgramIndex(const Document& doc, TokenSeq reference) {
  build(doc, reference);
}

void WindowNgramIndex::build(const Document& doc, TokenSeq reference) {
  std::unordered_map<std::string, std::uint32_t> vocab;
  std::unordered_map<std::uint64_t, std::uint32_t> bigram_ids;
  auto unigram_id = [&](const std::string& text) {
    auto [it, inserted] =
        vocab.try_emplace(text, static_cast<std::uint32_t>(vocab.size()));
    return it->second;
  };
  auto bigram_id = [&](std::uint32_t a, std::uint32_t b) {
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    auto [it, inserted] =
        bigram_ids.try_emplace(key, static_cast<std::uint32_t>(bigram_ids.size()));
    return it->second;
  };

  const std::size_t n = doc.size();
  unigrams_.assign(n, {});
  bigrams_.assign(n, {});
  boundary_.assign(n, kAbsent);
  for (std::size_t s = 0; s < n; ++s) {
    auto& ids = unigrams_[s];
    if (doc.sentences[s].tokens.empty()) {
      throw ArgumentError("sentence " + std::to_string(s) + " has no tokens");
    }
    for (const Token& t : doc.sentences[s].tokens) ids.push_back(unigram_id(t.text));
    for (std::size_t k = 1; k < ids.size(); ++k) {
      bigrams_[s].push_back(bigram_id(ids[k - 1], ids[k]));
    }
    if (s > 0 && !unigrams_[s - 1].empty() && !ids.empty()) {
      boundary_[s - 1] = bigram_id(unigrams_[s - 1].back(), ids.front());
    }
  }
  unigram_ids_ = vocab.size();
  bigram_ids_ = bigram_ids.size();

  ref_unigram_counts_.assign(unigram_ids_, 0);
  ref_bigram_counts_.assign(bigram_ids_, 0);
  reference_seq_.clear();
  reference_seq_.reserve(reference.size());
  for (const std::string& text : reference) {
    auto it = vocab.find(text);
    reference_seq_.push_back(it == vocab.end() ? kAbsent : it->second);
  }
  for (std::size_t k = 0; k < reference_seq_.size(); ++k) {
    const std::uint32_t u = reference_seq_[k];
    if (u != kAbsent) ++ref_unigram_counts_[u];
    if (k == 0) continue;
    const std::uint32_t prev = reference_seq_[k - 1];
    if (prev == kAbsent || u == kAbsent) continue;
    const std::uint64_t key = (static_cast<std::uint64_t>(prev) << 32) | u;
    auto it = bigram_ids.find(key);
    if (it != bigram_ids.end()) ++ref_bigram_counts_[it->second];
  }
  ref_unigram_total_ = reference.size();
  ref_bigram_total_ = reference.size() >= 2 ? reference.size() - 1 : 0;
}

std::size_t WindowNgramIndex::gram_count(int n) const {
  return n == 1 ? unigram_ids_ : bigram_ids_;
}

const std::vector<std::uint32_t>& WindowNgramIndex::reference_counts(int n) const {
  return n == 1 ? ref_unigram_counts_ : ref_bigram_counts_;
}

std::size_t WindowNgramIndex::reference_total(int n) const {
  return n == 1 ? ref_unigram_total_ : ref_bigram_total_;
}

// ---------------------------------------------------------------------------
// Window counting

WindowCounts count_window(const WindowNgramIndex& index, std::size_t start,
                          std::size_t end) {
  WindowCounts c;
  c.unigram.assign(index.gram_count(1), 0);
  c.bigram.assign(index.gram_count(2), 0);
  for (std::size_t s = start; s < end; ++s) {
    for (std::uint32_t id : index.sentence_unigrams(s)) ++c.unigram[id];
    for (std::uint32_t id : index.sentence_bigrams(s)) ++c.bigram[id];
    if (s + 1 < end) ++c.bigram[index.boundary_bigram(s)];
  }
  const auto& ref1 = index.reference_counts(1);
  const auto& ref2 = index.reference_counts(2);
  for (std::size_t g = 0; g < c.unigram.size(); ++g) {
    c.unigram_total += c.unigram[g];
    c.unigram_overlap += std::min(c.unigram[g], ref1[g]);
  }
  for (std::size_t g = 0; g < c.bigram.size(); ++g) {
    c.bigram_total += c.bigram[g];
    c.bigram_overlap += std::min(c.bigram[g], ref2[g]);
  }
  return c;
}

IncrementalWindow::IncrementalWindow(const WindowNgramIndex& index,
                                     std::size_t start, std::size_t width)
    : index_(&index), start_(start), end_(start) {
  if (width == 0) throw ArgumentError("window width must be >= 1");
  if (start >= index.sentence_count()) {
    throw ArgumentError("window start " + std::to_string(start) +
                        " out of range");
  }
  counts_.unigram.assign(index.gram_count(1), 0);
  counts_.bigram.assign(index.gram_count(2), 0);
  const std::size_t end = std::min(start + width, index.sentence_count());
  for (std::size_t s = start; s < end; ++s) add_sentence(s);
}

bool IncrementalWindow::can_slide() const {
  return end_ < index_->sentence_count();
}

void IncrementalWindow::add_gram(std::vector<std::uint32_t>& counts,
                                 const std::vector<std::uint32_t>& ref,
                                 std::size_t& overlap, std::uint32_t id) {
  // The clipped overlap grows only while the window count is below the
  // reference count.
  if (counts[id] < ref[id]) ++overlap;
  ++counts[id];
}

void IncrementalWindow::remove_gram(std::vector<std::uint32_t>& counts,
                                    const std::vector<std::uint32_t>& ref,
                                    std::size_t& overlap, std::uint32_t id) {
  if (counts[id] <= ref[id]) --overlap;
  --counts[id];
}

// Appends sentence s == end_ to the right edge.
void IncrementalWindow::add_sentence(std::size_t s) {
  const auto& ref1 = index_->reference_counts(1);
  const auto& ref2 = index_->reference_counts(2);
  if (end_ > start_) {
    add_gram(counts_.bigram, ref2, counts_.bigram_overlap,
             index_->boundary_bigram(s - 1));
    ++counts_.bigram_total;
  }
  for (std::uint32_t id : index_->sentence_unigrams(s)) {
    add_gram(counts_.unigram, ref1, counts_.unigram_overlap, id);
  }
  for (std::uint32_t id : index_->sentence_bigrams(s)) {
    add_gram(counts_.bigram, ref2, counts_.bigram_overlap, id);
  }
  counts_.unigram_total += index_->sentence_unigrams(s).size();
  counts_.bigram_total += index_->sentence_bigrams(s).size();
  end_ = s + 1;
}

// Drops sentence s == start_ from the left edge.
void IncrementalWindow::remove_sentence(std::size_t s) {
  const auto& ref1 = index_->reference_counts(1);
  const auto& ref2 = index_->reference_counts(2);
  for (std::uint32_t id : index_->sentence_unigrams(s)) {
    remove_gram(counts_.unigram, ref1, counts_.unigram_overlap, id);
  }
  for (std::uint32_t id : index_->sentence_bigrams(s)) {
    remove_gram(counts_.bigram, ref2, counts_.bigram_overlap, id);
  }
  counts_.unigram_total -= index_->sentence_unigrams(s).size();
  counts_.bigram_total -= index_->sentence_bigrams(s).size();
  if (s + 1 < end_) {
    remove_gram(counts_.bigram, ref2, counts_.bigram_overlap,
                index_->boundary_bigram(s));
    --counts_.bigram_total;
  }
  start_ = s + 1;
}

void IncrementalWindow::slide() {
  if (!can_slide()) throw ArgumentError("window is already at the document end");
  add_sentence(end_);
  remove_sentence(start_);
}

RougeScore IncrementalWindow::rouge_n(int n) const {
  if (n == 1) {
    return make_rouge_score(counts_.unigram_overlap, counts_.unigram_total,
                            index_->reference_total(1));
  }
  return make_rouge_score(counts_.bigram_overlap, counts_.bigram_total,
                          index_->reference_total(2));
}

// ---------------------------------------------------------------------------
// Selection

namespace {

std::vector<std::uint32_t> concat_unigrams(const WindowNgramIndex& index,
                                           std::size_t start, std::size_t end) {
  std::vector<std::uint32_t> out;
  for (std::size_t s = start; s < end; ++s) {
    const auto& ids = index.sentence_unigrams(s);
    out.insert(out.end(), ids.begin(), ids.end());
  }
  return out;
}

double rouge_l_f1(const WindowNgramIndex& index, std::size_t start,
                  std::size_t end) {
  const std::vector<std::uint32_t> cand = concat_unigrams(index, start, end);
  const auto& ref = index.reference_sequence();
  const std::size_t lcs = lcs_length<std::uint32_t>(cand, ref);
  return make_rouge_score(lcs, cand.size(), ref.size()).f1;
}

double average_score(const IncrementalWindow& window,
                     const WindowNgramIndex& index, bool include_rouge_l) {
  const double f1 = window.rouge_n(1).f1;
  const double f2 = window.rouge_n(2).f1;
  if (!include_rouge_l) return (f1 + f2) / 2.0;
  return (f1 + f2 + rouge_l_f1(index, window.start(), window.end())) / 3.0;
}

void require_nonempty(const Document& doc) {
  if (doc.empty()) {
    throw EmptyDocumentError("document " + doc.episode_id + " has no sentences");
  }
}

std::size_t argmax_window(const std::vector<WindowScore>& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i].score > scores[best].score) best = i;
  }
  return best;
}

}  // namespace

std::vector<WindowScore> score_windows(const Document& doc, std::size_t w,
                                       bool include_rouge_l) {
  if (w == 0) throw ArgumentError("window size must be >= 1");
  require_nonempty(doc);
  const WindowNgramIndex index(doc);
  const std::size_t n = doc.size();
  const std::size_t windows = n > w ? n - w + 1 : 1;

  std::vector<WindowScore> scores;
  scores.reserve(windows);
  IncrementalWindow window(index, 0, w);
  for (std::size_t i = 0; i < windows; ++i) {
    if (i > 0) window.slide();
    scores.push_back({window.start(), window.end(),
                      average_score(window, index, include_rouge_l)});
  }
  return scores;
}

SelectionResult select_window(const Document& doc, const SelectorConfig& config) {
  config.validate();
  SelectionResult r;
  r.episode_id = doc.episode_id;
  r.strategy = Strategy::kWindow;
  r.window_scores = score_windows(doc, config.window_size, config.include_rouge_l);
  const WindowScore& best = r.window_scores[argmax_window(r.window_scores)];
  for (std::size_t s = best.start; s < best.end; ++s) r.sentence_indices.push_back(s);
  r.selected_token_count = count_tokens(doc, r.sentence_indices);
  return r;
}

std::vector<SentenceScore> score_single_sentences(const Document& doc,
                                                  bool include_rouge_l) {
  require_nonempty(doc);
  const WindowNgramIndex index(doc);
  std::vector<SentenceScore> out;
  out.reserve(doc.size());
  for (std::size_t s = 0; s < doc.size(); ++s) {
    const IncrementalWindow single(index, s, 1);
    out.push_back({s, average_score(single, index, include_rouge_l)});
  }
  return out;
}

SelectionResult select_novelty(const Document& doc, const SelectorConfig& config) {
  SelectionResult r = select_window(doc, config);
  r.strategy = Strategy::kNovelty;
  r.sentence_scores = score_single_sentences(doc, config.include_rouge_l);

  std::vector<SentenceScore> ranked = r.sentence_scores;
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const SentenceScore& a, const SentenceScore& b) {
                     return a.score > b.score;
                   });
  const std::size_t k = std::min(config.novelty_top_k, ranked.size());
  std::vector<std::size_t> merged = r.sentence_indices;
  const std::size_t window_begin = merged.front();
  const std::size_t window_end = merged.back() + 1;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t s = ranked[i].index;
    if (s < window_begin || s >= window_end) merged.push_back(s);
  }
  std::sort(merged.begin(), merged.end());
  r.sentence_indices = std::move(merged);
  r.selected_token_count = count_tokens(doc, r.sentence_indices);
  return r;
}

}  // namespace podselect
