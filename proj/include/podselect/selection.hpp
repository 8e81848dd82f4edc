#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "podselect/corpus.hpp"

namespace podselect {

enum class Strategy {
  kWindow,
  kNovelty,
  kTopic,
  // No selection: the transcript head, cut to the budget downstream.
  kNone,
};

const char* strategy_name(Strategy s);
// Throws ConfigError for unknown names.
Strategy parse_strategy(const std::string& name);

// Window [start, end) of consecutive sentences and its rouge_avg against the
// full document.
struct WindowScore {
  std::size_t start = 0;
  std::size_t end = 0;
  double score = 0.0;

  friend bool operator==(const WindowScore&, const WindowScore&) = default;
};

struct SentenceScore {
  std::size_t index = 0;
  double score = 0.0;

  friend bool operator==(const SentenceScore&, const SentenceScore&) = default;
};

// Mean per-token natural-log probability of a sentence under one topic.
struct TopicRelevance {
  std::size_t sentence_index = 0;
  std::size_t topic_id = 0;
  double score = 0.0;

  friend bool operator==(const TopicRelevance&, const TopicRelevance&) = default;
};

struct SelectionResult {
  std::string episode_id;
  Strategy strategy = Strategy::kWindow;
  // Strictly ascending sentence indices.
  std::vector<std::size_t> sentence_indices;
  std::size_t selected_token_count = 0;

  // Diagnostics; which are filled depends on the strategy.
  std::vector<WindowScore> window_scores;
  std::vector<SentenceScore> sentence_scores;
  std::vector<TopicRelevance> topic_relevances;
  std::vector<std::string> notes;

  friend bool operator==(const SelectionResult&, const SelectionResult&) = default;
};

std::size_t count_tokens(const Document& doc,
                         const std::vector<std::size_t>& indices);

// Every sentence, in order (the "none" strategy).
SelectionResult select_head(const Document& doc);

}  // namespace podselect
