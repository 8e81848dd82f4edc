#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "podselect/preprocess.hpp"
#include "podselect/select_rouge.hpp"
#include "podselect/selection.hpp"
#include "podselect/serialize.hpp"
#include "podselect/text.hpp"
#include "podselect/topics.hpp"

namespace podselect::cli {

// Everything a command needs. Paths are kept as strings so the struct maps
// one-to-one onto flags and config-file keys.
struct PipelineConfig {
  std::string input;
  std::string output;
  std::string input_format = "jsonl";
  std::string config_path;

  // select
  std::string strategy = "window";
  std::size_t window_size = 0;  // 0: 40 for window, 25 for novelty
  std::size_t top_k = kDefaultNoveltyTopK;
  std::size_t budget = kDefaultTokenBudget;
  bool no_rouge_l = false;
  bool stem = false;
  bool diagnostics = false;

  // topics
  std::size_t topics = 5;
  double alpha = 0.0;  // 0: 50 / topics
  double beta = 0.01;
  std::size_t iterations = 500;
  std::size_t burn_in = 300;

  // preprocess
  std::size_t desc_min_chars = 20;
  std::size_t desc_max_chars = 750;
  double duplicate_threshold = 0.9;
  double show_threshold = 0.9;
  std::size_t desc_min_tokens = 10;
  double english_ratio = 0.2;
  std::string profanity_list;
  std::vector<double> split_ratios{0.8, 0.1, 0.1};

  // summarize
  std::string selections;
  std::string backend = "null";
  std::string endpoint;
  int timeout_ms = 30000;
  int attempts = 3;
  int backoff_ms = 500;
  int max_length = 0;  // 0: not sent

  // evaluate
  std::string references;
  std::string format = "text";
  std::string method;
  bool raw_references = false;
  std::string eval_split = "all";

  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  bool resume = false;

  Strategy strategy_enum() const;
  SelectorConfig selector_config() const;
  TopicConfig topic_config() const;
  FilterConfig filter_config() const;
  TokenizerConfig tokenizer_config() const;

  // Range and enum checks shared by all commands. Throws ConfigError.
  void validate() const;
};

// Reads the config file as a single JSON object. Throws ConfigError.
Json load_config_file(const std::string& path);

// Config-file keys use the long flag name, with '_' accepted for '-'.
std::string normalize_config_key(std::string key);

}  // namespace podselect::cli
