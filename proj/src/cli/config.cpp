#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "podselect/errors.hpp"

namespace podselect::cli {

Strategy PipelineConfig::strategy_enum() const { return parse_strategy(strategy); }

SelectorConfig PipelineConfig::selector_config() const {
  SelectorConfig c;
  if (window_size != 0) {
    c.window_size = window_size;
  } else {
    c.window_size = strategy_enum() == Strategy::kNovelty ? kDefaultNoveltyWindowSize
                                                          : kDefaultWindowSize;
  }
  c.novelty_top_k = top_k;
  c.token_budget = budget;
  c.include_rouge_l = !no_rouge_l;
  return c;
}

TopicConfig PipelineConfig::topic_config() const {
  TopicConfig c;
  c.num_topics = topics;
  if (alpha > 0.0) c.alpha = alpha;
  c.beta = beta;
  c.gibbs_iterations = iterations;
  c.burn_in = burn_in;
  c.seed = seed;
  return c;
}

FilterConfig PipelineConfig::filter_config() const {
  FilterConfig c;
  c.desc_min_chars = desc_min_chars;
  c.desc_max_chars = desc_max_chars;
  c.duplicate_sim_threshold = duplicate_threshold;
  c.show_desc_sim_threshold = show_threshold;
  c.desc_min_tokens = desc_min_tokens;
  c.english_stopword_ratio_min = english_ratio;
  c.profanity_list_path = profanity_list;
  return c;
}

TokenizerConfig PipelineConfig::tokenizer_config() const {
  TokenizerConfig c;
  c.stem = stem;
  return c;
}

void PipelineConfig::validate() const {
  const Strategy s = strategy_enum();
  selector_config().validate();
  if (s == Strategy::kTopic) topic_config().validate();
  filter_config().validate();
  parse_input_format(input_format);
  if (backend != "null" && backend != "remote") {
    throw ConfigError("unknown backend '" + backend + "' (expected null|remote)");
  }
  if (backend == "remote" && endpoint.empty()) {
    throw ConfigError("--backend remote needs --endpoint");
  }
  if (timeout_ms <= 0) throw ConfigError("timeout must be positive");
  if (attempts < 1) throw ConfigError("attempts must be >= 1");
  if (backoff_ms < 0) throw ConfigError("backoff must be >= 0");
  if (max_length < 0) throw ConfigError("max length must be >= 0");
  if (jobs == 0) throw ConfigError("jobs must be >= 1");
  if (alpha < 0.0) throw ConfigError("alpha must be >= 0");
  if (split_ratios.size() != 3) throw ConfigError("split ratios need three values");
  for (double r : split_ratios) {
    if (!(r >= 0.0)) throw ConfigError("split ratios must be >= 0");
  }
  if (std::fabs(split_ratios[0] + split_ratios[1] + split_ratios[2] - 1.0) > 1e-9) {
    throw ConfigError("split ratios must sum to 1");
  }
  if (eval_split != "all" && eval_split != "train" && eval_split != "validation" &&
      eval_split != "test") {
    throw ConfigError("unknown eval split '" + eval_split +
                      "' (expected all|train|validation|test)");
  }
  if (!input.empty() && input == output) {
    throw ConfigError("input and output must be different paths");
  }
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file " + path + " must hold a JSON object");
  return j;
}

std::string normalize_config_key(std::string key) {
  while (!key.empty() && key.front() == '-') key.erase(key.begin());
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

}  // namespace podselect::cli
