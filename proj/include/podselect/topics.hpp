#pragma once

// Topic-enhanced selection: a per-episode LDA fitted by collapsed Gibbs
// sampling with sentences as pseudo-documents, then round-robin picking of
// the sentences most probable under each topic.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "podselect/corpus.hpp"
#include "podselect/selection.hpp"

namespace podselect {

struct TopicConfig {
  std::size_t num_topics = 5;
  // Defaults to 50 / num_topics when unset.
  std::optional<double> alpha;
  double beta = 0.01;
  std::size_t gibbs_iterations = 500;
  std::size_t burn_in = 300;
  std::uint64_t seed = 0;

  double effective_alpha() const {
    return alpha ? *alpha : 50.0 / static_cast<double>(num_topics);
  }
  // Throws ConfigError when K == 0, alpha/beta <= 0 or burn_in >= iterations.
  void validate() const;
};

struct TopicModel {
  std::size_t num_topics = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  // Word ids follow first occurrence in the document.
  std::vector<std::string> vocabulary;
  std::unordered_map<std::string, std::size_t> word_ids;
  // K x V, each row a distribution over the vocabulary (phi).
  std::vector<std::vector<double>> topic_word;
  // Episode-level topic weights (theta), summing to 1.
  std::vector<double> doc_topic_weight;
  // Mean number of tokens assigned to each topic over the kept samples.
  std::vector<double> topic_token_mass;
  // Final topic of every token, sentence by sentence.
  std::vector<std::vector<std::uint32_t>> assignments;

  std::size_t vocabulary_size() const { return vocabulary.size(); }
  // phi_topic(word); out-of-vocabulary words get beta / (n_topic + V beta).
  double word_probability(std::size_t topic, const std::string& word) const;

  friend bool operator==(const TopicModel&, const TopicModel&) = default;
};

// Runs config.gibbs_iterations sweeps; phi and theta average the estimates
// of every sweep after burn_in. Throws InsufficientContentError when the
// document has fewer sentences than topics or no tokens.
TopicModel fit_lda(const Document& doc, const TopicConfig& config);

// Length-normalized log-likelihood of the sentence under one topic.
TopicRelevance sentence_topic_relevance(const Sentence& sentence,
                                        const TopicModel& model,
                                        std::size_t topic_id);

// Visits topics by descending weight; each visit takes that topic's most
// relevant unselected sentence (ties to the lower index). Rounds repeat
// until the next pick would exceed token_budget or sentences run out.
SelectionResult select_by_topics(const Document& doc, const TopicModel& model,
                                 std::size_t token_budget);

}  // namespace podselect
