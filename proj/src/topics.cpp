#include "podselect/topics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "podselect/errors.hpp"
#include "podselect/rng.hpp"

namespace podselect {

void TopicConfig::validate() const {
  if (num_topics == 0) throw ConfigError("number of topics must be >= 1");
  if (!(effective_alpha() > 0)) throw ConfigError("alpha must be > 0");
  if (!(beta > 0)) throw ConfigError("beta must be > 0");
  if (burn_in >= gibbs_iterations) {
    throw ConfigError("burn-in (" + std::to_string(burn_in) +
                      ") must be below the iteration count (" +
                      std::to_string(gibbs_iterations) + ")");
  }
}

double TopicModel::word_probability(std::size_t topic,
                                    const std::string& word) const {
  auto it = word_ids.find(word);
  if (it != word_ids.end()) return topic_word[topic][it->second];
  const double v = static_cast<double>(vocabulary.size());
  return beta / (topic_token_mass[topic] + v * beta);
}

namespace {

void normalize(std::vector<double>& v) {
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= total;
}

}  // namespace

TopicModel fit_lda(const Document& doc, const TopicConfig& config) {
  config.validate();
  const std::size_t K = config.num_topics;
  const std::size_t D = doc.size();
  if (D < K || doc.total_tokens == 0) {
    throw InsufficientContentError(
        "insufficient content for " + std::to_string(K) + " topics: " +
        std::to_string(D) + " sentences, " + std::to_string(doc.total_tokens) +
        " tokens");
  }

  TopicModel model;
  model.num_topics = K;
  model.alpha = config.effective_alpha();
  model.beta = config.beta;
  model.seed = config.seed;

  std::vector<std::vector<std::uint32_t>> words(D);
  for (std::size_t d = 0; d < D; ++d) {
    for (const Token& t : doc.sentences[d].tokens) {
      auto [it, inserted] = model.word_ids.try_emplace(t.text, model.vocabulary.size());
      if (inserted) model.vocabulary.push_back(t.text);
      words[d].push_back(static_cast<std::uint32_t>(it->second));
    }
  }
  const std::size_t V = model.vocabulary.size();
  const double alpha = model.alpha;
  const double beta = model.beta;
  const double v_beta = static_cast<double>(V) * beta;
  const double k_alpha = static_cast<double>(K) * alpha;
  const double total_tokens = static_cast<double>(doc.total_tokens);

  std::vector<std::uint32_t> word_topic(V * K, 0);  // [w * K + k]
  std::vector<std::uint32_t> doc_topic(D * K, 0);   // [d * K + k]
  std::vector<std::uint32_t> topic_total(K, 0);
  std::vector<std::vector<std::uint32_t>> z(D);

  Rng rng(config.seed);
  for (std::size_t d = 0; d < D; ++d) {
    z[d].resize(words[d].size());
    for (std::size_t i = 0; i < words[d].size(); ++i) {
      const auto k = static_cast<std::uint32_t>(rng.below(K));
      z[d][i] = k;
      ++word_topic[words[d][i] * K + k];
      ++doc_topic[d * K + k];
      ++topic_total[k];
    }
  }

  std::vector<std::vector<double>> phi_sum(K, std::vector<double>(V, 0.0));
  std::vector<double> theta_sum(K, 0.0);
  std::vector<double> mass_sum(K, 0.0);
  std::vector<double> cumulative(K);

  for (std::size_t iter = 0; iter < config.gibbs_iterations; ++iter) {
    for (std::size_t d = 0; d < D; ++d) {
      for (std::size_t i = 0; i < words[d].size(); ++i) {
        const std::uint32_t w = words[d][i];
        const std::uint32_t old_k = z[d][i];
        --word_topic[w * K + old_k];
        --doc_topic[d * K + old_k];
        --topic_total[old_k];

        // p(z = k | rest) ∝ (n_wk + β) / (n_k + Vβ) · (n_dk + α)
        double acc = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
          acc += (word_topic[w * K + k] + beta) / (topic_total[k] + v_beta) *
                 (doc_topic[d * K + k] + alpha);
          cumulative[k] = acc;
        }
        const double u = rng.uniform() * acc;
        std::uint32_t new_k = 0;
        while (new_k + 1 < K && cumulative[new_k] <= u) ++new_k;

        z[d][i] = new_k;
        ++word_topic[w * K + new_k];
        ++doc_topic[d * K + new_k];
        ++topic_total[new_k];
      }
    }
    if (iter < config.burn_in) continue;

    for (std::size_t k = 0; k < K; ++k) {
      const double denom = topic_total[k] + v_beta;
      for (std::size_t w = 0; w < V; ++w) {
        phi_sum[k][w] += (word_topic[w * K + k] + beta) / denom;
      }
      mass_sum[k] += topic_total[k];
    }
    // Token-weighted mean of the per-sentence topic mixtures.
    for (std::size_t d = 0; d < D; ++d) {
      const double len = static_cast<double>(words[d].size());
      if (len == 0) continue;
      for (std::size_t k = 0; k < K; ++k) {
        theta_sum[k] += (len / total_tokens) * (doc_topic[d * K + k] + alpha) /
                        (len + k_alpha);
      }
    }
  }

  const double samples = static_cast<double>(config.gibbs_iterations - config.burn_in);
  model.topic_word = std::move(phi_sum);
  for (auto& row : model.topic_word) normalize(row);
  model.doc_topic_weight = std::move(theta_sum);
  normalize(model.doc_topic_weight);
  model.topic_token_mass = std::move(mass_sum);
  for (double& m : model.topic_token_mass) m /= samples;
  model.assignments = std::move(z);
  return model;
}

TopicRelevance sentence_topic_relevance(const Sentence& sentence,
                                        const TopicModel& model,
                                        std::size_t topic_id) {
  if (topic_id >= model.num_topics) {
    throw ArgumentError("topic " + std::to_string(topic_id) + " out of range");
  }
  if (sentence.tokens.empty()) {
    throw ArgumentError("sentence " + std::to_string(sentence.index) +
                        " has no tokens");
  }
  double log_sum = 0.0;
  for (const Token& t : sentence.tokens) {
    log_sum += std::log(model.word_probability(topic_id, t.text));
  }
  return {sentence.index, topic_id,
          log_sum / static_cast<double>(sentence.tokens.size())};
}

SelectionResult select_by_topics(const Document& doc, const TopicModel& model,
                                 std::size_t token_budget) {
  SelectionResult r;
  r.episode_id = doc.episode_id;
  r.strategy = Strategy::kTopic;
  const std::size_t K = model.num_topics;
  const std::size_t N = doc.size();
  if (N == 0) return r;

  std::vector<std::size_t> topic_order(K);
  std::iota(topic_order.begin(), topic_order.end(), 0);
  std::stable_sort(topic_order.begin(), topic_order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return model.doc_topic_weight[a] > model.doc_topic_weight[b];
                   });

  // Per topic: sentences by descending relevance, ties to the lower index.
  std::vector<std::vector<TopicRelevance>> ranked(K);
  for (std::size_t k = 0; k < K; ++k) {
    ranked[k].reserve(N);
    for (const Sentence& s : doc.sentences) {
      ranked[k].push_back(sentence_topic_relevance(s, model, k));
    }
    std::stable_sort(ranked[k].begin(), ranked[k].end(),
                     [](const TopicRelevance& a, const TopicRelevance& b) {
                       return a.score > b.score;
                     });
  }

  std::vector<bool> taken(N, false);
  std::vector<std::size_t> cursor(K, 0);
  std::size_t used = 0;
  bool stop = false;
  while (!stop && r.sentence_indices.size() < N) {
    for (std::size_t k : topic_order) {
      auto& pos = cursor[k];
      while (pos < N && taken[ranked[k][pos].sentence_index]) ++pos;
      if (pos == N) continue;
      const TopicRelevance& pick = ranked[k][pos];
      const std::size_t len = doc.sentences[pick.sentence_index].tokens.size();
      if (used + len > token_budget) {
        r.notes.push_back(r.sentence_indices.empty() ? "budget too small"
                                                     : "budget reached");
        stop = true;
        break;
      }
      taken[pick.sentence_index] = true;
      used += len;
      r.sentence_indices.push_back(pick.sentence_index);
      r.topic_relevances.push_back(pick);
      if (r.sentence_indices.size() == N) break;
    }
  }
  std::sort(r.sentence_indices.begin(), r.sentence_indices.end());
  r.selected_token_count = used;
  return r;
}

}  // namespace podselect
