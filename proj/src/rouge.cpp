#include "podselect/rouge.hpp"

#include "podselect/errors.hpp"

namespace podselect {

RougeScore make_rouge_score(std::size_t overlap, std::size_t candidate_total,
                            std::size_t reference_total) {
  RougeScore s;
  if (candidate_total > 0) {
    s.precision = static_cast<double>(overlap) / static_cast<double>(candidate_total);
  }
  if (reference_total > 0) {
    s.recall = static_cast<double>(overlap) / static_cast<double>(reference_total);
  }
  if (s.precision + s.recall > 0) {
    s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

NgramCounts ngram_counts(TokenSeq tokens, int n) {
  if (n <= 0) throw ArgumentError("n-gram order must be positive, got " + std::to_string(n));
  NgramCounts out;
  out.n = n;
  const auto order = static_cast<std::size_t>(n);
  if (tokens.size() < order) return out;
  std::string key;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    key = tokens[i];
    for (std::size_t k = 1; k < order; ++k) {
      key.push_back(' ');
      key += tokens[i + k];
    }
    ++out.counts[key];
    ++out.total;
  }
  return out;
}

std::size_t ngram_overlap(const NgramCounts& a, const NgramCounts& b) {
  const NgramCounts& small = a.counts.size() <= b.counts.size() ? a : b;
  const NgramCounts& large = &small == &a ? b : a;
  std::size_t overlap = 0;
  for (const auto& [gram, count] : small.counts) {
    auto it = large.counts.find(gram);
    if (it != large.counts.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

RougeScore rouge_n(TokenSeq candidate, TokenSeq reference, int n) {
  if (n != 1 && n != 2) {
    throw ArgumentError("rouge_n supports n = 1 or 2, got " + std::to_string(n));
  }
  const NgramCounts cand = ngram_counts(candidate, n);
  const NgramCounts ref = ngram_counts(reference, n);
  return make_rouge_score(ngram_overlap(cand, ref), cand.total, ref.total);
}

RougeScore rouge_l(TokenSeq candidate, TokenSeq reference) {
  return make_rouge_score(lcs_length(candidate, reference), candidate.size(),
                          reference.size());
}

double rouge_avg(TokenSeq candidate, TokenSeq reference) {
  return (rouge_n(candidate, reference, 1).f1 +
          rouge_n(candidate, reference, 2).f1 +
          rouge_l(candidate, reference).f1) /
         3.0;
}

}  // namespace podselect
