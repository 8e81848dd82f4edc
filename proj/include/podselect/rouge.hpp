#pragma once

// ROUGE-1 / ROUGE-2 / ROUGE-L over token sequences, and the three-way F1
// average used to rank candidate selections.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace podselect {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  friend bool operator==(const RougeScore&, const RougeScore&) = default;
};

// P = overlap / candidate_total, R = overlap / reference_total, F = 2PR/(P+R).
// A zero denominator gives 0 for that component.
RougeScore make_rouge_score(std::size_t overlap, std::size_t candidate_total,
                            std::size_t reference_total);

using TokenSeq = std::span<const std::string>;

// Multiset of n-grams. Keys join the n token texts with a single space
// (tokens never contain whitespace).
struct NgramCounts {
  int n = 1;
  std::unordered_map<std::string, std::size_t> counts;
  std::size_t total = 0;
};

// Throws ArgumentError if n <= 0.
NgramCounts ngram_counts(TokenSeq tokens, int n);

// Σ_g min(a(g), b(g)).
std::size_t ngram_overlap(const NgramCounts& a, const NgramCounts& b);

// n must be 1 or 2.
RougeScore rouge_n(TokenSeq candidate, TokenSeq reference, int n);

// Longest common subsequence length. Two rolling rows sized by the shorter
// input, so memory is O(min(|a|, |b|)).
template <typename T>
std::size_t lcs_length(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> curr(b.size() + 1, 0);
  for (const T& x : a) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      curr[j] = x == b[j - 1] ? prev[j - 1] + 1
                              : std::max(prev[j], curr[j - 1]);
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

inline std::size_t lcs_length(TokenSeq a, TokenSeq b) {
  return lcs_length<std::string>(a, b);
}

// Sequence-level ROUGE-L with a balanced (beta = 1) F.
RougeScore rouge_l(TokenSeq candidate, TokenSeq reference);

// Mean of the ROUGE-1, ROUGE-2 and ROUGE-L F1 values.
double rouge_avg(TokenSeq candidate, TokenSeq reference);

}  // namespace podselect
