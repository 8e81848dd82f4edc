#pragma once

// Deliberately naive reference implementations. They share no code with the
// library: n-grams are token vectors, overlap is a merge of sorted gram
// lists, LCS uses the full quadratic table.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "podselect/corpus.hpp"

namespace podselect::oracle {

using Tokens = std::vector<std::string>;

inline std::vector<Tokens> ngrams(const Tokens& t, std::size_t n) {
  std::vector<Tokens> out;
  for (std::size_t i = 0; i + n <= t.size(); ++i) {
    out.emplace_back(t.begin() + static_cast<long>(i), t.begin() + static_cast<long>(i + n));
  }
  return out;
}

// Multiset intersection size via sort and merge.
inline std::size_t multiset_overlap(std::vector<Tokens> cand, std::vector<Tokens> ref) {
  std::sort(cand.begin(), cand.end());
  std::sort(ref.begin(), ref.end());
  std::size_t i = 0, j = 0, overlap = 0;
  while (i < cand.size() && j < ref.size()) {
    if (cand[i] < ref[j]) {
      ++i;
    } else if (ref[j] < cand[i]) {
      ++j;
    } else {
      ++overlap;
      ++i;
      ++j;
    }
  }
  return overlap;
}

// Quadratic variant kept for small cross-checks of the merge above.
inline std::size_t multiset_overlap_scan(const std::vector<Tokens>& cand,
                                         const std::vector<Tokens>& ref) {
  std::vector<bool> used(ref.size(), false);
  std::size_t overlap = 0;
  for (const auto& g : cand) {
    for (std::size_t j = 0; j < ref.size(); ++j) {
      if (!used[j] && ref[j] == g) {
        used[j] = true;
        ++overlap;
        break;
      }
    }
  }
  return overlap;
}

inline std::size_t lcs_full_table(const Tokens& a, const Tokens& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t[a.size()][b.size()];
}

struct Prf {
  double p = 0, r = 0, f = 0;
};

inline Prf prf(std::size_t overlap, std::size_t cand, std::size_t ref) {
  Prf s;
  if (cand > 0) s.p = static_cast<double>(overlap) / static_cast<double>(cand);
  if (ref > 0) s.r = static_cast<double>(overlap) / static_cast<double>(ref);
  if (s.p + s.r > 0) s.f = 2 * s.p * s.r / (s.p + s.r);
  return s;
}

inline Prf rouge_n(const Tokens& cand, const Tokens& ref, std::size_t n) {
  const auto cg = ngrams(cand, n);
  const auto rg = ngrams(ref, n);
  return prf(multiset_overlap(cg, rg), cg.size(), rg.size());
}

inline Prf rouge_l(const Tokens& cand, const Tokens& ref) {
  return prf(lcs_full_table(cand, ref), cand.size(), ref.size());
}

inline double rouge_avg(const Tokens& cand, const Tokens& ref, bool with_l = true) {
  const double f1 = rouge_n(cand, ref, 1).f;
  const double f2 = rouge_n(cand, ref, 2).f;
  if (!with_l) return (f1 + f2) / 2.0;
  return (f1 + f2 + rouge_l(cand, ref).f) / 3.0;
}

inline Tokens tokens_of(const Document& doc, std::size_t begin, std::size_t end) {
  Tokens out;
  for (std::size_t s = begin; s < end; ++s) {
    for (const auto& t : doc.sentences[s].tokens) out.push_back(t.text);
  }
  return out;
}

struct WindowPick {
  std::size_t start = 0;
  std::size_t end = 0;
  double score = 0;
};

// Every window of w sentences (one clamped window when N <= w) scored from
// scratch against the whole document; first maximum wins.
inline std::vector<WindowPick> all_windows(const Document& doc, std::size_t w,
                                           bool with_l = true) {
  const std::size_t n = doc.sentences.size();
  const Tokens whole = tokens_of(doc, 0, n);
  std::vector<WindowPick> out;
  const std::size_t last = n > w ? n - w : 0;
  for (std::size_t s = 0; s <= last; ++s) {
    const std::size_t e = std::min(n, s + w);
    out.push_back({s, e, rouge_avg(tokens_of(doc, s, e), whole, with_l)});
  }
  return out;
}

inline WindowPick best_window(const Document& doc, std::size_t w, bool with_l = true) {
  const auto all = all_windows(doc, w, with_l);
  WindowPick best = all.front();
  for (const auto& c : all) {
    if (c.score > best.score) best = c;
  }
  return best;
}

// Window ROUGE-1/2 counts against the whole document, from scratch.
struct Counts {
  std::size_t uni_total = 0, bi_total = 0, uni_overlap = 0, bi_overlap = 0;
};

inline Counts window_counts(const Document& doc, std::size_t begin, std::size_t end,
                            const Tokens& reference) {
  const Tokens cand = tokens_of(doc, begin, end);
  Counts c;
  const auto cu = ngrams(cand, 1), ru = ngrams(reference, 1);
  const auto cb = ngrams(cand, 2), rb = ngrams(reference, 2);
  c.uni_total = cu.size();
  c.bi_total = cb.size();
  c.uni_overlap = multiset_overlap(cu, ru);
  c.bi_overlap = multiset_overlap(cb, rb);
  return c;
}

inline Counts window_counts(const Document& doc, std::size_t begin, std::size_t end) {
  return window_counts(doc, begin, end, tokens_of(doc, 0, doc.sentences.size()));
}

}  // namespace podselect::oracle
