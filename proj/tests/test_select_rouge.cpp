#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "podselect/errors.hpp"
#include "podselect/select_rouge.hpp"
#include "support.hpp"

namespace podselect {
namespace {

using testing::make_doc;
using testing::random_doc;
using Sentences = std::vector<std::vector<std::string>>;

std::vector<std::string> repeat(const std::string& w, std::size_t n) {
  return std::vector<std::string>(n, w);
}

SelectorConfig with_window(std::size_t w, std::size_t k = kDefaultNoveltyTopK) {
  SelectorConfig c;
  c.window_size = w;
  c.novelty_top_k = k;
  return c;
}

TEST(SelectorDefaults, MatchPublishedSettings) {
  EXPECT_EQ(kDefaultWindowSize, 40u);
  EXPECT_EQ(kDefaultNoveltyWindowSize, 25u);
  EXPECT_EQ(kDefaultNoveltyTopK, 5u);
  EXPECT_EQ(kDefaultTokenBudget, 1024u);
  EXPECT_EQ(SelectorConfig::window_defaults().window_size, 40u);
  EXPECT_EQ(SelectorConfig::novelty_defaults().window_size, 25u);
  EXPECT_EQ(SelectorConfig::novelty_defaults().novelty_top_k, 5u);
}

TEST(ScoreWindows, CountAndClamp) {
  std::mt19937_64 rng(1);
  const Document doc = random_doc(rng, 5, 6, 5);
  EXPECT_EQ(score_windows(doc, 2).size(), 4u);
  const auto whole = score_windows(doc, 5);
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_EQ(whole[0].start, 0u);
  EXPECT_EQ(whole[0].end, 5u);
  EXPECT_DOUBLE_EQ(whole[0].score, 1.0);
  const auto clamped = score_windows(doc, 9);
  ASSERT_EQ(clamped.size(), 1u);
  EXPECT_EQ(clamped[0].end, 5u);
  EXPECT_DOUBLE_EQ(clamped[0].score, 1.0);
  EXPECT_THROW(score_windows(doc, 0), ArgumentError);
  EXPECT_THROW(score_windows(Document{}, 2), EmptyDocumentError);
}

// Sentences 2 and 3 carry the dominant vocabulary (and, since the reference
// contains every window, the most tokens).
Document toy_doc() {
  return make_doc({{"hello", "all"},
                   {"ok", "then"},
                   {"market", "prices", "rose", "market", "prices", "fell", "again"},
                   {"prices", "market", "analysts", "market", "prices", "said"},
                   {"bye", "now"}});
}

TEST(ScoreWindows, ToyDocMatchesOracle) {
  const Document doc = toy_doc();
  const auto got = score_windows(doc, 2);
  const auto want = oracle::all_windows(doc, 2);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].start, want[i].start);
    EXPECT_NEAR(got[i].score, want[i].score, 1e-12);
  }
  const auto best = oracle::best_window(doc, 2);
  EXPECT_EQ(best.start, 2u);
  EXPECT_EQ(select_window(doc, with_window(2)).sentence_indices,
            (std::vector<std::size_t>{2, 3}));
}

TEST(SelectWindow, ShortDocTakesEverything) {
  const Document doc = make_doc({{"a"}, {"b", "c"}, {"d"}});
  const auto r = select_window(doc, with_window(40));
  EXPECT_EQ(r.sentence_indices, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(r.selected_token_count, 4u);
  EXPECT_EQ(r.strategy, Strategy::kWindow);
}

TEST(SelectWindow, TieGoesToEarlierStart) {
  const Document doc = make_doc({{"a", "b"}, {"c", "d"}, {"a", "b"}, {"c", "d"}});
  const auto scores = score_windows(doc, 2);
  EXPECT_EQ(scores[0].score, scores[2].score);
  EXPECT_EQ(select_window(doc, with_window(2)).sentence_indices.front(), 0u);
}

TEST(SelectWindow, ScoreDependsOnlyOnWindowLength) {
  // Every window is part of its own reference, so precision is always 1.
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const Document doc = random_doc(rng, 12, 6, 4);
    const auto scores = score_windows(doc, 3);
    for (const auto& a : scores) {
      for (const auto& b : scores) {
        const auto la = oracle::tokens_of(doc, a.start, a.end).size();
        const auto lb = oracle::tokens_of(doc, b.start, b.end).size();
        if (la == lb) EXPECT_EQ(a.score, b.score);
        if (la > lb) EXPECT_GT(a.score, b.score);
      }
    }
  }
}

TEST(SelectWindow, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> n_dist(1, 30), w_dist(1, 12);
  for (int trial = 0; trial < 40; ++trial) {
    const Document doc = random_doc(rng, n_dist(rng), 6, 6);
    for (bool with_l : {true, false}) {
      SelectorConfig c = with_window(w_dist(rng));
      c.include_rouge_l = with_l;
      const auto r = select_window(doc, c);
      const auto best = oracle::best_window(doc, c.window_size, with_l);
      ASSERT_EQ(r.sentence_indices.front(), best.start);
      ASSERT_EQ(r.sentence_indices.back() + 1, best.end);
    }
  }
}

TEST(SelectWindow, PermutingOutsideSentencesKeepsWinner) {
  // The winner is strictly the longest window; shuffling short sentences
  // outside it leaves it in place.
  std::mt19937_64 rng(4);
  Sentences s = {{"a"}, {"b", "c"}, {"d"}, {"x", "y", "z", "x", "y", "z", "q"},
                 {"x", "z", "y", "q", "q", "x"}, {"e"}, {"f", "g"}, {"h"}};
  const auto base = select_window(make_doc(s), with_window(2)).sentence_indices;
  ASSERT_EQ(base, (std::vector<std::size_t>{3, 4}));
  for (int i = 0; i < 20; ++i) {
    std::shuffle(s.begin() + 5, s.end(), rng);
    std::shuffle(s.begin(), s.begin() + 3, rng);
    EXPECT_EQ(select_window(make_doc(s), with_window(2)).sentence_indices, base);
  }
}

TEST(IncrementalWindow, MatchesFromScratchCounts) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Document doc = random_doc(rng, 25, 7, 4);
    const WindowNgramIndex index(doc);
    IncrementalWindow win(index, 0, 4);
    while (true) {
      EXPECT_EQ(win.counts(), count_window(index, win.start(), win.end()));
      const auto o = oracle::window_counts(doc, win.start(), win.end());
      EXPECT_EQ(win.counts().unigram_overlap, o.uni_overlap);
      EXPECT_EQ(win.counts().bigram_overlap, o.bi_overlap);
      EXPECT_EQ(win.counts().unigram_total, o.uni_total);
      EXPECT_EQ(win.counts().bigram_total, o.bi_total);
      if (!win.can_slide()) break;
      win.slide();
    }
    EXPECT_EQ(win.end(), doc.size());
  }
}

TEST(IncrementalWindow, ClippingAgainstExternalReference) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const Document doc = random_doc(rng, 20, 6, 4);
    const auto reference = testing::random_tokens(rng, 15, 5);
    const WindowNgramIndex index(doc, reference);
    IncrementalWindow win(index, 0, 5);
    while (true) {
      const auto o = oracle::window_counts(doc, win.start(), win.end(), reference);
      ASSERT_EQ(win.counts().unigram_overlap, o.uni_overlap);
      ASSERT_EQ(win.counts().bigram_overlap, o.bi_overlap);
      EXPECT_NEAR(win.rouge_n(1).f1, oracle::prf(o.uni_overlap, o.uni_total, 15).f, 1e-12);
      EXPECT_NEAR(win.rouge_n(2).f1, oracle::prf(o.bi_overlap, o.bi_total, 14).f, 1e-12);
      if (!win.can_slide()) break;
      win.slide();
    }
  }
}

TEST(IncrementalWindow, BadArguments) {
  const Document doc = make_doc({{"a"}, {"b"}});
  const WindowNgramIndex index(doc);
  EXPECT_THROW(IncrementalWindow(index, 0, 0), ArgumentError);
  EXPECT_THROW(IncrementalWindow(index, 2, 1), ArgumentError);
  IncrementalWindow full(index, 0, 2);
  EXPECT_FALSE(full.can_slide());
}

TEST(ScoreSingleSentences, Examples) {
  const auto one = score_single_sentences(make_doc({{"just", "one"}}));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].index, 0u);
  EXPECT_DOUBLE_EQ(one[0].score, 1.0);

  // Sentence 1 repeats the document's most frequent tokens; sentence 3 is
  // made of hapaxes.
  const Document doc = make_doc({{"the", "show", "the", "show"},
                                 {"the", "show", "the", "show", "the", "show"},
                                 {"the", "show"},
                                 {"zebra", "quartz"}});
  const auto s = score_single_sentences(doc);
  const Document copy = doc;
  const auto whole = oracle::tokens_of(copy, 0, copy.size());
  for (const auto& sc : s) {
    EXPECT_NEAR(sc.score, oracle::rouge_avg(oracle::tokens_of(doc, sc.index, sc.index + 1), whole),
                1e-12);
  }
  EXPECT_GT(s[1].score, s[3].score);
}

TEST(SelectNovelty, AllTopKInsideWindowEqualsWindow) {
  const Document doc = make_doc({{"a"}, {"b", "c", "d", "e"}, {"f", "g", "h", "i"}, {"j"}});
  const auto w = select_window(doc, with_window(2, 2));
  const auto n = select_novelty(doc, with_window(2, 2));
  EXPECT_EQ(n.sentence_indices, w.sentence_indices);
  EXPECT_EQ(n.strategy, Strategy::kNovelty);
}

TEST(SelectNovelty, OutlierMergedInDocumentOrder) {
  Sentences s;
  s.push_back(repeat("long", 30));  // index 0: best single sentence
  for (std::size_t i = 1; i < 45; ++i) {
    s.push_back(i >= 10 && i < 35 ? repeat("w" + std::to_string(i), 4)
                                  : std::vector<std::string>{"x"});
  }
  const Document doc = make_doc(s);
  const auto r = select_novelty(doc, with_window(25, 1));
  std::vector<std::size_t> want = {0};
  for (std::size_t i = 10; i < 35; ++i) want.push_back(i);
  EXPECT_EQ(r.sentence_indices, want);
}

TEST(SelectNovelty, FarOutlierIsPresent) {
  const Document doc = make_doc({{"a"},
                                 {"b", "c", "d", "e", "f", "g", "h", "i"},
                                 {"j", "k", "l", "m", "n", "o", "p", "q"},
                                 {"r"},
                                 {"s"},
                                 {"t"},
                                 {"u"},
                                 {"v"},
                                 {"w", "x", "y", "z", "aa", "bb", "cc", "dd", "ee", "ff"},
                                 {"gg"}});
  const auto best = oracle::best_window(doc, 2);
  EXPECT_EQ(best.start, 1u);
  const auto r = select_novelty(doc, with_window(2, 1));
  EXPECT_EQ(r.sentence_indices, (std::vector<std::size_t>{1, 2, 8}));
}

TEST(SelectNovelty, ContainsWindowAndTopK) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> n_dist(1, 60), w_dist(1, 30), k_dist(0, 8);
  for (int trial = 0; trial < 100; ++trial) {
    const Document doc = random_doc(rng, n_dist(rng), 9, 8);
    const SelectorConfig c = with_window(w_dist(rng), k_dist(rng));
    const auto w = select_window(doc, c);
    const auto r = select_novelty(doc, c);
    EXPECT_TRUE(std::is_sorted(r.sentence_indices.begin(), r.sentence_indices.end()));
    EXPECT_EQ(std::adjacent_find(r.sentence_indices.begin(), r.sentence_indices.end()),
              r.sentence_indices.end());
    const std::set<std::size_t> got(r.sentence_indices.begin(), r.sentence_indices.end());
    for (std::size_t i : w.sentence_indices) EXPECT_TRUE(got.count(i));
    auto ranked = r.sentence_scores;
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.score > b.score; });
    for (std::size_t i = 0; i < std::min(c.novelty_top_k, ranked.size()); ++i) {
      EXPECT_TRUE(got.count(ranked[i].index));
    }
    EXPECT_EQ(r.selected_token_count, count_tokens(doc, r.sentence_indices));
  }
}

TEST(SelectorConfig, Validate) {
  SelectorConfig c;
  c.window_size = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.token_budget = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(SelectHead, TakesAllSentences) {
  const Document doc = make_doc({{"a", "b"}, {"c"}});
  const auto r = select_head(doc);
  EXPECT_EQ(r.sentence_indices, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.selected_token_count, 3u);
  EXPECT_EQ(r.strategy, Strategy::kNone);
}

TEST(Strategy, NamesRoundTrip) {
  for (Strategy s : {Strategy::kWindow, Strategy::kNovelty, Strategy::kTopic, Strategy::kNone}) {
    EXPECT_EQ(parse_strategy(strategy_name(s)), s);
  }
  EXPECT_THROW(parse_strategy("greedy"), ConfigError);
}

}  // namespace
}  // namespace podselect
