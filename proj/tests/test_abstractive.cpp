#include <gtest/gtest.h>

#include <random>

#include "json.hpp"
#include "podselect/abstractive.hpp"
#include "podselect/errors.hpp"
#include "stub_server.hpp"
#include "support.hpp"

namespace podselect {
namespace {

using testing::make_doc;
using nlohmann::json;

std::vector<std::string> words(std::size_t n, const std::string& stem = "w") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

SelectionResult selection(const Document& doc, std::vector<std::size_t> idx) {
  SelectionResult r;
  r.episode_id = doc.episode_id;
  r.sentence_indices = std::move(idx);
  r.selected_token_count = count_tokens(doc, r.sentence_indices);
  return r;
}

TEST(EnforceBudget, UnderBudgetUnchanged) {
  const Document doc = make_doc({words(300), words(300), words(300)});
  const auto in = enforce_budget(selection(doc, {0, 1, 2}), doc, 1024);
  EXPECT_EQ(in.token_count, 900u);
  EXPECT_EQ(in.sentence_indices, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_FALSE(in.truncated_mid_sentence);
  EXPECT_EQ(in.text, doc.sentences[0].raw_text + " " + doc.sentences[1].raw_text + " " +
                         doc.sentences[2].raw_text);
}

TEST(EnforceBudget, CutsAtSentenceBoundary) {
  const Document doc = make_doc({words(500), words(500), words(500)});
  const auto in = enforce_budget(selection(doc, {0, 1, 2}), doc, 1024);
  EXPECT_EQ(in.token_count, 1000u);
  EXPECT_EQ(in.sentence_indices, (std::vector<std::size_t>{0, 1}));
  EXPECT_FALSE(in.truncated_mid_sentence);
}

TEST(EnforceBudget, OversizedFirstSentenceIsCutAndFlagged) {
  const Document doc = make_doc({words(2000)});
  const auto in = enforce_budget(selection(doc, {0}), doc, 1024);
  EXPECT_EQ(in.token_count, 1024u);
  EXPECT_TRUE(in.truncated_mid_sentence);
  EXPECT_EQ(in.sentence_indices, (std::vector<std::size_t>{0}));
  EXPECT_EQ(token_texts(tokenize(in.text)).size(), 1024u);
  EXPECT_EQ(in.text.substr(in.text.size() - 5), "w1023");
}

TEST(EnforceBudget, Errors) {
  const Document doc = make_doc({words(3), words(3)});
  EXPECT_THROW(enforce_budget(selection(doc, {0}), doc, 0), ArgumentError);
  EXPECT_THROW(enforce_budget(selection(doc, {5}), doc, 10), ArgumentError);
  EXPECT_THROW(enforce_budget(selection(doc, {1, 0}), doc, 10), ArgumentError);
}

TEST(EnforceBudget, EmptySelection) {
  const Document doc = make_doc({words(3)});
  const auto in = enforce_budget(selection(doc, {}), doc, 10);
  EXPECT_EQ(in.token_count, 0u);
  EXPECT_EQ(in.text, "");
}

TEST(EnforceBudget, RandomSelectionsStayWithinBudgetAndAreIdempotent) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> len(1, 400), n(1, 30), budget(1, 1200);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<std::string>> s;
    const std::size_t count = n(rng);
    for (std::size_t i = 0; i < count; ++i) s.push_back(words(len(rng)));
    const Document doc = make_doc(s);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < count; ++i) {
      if (rng() % 2) idx.push_back(i);
    }
    const std::size_t b = budget(rng);
    const auto in = enforce_budget(selection(doc, idx), doc, b);
    EXPECT_LE(in.token_count, b);
    if (in.truncated_mid_sentence) {
      ASSERT_FALSE(idx.empty());
      EXPECT_GT(doc.sentences[idx[0]].tokens.size(), b);
    }
    // Running the enforcer on its own output changes nothing.
    const auto again = enforce_budget(selection(doc, in.sentence_indices), doc, b);
    if (!in.truncated_mid_sentence) EXPECT_EQ(again, in);
  }
}

TEST(NullBackend, EchoesInput) {
  BackendInput in;
  in.episode_id = "e";
  in.text = "some text";
  NullBackend backend;
  const Summary s = summarize(in, backend);
  EXPECT_EQ(s.text, in.text);
  EXPECT_EQ(s.episode_id, "e");
  EXPECT_EQ(s.backend_id, "null");
  EXPECT_TRUE(s.latency_ms.has_value());
}

RemoteBackendConfig remote_config(const std::string& endpoint) {
  RemoteBackendConfig c;
  c.endpoint = endpoint;
  c.initial_backoff = std::chrono::milliseconds(10);
  c.timeout = std::chrono::milliseconds(2000);
  return c;
}

BackendInput input_for(const std::string& id) {
  BackendInput in;
  in.episode_id = id;
  in.text = "long transcript text";
  return in;
}

TEST(RemoteBackend, ParsesSummary) {
  json seen;
  testing::StubServer server([&](const httplib::Request& req, httplib::Response& res) {
    seen = json::parse(req.body);
    res.set_content(R"({"summary": "hello"})", "application/json");
  });
  auto cfg = remote_config(server.endpoint());
  cfg.max_length = 64;
  RemoteBackend backend(cfg);
  const Summary s = summarize(input_for("ep1"), backend);
  EXPECT_EQ(s.text, "hello");
  EXPECT_EQ(seen["id"], "ep1");
  EXPECT_EQ(seen["text"], "long transcript text");
  EXPECT_EQ(seen["max_length"], 64);
  EXPECT_EQ(s.backend_id, "remote:" + server.endpoint());
}

TEST(RemoteBackend, BasePathIsPrefixed) {
  testing::StubServer server(
      [](const httplib::Request&, httplib::Response& res) {
        res.set_content(R"({"id": "x", "summary": "ok"})", "application/json");
      },
      "/v1/summarize");
  RemoteBackend backend(remote_config(server.endpoint() + "/v1/"));
  EXPECT_EQ(backend.generate(input_for("x")), "ok");
}

TEST(RemoteBackend, RetriesThenFails) {
  testing::StubServer server(
      [](const httplib::Request&, httplib::Response& res) { res.status = 500; });
  RemoteBackend backend(remote_config(server.endpoint()));
  try {
    backend.generate(input_for("ep"));
    FAIL() << "expected BackendError";
  } catch (const BackendError& e) {
    EXPECT_EQ(e.attempts(), 3);
  }
  EXPECT_EQ(server.requests(), 3);
}

TEST(RemoteBackend, RecoversOnRetry) {
  int calls = 0;
  testing::StubServer server([&](const httplib::Request&, httplib::Response& res) {
    if (++calls < 3) {
      res.status = 503;
      return;
    }
    res.set_content(R"({"summary": "third time"})", "application/json");
  });
  RemoteBackend backend(remote_config(server.endpoint()));
  EXPECT_EQ(backend.generate(input_for("ep")), "third time");
}

TEST(RemoteBackend, ProtocolErrors) {
  std::string reply;
  testing::StubServer server([&](const httplib::Request&, httplib::Response& res) {
    res.set_content(reply, "application/json");
  });
  RemoteBackend backend(remote_config(server.endpoint()));
  for (const char* bad : {"not json", "[1]", R"({"id": "other", "summary": "s"})",
                          R"({"summary": 5})", R"({"summary": ""})"}) {
    reply = bad;
    EXPECT_THROW(backend.generate(input_for("ep")), ProtocolError) << bad;
  }
}

TEST(RemoteBackend, UnreachableEndpoint) {
  RemoteBackend backend(
      remote_config("http://127.0.0.1:" + std::to_string(testing::unused_port())));
  EXPECT_THROW(backend.generate(input_for("ep")), BackendError);
}

TEST(RemoteBackend, ConfigErrors) {
  EXPECT_THROW(RemoteBackend(remote_config("https://example.com")), ConfigError);
  EXPECT_THROW(RemoteBackend(remote_config("localhost:8000")), ConfigError);
  auto c = remote_config("http://localhost:8000");
  c.max_attempts = 0;
  EXPECT_THROW(RemoteBackend{c}, ConfigError);
}

TEST(RemoteBackend, DefaultRetryPolicy) {
  const RemoteBackendConfig c;
  EXPECT_EQ(c.max_attempts, 3);
  EXPECT_EQ(c.initial_backoff, std::chrono::milliseconds(500));
}

}  // namespace
}  // namespace podselect
