#pragma once

// Second phase: cap the selection to the model's input budget and hand it to
// an abstractive summarizer behind the Backend seam.

#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>

#include "podselect/corpus.hpp"
#include "podselect/selection.hpp"

namespace podselect {

struct BackendInput {
  std::string episode_id;
  // raw_text of the kept sentences in document order, joined by one space.
  std::string text;
  std::size_t token_count = 0;
  std::vector<std::size_t> sentence_indices;
  // Set when a single sentence longer than the budget had to be cut.
  bool truncated_mid_sentence = false;

  friend bool operator==(const BackendInput&, const BackendInput&) = default;
};

struct Summary {
  std::string episode_id;
  std::string text;
  std::string backend_id;
  std::optional<double> latency_ms;
};

// Keeps the longest prefix of whole selected sentences within max_tokens.
// If the first selected sentence alone is over budget it is cut after its
// max_tokens-th token and truncated_mid_sentence is set. Throws
// ArgumentError for max_tokens == 0 or indices outside the document.
BackendInput enforce_budget(const SelectionResult& selection,
                            const Document& doc, std::size_t max_tokens);

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string id() const = 0;
  // Returns the summary text.
  virtual std::string generate(const BackendInput& input) = 0;
};

// Extractive fallback: echoes the input text.
class NullBackend : public Backend {
 public:
  std::string id() const override { return "null"; }
  std::string generate(const BackendInput& input) override { return input.text; }
};

struct RemoteBackendConfig {
  // http://host[:port][/base]; requests go to <base>/summarize.
  std::string endpoint;
  std::chrono::milliseconds timeout{30000};
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  // Forwarded as "max_length" when set.
  std::optional<int> max_length;
};

// POSTs {"id", "text", "max_length"?} to /summarize and reads
// {"id", "summary"}. Non-2xx replies and transport failures are retried
// with exponential backoff; exhausting the attempts raises BackendError.
// A 2xx reply that breaks the contract raises ProtocolError at once.
class RemoteBackend : public Backend {
 public:
  // Throws ConfigError for an unparsable endpoint or max_attempts < 1.
  explicit RemoteBackend(RemoteBackendConfig config);

  std::string id() const override { return "remote:" + config_.endpoint; }
  std::string generate(const BackendInput& input) override;

 private:
  RemoteBackendConfig config_;
  std::string scheme_host_port_;
  std::string path_;
};

// Calls the backend and times it.
Summary summarize(const BackendInput& input, Backend& backend);

}  // namespace podselect
