#include "podselect/abstractive.hpp"

#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "podselect/errors.hpp"

namespace podselect {

BackendInput enforce_budget(const SelectionResult& selection,
                            const Document& doc, std::size_t max_tokens) {
  if (max_tokens == 0) throw ArgumentError("token budget must be >= 1");
  BackendInput out;
  out.episode_id = doc.episode_id;
  std::size_t previous = 0;
  for (std::size_t k = 0; k < selection.sentence_indices.size(); ++k) {
    const std::size_t idx = selection.sentence_indices[k];
    if (idx >= doc.size() || (k > 0 && idx <= previous)) {
      throw ArgumentError("selection indices must be ascending and below " +
                          std::to_string(doc.size()));
    }
    previous = idx;
    const Sentence& s = doc.sentences[idx];
    if (out.token_count + s.tokens.size() <= max_tokens) {
      if (!out.text.empty()) out.text.push_back(' ');
      out.text += s.raw_text;
      out.token_count += s.tokens.size();
      out.sentence_indices.push_back(idx);
      continue;
    }
    if (k == 0) {
      // Cut after the last token that fits; token spans are transcript
      // offsets, raw_text starts at s.span.begin.
      const Token& last = s.tokens[max_tokens - 1];
      out.text = s.raw_text.substr(0, last.span.end - s.span.begin);
      out.token_count = max_tokens;
      out.sentence_indices.push_back(idx);
      out.truncated_mid_sentence = true;
    }
    break;
  }
  return out;
}

RemoteBackend::RemoteBackend(RemoteBackendConfig config) : config_(std::move(config)) {
  if (config_.max_attempts < 1) throw ConfigError("backend attempts must be >= 1");
  const std::string& ep = config_.endpoint;
  const std::string prefix = "http://";
  if (ep.rfind(prefix, 0) != 0 || ep.size() == prefix.size()) {
    throw ConfigError("remote endpoint must look like http://host[:port][/path], got '" +
                      ep + "'");
  }
  const std::size_t slash = ep.find('/', prefix.size());
  scheme_host_port_ = ep.substr(0, slash);
  std::string base = slash == std::string::npos ? "" : ep.substr(slash);
  while (!base.empty() && base.back() == '/') base.pop_back();
  path_ = base + "/summarize";
}

std::string RemoteBackend::generate(const BackendInput& input) {
  using nlohmann::json;
  json request = {{"id", input.episode_id}, {"text", input.text}};
  if (config_.max_length) request["max_length"] = *config_.max_length;
  const std::string body = request.dump();

  httplib::Client client(scheme_host_port_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  const auto usecs =
      std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  std::string last_error;
  auto backoff = config_.initial_backoff;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    auto res = client.Post(path_, body, "application/json");
    if (!res) {
      last_error = "request failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    json reply;
    try {
      reply = json::parse(res->body);
    } catch (const json::parse_error&) {
      throw ProtocolError("backend reply is not JSON");
    }
    if (!reply.is_object()) throw ProtocolError("backend reply is not an object");
    auto id = reply.find("id");
    if (id != reply.end() &&
        (!id->is_string() || id->get<std::string>() != input.episode_id)) {
      throw ProtocolError("backend reply id does not match " + input.episode_id);
    }
    auto summary = reply.find("summary");
    if (summary == reply.end() || !summary->is_string()) {
      throw ProtocolError("backend reply lacks a \"summary\" string");
    }
    std::string text = summary->get<std::string>();
    if (text.empty()) throw ProtocolError("backend returned an empty summary");
    return text;
  }
  throw BackendError("backend " + config_.endpoint + " failed for " +
                         input.episode_id + ": " + last_error,
                     config_.max_attempts);
}

Summary summarize(const BackendInput& input, Backend& backend) {
  const auto t0 = std::chrono::steady_clock::now();
  Summary s;
  s.episode_id = input.episode_id;
  s.text = backend.generate(input);
  s.backend_id = backend.id();
  s.latency_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  return s;
}

}  // namespace podselect
