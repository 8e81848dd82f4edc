#include "podselect/corpus.hpp"

#include <unordered_set>

#include "json.hpp"

namespace podselect {

namespace {

using nlohmann::json;

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    if (c < 0x80) len = 1;
    else if ((c & 0xE0) == 0xC0 && c >= 0xC2) len = 2;
    else if ((c & 0xF0) == 0xE0) len = 3;
    else if ((c & 0xF8) == 0xF0 && c <= 0xF4) len = 4;
    else return false;
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    }
    i += len;
  }
  return true;
}

std::string tsv_unescape(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] != '\\' || i + 1 == field.size()) {
      out.push_back(field[i]);
      continue;
    }
    const char next = field[++i];
    switch (next) {
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      case '\\': out.push_back('\\'); break;
      default:
        out.push_back('\\');
        out.push_back(next);
    }
  }
  return out;
}

bool blank(const std::string& line) {
  for (char c : line) {
    if (!is_ascii_space(c)) return false;
  }
  return true;
}

}  // namespace

InputFormat parse_input_format(const std::string& name) {
  if (name == "jsonl") return InputFormat::kJsonl;
  if (name == "tsv") return InputFormat::kTsv;
  throw ConfigError("unknown input format '" + name + "' (expected jsonl|tsv)");
}

EpisodeRecord parse_episode_json(const std::string& line, std::size_t line_no) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    return ParseError(line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!record.is_object()) return ParseError(line_no, "record is not an object");

  auto string_field = [&](const char* key, bool required,
                          std::string& out) -> std::optional<ParseError> {
    auto it = record.find(key);
    if (it == record.end() || it->is_null()) {
      if (required) return ParseError(line_no, std::string("missing \"") + key + "\"");
      return std::nullopt;
    }
    if (!it->is_string()) {
      return ParseError(line_no, std::string("\"") + key + "\" is not a string");
    }
    out = it->get<std::string>();
    return std::nullopt;
  };

  Episode ep;
  if (auto err = string_field("id", true, ep.id)) return *err;
  if (ep.id.empty()) return ParseError(line_no, "empty \"id\"");
  if (auto err = string_field("transcript", true, ep.transcript)) return *err;
  if (auto err = string_field("show_id", false, ep.show_id)) return *err;
  if (auto err = string_field("description", false, ep.description)) return *err;
  if (auto err = string_field("show_description", false, ep.show_description)) {
    return *err;
  }
  if (auto it = record.find("duration_seconds");
      it != record.end() && !it->is_null()) {
    if (!it->is_number() || it->get<double>() < 0) {
      return ParseError(line_no, "\"duration_seconds\" must be a non-negative number");
    }
    ep.duration_seconds = it->get<double>();
  }
  return ep;
}

EpisodeRecord parse_episode_tsv(const std::string& line, std::size_t line_no) {
  if (!valid_utf8(line)) return ParseError(line_no, "invalid UTF-8");
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    fields.push_back(tsv_unescape(std::string_view(line).substr(
        pos, tab == std::string::npos ? std::string::npos : tab - pos)));
    if (tab == std::string::npos) break;
    pos = tab + 1;
  }
  if (fields.size() < 5 || fields.size() > 6) {
    return ParseError(line_no, "expected 5 or 6 tab-separated fields, got " +
                                   std::to_string(fields.size()));
  }
  Episode ep;
  ep.id = fields[0];
  ep.show_id = fields[1];
  ep.transcript = fields[2];
  ep.description = fields[3];
  ep.show_description = fields[4];
  if (ep.id.empty()) return ParseError(line_no, "missing id");
  if (fields.size() == 6 && !fields[5].empty()) {
    try {
      std::size_t used = 0;
      const double d = std::stod(fields[5], &used);
      if (used != fields[5].size() || d < 0) throw std::invalid_argument("");
      ep.duration_seconds = d;
    } catch (const std::exception&) {
      return ParseError(line_no, "duration_seconds must be a non-negative number");
    }
  }
  return ep;
}

EpisodeReader::EpisodeReader(const std::filesystem::path& path,
                             InputFormat format)
    : in_(path, std::ios::binary), format_(format) {
  if (!in_) throw IoError("cannot open " + path.string());
}

std::optional<EpisodeRecord> EpisodeReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    return format_ == InputFormat::kJsonl ? parse_episode_json(line, line_no_)
                                          : parse_episode_tsv(line, line_no_);
  }
  if (in_.bad()) throw IoError("read failure at line " + std::to_string(line_no_));
  return std::nullopt;
}

LoadedEpisodes load_episodes(const std::filesystem::path& path,
                             InputFormat format) {
  LoadedEpisodes out;
  EpisodeReader reader(path, format);
  std::unordered_set<std::string> seen;
  while (auto record = reader.next()) {
    if (auto* err = std::get_if<ParseError>(&*record)) {
      out.errors.push_back(*err);
      continue;
    }
    auto& ep = std::get<Episode>(*record);
    if (!seen.insert(ep.id).second) {
      out.errors.emplace_back(reader.line_number(),
                              "duplicate id \"" + ep.id + "\"");
      continue;
    }
    out.episodes.push_back(std::move(ep));
  }
  return out;
}

Document build_document(const Episode& episode, const TokenizerConfig& config,
                        const SentenceSegmenter& segmenter) {
  if (episode.transcript.empty()) {
    throw EmptyDocumentError("episode " + episode.id + " has an empty transcript");
  }
  Document doc;
  doc.episode_id = episode.id;
  const std::string_view transcript = episode.transcript;
  for (const ByteSpan& span : segmenter.segment_spans(transcript)) {
    const std::string_view raw = transcript.substr(span.begin, span.size());
    std::vector<Token> tokens = tokenize(raw, config);
    if (tokens.empty()) continue;
    for (Token& t : tokens) {
      t.span.begin += span.begin;
      t.span.end += span.begin;
    }
    Sentence s;
    s.index = doc.sentences.size();
    s.raw_text = std::string(raw);
    s.span = span;
    doc.total_tokens += tokens.size();
    s.tokens = std::move(tokens);
    doc.sentences.push_back(std::move(s));
  }
  if (doc.sentences.empty()) {
    throw EmptyDocumentError("episode " + episode.id +
                             " has no tokenizable sentence");
  }
  return doc;
}

Document build_document(const Episode& episode, const TokenizerConfig& config) {
  static const SentenceSegmenter segmenter;
  return build_document(episode, config, segmenter);
}

std::vector<std::string> document_token_texts(const Document& doc) {
  std::vector<std::string> out;
  out.reserve(doc.total_tokens);
  for (const Sentence& s : doc.sentences) {
    for (const Token& t : s.tokens) out.push_back(t.text);
  }
  return out;
}

}  // namespace podselect
