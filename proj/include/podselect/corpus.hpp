#pragma once

// Episodes, their ingestion from JSONL/TSV, and the sentence/token view
// (Document) every selector works on.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "podselect/errors.hpp"
#include "podselect/text.hpp"

namespace podselect {

struct Episode {
  std::string id;
  std::string show_id;
  std::string transcript;
  // Creator-written description; the reference summary.
  std::string description;
  std::string show_description;
  std::optional<double> duration_seconds;

  friend bool operator==(const Episode&, const Episode&) = default;
};

struct Sentence {
  std::size_t index = 0;
  std::vector<Token> tokens;
  std::string raw_text;
  // Offsets of raw_text in the episode transcript.
  ByteSpan span;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Document {
  std::string episode_id;
  std::vector<Sentence> sentences;
  std::size_t total_tokens = 0;

  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }

  friend bool operator==(const Document&, const Document&) = default;
};

enum class InputFormat { kJsonl, kTsv };

// Parses "jsonl" / "tsv"; throws ConfigError otherwise.
InputFormat parse_input_format(const std::string& name);

// One item of an episode stream: either a parsed episode or the error for
// the record on that line.
using EpisodeRecord = std::variant<Episode, ParseError>;

// Lazy reader over an episode file. Records come back in file order; a
// malformed line yields a ParseError carrying its 1-based line number and
// reading continues with the next line. Blank lines are skipped.
//
// JSONL: {"id", "show_id", "transcript", "description", "show_description",
//         "duration_seconds"?} per line; id and transcript are required.
// TSV:   id, show_id, transcript, description, show_description
//        [, duration_seconds]; fields escape \t \n \r \\ with a backslash.
class EpisodeReader {
 public:
  // Throws IoError if the file cannot be opened.
  EpisodeReader(const std::filesystem::path& path, InputFormat format);

  // Returns std::nullopt at end of file.
  std::optional<EpisodeRecord> next();
  // Line number of the record most recently returned.
  std::size_t line_number() const { return line_no_; }

 private:
  std::ifstream in_;
  InputFormat format_;
  std::size_t line_no_ = 0;
};

EpisodeRecord parse_episode_json(const std::string& line, std::size_t line_no);
EpisodeRecord parse_episode_tsv(const std::string& line, std::size_t line_no);

struct LoadedEpisodes {
  std::vector<Episode> episodes;
  std::vector<ParseError> errors;
};

// Drains an EpisodeReader. Also reports duplicate ids as parse errors (the
// later occurrence is dropped).
LoadedEpisodes load_episodes(const std::filesystem::path& path,
                             InputFormat format = InputFormat::kJsonl);

// Segments the transcript, tokenizes each sentence and drops sentences with
// no tokens. Throws EmptyDocumentError when nothing remains.
Document build_document(const Episode& episode,
                        const TokenizerConfig& config,
                        const SentenceSegmenter& segmenter);
// Uses the bundled abbreviation list.
Document build_document(const Episode& episode,
                        const TokenizerConfig& config = {});

// Token texts of a whole document in order.
std::vector<std::string> document_token_texts(const Document& doc);

}  // namespace podselect
