#pragma once

// Fixture builders shared by the unit and acceptance tests.

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "podselect/corpus.hpp"

namespace podselect::testing {

inline std::filesystem::path data_dir() { return PODSELECT_TEST_DATA_DIR; }

// Builds a Document straight from token lists; raw_text is the tokens
// joined by spaces and spans point into the implied transcript.
inline Document make_doc(const std::vector<std::vector<std::string>>& sentences,
                         std::string id = "doc") {
  Document doc;
  doc.episode_id = std::move(id);
  std::size_t offset = 0;
  for (const auto& words : sentences) {
    Sentence s;
    s.index = doc.sentences.size();
    s.span.begin = offset;
    for (const auto& w : words) {
      if (!s.raw_text.empty()) s.raw_text.push_back(' ');
      const std::size_t begin = offset + s.raw_text.size();
      s.raw_text += w;
      s.tokens.push_back({w, {begin, begin + w.size()}});
    }
    s.span.end = offset + s.raw_text.size();
    offset = s.span.end + 1;
    doc.total_tokens += s.tokens.size();
    doc.sentences.push_back(std::move(s));
  }
  return doc;
}

inline std::vector<std::string> random_tokens(std::mt19937_64& rng, std::size_t len,
                                              std::size_t alphabet) {
  std::uniform_int_distribution<std::size_t> pick(0, alphabet - 1);
  std::vector<std::string> out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) out.push_back("w" + std::to_string(pick(rng)));
  return out;
}

// Sentences of 1..max_len tokens over a small alphabet, so n-grams repeat.
inline Document random_doc(std::mt19937_64& rng, std::size_t sentences, std::size_t max_len,
                           std::size_t alphabet, std::string id = "doc") {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::vector<std::vector<std::string>> s;
  for (std::size_t i = 0; i < sentences; ++i) s.push_back(random_tokens(rng, len(rng), alphabet));
  return make_doc(s, std::move(id));
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << content;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("podselect-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace podselect::testing
