#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "podselect/abstractive.hpp"
#include "podselect/corpus.hpp"
#include "podselect/evalharness.hpp"

namespace podselect::cli {

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

// Each returns the process exit code: 0 when every episode went through,
// 1 when some episode failed (the others are still written). Fatal problems
// are thrown; the caller maps ConfigError to 2 and anything else to 1.
int cmd_preprocess(const PipelineConfig& cfg, Streams io);
int cmd_select(const PipelineConfig& cfg, Streams io);
int cmd_summarize(const PipelineConfig& cfg, Streams io);
int cmd_evaluate(const PipelineConfig& cfg, Streams io);
int cmd_pipeline(const PipelineConfig& cfg, Streams io);

// File names inside a pipeline output directory.
namespace artifacts {
inline constexpr const char* kKept = "kept.jsonl";
inline constexpr const char* kFilterReport = "filter_report.json";
inline constexpr const char* kSplits = "splits.jsonl";
inline constexpr const char* kSelections = "selections.jsonl";
inline constexpr const char* kSummaries = "summaries.jsonl";
std::string report_name(TableFormat format);
}  // namespace artifacts

// Helpers shared with tests.
SelectionResult select_episode(const Episode& episode, const PipelineConfig& cfg);
std::unique_ptr<Backend> make_backend(const PipelineConfig& cfg);
// Reads {"id", "description"|"reference"} records.
std::map<std::string, std::string> load_references(const std::filesystem::path& path);

}  // namespace podselect::cli
