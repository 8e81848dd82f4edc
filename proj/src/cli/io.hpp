#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "podselect/serialize.hpp"

namespace podselect::cli {

// Writes `<path>.partial` and renames it over `path`, so an interrupted run
// never leaves a truncated file under the final name. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::filesystem::path partial_path(const std::filesystem::path& path);

// Parses one JSON value per non-blank line. Throws IoError when the file
// cannot be read and ParseError (with the line number) on bad JSON.
std::vector<Json> read_jsonl(const std::filesystem::path& path);

std::string to_jsonl(const std::vector<Json>& rows);

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results must be
// stored by index by the caller; the first exception escaping fn is
// rethrown after all workers finish.
void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& fn);

std::size_t default_jobs();

}  // namespace podselect::cli
