#include "commands.hpp"

#include <unordered_map>
#include <utility>

#include "io.hpp"
#include "podselect/errors.hpp"
#include "podselect/preprocess.hpp"
#include "podselect/select_rouge.hpp"
#include "podselect/serialize.hpp"
#include "podselect/topics.hpp"

namespace podselect::cli {

namespace fs = std::filesystem;

namespace {

struct Failure {
  std::string id;
  std::string message;
};

void report_failures(const std::vector<Failure>& failures, const char* stage, Streams io) {
  for (const auto& f : failures) {
    io.err << "podselect: " << stage << ": episode " << f.id << ": " << f.message << "\n";
  }
}

std::vector<Episode> read_episodes(const fs::path& path, InputFormat format, Streams io,
                                   int& status) {
  LoadedEpisodes loaded = load_episodes(path, format);
  for (const auto& e : loaded.errors) {
    io.err << "podselect: " << path.string() << ": " << e.what() << "\n";
    status = 1;
  }
  return std::move(loaded.episodes);
}

SplitAssignment assign_splits(const std::vector<Episode>& kept, const PipelineConfig& cfg,
                              Streams io) {
  std::vector<std::string> ids;
  ids.reserve(kept.size());
  for (const auto& ep : kept) ids.push_back(ep.id);
  if (ids.size() >= 3) {
    const auto& r = cfg.split_ratios;
    return split_dataset(ids, {r[0], r[1], r[2]}, cfg.seed);
  }
  // Too few episodes to fill three buckets; everything trains.
  SplitAssignment s;
  s.seed = cfg.seed;
  for (const auto& id : ids) s.assignments.emplace_back(id, Split::kTrain);
  if (!ids.empty()) {
    io.err << "podselect: preprocess: only " << ids.size()
           << " episode(s) kept, all assigned to train\n";
  }
  return s;
}

int run_preprocess(const fs::path& input, InputFormat format, const fs::path& out_dir,
                   const PipelineConfig& cfg, Streams io) {
  int status = 0;
  const std::vector<Episode> episodes = read_episodes(input, format, io, status);
  const FilterOutcome outcome = filter_corpus(episodes, cfg.filter_config());
  const SplitAssignment split = assign_splits(outcome.kept, cfg, io);

  std::vector<Json> kept;
  kept.reserve(outcome.kept.size());
  for (const auto& ep : outcome.kept) kept.push_back(episode_to_json(ep));
  write_file_atomic(out_dir / artifacts::kKept, to_jsonl(kept));
  write_file_atomic(out_dir / artifacts::kFilterReport,
                    filter_report_to_json(outcome.report).dump(2) + "\n");
  write_file_atomic(out_dir / artifacts::kSplits, split_to_jsonl(split));
  io.err << "podselect: preprocess: kept " << outcome.report.kept_count << " of "
         << outcome.report.input_count << " episodes\n";
  return status;
}

int run_select(const std::vector<Episode>& episodes, const fs::path& output,
               const PipelineConfig& cfg, Streams io) {
  std::vector<std::optional<Json>> rows(episodes.size());
  std::vector<std::optional<Failure>> failed(episodes.size());
  parallel_for(episodes.size(), cfg.jobs, [&](std::size_t i) {
    try {
      rows[i] = selection_to_json(select_episode(episodes[i], cfg), cfg.diagnostics);
    } catch (const Error& e) {
      failed[i] = Failure{episodes[i].id, e.what()};
    }
  });
  std::vector<Json> out;
  std::vector<Failure> failures;
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    if (rows[i]) out.push_back(std::move(*rows[i]));
    if (failed[i]) failures.push_back(std::move(*failed[i]));
  }
  write_file_atomic(output, to_jsonl(out));
  report_failures(failures, "select", io);
  io.err << "podselect: select: " << out.size() << " of " << episodes.size()
         << " episodes selected (" << cfg.strategy << ")\n";
  return failures.empty() ? 0 : 1;
}

int run_summarize(const std::vector<Episode>& episodes,
                  const std::vector<SelectionResult>& selections, const fs::path& output,
                  const PipelineConfig& cfg, Streams io) {
  std::unordered_map<std::string, const Episode*> by_id;
  for (const auto& ep : episodes) by_id.emplace(ep.id, &ep);
  // Validates the backend settings once before fanning out.
  make_backend(cfg);

  std::vector<std::optional<Json>> rows(selections.size());
  std::vector<std::optional<Failure>> failed(selections.size());
  parallel_for(selections.size(), cfg.jobs, [&](std::size_t i) {
    const SelectionResult& sel = selections[i];
    try {
      auto it = by_id.find(sel.episode_id);
      if (it == by_id.end()) throw ArgumentError("no transcript for this episode");
      const Document doc = build_document(*it->second, cfg.tokenizer_config());
      const BackendInput input = enforce_budget(sel, doc, cfg.budget);
      auto backend = make_backend(cfg);
      Summary s = summarize(input, *backend);
      rows[i] = summary_to_json(s);
    } catch (const Error& e) {
      failed[i] = Failure{sel.episode_id, e.what()};
    }
  });
  std::vector<Json> out;
  std::vector<Failure> failures;
  for (std::size_t i = 0; i < selections.size(); ++i) {
    if (rows[i]) out.push_back(std::move(*rows[i]));
    if (failed[i]) failures.push_back(std::move(*failed[i]));
  }
  write_file_atomic(output, to_jsonl(out));
  report_failures(failures, "summarize", io);
  io.err << "podselect: summarize: " << out.size() << " of " << selections.size()
         << " summaries written (" << cfg.backend << " backend)\n";
  return failures.empty() ? 0 : 1;
}

std::vector<SelectionResult> read_selections(const fs::path& path) {
  std::vector<SelectionResult> out;
  for (const Json& row : read_jsonl(path)) out.push_back(selection_from_json(row));
  return out;
}

std::vector<Summary> read_summaries(const fs::path& path) {
  std::vector<Summary> out;
  for (const Json& row : read_jsonl(path)) out.push_back(summary_from_json(row));
  return out;
}

std::string render_report(const std::string& method, const std::vector<Summary>& summaries,
                          const std::map<std::string, std::string>& references,
                          const PipelineConfig& cfg) {
  EvalOptions options;
  options.clean_references = !cfg.raw_references;
  options.tokenizer = cfg.tokenizer_config();
  const EvalRow row = evaluate_run(method, summaries, references, options);
  return render_table({row}, parse_table_format(cfg.format));
}

void require_input(const PipelineConfig& cfg) {
  if (cfg.input.empty()) throw ConfigError("--input is required");
}

void require_output(const PipelineConfig& cfg) {
  if (cfg.output.empty()) throw ConfigError("--output is required");
}

bool all_exist(const fs::path& dir, std::initializer_list<std::string> names) {
  for (const auto& n : names) {
    if (!fs::is_regular_file(dir / n)) return false;
  }
  return true;
}

}  // namespace

std::string artifacts::report_name(TableFormat format) {
  switch (format) {
    case TableFormat::kCsv:
      return "report.csv";
    case TableFormat::kJson:
      return "report.json";
    case TableFormat::kText:
      break;
  }
  return "report.txt";
}

SelectionResult select_episode(const Episode& episode, const PipelineConfig& cfg) {
  const Document doc = build_document(episode, cfg.tokenizer_config());
  switch (cfg.strategy_enum()) {
    case Strategy::kWindow:
      return select_window(doc, cfg.selector_config());
    case Strategy::kNovelty:
      return select_novelty(doc, cfg.selector_config());
    case Strategy::kTopic: {
      const TopicModel model = fit_lda(doc, cfg.topic_config());
      return select_by_topics(doc, model, cfg.budget);
    }
    case Strategy::kNone:
      break;
  }
  return select_head(doc);
}

std::unique_ptr<Backend> make_backend(const PipelineConfig& cfg) {
  if (cfg.backend == "null") return std::make_unique<NullBackend>();
  if (cfg.backend == "remote") {
    RemoteBackendConfig rc;
    rc.endpoint = cfg.endpoint;
    rc.timeout = std::chrono::milliseconds(cfg.timeout_ms);
    rc.max_attempts = cfg.attempts;
    rc.initial_backoff = std::chrono::milliseconds(cfg.backoff_ms);
    if (cfg.max_length > 0) rc.max_length = cfg.max_length;
    return std::make_unique<RemoteBackend>(rc);
  }
  throw ConfigError("unknown backend '" + cfg.backend + "'");
}

std::map<std::string, std::string> load_references(const fs::path& path) {
  std::map<std::string, std::string> refs;
  std::size_t row_no = 0;
  for (const Json& row : read_jsonl(path)) {
    ++row_no;
    if (!row.is_object() || !row.contains("id") || !row["id"].is_string()) {
      throw ParseError(row_no, path.string() + ": reference record needs a string \"id\"");
    }
    const Json* text = nullptr;
    if (row.contains("description")) text = &row["description"];
    else if (row.contains("reference")) text = &row["reference"];
    if (text == nullptr || !text->is_string()) {
      throw ParseError(row_no, path.string() +
                                   ": reference record needs a \"description\" string");
    }
    refs[row["id"].get<std::string>()] = text->get<std::string>();
  }
  return refs;
}

int cmd_preprocess(const PipelineConfig& cfg, Streams io) {
  require_input(cfg);
  require_output(cfg);
  return run_preprocess(cfg.input, parse_input_format(cfg.input_format), cfg.output, cfg, io);
}

int cmd_select(const PipelineConfig& cfg, Streams io) {
  require_input(cfg);
  require_output(cfg);
  int status = 0;
  const auto episodes =
      read_episodes(cfg.input, parse_input_format(cfg.input_format), io, status);
  return std::max(status, run_select(episodes, cfg.output, cfg, io));
}

int cmd_summarize(const PipelineConfig& cfg, Streams io) {
  require_input(cfg);
  require_output(cfg);
  if (cfg.selections.empty()) throw ConfigError("--selections is required");
  int status = 0;
  const auto episodes =
      read_episodes(cfg.input, parse_input_format(cfg.input_format), io, status);
  const auto selections = read_selections(cfg.selections);
  return std::max(status, run_summarize(episodes, selections, cfg.output, cfg, io));
}

int cmd_evaluate(const PipelineConfig& cfg, Streams io) {
  require_input(cfg);
  if (cfg.references.empty()) throw ConfigError("--references is required");
  const auto summaries = read_summaries(cfg.input);
  const auto references = load_references(cfg.references);
  const std::string method =
      cfg.method.empty() ? fs::path(cfg.input).stem().string() : cfg.method;
  const std::string table = render_report(method, summaries, references, cfg);
  if (cfg.output.empty()) {
    io.out << table;
  } else {
    write_file_atomic(cfg.output, table);
  }
  return 0;
}

int cmd_pipeline(const PipelineConfig& cfg, Streams io) {
  require_input(cfg);
  require_output(cfg);
  const fs::path dir = cfg.output;
  const TableFormat format = parse_table_format(cfg.format);
  const std::string report = artifacts::report_name(format);
  int status = 0;
  // Once a stage reruns, everything downstream is stale.
  bool rerun = !cfg.resume;

  if (rerun || !all_exist(dir, {artifacts::kKept, artifacts::kFilterReport, artifacts::kSplits})) {
    rerun = true;
    status = std::max(status, run_preprocess(cfg.input, parse_input_format(cfg.input_format),
                                             dir, cfg, io));
  } else {
    io.err << "podselect: preprocess: outputs present, skipping\n";
  }

  int ignored = 0;
  std::vector<Episode> kept = read_episodes(dir / artifacts::kKept, InputFormat::kJsonl, io,
                                            ignored);
  if (cfg.eval_split != "all") {
    std::unordered_map<std::string, std::string> split_of;
    for (const Json& row : read_jsonl(dir / artifacts::kSplits)) {
      split_of[row.at("id").get<std::string>()] = row.at("split").get<std::string>();
    }
    std::erase_if(kept, [&](const Episode& ep) {
      auto it = split_of.find(ep.id);
      return it == split_of.end() || it->second != cfg.eval_split;
    });
  }

  if (rerun || !all_exist(dir, {artifacts::kSelections})) {
    rerun = true;
    status = std::max(status, run_select(kept, dir / artifacts::kSelections, cfg, io));
  } else {
    io.err << "podselect: select: outputs present, skipping\n";
  }

  if (rerun || !all_exist(dir, {artifacts::kSummaries})) {
    rerun = true;
    const auto selections = read_selections(dir / artifacts::kSelections);
    status = std::max(status,
                      run_summarize(kept, selections, dir / artifacts::kSummaries, cfg, io));
  } else {
    io.err << "podselect: summarize: outputs present, skipping\n";
  }

  if (rerun || !all_exist(dir, {report})) {
    std::map<std::string, std::string> references;
    for (const auto& ep : kept) references[ep.id] = ep.description;
    const std::string method = cfg.method.empty() ? cfg.strategy : cfg.method;
    const std::string table =
        render_report(method, read_summaries(dir / artifacts::kSummaries), references, cfg);
    write_file_atomic(dir / report, table);
    io.err << "podselect: evaluate: wrote " << (dir / report).string() << "\n";
  } else {
    io.err << "podselect: evaluate: outputs present, skipping\n";
  }
  return status;
}

}  // namespace podselect::cli
