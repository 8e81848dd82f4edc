#include "app.hpp"

#include <functional>
#include <iostream>
#include <memory>
#include <set>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "io.hpp"
#include "podselect/errors.hpp"

namespace podselect::cli {

namespace {

// Ties an option to its config-file key so values from the file only land
// in options the command line left untouched.
struct Binding {
  CLI::App* command;
  CLI::Option* option;
  std::string key;
  std::function<void(const Json&)> assign;
};

class Binder {
 public:
  Binder(CLI::App* command, std::vector<Binding>& sink) : command_(command), sink_(sink) {}

  template <typename T>
  CLI::Option* option(const std::string& flag, T& target, const std::string& help) {
    CLI::Option* opt = command_->add_option(flag, target, help);
    sink_.push_back({command_, opt, normalize_config_key(opt->get_lnames().front()),
                     [&target](const Json& j) { target = j.get<T>(); }});
    return opt;
  }

  CLI::App* command() const { return command_; }

  CLI::Option* flag(const std::string& flag, bool& target, const std::string& help) {
    CLI::Option* opt = command_->add_flag(flag, target, help);
    sink_.push_back({command_, opt, normalize_config_key(opt->get_lnames().front()),
                     [&target](const Json& j) { target = j.get<bool>(); }});
    return opt;
  }

 private:
  CLI::App* command_;
  std::vector<Binding>& sink_;
};

void add_io_options(Binder& b, PipelineConfig& cfg, const std::string& input_help,
                    const std::string& output_help) {
  b.option("-i,--input", cfg.input, input_help);
  b.option("-o,--output", cfg.output, output_help);
}

void add_episode_format_option(Binder& b, PipelineConfig& cfg) {
  b.option("--input-format", cfg.input_format, "Episode file format")
      ->check(CLI::IsMember({"jsonl", "tsv"}));
}

void add_jobs_option(Binder& b, PipelineConfig& cfg) {
  b.option("-j,--jobs", cfg.jobs, "Worker threads (default: logical cores)")
      ->check(CLI::PositiveNumber);
}

void add_filter_options(Binder& b, PipelineConfig& cfg) {
  b.option("--desc-min-chars", cfg.desc_min_chars, "Reject descriptions shorter than this");
  b.option("--desc-max-chars", cfg.desc_max_chars, "Reject descriptions longer than this");
  b.option("--duplicate-threshold", cfg.duplicate_threshold,
           "Jaccard similarity at which a description counts as a duplicate");
  b.option("--show-threshold", cfg.show_threshold,
           "Jaccard similarity to the show description at which an episode is dropped");
  b.option("--desc-min-tokens", cfg.desc_min_tokens,
           "Minimum tokens left after cleaning a description");
  b.option("--english-ratio", cfg.english_ratio,
           "Minimum stopword ratio for a description to count as English");
  b.option("--profanity-list", cfg.profanity_list,
           "Word list file for the profanity rule (default: bundled list)");
  b.option("--split-ratios", cfg.split_ratios, "Train, validation and test fractions")
      ->expected(3);
}

void add_select_options(Binder& b, PipelineConfig& cfg) {
  b.option("-s,--strategy", cfg.strategy, "Sentence selection strategy")
      ->check(CLI::IsMember({"window", "novelty", "topic", "none"}));
  b.option("-w,--window-size", cfg.window_size, "Sentences per window")
      ->default_str("40 for window, 25 for novelty");
  b.option("-k,--top-k", cfg.top_k, "Best single sentences merged in by novelty");
  b.option("--topics", cfg.topics, "LDA topics for the topic strategy");
  b.option("--alpha", cfg.alpha, "LDA document-topic prior")->default_str("50/topics");
  b.option("--beta", cfg.beta, "LDA topic-word prior");
  b.option("--iterations", cfg.iterations, "Gibbs sweeps");
  b.option("--burn-in", cfg.burn_in, "Sweeps discarded before averaging");
  b.flag("--no-rouge-l", cfg.no_rouge_l, "Score windows with ROUGE-1 and ROUGE-2 only");
  b.flag("--diagnostics", cfg.diagnostics, "Include per-window and per-sentence scores");
}

void add_budget_option(Binder& b, PipelineConfig& cfg) {
  b.option("-b,--budget", cfg.budget, "Token budget of the summarizer input");
}

void add_backend_options(Binder& b, PipelineConfig& cfg) {
  b.option("--backend", cfg.backend, "Summarizer backend")
      ->check(CLI::IsMember({"null", "remote"}));
  b.option("--endpoint", cfg.endpoint, "Base URL of the remote backend (http://host:port)");
  b.option("--timeout-ms", cfg.timeout_ms, "Remote request timeout");
  b.option("--attempts", cfg.attempts, "Remote attempts per episode");
  b.option("--backoff-ms", cfg.backoff_ms, "First retry delay, doubled on each retry");
  b.option("--max-length", cfg.max_length, "Summary length hint sent to the remote backend")
      ->default_str("unset");
}

void add_eval_options(Binder& b, PipelineConfig& cfg) {
  b.option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  b.option("--method", cfg.method, "Method label in the report")
      ->default_str("strategy or summaries file name");
  b.flag("--raw-references", cfg.raw_references,
         "Score against descriptions without cleaning them");
}

void add_common_options(Binder& b, PipelineConfig& cfg) {
  b.flag("--stem", cfg.stem, "Strip plural endings before matching tokens");
  // Not bound to a config key: it names the config file itself.
  b.command()->add_option("-c,--config", cfg.config_path, "JSON config file")
      ->envname("PODSELECT_CONFIG");
}

void apply_config(const Json& file, CLI::App* command, const std::vector<Binding>& bindings,
                  const std::string& path) {
  std::set<std::string> known;
  for (const auto& b : bindings) known.insert(b.key);
  for (const auto& [key, value] : file.items()) {
    if (!known.count(normalize_config_key(key))) {
      throw ConfigError("config file " + path + ": unknown key '" + key + "'");
    }
  }
  for (const auto& [key, value] : file.items()) {
    const std::string norm = normalize_config_key(key);
    for (const auto& b : bindings) {
      if (b.command != command || b.key != norm || b.option->count() > 0) continue;
      try {
        b.assign(value);
      } catch (const Json::exception& e) {
        throw ConfigError("config file " + path + ": bad value for '" + key + "': " + e.what());
      }
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  PipelineConfig cfg;
  cfg.jobs = default_jobs();

  CLI::App app{"Two-phase podcast summarization: select transcript sentences, then summarize.",
               "podselect"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.get_formatter()->column_width(34);

  std::vector<Binding> bindings;
  auto* pre = app.add_subcommand("preprocess", "Filter episodes and split them into train/validation/test");
  auto* sel = app.add_subcommand("select", "Pick transcript sentences for each episode");
  auto* sum = app.add_subcommand("summarize", "Run the summarizer over selected sentences");
  auto* eva = app.add_subcommand("evaluate", "Score summaries against episode descriptions (ROUGE-L)");
  auto* pip = app.add_subcommand("pipeline", "Run preprocess, select, summarize and evaluate");
  for (auto* c : {pre, sel, sum, eva, pip}) c->option_defaults()->always_capture_default();

  {
    Binder b(pre, bindings);
    add_io_options(b, cfg, "Episode file", "Output directory");
    add_episode_format_option(b, cfg);
    add_filter_options(b, cfg);
    b.option("--seed", cfg.seed, "Seed for the dataset split");
    add_common_options(b, cfg);
  }
  {
    Binder b(sel, bindings);
    add_io_options(b, cfg, "Episode file", "Selections file (JSONL)");
    add_episode_format_option(b, cfg);
    add_select_options(b, cfg);
    b.option("--seed", cfg.seed, "Seed for the topic sampler");
    add_budget_option(b, cfg);
    add_jobs_option(b, cfg);
    add_common_options(b, cfg);
  }
  {
    Binder b(sum, bindings);
    add_io_options(b, cfg, "Episode file", "Summaries file (JSONL)");
    add_episode_format_option(b, cfg);
    b.option("--selections", cfg.selections, "Selections file from the select command");
    add_budget_option(b, cfg);
    add_backend_options(b, cfg);
    add_jobs_option(b, cfg);
    add_common_options(b, cfg);
  }
  {
    Binder b(eva, bindings);
    add_io_options(b, cfg, "Summaries file (JSONL)", "Report file (default: stdout)");
    b.option("--references", cfg.references,
             "JSONL with \"id\" and \"description\" (an episode file works)");
    add_eval_options(b, cfg);
    add_common_options(b, cfg);
  }
  {
    Binder b(pip, bindings);
    add_io_options(b, cfg, "Episode file", "Output directory");
    add_episode_format_option(b, cfg);
    add_filter_options(b, cfg);
    add_select_options(b, cfg);
    b.option("--seed", cfg.seed, "Seed for the dataset split and the topic sampler");
    add_budget_option(b, cfg);
    add_backend_options(b, cfg);
    add_eval_options(b, cfg);
    b.option("--eval-split", cfg.eval_split, "Split to select, summarize and score")
        ->check(CLI::IsMember({"all", "train", "validation", "test"}));
    b.flag("--resume", cfg.resume, "Skip stages whose outputs already exist");
    add_jobs_option(b, cfg);
    add_common_options(b, cfg);
  }

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("podselect");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* command = nullptr;
  for (auto* c : {pre, sel, sum, eva, pip}) {
    if (c->parsed()) command = c;
  }

  try {
    if (!cfg.config_path.empty()) {
      apply_config(load_config_file(cfg.config_path), command, bindings, cfg.config_path);
    }
    cfg.validate();
  } catch (const Error& e) {
    err << "podselect: " << e.what() << "\n";
    return 2;
  }

  const Streams io{out, err};
  try {
    if (command == pre) return cmd_preprocess(cfg, io);
    if (command == sel) return cmd_select(cfg, io);
    if (command == sum) return cmd_summarize(cfg, io);
    if (command == eva) return cmd_evaluate(cfg, io);
    return cmd_pipeline(cfg, io);
  } catch (const ConfigError& e) {
    err << "podselect: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "podselect: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace podselect::cli
