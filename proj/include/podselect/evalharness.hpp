#pragma once

#include <map>
#include <string>
#include <vector>

#include "podselect/abstractive.hpp"
#include "podselect/rouge.hpp"
#include "podselect/text.hpp"

namespace podselect {

// ROUGE-L precision / recall / F as percentages rounded to 2 decimals.
struct EvalRow {
  std::string method_id;
  double rouge_l_p = 0.0;
  double rouge_l_r = 0.0;
  double rouge_l_f = 0.0;

  friend bool operator==(const EvalRow&, const EvalRow&) = default;
};

struct EvalOptions {
  // Score against clean_description(reference) rather than the raw text.
  bool clean_references = true;
  TokenizerConfig tokenizer;
};

// x * 100 rounded half-to-even at the second decimal.
double to_percent(double fraction);

// Macro-average of per-episode ROUGE-L between each summary and its
// reference. Throws ArgumentError listing every summary id with no
// reference, or when there are no summaries.
EvalRow evaluate_run(const std::string& method_id,
                     const std::vector<Summary>& summaries,
                     const std::map<std::string, std::string>& references,
                     const EvalOptions& options = {});

enum class TableFormat { kText, kCsv, kJson };

// Throws ConfigError for unknown names.
TableFormat parse_table_format(const std::string& name);

// Columns: method, P, R, F. Throws ArgumentError on an empty row list.
std::string render_table(const std::vector<EvalRow>& rows, TableFormat format);

}  // namespace podselect
