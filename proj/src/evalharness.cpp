#include "podselect/evalharness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "podselect/errors.hpp"
#include "podselect/preprocess.hpp"

namespace podselect {

namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

double to_percent(double fraction) {
  // nearbyint honours the default round-to-nearest-even mode.
  return std::nearbyint(fraction * 10000.0) / 100.0;
}

EvalRow evaluate_run(const std::string& method_id,
                     const std::vector<Summary>& summaries,
                     const std::map<std::string, std::string>& references,
                     const EvalOptions& options) {
  if (summaries.empty()) throw ArgumentError("no summaries to evaluate");
  std::vector<std::string> missing;
  for (const Summary& s : summaries) {
    if (!references.count(s.episode_id)) missing.push_back(s.episode_id);
  }
  if (!missing.empty()) {
    std::string ids;
    for (const auto& id : missing) ids += (ids.empty() ? "" : ", ") + id;
    throw ArgumentError("no reference for: " + ids);
  }

  // Sum in id order so the result does not depend on input order.
  std::vector<const Summary*> ordered;
  for (const Summary& s : summaries) ordered.push_back(&s);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Summary* a, const Summary* b) {
                     return a->episode_id < b->episode_id;
                   });

  double p = 0.0, r = 0.0, f = 0.0;
  for (const Summary* s : ordered) {
    const std::string& raw = references.at(s->episode_id);
    const std::string ref_text = options.clean_references ? clean_description(raw) : raw;
    const auto cand = token_texts(tokenize(s->text, options.tokenizer));
    const auto ref = token_texts(tokenize(ref_text, options.tokenizer));
    const RougeScore score = rouge_l(cand, ref);
    p += score.precision;
    r += score.recall;
    f += score.f1;
  }
  const double n = static_cast<double>(summaries.size());
  return {method_id, to_percent(p / n), to_percent(r / n), to_percent(f / n)};
}

TableFormat parse_table_format(const std::string& name) {
  if (name == "text") return TableFormat::kText;
  if (name == "csv") return TableFormat::kCsv;
  if (name == "json") return TableFormat::kJson;
  throw ConfigError("unknown report format '" + name + "' (expected text|csv|json)");
}

std::string render_table(const std::vector<EvalRow>& rows, TableFormat format) {
  if (rows.empty()) throw ArgumentError("cannot render an empty table");
  std::string out;
  switch (format) {
    case TableFormat::kCsv: {
      out = "method,rouge_l_p,rouge_l_r,rouge_l_f\n";
      for (const EvalRow& row : rows) {
        out += csv_field(row.method_id) + "," + fixed2(row.rouge_l_p) + "," +
               fixed2(row.rouge_l_r) + "," + fixed2(row.rouge_l_f) + "\n";
      }
      break;
    }
    case TableFormat::kJson: {
      nlohmann::json arr = nlohmann::json::array();
      for (const EvalRow& row : rows) {
        arr.push_back({{"method", row.method_id},
                       {"rouge_l_p", row.rouge_l_p},
                       {"rouge_l_r", row.rouge_l_r},
                       {"rouge_l_f", row.rouge_l_f}});
      }
      out = arr.dump(2) + "\n";
      break;
    }
    case TableFormat::kText: {
      // Column widths fit the widest cell; values are right-aligned.
      std::vector<std::vector<std::string>> cells = {{"Method", "P", "R", "F"}};
      for (const EvalRow& row : rows) {
        cells.push_back({row.method_id, fixed2(row.rouge_l_p),
                         fixed2(row.rouge_l_r), fixed2(row.rouge_l_f)});
      }
      std::vector<std::size_t> width(4, 0);
      for (const auto& line : cells) {
        for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], line[c].size());
      }
      for (const auto& line : cells) {
        std::string text = line[0] + std::string(width[0] - line[0].size(), ' ');
        for (std::size_t c = 1; c < 4; ++c) {
          text += " | " + std::string(width[c] - line[c].size(), ' ') + line[c];
        }
        out += text + "\n";
      }
      break;
    }
  }
  return out;
}

}  // namespace podselect
