#pragma once

// JSON / JSONL wire formats of the pipeline artifacts.

#include <string>

#include "json.hpp"
#include "podselect/abstractive.hpp"
#include "podselect/corpus.hpp"
#include "podselect/preprocess.hpp"
#include "podselect/selection.hpp"
#include "podselect/topics.hpp"

namespace podselect {

using Json = nlohmann::json;

// {"id", "show_id", "transcript", "description", "show_description",
//  "duration_seconds"?}
Json episode_to_json(const Episode& ep);

// {"input", "kept", "rejected_by_rule": {rule: n}, "reasons": {id: reason}}
Json filter_report_to_json(const FilterReport& report);

// One {"id", "split"} object per line, input order.
std::string split_to_jsonl(const SplitAssignment& split);

// {"id", "strategy", "indices", "tokens"}; with diagnostics also
// "window_scores", "sentence_scores", "topic_relevances" and "notes" when
// non-empty.
Json selection_to_json(const SelectionResult& r, bool with_diagnostics);
// Throws ParseError on a malformed object.
SelectionResult selection_from_json(const Json& j);

// {"id", "summary", "backend"}
Json summary_to_json(const Summary& s);
Summary summary_from_json(const Json& j);

Json topic_model_to_json(const TopicModel& m);
TopicModel topic_model_from_json(const Json& j);

}  // namespace podselect
