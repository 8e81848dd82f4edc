#include "podselect/serialize.hpp"

#include "podselect/errors.hpp"

namespace podselect {

Json episode_to_json(const Episode& ep) {
  Json j = {{"id", ep.id},
            {"show_id", ep.show_id},
            {"transcript", ep.transcript},
            {"description", ep.description},
            {"show_description", ep.show_description}};
  if (ep.duration_seconds) j["duration_seconds"] = *ep.duration_seconds;
  return j;
}

Json filter_report_to_json(const FilterReport& report) {
  Json reasons = Json::object();
  for (const auto& [id, reason] : report.reasons) reasons[id] = reject_reason_name(reason);
  return {{"input", report.input_count},
          {"kept", report.kept_count},
          {"rejected_by_rule", report.rejected_by_rule},
          {"reasons", reasons}};
}

std::string split_to_jsonl(const SplitAssignment& split) {
  std::string out;
  for (const auto& [id, bucket] : split.assignments) {
    out += Json{{"id", id}, {"split", split_name(bucket)}}.dump();
    out.push_back('\n');
  }
  return out;
}

Json selection_to_json(const SelectionResult& r, bool with_diagnostics) {
  Json j = {{"id", r.episode_id},
            {"strategy", strategy_name(r.strategy)},
            {"indices", r.sentence_indices},
            {"tokens", r.selected_token_count}};
  if (!with_diagnostics) return j;
  if (!r.window_scores.empty()) {
    Json arr = Json::array();
    for (const auto& w : r.window_scores) {
      arr.push_back({{"start", w.start}, {"end", w.end}, {"score", w.score}});
    }
    j["window_scores"] = std::move(arr);
  }
  if (!r.sentence_scores.empty()) {
    Json arr = Json::array();
    for (const auto& s : r.sentence_scores) {
      arr.push_back({{"index", s.index}, {"score", s.score}});
    }
    j["sentence_scores"] = std::move(arr);
  }
  if (!r.topic_relevances.empty()) {
    Json arr = Json::array();
    for (const auto& t : r.topic_relevances) {
      arr.push_back({{"sentence", t.sentence_index}, {"topic", t.topic_id}, {"score", t.score}});
    }
    j["topic_relevances"] = std::move(arr);
  }
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

SelectionResult selection_from_json(const Json& j) {
  try {
    SelectionResult r;
    r.episode_id = j.at("id").get<std::string>();
    r.strategy = parse_strategy(j.at("strategy").get<std::string>());
    r.sentence_indices = j.at("indices").get<std::vector<std::size_t>>();
    r.selected_token_count = j.at("tokens").get<std::size_t>();
    if (auto it = j.find("window_scores"); it != j.end()) {
      for (const auto& w : *it) {
        r.window_scores.push_back({w.at("start").get<std::size_t>(),
                                   w.at("end").get<std::size_t>(),
                                   w.at("score").get<double>()});
      }
    }
    if (auto it = j.find("sentence_scores"); it != j.end()) {
      for (const auto& s : *it) {
        r.sentence_scores.push_back({s.at("index").get<std::size_t>(),
                                     s.at("score").get<double>()});
      }
    }
    if (auto it = j.find("topic_relevances"); it != j.end()) {
      for (const auto& t : *it) {
        r.topic_relevances.push_back({t.at("sentence").get<std::size_t>(),
                                      t.at("topic").get<std::size_t>(),
                                      t.at("score").get<double>()});
      }
    }
    if (auto it = j.find("notes"); it != j.end()) {
      r.notes = it->get<std::vector<std::string>>();
    }
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(0, std::string("malformed selection record: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(0, std::string("malformed selection record: ") + e.what());
  }
}

Json summary_to_json(const Summary& s) {
  return {{"id", s.episode_id}, {"summary", s.text}, {"backend", s.backend_id}};
}

Summary summary_from_json(const Json& j) {
  try {
    Summary s;
    s.episode_id = j.at("id").get<std::string>();
    s.text = j.at("summary").get<std::string>();
    if (auto it = j.find("backend"); it != j.end()) s.backend_id = it->get<std::string>();
    return s;
  } catch (const Json::exception& e) {
    throw ParseError(0, std::string("malformed summary record: ") + e.what());
  }
}

Json topic_model_to_json(const TopicModel& m) {
  return {{"num_topics", m.num_topics},
          {"alpha", m.alpha},
          {"beta", m.beta},
          {"seed", m.seed},
          {"vocabulary", m.vocabulary},
          {"topic_word", m.topic_word},
          {"doc_topic_weight", m.doc_topic_weight},
          {"topic_token_mass", m.topic_token_mass},
          {"assignments", m.assignments}};
}

TopicModel topic_model_from_json(const Json& j) {
  try {
    TopicModel m;
    m.num_topics = j.at("num_topics").get<std::size_t>();
    m.alpha = j.at("alpha").get<double>();
    m.beta = j.at("beta").get<double>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    for (std::size_t i = 0; i < m.vocabulary.size(); ++i) m.word_ids[m.vocabulary[i]] = i;
    m.topic_word = j.at("topic_word").get<std::vector<std::vector<double>>>();
    m.doc_topic_weight = j.at("doc_topic_weight").get<std::vector<double>>();
    m.topic_token_mass = j.at("topic_token_mass").get<std::vector<double>>();
    m.assignments = j.at("assignments").get<std::vector<std::vector<std::uint32_t>>>();
    if (m.topic_word.size() != m.num_topics || m.doc_topic_weight.size() != m.num_topics ||
        m.topic_token_mass.size() != m.num_topics) {
      throw ParseError(0, "topic model arrays do not match num_topics");
    }
    for (const auto& row : m.topic_word) {
      if (row.size() != m.vocabulary.size()) {
        throw ParseError(0, "topic_word row does not match the vocabulary size");
      }
    }
    return m;
  } catch (const Json::exception& e) {
    throw ParseError(0, std::string("malformed topic model: ") + e.what());
  }
}

}  // namespace podselect
