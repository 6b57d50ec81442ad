#include "newsattn/agreement.hpp"

#include <map>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "newsattn/error.hpp"

namespace newsattn {

Agreement parse_agreement(std::string_view text) {
  if (text == "strong") return Agreement::Strong;
  if (text == "partial") return Agreement::Partial;
  if (text == "weak" || text == "none" || text == "weak/none") return Agreement::WeakOrNone;
  throw ParseError(fmt::format("unknown agreement category '{}'", text));
}

std::string_view agreement_name(Agreement a) {
  switch (a) {
    case Agreement::Strong: return "strong";
    case Agreement::Partial: return "partial";
    case Agreement::WeakOrNone: return "weak";
  }
  return "";
}

std::vector<LabelRecord> read_label_file(std::istream& in) {
  std::vector<LabelRecord> out;
  try {
    auto doc = nlohmann::json::parse(in);
    std::string file_coder;
    const nlohmann::json* list = &doc;
    if (doc.is_object()) {
      file_coder = doc.value("coder_id", "");
      list = &doc.at("labels");
    }
    for (const auto& item : *list) {
      LabelRecord r;
      r.topic_id = item.at("topic_id").get<std::size_t>();
      r.coder_id = item.value("coder_id", file_coder);
      r.label = item.value("label", "");
      r.agreement = parse_agreement(item.at("agreement").get<std::string>());
      if (r.coder_id.empty()) throw ParseError(fmt::format("label for topic {} has no coder_id", r.topic_id));
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("label file: {}", e.what()));
  }
  return out;
}

std::string write_label_file(const std::string& coder_id, const std::vector<LabelRecord>& records) {
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& r : records) {
    labels.push_back({{"topic_id", r.topic_id},
                      {"coder_id", r.coder_id},
                      {"label", r.label},
                      {"agreement", agreement_name(r.agreement)}});
  }
  return nlohmann::json{{"coder_id", coder_id}, {"labels", labels}}.dump(2);
}

AgreementSummary agreement_summary(const std::vector<LabelRecord>& records) {
  std::map<std::size_t, std::vector<const LabelRecord*>> by_topic;
  for (const auto& r : records) by_topic[r.topic_id].push_back(&r);

  AgreementSummary s;
  std::size_t strong = 0, mixed = 0, partial = 0, weak = 0;
  for (const auto& [topic, list] : by_topic) {
    std::set<std::string> coders;
    for (const auto* r : list) coders.insert(r->coder_id);
    if (list.size() != 2 || coders.size() != 2) {
      s.excluded.push_back(topic);
      continue;
    }
    const auto a = list[0]->agreement;
    const auto b = list[1]->agreement;
    if (a == Agreement::WeakOrNone || b == Agreement::WeakOrNone) {
      ++weak;
    } else if (a == Agreement::Strong && b == Agreement::Strong) {
      ++strong;
    } else if (a == Agreement::Partial && b == Agreement::Partial) {
      ++partial;
    } else {
      ++mixed;
    }
  }
  s.topics = strong + mixed + partial + weak;
  if (s.topics > 0) {
    const double n = static_cast<double>(s.topics);
    s.unanimous_strong = 100.0 * static_cast<double>(strong) / n;
    s.strong_partial = 100.0 * static_cast<double>(mixed) / n;
    s.unanimous_partial = 100.0 * static_cast<double>(partial) / n;
    s.weak_or_none = 100.0 * static_cast<double>(weak) / n;
  }
  return s;
}

std::string AgreementSummary::to_json() const {
  return nlohmann::json{{"topics", topics},
                        {"unanimous_strong", unanimous_strong},
                        {"strong_partial", strong_partial},
                        {"unanimous_partial", unanimous_partial},
                        {"weak_or_none", weak_or_none},
                        {"excluded", excluded}}
      .dump(2);
}

}  // namespace newsattn
