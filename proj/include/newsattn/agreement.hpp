#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "newsattn/error.hpp"

namespace newsattn {

enum class Agreement { Strong, Partial, WeakOrNone };

/// Accepts "strong", "partial", "weak" / "none" / "weak/none".
Agreement parse_agreement(std::string_view text);
std::string_view agreement_name(Agreement a);

/// One coder's label for one topic and that coder's agreement judgement.
struct LabelRecord {
  std::size_t topic_id = 0;
  std::string coder_id;
  std::string label;
  Agreement agreement = Agreement::WeakOrNone;

  bool operator==(const LabelRecord&) const = default;
};

/// Label file: {"coder_id": ..., "labels": [{"topic_id", "label", "agreement"}, ...]}.
/// Records may carry their own coder_id; a bare array of records is accepted too.
std::vector<LabelRecord> read_label_file(std::istream& in);
std::string write_label_file(const std::string& coder_id, const std::vector<LabelRecord>& records);

struct AgreementSummary {
  std::size_t topics = 0;  // topics with exactly two coders
  double unanimous_strong = 0.0;
  double strong_partial = 0.0;
  double unanimous_partial = 0.0;
  double weak_or_none = 0.0;
  /// Topics left out because they did not have exactly two coder records.
  std::vector<std::size_t> excluded;

  std::string to_json() const;
};

/// Percentage breakdown over topics labelled by exactly two distinct coders.
/// Any weak/none judgement puts a topic in the last bucket.
AgreementSummary agreement_summary(const std::vector<LabelRecord>& records);

}  // namespace newsattn
