#include <gtest/gtest.h>

#include <sstream>

#include "newsattn/agreement.hpp"

using namespace newsattn;

namespace {

void pair(std::vector<LabelRecord>& out, std::size_t topic, Agreement a, Agreement b) {
  out.push_back({topic, "ann", "label", a});
  out.push_back({topic, "bo", "label", b});
}

}  // namespace

TEST(Agreement, Names) {
  EXPECT_EQ(parse_agreement("strong"), Agreement::Strong);
  EXPECT_EQ(parse_agreement("partial"), Agreement::Partial);
  EXPECT_EQ(parse_agreement("weak/none"), Agreement::WeakOrNone);
  EXPECT_EQ(parse_agreement(agreement_name(Agreement::WeakOrNone)), Agreement::WeakOrNone);
  EXPECT_THROW(parse_agreement("maybe"), ParseError);
}

TEST(Agreement, AllStrong) {
  std::vector<LabelRecord> r;
  for (std::size_t t = 0; t < 4; ++t) pair(r, t, Agreement::Strong, Agreement::Strong);
  auto s = agreement_summary(r);
  EXPECT_EQ(s.topics, 4u);
  EXPECT_DOUBLE_EQ(s.unanimous_strong, 100.0);
  EXPECT_DOUBLE_EQ(s.strong_partial + s.unanimous_partial + s.weak_or_none, 0.0);
}

TEST(Agreement, ThirteenTopicHandTally) {
  // 7 unanimous strong, 3 strong/partial, 2 unanimous partial, 1 weak.
  std::vector<LabelRecord> r;
  std::size_t t = 0;
  for (int i = 0; i < 7; ++i) pair(r, t++, Agreement::Strong, Agreement::Strong);
  pair(r, t++, Agreement::Strong, Agreement::Partial);
  pair(r, t++, Agreement::Partial, Agreement::Strong);
  pair(r, t++, Agreement::Strong, Agreement::Partial);
  for (int i = 0; i < 2; ++i) pair(r, t++, Agreement::Partial, Agreement::Partial);
  pair(r, t++, Agreement::Strong, Agreement::WeakOrNone);
  r.push_back({99, "ann", "lonely", Agreement::Strong});  // one coder only
  auto s = agreement_summary(r);
  EXPECT_EQ(s.topics, 13u);
  EXPECT_DOUBLE_EQ(s.unanimous_strong, 700.0 / 13);
  EXPECT_DOUBLE_EQ(s.strong_partial, 300.0 / 13);
  EXPECT_DOUBLE_EQ(s.unanimous_partial, 200.0 / 13);
  EXPECT_DOUBLE_EQ(s.weak_or_none, 100.0 / 13);
  EXPECT_NEAR(s.unanimous_strong + s.strong_partial + s.unanimous_partial + s.weak_or_none, 100.0, 1e-9);
  EXPECT_EQ(s.excluded, std::vector<std::size_t>{99});
}

TEST(Agreement, ThreeRecordsOrSameCoderAreExcluded) {
  std::vector<LabelRecord> r;
  pair(r, 1, Agreement::Strong, Agreement::Strong);
  r.push_back({1, "cy", "extra", Agreement::Strong});
  r.push_back({2, "ann", "x", Agreement::Strong});
  r.push_back({2, "ann", "y", Agreement::Strong});
  auto s = agreement_summary(r);
  EXPECT_EQ(s.topics, 0u);
  EXPECT_EQ(s.excluded, (std::vector<std::size_t>{1, 2}));
}

TEST(LabelFile, RoundTripAndBareArray) {
  std::vector<LabelRecord> r = {{3, "ann", "Elections in \"X\"", Agreement::Partial}, {5, "ann", "", Agreement::Strong}};
  std::istringstream in(write_label_file("ann", r));
  EXPECT_EQ(read_label_file(in), r);

  std::istringstream bare(R"([{"topic_id": 1, "coder_id": "bo", "label": "Sport", "agreement": "strong"}])");
  auto back = read_label_file(bare);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].coder_id, "bo");

  std::istringstream bad(R"({"coder_id": "x", "labels": [{"topic_id": 1, "agreement": "great"}]})");
  EXPECT_THROW(read_label_file(bad), ParseError);
}
