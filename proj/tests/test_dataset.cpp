#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "nbaudit/dataset.hpp"

using namespace nbaudit;

namespace {

AttributeSchema two_col_schema() {
  return AttributeSchema({{"x", AttributeKind::continuous}, {"n", AttributeKind::count}}, "y");
}

std::string fixture(const std::string& name) {
  return std::string(NBAUDIT_SOURCE_DIR) + "/data/fixtures/" + name;
}

AttributeSchema adclick_schema() {
  return AttributeSchema({{"Daily Time Spent on Site", AttributeKind::continuous},
                          {"Age", AttributeKind::continuous},
                          {"Area Income", AttributeKind::continuous},
                          {"Daily Internet Usage", AttributeKind::continuous}},
                         "Clicked on Ad", "id");
}

}  // namespace

TEST(Schema, RejectsBadLayouts) {
  EXPECT_THROW(AttributeSchema({}, "y"), Error);
  EXPECT_THROW(AttributeSchema({{"a", AttributeKind::continuous}, {"a", AttributeKind::count}}, "y"),
               Error);
  EXPECT_THROW(AttributeSchema({{"y", AttributeKind::continuous}}, "y"), Error);
  EXPECT_THROW(AttributeSchema({{"a", AttributeKind::continuous}}, "y", "y"), Error);
}

TEST(LoadCsv, AdClickFixtureShape) {
  auto d = load_csv(fixture("adclick_synthetic.csv"), adclick_schema());
  EXPECT_EQ(d.size(), 1000u);
  EXPECT_EQ(d.schema().size(), 4u);
  EXPECT_EQ(d.records().front().id, "c0000");
}

TEST(LoadCsv, HeaderOnlyIsEmpty) {
  try {
    parse_csv_dataset("x,n,y\n", two_col_schema());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::data);
    EXPECT_NE(std::string(e.what()).find("empty dataset"), std::string::npos);
  }
  EXPECT_THROW(parse_csv_dataset("", two_col_schema()), Error);
}

TEST(LoadCsv, BadCellNamesRow) {
  std::string text = "x,n,y\n";
  for (int r = 1; r <= 9; ++r) text += (r == 7 ? "abc" : "1.5") + std::string(",2,") + (r % 2 ? "A" : "B") + "\n";
  try {
    parse_csv_dataset(text, two_col_schema());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    ASSERT_TRUE(e.row());
    EXPECT_EQ(*e.row(), 7u);
    EXPECT_NE(std::string(e.what()).find("row 7"), std::string::npos);
  }
}

TEST(LoadCsv, MissingColumnIsSchemaError) {
  try {
    parse_csv_dataset("x,y\n1,A\n2,B\n", two_col_schema());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::schema);
  }
}

TEST(LoadCsv, CountColumnRejectsFractions) {
  EXPECT_THROW(parse_csv_dataset("x,n,y\n1,2.5,A\n2,1,B\n", two_col_schema()), Error);
  EXPECT_THROW(parse_csv_dataset("x,n,y\n1,-1,A\n2,1,B\n", two_col_schema()), Error);
}

TEST(LoadCsv, QuotedFieldsAndExtraColumns) {
  auto d = parse_csv_dataset("note,x,n,y\n\"a, \"\"quoted\"\" note\",1.25,3,A\nplain,-2,0,B\n",
                             two_col_schema());
  ASSERT_EQ(d.size(), 2u);
  EXPECT_DOUBLE_EQ(d.records()[0].values[0], 1.25);
  EXPECT_EQ(d.records()[1].id, "1");  // row order ids
}

TEST(LoadCsv, SingleClassRejected) {
  EXPECT_THROW(parse_csv_dataset("x,n,y\n1,2,A\n2,1,A\n", two_col_schema()), Error);
}

TEST(LoadJsonl, ParsesObjects) {
  auto d = parse_jsonl_dataset("{\"x\": 1.5, \"n\": 2, \"y\": \"A\"}\n\n{\"x\": -1, \"n\": 0, \"y\": \"B\"}\n",
                               two_col_schema());
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.labels()[1].name(), "B");
  EXPECT_THROW(parse_jsonl_dataset("{\"x\": 1.5, \"y\": \"A\"}\n", two_col_schema()), Error);
  EXPECT_THROW(parse_jsonl_dataset("{not json}\n", two_col_schema()), Error);
}

TEST(Csv, CanonicalRoundTrip) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd(0, 1e3);
  std::uniform_int_distribution<int> cnt(0, 50);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Record> recs;
    std::vector<ClassLabel> labs;
    for (int i = 0; i < 30; ++i) {
      recs.push_back({{nd(rng), static_cast<double>(cnt(rng))}, "r" + std::to_string(i)});
      labs.emplace_back(i % 3 ? "keep, \"this\"" : "other");
    }
    AttributeSchema s({{"x", AttributeKind::continuous}, {"n", AttributeKind::count}}, "y", "rid");
    LabeledDataset d(s, recs, labs);
    auto text = to_csv(d);
    auto back = parse_csv_dataset(text, s);
    EXPECT_EQ(back, d);
    EXPECT_EQ(to_csv(back), text);
  }
}

TEST(Split, AdClickTwoThirds) {
  auto d = load_csv(fixture("adclick_synthetic.csv"), adclick_schema());
  auto [train, test] = split(d, {2.0 / 3.0, 99});
  EXPECT_EQ(train.size(), 667u);
  EXPECT_EQ(test.size(), 333u);
  std::set<std::string> ids;
  for (const auto& r : train.records()) ids.insert(r.id);
  for (const auto& r : test.records()) EXPECT_FALSE(ids.count(r.id));
}

TEST(Split, Deterministic) {
  auto a = split_indices(1000, {2.0 / 3.0, 5});
  auto b = split_indices(1000, {2.0 / 3.0, 5});
  EXPECT_EQ(a, b);
  auto c = split_indices(1000, {2.0 / 3.0, 6});
  EXPECT_NE(a.first, c.first);
}

TEST(Split, SplitMixReferenceOutputs) {
  // Published SplitMix64 outputs for seed 0.
  SplitMix64 g(0);
  EXPECT_EQ(g(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(g(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(g(), 0x06c45d188009454fULL);
}

TEST(Split, FourRecordsSeedOneByHand) {
  // seed 1 draws 0x910a2dec89025cc1 % 4 = 1, 0xbeeb8da1658eec67 % 3 = 1,
  // 0xf893a2eefb32555e % 2 = 0: [0,1,2,3] -> [0,3,2,1] -> [0,2,3,1] -> [2,0,3,1].
  auto [train, test] = split_indices(4, {0.75, 1});
  EXPECT_EQ(train, (std::vector<std::size_t>{0, 2, 3}));
  EXPECT_EQ(test, (std::vector<std::size_t>{1}));
}

TEST(Split, RoundHalfUpAndBounds) {
  EXPECT_EQ(train_size(4, 0.75), 3u);
  EXPECT_EQ(train_size(10, 0.25), 3u);  // 2.5 rounds up
  EXPECT_EQ(train_size(2, 0.1), 1u);    // clamped so train is non-empty
  EXPECT_THROW(split_indices(1, {0.5, 0}), Error);
  EXPECT_THROW(split_indices(10, {1.0, 0}), Error);
  EXPECT_THROW(split_indices(10, {0.0, 0}), Error);
}

TEST(Split, PartitionProperty) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + rng() % 300;
    double f = 0.01 + 0.98 * std::uniform_real_distribution<double>(0, 1)(rng);
    auto [tr, te] = split_indices(n, {f, rng()});
    std::vector<std::size_t> all(tr);
    all.insert(all.end(), te.begin(), te.end());
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expect(n);
    std::iota(expect.begin(), expect.end(), std::size_t{0});
    ASSERT_EQ(all, expect);
    ASSERT_EQ(tr.size(), train_size(n, f));
  }
}

TEST(ClassMembers, ToySet) {
  AttributeSchema s({{"x", AttributeKind::continuous}}, "y");
  std::vector<Record> recs;
  std::vector<ClassLabel> labs;
  for (const char* l : {"A", "A", "B", "A", "B", "B"}) {
    recs.push_back({{1.0}, std::to_string(recs.size())});
    labs.emplace_back(l);
  }
  LabeledDataset d(s, recs, labs);
  EXPECT_EQ(class_members(d, ClassLabel("B")), (std::vector<std::size_t>{2, 4, 5}));
  EXPECT_THROW(class_members(d, ClassLabel("C")), Error);
  std::size_t total = 0;
  for (const auto& l : d.label_set()) total += class_members(d, l).size();
  EXPECT_EQ(total, d.size());
}

TEST(ClassMembers, BalancedFixture) {
  auto d = load_csv(fixture("adclick_synthetic.csv"), adclick_schema());
  EXPECT_EQ(class_members(d, ClassLabel("Clicked")).size(), 500u);
}

TEST(ClassLabel, NonEmpty) { EXPECT_THROW(ClassLabel(""), Error); }
