#include <gtest/gtest.h>

#include "nbaudit/graph_features.hpp"

using namespace nbaudit;

namespace {

MultiGraph fixture_graph() {
  return load_edges(std::string(NBAUDIT_SOURCE_DIR) + "/data/fixtures/transfers_30.csv");
}

VertexFeatures feat(const MultiGraph& g, const char* id) {
  auto v = g.vertex(id);
  return {degree_centrality(g, v), clustering_coefficient(g, v)};
}

}  // namespace

TEST(Degree, CountsMultiplicity) {
  auto g = parse_edges("a,b\nb,a\nc\n");
  EXPECT_EQ(feat(g, "a").degree, 2u);
  EXPECT_EQ(feat(g, "c").degree, 0u);
  auto t = parse_edges("x y\ny z\nz x\nx y\n");
  EXPECT_EQ(feat(t, "x").degree, 3u);
  EXPECT_EQ(feat(t, "z").degree, 2u);
}

TEST(Clustering, SimpleGraphRule) {
  auto tri = parse_edges("a,b\nb,c\nc,a\na,b\n");
  EXPECT_EQ(feat(tri, "a").clustering, 1.0);
  auto star = parse_edges("h,1\nh,2\nh,3\n");
  EXPECT_EQ(feat(star, "h").clustering, 0.0);
  EXPECT_EQ(feat(star, "1").clustering, 0.0);
  auto one = parse_edges("h,1\nh,2\nh,3\n1,2\n");
  EXPECT_DOUBLE_EQ(feat(one, "h").clustering, 1.0 / 3.0);
}

TEST(ParseEdges, ErrorsAndSyntax) {
  try {
    parse_edges("source,target\na,b\n\nc,c\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_EQ(e.row(), 4u);
  }
  EXPECT_THROW(parse_edges("a,b,c\n"), Error);
  auto g = parse_edges("# comment\n\"a b\",c\n");
  EXPECT_EQ(g.vertex_count(), 2u);
  EXPECT_EQ(g.multiplicity(g.vertex("a b"), g.vertex("c")), 1u);
  MultiGraph m;
  EXPECT_THROW(m.add_edge("q", "q"), Error);
}

TEST(Binning, MoneyFlowTable) {
  auto b = ClassBinning::money_flow_default();
  auto lab = [&](std::uint64_t d, double c) { return bin_vertices({{d, c}}, b)[0].label; };
  EXPECT_EQ(lab(3, 0.5), "2");
  EXPECT_EQ(lab(12, 0.1), "5");
  EXPECT_EQ(lab(0, 0.0), "1");
  EXPECT_EQ(lab(1, 1.0), "1");
  EXPECT_EQ(lab(4, 0.417), "3");
  EXPECT_FALSE(lab(4, 0.5));
  EXPECT_FALSE(lab(12, 0.3));
}

TEST(Binning, FileMatchesDefault) {
  auto f = parse_binning(detail::read_file(std::string(NBAUDIT_SOURCE_DIR) +
                                           "/data/binning_money_flow.csv"));
  auto d = ClassBinning::money_flow_default();
  ASSERT_EQ(f.rows().size(), d.rows().size());
  for (std::size_t i = 0; i < d.rows().size(); ++i) {
    EXPECT_EQ(f.rows()[i].d_min, d.rows()[i].d_min);
    EXPECT_EQ(f.rows()[i].d_max, d.rows()[i].d_max);
    EXPECT_EQ(f.rows()[i].c_max, d.rows()[i].c_max);
    EXPECT_EQ(f.rows()[i].label, d.rows()[i].label);
  }
  EXPECT_THROW(ClassBinning({{0, 2, 0, 1, "a"}, {3, 1e300 * 1e300, 0, 1, "b"}}), Error);
  EXPECT_THROW(ClassBinning({{0, 5, 0, 1, "a"}}), Error);
  EXPECT_THROW(parse_binning("lo,hi\n0,inf\n"), Error);
}

TEST(Fixture, DegreeSumAndKnownVertices) {
  auto g = fixture_graph();
  EXPECT_EQ(g.vertex_count(), 30u);
  auto f = vertex_features(g);
  std::uint64_t sum = 0;
  for (const auto& v : f) sum += v.degree;
  EXPECT_EQ(sum, 2 * g.total_multiplicity());

  EXPECT_EQ(feat(g, "p1").degree, 2u);
  for (auto t : {"t1", "t2", "t3"}) EXPECT_EQ(feat(g, t).clustering, 1.0);
  EXPECT_EQ(feat(g, "h").degree, 12u);
  EXPECT_DOUBLE_EQ(feat(g, "h").clustering, 1.0 / 66.0);
  EXPECT_EQ(feat(g, "iso").degree, 0u);
  EXPECT_EQ(feat(g, "x1").degree, 3u);

  auto bins = bin_vertices(f, ClassBinning::money_flow_default());
  EXPECT_EQ(bins[g.vertex("h")].label, "5");
  EXPECT_EQ(bins[g.vertex("k1")].label, "2");
  std::size_t out = 0;
  for (const auto& b : bins) out += b.out_of_binning();
  EXPECT_EQ(out, 5u);  // the 5-clique: D = 4, c = 1
  auto ds = graph_dataset(g, f, bins);
  EXPECT_EQ(ds.size(), 25u);
  auto csv = features_csv(g, f, bins);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "vertex,D,c,class");
}
