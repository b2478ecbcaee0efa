#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "graft/namegraph.hpp"
#include "oracles.hpp"

using namespace graft;

namespace {

using Pairs = std::vector<std::pair<std::string, std::string>>;

NameGraph graph_of(const Pairs& pairs, EditDistanceRange range = {1, 3},
                   std::vector<std::string> vocabulary = {}) {
  return build_name_graph(pairs, range, vocabulary);
}

}  // namespace

TEST(BuildNameGraph, CountsDuplicates) {
  const auto g = graph_of({{"john", "johan"}, {"john", "johan"}});
  ASSERT_EQ(g.edge_count(), 1u);
  const auto e = g.edge("john", "johan");
  ASSERT_TRUE(e);
  EXPECT_EQ(e->weight, 2u);
  EXPECT_EQ(e->distance, 1);
  EXPECT_EQ(g.edge("johan", "john"), e);
}

TEST(BuildNameGraph, DistanceFilter) {
  ASSERT_EQ(oracle::levenshtein("mary", "elizabeth"), 8);
  const auto g = graph_of({{"mary", "elizabeth"}, {"john", "john"}});
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_TRUE(g.contains("mary"));
  EXPECT_FALSE(g.is_connected("mary"));
}

TEST(BuildNameGraph, RejectsZeroLowerBound) {
  EXPECT_THROW(graph_of({{"a", "b"}}, {0, 3}), InvalidRange);
}

TEST(BuildNameGraph, VocabularyKeepsIsolatedNames) {
  const auto g = graph_of({{"ann", "anne"}}, {1, 3}, {"zed", "ann"});
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.non_isolated_count(), 2u);
  EXPECT_TRUE(g.contains("zed"));
  EXPECT_TRUE(neighbors_within(g, "zed", 2).empty());
}

TEST(BuildNameGraph, DirectionCounts) {
  const auto g = graph_of({{"anne", "ann"}, {"ann", "anne"}, {"anne", "ann"}});
  const auto e = g.edge("ann", "anne");
  ASSERT_TRUE(e);
  EXPECT_EQ(e->weight, 3u);
  // "ann" sorts first; it was the ancestor once.
  EXPECT_EQ(e->forward, 1u);
  EXPECT_EQ(e->backward, 2u);
}

TEST(NeighborsWithin, HopCounts) {
  const auto star = graph_of({{"cc", "xc"}, {"cc", "yc"}});
  EXPECT_EQ(neighbors_within(star, "cc", 1),
            (std::map<std::string, int>{{"xc", 1}, {"yc", 1}}));
  const auto path = graph_of({{"aa", "ab"}, {"ab", "bb"}});
  EXPECT_EQ(neighbors_within(path, "aa", 2),
            (std::map<std::string, int>{{"ab", 1}, {"bb", 2}}));
  EXPECT_EQ(neighbors_within(path, "aa", 1),
            (std::map<std::string, int>{{"ab", 1}}));
  EXPECT_TRUE(neighbors_within(path, "zz", 2).empty());
  EXPECT_THROW(neighbors_within(path, "aa", 0), std::invalid_argument);
}

TEST(GraphSizeReport, Examples) {
  const auto empty = graph_of({});
  auto row = graph_size(empty);
  EXPECT_EQ(row.edges, 0u);
  EXPECT_EQ(row.non_isolated, 0u);
  const auto two = graph_of({{"ab", "ac"}, {"xy", "xz"}});
  EXPECT_EQ(graph_size(two).components, 2u);
  std::ostringstream out;
  const std::vector<NameGraph> graphs{two};
  write_size_report(out, graph_size_report(graphs));
  EXPECT_EQ(out.str(),
            "relation\trange\tvertices\tnon_isolated\tedges\tcomponents\n"
            "-\t[1,3]\t4\t4\t2\t2\n");
}

TEST(NameGraphFile, RoundTrip) {
  auto g = graph_of({{"józef", "josef"}, {"josef", "joseph"}, {"ann", "anna"}},
                    {1, 2}, {"solo"});
  g.set_provenance(RelationKind::grandparent_grandchild, NameView::forename);
  std::stringstream buffer;
  write_name_graph(buffer, g);
  const std::string first = buffer.str();
  const auto back = read_name_graph(buffer);
  EXPECT_TRUE(back == g);
  std::ostringstream again;
  write_name_graph(again, back);
  EXPECT_EQ(again.str(), first);
}

TEST(NameGraphFile, CorruptInputs) {
  auto reject = [](const std::string& text) {
    std::istringstream in(text);
    EXPECT_THROW(read_name_graph(in), GraphFormatError) << text;
  };
  reject("");
  reject("something else\n");
  reject("graft-namegraph 9\n");
  const std::string head =
      "graft-namegraph 1\nrange\t1\t3\nrelation\t-\nview\t-\n";
  reject(head + "vocabulary\t2\nann\n");
  reject(head + "vocabulary\t2\nanne\nann\nedges\t0\nend\n");
  reject(head + "vocabulary\t2\nann\nanne\nedges\t1\nann\tanne\t2\t1\t1\t0\nend\n");
  reject(head + "vocabulary\t2\nann\nanne\nedges\t1\nann\tbob\t1\t1\t1\t0\nend\n");
  reject(head + "vocabulary\t2\nann\nanne\nedges\t1\nann\tanne\t1\t9\t1\t0\nend\n");
  reject(head + "vocabulary\t2\nann\nanne\nedges\t0\n");
}

class NameGraphProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{2718};

  Pairs random_pairs(std::size_t count) {
    Pairs pairs;
    for (std::size_t i = 0; i < count; ++i) {
      pairs.emplace_back(oracle::random_word(rng, std::string_view("abcd"), 6, 1),
                         oracle::random_word(rng, std::string_view("abcd"), 6, 1));
    }
    return pairs;
  }
};

TEST_F(NameGraphProperties, WeightSumAndInvariants) {
  for (int trial = 0; trial < 20; ++trial) {
    const auto pairs = random_pairs(500);
    const EditDistanceRange range{1, 1 + static_cast<int>(rng() % 4)};
    const auto g = graph_of(pairs, range);
    std::uint64_t in_range = 0;
    for (const auto& [a, d] : pairs) {
      if (range.contains(oracle::levenshtein(a, d))) ++in_range;
    }
    EXPECT_EQ(g.total_weight(), in_range);
    for (const auto& e : g.edges()) {
      EXPECT_LT(e.first, e.second);
      EXPECT_TRUE(range.contains(e.record.distance));
      EXPECT_EQ(e.record.distance,
                oracle::levenshtein(g.name(e.first), g.name(e.second)));
      EXPECT_EQ(e.record.weight, e.record.forward + e.record.backward);
      const auto n1 = g.neighbors(e.first);
      const auto n2 = g.neighbors(e.second);
      EXPECT_TRUE(std::binary_search(n1.begin(), n1.end(), e.second));
      EXPECT_TRUE(std::binary_search(n2.begin(), n2.end(), e.first));
    }
    std::size_t adjacency = 0;
    for (NameGraph::Vertex v = 0; v < g.vertex_count(); ++v) {
      adjacency += g.neighbors(v).size();
    }
    EXPECT_EQ(adjacency, 2 * g.edge_count());
  }
}

TEST_F(NameGraphProperties, WideningIsMonotone) {
  for (int trial = 0; trial < 10; ++trial) {
    const auto pairs = random_pairs(800);
    NamePairCounter counter;
    for (const auto& [a, d] : pairs) counter.add_pair(a, d);
    std::optional<NameGraph> previous;
    for (int hi = 2; hi <= 5; ++hi) {
      const NameGraph g = counter.build({1, hi});
      if (previous) {
        EXPECT_GE(g.edge_count(), previous->edge_count());
        EXPECT_GE(g.non_isolated_count(), previous->non_isolated_count());
        for (const auto& e : previous->edges()) {
          const auto wider =
              g.edge(previous->name(e.first), previous->name(e.second));
          ASSERT_TRUE(wider);
          EXPECT_EQ(wider->weight, e.record.weight);
        }
      }
      previous = g;
    }
  }
}

TEST_F(NameGraphProperties, BfsMatchesAllPairsOracle) {
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = graph_of(random_pairs(60), {1, 2});
    ASSERT_LE(g.vertex_count(), 400u);
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : g.edges()) {
      edges.emplace_back(static_cast<int>(e.first), static_cast<int>(e.second));
    }
    const auto hops = oracle::all_pairs_hops(g.vertex_count(), edges);
    for (NameGraph::Vertex v = 0; v < g.vertex_count(); ++v) {
      for (int depth = 1; depth <= 3; ++depth) {
        std::map<std::string, int> expected;
        for (std::size_t w = 0; w < g.vertex_count(); ++w) {
          if (w != v && hops[v][w] <= depth) expected[g.name(w)] = hops[v][w];
        }
        ASSERT_EQ(neighbors_within(g, g.name(v), depth), expected);
      }
    }
  }
}

TEST_F(NameGraphProperties, RebuildDeterminism) {
  const auto pairs = random_pairs(300);
  std::ostringstream a, b;
  write_name_graph(a, graph_of(pairs));
  write_name_graph(b, graph_of(pairs));
  EXPECT_EQ(a.str(), b.str());
}
