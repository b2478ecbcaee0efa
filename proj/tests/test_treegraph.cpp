#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "graft/treegraph.hpp"

using namespace graft;

namespace {

ProfileRecord person(std::string id, std::optional<std::string> name,
                     std::optional<std::string> father = std::nullopt,
                     std::optional<std::string> mother = std::nullopt) {
  return {std::move(id), std::move(name), std::nullopt, std::move(father),
          std::move(mother)};
}

using Pairs = std::vector<std::pair<std::string, std::string>>;

Pairs sorted(Pairs p) {
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace

TEST(BuildTree, TwoParentLinks) {
  const std::vector<ProfileRecord> profiles = {
      person("f", "john"), person("m", "mary"), person("c", "jon", "f", "m")};
  const auto tree = build_tree(profiles, NameView::forename);
  EXPECT_EQ(tree.vertex_count(), 3u);
  EXPECT_EQ(tree.edge_count(), 2u);
  const auto edges = tree.edges();
  ASSERT_EQ(edges.size(), 2u);
  EXPECT_EQ(tree.key(edges[0].first), "f");
  EXPECT_EQ(tree.key(edges[0].second), "c");
  EXPECT_EQ(tree.key(edges[1].first), "m");
  EXPECT_EQ(tree.stats().components, 1u);
  EXPECT_EQ(ancestor_name_pairs(tree, RelationKind::parent_child).size(), 2u);
}

TEST(BuildTree, DanglingAndSelfReferences) {
  const std::vector<ProfileRecord> profiles = {
      person("a", "anne", "ghost"), person("b", "bob", "b")};
  const auto tree = build_tree(profiles, NameView::forename);
  EXPECT_EQ(tree.edge_count(), 0u);
  EXPECT_EQ(tree.stats().dangling_parent_refs, 1u);
  EXPECT_EQ(tree.stats().self_parent_refs, 1u);
  EXPECT_EQ(tree.stats().components, 2u);
}

TEST(BuildTree, SameParentTwiceStoredOnce) {
  const std::vector<ProfileRecord> profiles = {person("p", "pat"),
                                               person("c", "kit", "p", "p")};
  const auto tree = build_tree(profiles, NameView::forename);
  EXPECT_EQ(tree.edge_count(), 1u);
}

TEST(BuildTree, CycleReported) {
  const std::vector<ProfileRecord> profiles = {
      person("a", "adam", "b"), person("b", "bert", "a"), person("c", "cy", "a")};
  const auto tree = build_tree(profiles, NameView::forename);
  ASSERT_EQ(tree.stats().cycles.size(), 1u);
  EXPECT_EQ(tree.stats().cycles[0], (std::vector<std::string>{"a", "b"}));
  // Bounded path enumeration terminates despite the cycle.
  EXPECT_EQ(
      ancestor_name_pairs(tree, RelationKind::greatgrandparent_greatgrandchild)
          .size(),
      3u);
}

TEST(BuildTree, NameViewSelectsField) {
  std::vector<ProfileRecord> profiles = {
      {"f", "john", "smith", std::nullopt, std::nullopt},
      {"c", std::nullopt, "smyth", std::string("f"), std::nullopt}};
  const auto by_forename = build_tree(profiles, NameView::forename);
  EXPECT_EQ(by_forename.stats().named_vertices, 1u);
  EXPECT_TRUE(ancestor_name_pairs(by_forename, RelationKind::parent_child)
                  .empty());
  const auto by_surname = build_tree(profiles, NameView::surname);
  EXPECT_EQ(ancestor_name_pairs(by_surname, RelationKind::parent_child),
            (Pairs{{"smith", "smyth"}}));
}

TEST(AncestorPairs, Chain) {
  const std::vector<ProfileRecord> profiles = {
      person("g", "a"), person("p", "b", "g"), person("c", "c", "p")};
  const auto tree = build_tree(profiles, NameView::forename);
  EXPECT_EQ(ancestor_name_pairs(tree, RelationKind::grandparent_grandchild),
            (Pairs{{"a", "c"}}));
}

TEST(AncestorPairs, DiamondCountsEveryPath) {
  const std::vector<ProfileRecord> profiles = {
      person("g", "gus"), person("x", "xan", "g"), person("y", "yul", "g"),
      person("c", "cal", "x", "y")};
  const auto tree = build_tree(profiles, NameView::forename);
  EXPECT_EQ(ancestor_name_pairs(tree, RelationKind::grandparent_grandchild),
            (Pairs{{"gus", "cal"}, {"gus", "cal"}}));
}

TEST(AncestorPairs, UnnamedVertexPassesThrough) {
  const std::vector<ProfileRecord> profiles = {
      person("g", "ada"), person("p", std::nullopt, "g"),
      person("c", "ida", "p")};
  const auto tree = build_tree(profiles, NameView::forename);
  EXPECT_TRUE(ancestor_name_pairs(tree, RelationKind::parent_child).empty());
  EXPECT_EQ(ancestor_name_pairs(tree, RelationKind::grandparent_grandchild),
            (Pairs{{"ada", "ida"}}));
}

TEST(Relation, ParseNames) {
  EXPECT_EQ(parse_relation("parent"), RelationKind::parent_child);
  EXPECT_EQ(parse_relation("all"), RelationKind::all_ancestors);
  EXPECT_THROW(parse_relation("cousin"), std::invalid_argument);
  for (auto r : kAllRelations) EXPECT_EQ(parse_relation(to_string(r)), r);
  EXPECT_EQ(parse_name_view("surname"), NameView::surname);
}

TEST(TreeProperties, RandomForests) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<ProfileRecord> profiles;
    const int n = 5 + static_cast<int>(rng() % 60);
    for (int i = 0; i < n; ++i) {
      std::optional<std::string> name;
      if (rng() % 5) name = std::string(1, static_cast<char>('a' + rng() % 6)) + "x";
      std::optional<std::string> father, mother;
      if (i > 0 && rng() % 4) father = "v" + std::to_string(rng() % i);
      if (i > 0 && rng() % 4) mother = "v" + std::to_string(rng() % i);
      if (rng() % 20 == 0) mother = "missing";
      profiles.push_back(person("v" + std::to_string(i), name, father, mother));
    }
    const auto tree = build_tree(profiles, NameView::forename);
    const auto again = build_tree(profiles, NameView::forename);
    EXPECT_EQ(tree.edges(), again.edges());

    const auto pc = ancestor_name_pairs(tree, RelationKind::parent_child);
    EXPECT_LE(pc.size(), tree.edge_count());
    std::size_t named_edges = 0;
    for (auto [p, c] : tree.edges()) {
      EXPECT_NE(p, c);
      if (tree.name(p) && tree.name(c)) ++named_edges;
    }
    EXPECT_EQ(pc.size(), named_edges);

    auto combined = pc;
    for (auto r : {RelationKind::grandparent_grandchild,
                   RelationKind::greatgrandparent_greatgrandchild}) {
      const auto more = ancestor_name_pairs(tree, r);
      combined.insert(combined.end(), more.begin(), more.end());
    }
    EXPECT_EQ(sorted(ancestor_name_pairs(tree, RelationKind::all_ancestors)),
              sorted(combined));

    // Brute-force 2-paths over the edge list.
    Pairs two;
    for (auto [g, p] : tree.edges()) {
      for (auto [p2, c] : tree.edges()) {
        if (p2 == p && tree.name(g) && tree.name(c)) {
          two.emplace_back(std::string(*tree.name(g)),
                           std::string(*tree.name(c)));
        }
      }
    }
    EXPECT_EQ(sorted(ancestor_name_pairs(tree,
                                         RelationKind::grandparent_grandchild)),
              sorted(two));
  }
}
