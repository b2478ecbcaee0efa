#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graft/error.hpp"
#include "graft/name_table.hpp"
#include "graft/strsim.hpp"
#include "graft/treegraph.hpp"

namespace graft {

class InvalidRange : public Error {
 public:
  explicit InvalidRange(EditDistanceRange range);
};

class GraphFormatError : public Error {
 public:
  using Error::Error;
};

// Aggregated link counts of one undirected name pair. `forward` counts
// ancestor/descendant pairs where the edge's first (lexicographically
// smaller) name was the ancestor; `backward` the reverse.
struct EdgeRecord {
  std::uint64_t weight = 0;
  int distance = 0;
  std::uint64_t forward = 0;
  std::uint64_t backward = 0;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

// Weighted undirected graph over distinct names whose edges join names seen
// as ancestor and descendant with an edit distance inside the build range.
// Vertices are the whole vocabulary, sorted; isolated names are kept so that
// membership can be answered, but only connected names are ever reached.
class NameGraph {
 public:
  using Vertex = std::uint32_t;

  struct Edge {
    Vertex first;
    Vertex second;
    EdgeRecord record;
  };

  NameGraph() = default;

  std::size_t vertex_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t non_isolated_count() const noexcept { return non_isolated_; }
  // Connected components among non-isolated vertices.
  std::size_t component_count() const;
  std::uint64_t total_weight() const noexcept;

  EditDistanceRange range() const noexcept { return range_; }
  std::optional<RelationKind> relation() const noexcept { return relation_; }
  std::optional<NameView> name_view() const noexcept { return view_; }
  void set_provenance(std::optional<RelationKind> relation,
                      std::optional<NameView> view) {
    relation_ = relation;
    view_ = view;
  }

  std::span<const std::string> vocabulary() const noexcept { return names_; }
  const std::string& name(Vertex v) const { return names_[v]; }
  std::optional<Vertex> find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }
  // True when `name` is a vertex with at least one edge.
  bool is_connected(std::string_view name) const;

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v],
            adjacency_.data() + offsets_[v + 1]};
  }

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::optional<EdgeRecord> edge(std::string_view a, std::string_view b) const;

  // Breadth-first search over the undirected adjacency. Returns every
  // vertex within `depth` hops except `start`, with its hop count, ordered
  // by (hops, vertex).
  std::vector<std::pair<Vertex, int>> reachable_within(Vertex start,
                                                       int depth) const;

  friend bool operator==(const NameGraph& a, const NameGraph& b);

 private:
  friend class NamePairCounter;
  friend NameGraph read_name_graph(std::istream& in);

  void finalize();

  EditDistanceRange range_{1, 3};
  std::optional<RelationKind> relation_;
  std::optional<NameView> view_;
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<Vertex> adjacency_;
  std::size_t non_isolated_ = 0;
};

// Accumulates directed (ancestor, descendant) name pairs with multiplicity.
// One counter can build graphs for several ranges.
class NamePairCounter {
 public:
  NamePairCounter() = default;

  // Every name seen here or in a pair becomes a vertex, connected or not.
  void add_vocabulary(std::string_view name);
  void add_pair(std::string_view ancestor, std::string_view descendant,
                std::uint64_t count = 1);
  // Adds every named vertex to the vocabulary and every ancestry path of
  // `relation` as a pair.
  void add_tree(const FamilyTreeGraph& tree, RelationKind relation);

  std::uint64_t pair_count() const noexcept { return total_pairs_; }
  std::size_t distinct_pairs() const noexcept { return counts_.size(); }

  // Throws InvalidRange when range.lo < 1.
  NameGraph build(EditDistanceRange range) const;

 private:
  static std::uint64_t key(NameId a, NameId d) {
    return (static_cast<std::uint64_t>(a) << 32) | d;
  }

  NameTable names_;
  std::unordered_map<std::uint64_t, std::uint64_t> counts_;
  std::uint64_t total_pairs_ = 0;
};

NameGraph build_name_graph(
    std::span<const std::pair<std::string, std::string>> pairs,
    EditDistanceRange range, std::span<const std::string> vocabulary);

// Reachable names within `depth` hops mapped to their shortest hop count.
// Empty when `name` is not in the graph. Throws std::invalid_argument when
// depth < 1.
std::map<std::string, int> neighbors_within(const NameGraph& graph,
                                            std::string_view name, int depth);

// Line-oriented, versioned text format.
void write_name_graph(std::ostream& out, const NameGraph& graph);
NameGraph read_name_graph(std::istream& in);
void save_name_graph(const std::filesystem::path& path, const NameGraph& graph);
NameGraph load_name_graph(const std::filesystem::path& path);

struct GraphSizeRow {
  std::optional<RelationKind> relation;
  EditDistanceRange range;
  std::size_t vertices = 0;
  std::size_t non_isolated = 0;
  std::size_t edges = 0;
  std::size_t components = 0;
};

GraphSizeRow graph_size(const NameGraph& graph);
std::vector<GraphSizeRow> graph_size_report(std::span<const NameGraph> graphs);
void write_size_report(std::ostream& out, std::span<const GraphSizeRow> rows);

}  // namespace graft
