#include "graft/namegraph.hpp"

#include <algorithm>
#include <boost/property_map/property_map.hpp>
#include <boost/pending/disjoint_sets.hpp>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace graft {

namespace {

constexpr std::string_view kMagic = "graft-namegraph";
constexpr int kFormatVersion = 1;

std::pair<NameGraph::Vertex, NameGraph::Vertex> ordered(NameGraph::Vertex a,
                                                        NameGraph::Vertex b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

}  // namespace

InvalidRange::InvalidRange(EditDistanceRange range)
    : Error(fmt::format("invalid edit distance range {}: lower bound must be "
                        "at least 1",
                        to_string(range))) {}

// ---------------------------------------------------------------- NameGraph

void NameGraph::finalize() {
  std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
    return std::pair{x.first, x.second} < std::pair{y.first, y.second};
  });
  const std::size_t n = names_.size();
  std::vector<std::uint32_t> degree(n, 0);
  for (const Edge& e : edges_) {
    ++degree[e.first];
    ++degree[e.second];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.assign(offsets_[n], 0);
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.first]++] = e.second;
    adjacency_[cursor[e.second]++] = e.first;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + offsets_[v],
              adjacency_.begin() + offsets_[v + 1]);
  }
  non_isolated_ = static_cast<std::size_t>(
      std::count_if(degree.begin(), degree.end(), [](auto d) { return d > 0; }));
}

std::size_t NameGraph::component_count() const {
  const std::size_t n = names_.size();
  boost::disjoint_sets_with_storage<> sets(n);
  for (const Edge& e : edges_) sets.union_set(e.first, e.second);
  std::size_t components = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (offsets_[v] != offsets_[v + 1] && sets.find_set(v) == v) ++components;
  }
  return components;
}

std::uint64_t NameGraph::total_weight() const noexcept {
  std::uint64_t total = 0;
  for (const Edge& e : edges_) total += e.record.weight;
  return total;
}

std::optional<NameGraph::Vertex> NameGraph::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<Vertex>(it - names_.begin());
}

bool NameGraph::is_connected(std::string_view name) const {
  auto v = find(name);
  return v && !neighbors(*v).empty();
}

std::optional<EdgeRecord> NameGraph::edge(std::string_view a,
                                          std::string_view b) const {
  auto va = find(a);
  auto vb = find(b);
  if (!va || !vb || *va == *vb) return std::nullopt;
  const auto [x, y] = ordered(*va, *vb);
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), std::pair{x, y},
      [](const Edge& e, const std::pair<Vertex, Vertex>& key) {
        return std::pair{e.first, e.second} < key;
      });
  if (it == edges_.end() || it->first != x || it->second != y) {
    return std::nullopt;
  }
  return it->record;
}

std::vector<std::pair<NameGraph::Vertex, int>> NameGraph::reachable_within(
    Vertex start, int depth) const {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  std::vector<std::pair<Vertex, int>> out;
  std::vector<Vertex> frontier{start};
  std::vector<Vertex> next;
  std::vector<Vertex> seen{start};
  for (int hop = 1; hop <= depth && !frontier.empty(); ++hop) {
    next.clear();
    for (Vertex v : frontier) {
      for (Vertex w : neighbors(v)) next.push_back(w);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    std::sort(seen.begin(), seen.end());
    std::vector<Vertex> fresh;
    std::set_difference(next.begin(), next.end(), seen.begin(), seen.end(),
                        std::back_inserter(fresh));
    for (Vertex w : fresh) {
      out.emplace_back(w, hop);
      seen.push_back(w);
    }
    frontier = std::move(fresh);
  }
  return out;
}

bool operator==(const NameGraph& a, const NameGraph& b) {
  if (a.range_ != b.range_ || a.relation_ != b.relation_ ||
      a.view_ != b.view_ || a.names_ != b.names_ ||
      a.edges_.size() != b.edges_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto& x = a.edges_[i];
    const auto& y = b.edges_[i];
    if (x.first != y.first || x.second != y.second || x.record != y.record) {
      return false;
    }
  }
  return true;
}

// ----------------------------------------------------------- NamePairCounter

void NamePairCounter::add_vocabulary(std::string_view name) {
  names_.intern(name);
}

void NamePairCounter::add_pair(std::string_view ancestor,
                               std::string_view descendant,
                               std::uint64_t count) {
  const NameId a = names_.intern(ancestor);
  const NameId d = names_.intern(descendant);
  counts_[key(a, d)] += count;
  total_pairs_ += count;
}

void NamePairCounter::add_tree(const FamilyTreeGraph& tree,
                               RelationKind relation) {
  const NameTable& tree_names = tree.names();
  std::vector<NameId> local(tree_names.size());
  for (NameId i = 0; i < tree_names.size(); ++i) {
    add_vocabulary(tree_names.name(i));
    local[i] = *names_.find(tree_names.name(i));
  }
  for_each_ancestor_pair(tree, relation, [&](NameId a, NameId d) {
    ++counts_[key(local[a], local[d])];
    ++total_pairs_;
  });
}

NameGraph NamePairCounter::build(EditDistanceRange range) const {
  if (range.lo < 1) throw InvalidRange(range);

  struct Pending {
    NameId x;
    NameId y;
    EdgeRecord record;
  };
  // Keyed by the unordered pair of interned ids; direction is resolved once
  // the vocabulary is sorted.
  std::map<std::pair<NameId, NameId>, Pending> pending;
  for (const auto& [k, count] : counts_) {
    const auto a = static_cast<NameId>(k >> 32);
    const auto d = static_cast<NameId>(k & 0xffffffffu);
    if (a == d) continue;
    const auto slot = a < d ? std::pair{a, d} : std::pair{d, a};
    auto it = pending.find(slot);
    if (it == pending.end()) {
      const int distance = edit_distance(names_.name(a), names_.name(d));
      if (!range.contains(distance)) continue;
      it = pending.emplace(slot, Pending{slot.first, slot.second, {}}).first;
      it->second.record.distance = distance;
    }
    EdgeRecord& r = it->second.record;
    r.weight += count;
    (a == slot.first ? r.forward : r.backward) += count;
  }

  NameGraph g;
  g.range_ = range;
  std::vector<NameId> order(names_.size());
  std::iota(order.begin(), order.end(), NameId{0});
  std::sort(order.begin(), order.end(), [&](NameId x, NameId y) {
    return names_.name(x) < names_.name(y);
  });
  std::vector<NameGraph::Vertex> vertex_of(names_.size(), 0);
  g.names_.reserve(order.size());
  for (NameId id : order) {
    vertex_of[id] = static_cast<NameGraph::Vertex>(g.names_.size());
    g.names_.push_back(names_.name(id));
  }
  g.edges_.reserve(pending.size());
  for (const auto& [slot, p] : pending) {
    NameGraph::Vertex vx = vertex_of[p.x];
    NameGraph::Vertex vy = vertex_of[p.y];
    EdgeRecord r = p.record;
    if (vx > vy) {
      std::swap(vx, vy);
      std::swap(r.forward, r.backward);
    }
    g.edges_.push_back({vx, vy, r});
  }
  g.finalize();
  return g;
}

NameGraph build_name_graph(
    std::span<const std::pair<std::string, std::string>> pairs,
    EditDistanceRange range, std::span<const std::string> vocabulary) {
  NamePairCounter counter;
  for (const auto& name : vocabulary) counter.add_vocabulary(name);
  for (const auto& [a, d] : pairs) counter.add_pair(a, d);
  return counter.build(range);
}

std::map<std::string, int> neighbors_within(const NameGraph& graph,
                                            std::string_view name, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  std::map<std::string, int> out;
  auto v = graph.find(name);
  if (!v) return out;
  for (const auto& [w, hop] : graph.reachable_within(*v, depth)) {
    out.emplace(graph.name(w), hop);
  }
  return out;
}

// ------------------------------------------------------------ serialization

void write_name_graph(std::ostream& out, const NameGraph& graph) {
  for (const auto& name : graph.vocabulary()) {
    if (name.empty() || name.find_first_of("\t\n\r") != std::string::npos) {
      throw GraphFormatError(
          fmt::format("name '{}' cannot be written to a graph file", name));
    }
  }
  fmt::print(out, "{} {}\n", kMagic, kFormatVersion);
  fmt::print(out, "range\t{}\t{}\n", graph.range().lo, graph.range().hi);
  fmt::print(out, "relation\t{}\n",
             graph.relation() ? to_string(*graph.relation()) : "-");
  fmt::print(out, "view\t{}\n",
             graph.name_view() ? to_string(*graph.name_view()) : "-");
  fmt::print(out, "vocabulary\t{}\n", graph.vertex_count());
  for (const auto& name : graph.vocabulary()) {
    out << name << '\n';
  }
  fmt::print(out, "edges\t{}\n", graph.edge_count());
  for (const auto& e : graph.edges()) {
    fmt::print(out, "{}\t{}\t{}\t{}\t{}\t{}\n", graph.name(e.first),
               graph.name(e.second), e.record.weight, e.record.distance,
               e.record.forward, e.record.backward);
  }
  fmt::print(out, "end\n");
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(std::string_view what) {
    std::string line;
    if (!std::getline(in_, line)) fail(fmt::format("missing {}", what));
    ++line_;
    return line;
  }

  [[noreturn]] void fail(std::string_view message) const {
    throw GraphFormatError(
        fmt::format("graph file line {}: {}", line_ + 1, message));
  }

  std::vector<std::string_view> fields(std::string_view line) const {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      out.push_back(line.substr(start, tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    return out;
  }

  template <class T>
  T number(std::string_view text) const {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
      fail(fmt::format("expected a number, got '{}'", text));
    }
    return value;
  }

  std::string_view tagged(std::string_view line, std::string_view tag,
                          std::size_t values) const {
    auto f = fields(line);
    if (f.size() != values + 1 || f[0] != tag) {
      fail(fmt::format("expected '{}' header", tag));
    }
    return line.substr(tag.size() + 1);
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

}  // namespace

NameGraph read_name_graph(std::istream& in) {
  LineReader reader(in);
  const std::string magic = reader.next("header");
  if (magic.rfind(kMagic, 0) != 0) reader.fail("not a name graph file");
  const std::string_view version = std::string_view(magic).substr(kMagic.size());
  if (version != fmt::format(" {}", kFormatVersion)) {
    reader.fail(fmt::format("unsupported graph file version '{}'",
                            version.empty() ? "" : version.substr(1)));
  }

  NameGraph g;
  {
    auto line = reader.next("range");
    auto f = reader.fields(reader.tagged(line, "range", 2));
    const int lo = reader.number<int>(f[0]);
    const int hi = reader.number<int>(f[1]);
    if (lo < 1 || hi < lo) reader.fail("invalid range");
    g.range_ = EditDistanceRange{lo, hi};
  }
  try {
    auto line = reader.next("relation");
    auto value = reader.tagged(line, "relation", 1);
    if (value != "-") g.relation_ = parse_relation(value);
    line = reader.next("view");
    value = reader.tagged(line, "view", 1);
    if (value != "-") g.view_ = parse_name_view(value);
  } catch (const std::invalid_argument& e) {
    reader.fail(e.what());
  }

  auto line = reader.next("vocabulary");
  const auto vocab_size =
      reader.number<std::size_t>(reader.tagged(line, "vocabulary", 1));
  g.names_.reserve(vocab_size);
  for (std::size_t i = 0; i < vocab_size; ++i) {
    std::string name = reader.next("vocabulary entry");
    if (name.empty() || name.find('\t') != std::string::npos) {
      reader.fail("malformed vocabulary entry");
    }
    if (!g.names_.empty() && !(g.names_.back() < name)) {
      reader.fail("vocabulary is not strictly sorted");
    }
    g.names_.push_back(std::move(name));
  }

  line = reader.next("edges");
  const auto edge_count =
      reader.number<std::size_t>(reader.tagged(line, "edges", 1));
  g.edges_.reserve(edge_count);
  for (std::size_t i = 0; i < edge_count; ++i) {
    line = reader.next("edge");
    auto f = reader.fields(line);
    if (f.size() != 6) reader.fail("edge line needs 6 fields");
    auto a = g.find(f[0]);
    auto b = g.find(f[1]);
    if (!a || !b) reader.fail("edge refers to a name outside the vocabulary");
    if (*a >= *b) reader.fail("edge endpoints out of order");
    EdgeRecord r{reader.number<std::uint64_t>(f[2]), reader.number<int>(f[3]),
                 reader.number<std::uint64_t>(f[4]),
                 reader.number<std::uint64_t>(f[5])};
    if (r.weight == 0 || r.weight != r.forward + r.backward) {
      reader.fail("edge weight does not match its direction counts");
    }
    if (!g.range_.contains(r.distance)) {
      reader.fail("edge distance outside the graph range");
    }
    if (!g.edges_.empty() && std::pair{g.edges_.back().first,
                                       g.edges_.back().second} >=
                                 std::pair{*a, *b}) {
      reader.fail("edges are not strictly sorted");
    }
    g.edges_.push_back({*a, *b, r});
  }
  if (reader.next("end marker") != "end") reader.fail("expected 'end'");
  g.finalize();
  return g;
}

void save_name_graph(const std::filesystem::path& path,
                     const NameGraph& graph) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  write_name_graph(out, graph);
  out.flush();
  if (!out) throw Error(fmt::format("failed writing '{}'", path.string()));
}

NameGraph load_name_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot read '{}'", path.string()));
  try {
    return read_name_graph(in);
  } catch (const GraphFormatError& e) {
    throw GraphFormatError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

// -------------------------------------------------------------- size report

GraphSizeRow graph_size(const NameGraph& graph) {
  return {graph.relation(),      graph.range(),      graph.vertex_count(),
          graph.non_isolated_count(), graph.edge_count(),
          graph.component_count()};
}

std::vector<GraphSizeRow> graph_size_report(std::span<const NameGraph> graphs) {
  std::vector<GraphSizeRow> rows;
  rows.reserve(graphs.size());
  for (const auto& g : graphs) rows.push_back(graph_size(g));
  return rows;
}

void write_size_report(std::ostream& out, std::span<const GraphSizeRow> rows) {
  fmt::print(out, "relation\trange\tvertices\tnon_isolated\tedges\tcomponents\n");
  for (const auto& r : rows) {
    fmt::print(out, "{}\t{}\t{}\t{}\t{}\t{}\n",
               r.relation ? to_string(*r.relation) : "-", to_string(r.range),
               r.vertices, r.non_isolated, r.edges, r.components);
  }
}

}  // namespace graft
