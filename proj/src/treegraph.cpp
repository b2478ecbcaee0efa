#include "graft/treegraph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include <boost/property_map/property_map.hpp>
// disjoint_sets must precede the CSR graph header, whose detail::get
// overloads otherwise hide the pointer property map accessors.
#include <boost/pending/disjoint_sets.hpp>
#include <boost/graph/compressed_sparse_row_graph.hpp>
#include <boost/graph/strong_components.hpp>

namespace graft {
namespace {

using Vertex = FamilyTreeGraph::Vertex;
using Edge = std::pair<Vertex, Vertex>;

std::size_t count_weak_components(std::size_t n, const std::vector<Edge>& edges) {
  boost::disjoint_sets_with_storage<> sets(n);
  for (auto [u, v] : edges) sets.union_set(u, v);
  std::size_t components = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (sets.find_set(v) == v) ++components;
  }
  return components;
}

std::vector<std::vector<std::string>> find_cycles(
    std::size_t n, const std::vector<Edge>& edges,
    const std::vector<std::string>& keys) {
  using Graph = boost::compressed_sparse_row_graph<boost::directedS>;
  Graph g(boost::edges_are_unsorted_multi_pass, edges.begin(), edges.end(), n);
  std::vector<int> component(n);
  boost::strong_components(
      g, boost::make_iterator_property_map(component.begin(),
                                           get(boost::vertex_index, g)));
  std::map<int, std::vector<std::string>> members;
  std::vector<std::size_t> size(n, 0);
  for (std::size_t v = 0; v < n; ++v) ++size[static_cast<std::size_t>(component[v])];
  for (std::size_t v = 0; v < n; ++v) {
    if (size[static_cast<std::size_t>(component[v])] > 1) {
      members[component[v]].push_back(keys[v]);
    }
  }
  std::vector<std::vector<std::string>> cycles;
  for (auto& [_, keys_in_cycle] : members) {
    std::sort(keys_in_cycle.begin(), keys_in_cycle.end());
    cycles.push_back(std::move(keys_in_cycle));
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

}  // namespace

NameView parse_name_view(std::string_view text) {
  if (text == "forename" || text == "forenames") return NameView::forename;
  if (text == "surname" || text == "surnames") return NameView::surname;
  throw std::invalid_argument("unknown name view '" + std::string(text) + "'");
}

std::string_view to_string(NameView view) {
  return view == NameView::forename ? "forename" : "surname";
}

RelationKind parse_relation(std::string_view text) {
  if (text == "parent_child" || text == "parent") {
    return RelationKind::parent_child;
  }
  if (text == "grandparent_grandchild" || text == "grandparent") {
    return RelationKind::grandparent_grandchild;
  }
  if (text == "greatgrandparent_greatgrandchild" ||
      text == "greatgrandparent") {
    return RelationKind::greatgrandparent_greatgrandchild;
  }
  if (text == "all_ancestors" || text == "all") {
    return RelationKind::all_ancestors;
  }
  throw std::invalid_argument("unknown relation '" + std::string(text) + "'");
}

std::string_view to_string(RelationKind relation) {
  switch (relation) {
    case RelationKind::parent_child: return "parent_child";
    case RelationKind::grandparent_grandchild: return "grandparent_grandchild";
    case RelationKind::greatgrandparent_greatgrandchild:
      return "greatgrandparent_greatgrandchild";
    case RelationKind::all_ancestors: return "all_ancestors";
  }
  return "?";
}

std::optional<std::string_view> FamilyTreeGraph::name(Vertex v) const {
  if (name_of_[v] == kNoName) return std::nullopt;
  return names_.name(name_of_[v]);
}

std::vector<std::pair<FamilyTreeGraph::Vertex, FamilyTreeGraph::Vertex>>
FamilyTreeGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(parent_list_.size());
  for (Vertex child = 0; child < keys_.size(); ++child) {
    for (Vertex p : parents(child)) out.emplace_back(p, child);
  }
  return out;
}

FamilyTreeGraph build_tree(std::span<const ProfileRecord> profiles,
                           NameView view) {
  FamilyTreeGraph tree;
  tree.view_ = view;
  const std::size_t n = profiles.size();
  tree.keys_.reserve(n);
  tree.name_of_.reserve(n);

  std::unordered_map<std::string_view, Vertex> vertex_of;
  vertex_of.reserve(n);
  for (const ProfileRecord& p : profiles) {
    const auto v = static_cast<Vertex>(tree.keys_.size());
    tree.keys_.push_back(p.id);
    const auto& name = view == NameView::forename ? p.forename : p.surname;
    if (name) {
      tree.name_of_.push_back(tree.names_.intern(*name));
      ++tree.stats_.named_vertices;
    } else {
      tree.name_of_.push_back(FamilyTreeGraph::kNoName);
    }
    vertex_of.emplace(p.id, v);
  }

  tree.parent_offsets_.reserve(n + 1);
  tree.parent_list_.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const ProfileRecord& p = profiles[i];
    const auto child = static_cast<Vertex>(i);
    const std::size_t first = tree.parent_list_.size();
    for (const auto* link : {&p.father_id, &p.mother_id}) {
      if (!*link) continue;
      auto it = vertex_of.find(**link);
      if (it == vertex_of.end()) {
        ++tree.stats_.dangling_parent_refs;
        continue;
      }
      if (it->second == child) {
        ++tree.stats_.self_parent_refs;
        continue;
      }
      auto begin = tree.parent_list_.begin() + static_cast<std::ptrdiff_t>(first);
      if (std::find(begin, tree.parent_list_.end(), it->second) ==
          tree.parent_list_.end()) {
        tree.parent_list_.push_back(it->second);
      }
    }
    tree.parent_offsets_.push_back(
        static_cast<std::uint32_t>(tree.parent_list_.size()));
  }

  const auto edges = tree.edges();
  tree.stats_.vertices = n;
  tree.stats_.edges = edges.size();
  tree.stats_.components = count_weak_components(n, edges);
  tree.stats_.cycles = find_cycles(n, edges, tree.keys_);
  return tree;
}

std::vector<std::pair<std::string, std::string>> ancestor_name_pairs(
    const FamilyTreeGraph& tree, RelationKind relation) {
  std::vector<std::pair<std::string, std::string>> pairs;
  const NameTable& names = tree.names();
  for_each_ancestor_pair(tree, relation, [&](NameId a, NameId d) {
    pairs.emplace_back(names.name(a), names.name(d));
  });
  return pairs;
}

}  // namespace graft
