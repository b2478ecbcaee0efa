#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graft/name_table.hpp"
#include "graft/profile.hpp"

namespace graft {

enum class NameView { forename, surname };

enum class RelationKind {
  parent_child,
  grandparent_grandchild,
  greatgrandparent_greatgrandchild,
  all_ancestors,
};

inline constexpr RelationKind kAllRelations[] = {
    RelationKind::parent_child, RelationKind::grandparent_grandchild,
    RelationKind::greatgrandparent_greatgrandchild,
    RelationKind::all_ancestors};

NameView parse_name_view(std::string_view text);
std::string_view to_string(NameView view);
// Accepts the enum spelling plus the short forms parent, grandparent,
// greatgrandparent and all.
RelationKind parse_relation(std::string_view text);
std::string_view to_string(RelationKind relation);

struct TreeStats {
  std::size_t vertices = 0;
  std::size_t named_vertices = 0;
  std::size_t edges = 0;
  std::size_t dangling_parent_refs = 0;
  std::size_t self_parent_refs = 0;
  // Weakly connected components over all vertices, isolated ones included.
  std::size_t components = 0;
  // Profile keys of every ancestry cycle (strongly connected component with
  // more than one vertex), each sorted, in order of first key.
  std::vector<std::vector<std::string>> cycles;
};

// Directed parent -> child graph over profiles. Every profile is a vertex;
// profiles whose selected name is absent stay in the graph so that paths
// through them still link named ancestors and descendants.
class FamilyTreeGraph {
 public:
  using Vertex = std::uint32_t;
  static constexpr NameId kNoName = static_cast<NameId>(-1);

  std::size_t vertex_count() const noexcept { return keys_.size(); }
  std::size_t edge_count() const noexcept { return parent_list_.size(); }
  NameView name_view() const noexcept { return view_; }

  const std::string& key(Vertex v) const { return keys_[v]; }
  std::optional<std::string_view> name(Vertex v) const;
  NameId name_id(Vertex v) const { return name_of_[v]; }
  const NameTable& names() const noexcept { return names_; }

  std::span<const Vertex> parents(Vertex child) const {
    return {parent_list_.data() + parent_offsets_[child],
            parent_list_.data() + parent_offsets_[child + 1]};
  }

  // (parent, child) pairs, grouped by child in input order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  const TreeStats& stats() const noexcept { return stats_; }

 private:
  friend FamilyTreeGraph build_tree(std::span<const ProfileRecord> profiles,
                                    NameView view);

  NameView view_ = NameView::forename;
  std::vector<std::string> keys_;
  std::vector<NameId> name_of_;
  NameTable names_;
  std::vector<std::uint32_t> parent_offsets_{0};
  std::vector<Vertex> parent_list_;
  TreeStats stats_;
};

FamilyTreeGraph build_tree(std::span<const ProfileRecord> profiles,
                           NameView view);

// Calls fn(ancestor_name_id, descendant_name_id) once per ancestry path of
// the requested length, skipping paths whose endpoints lack a name.
// all_ancestors emits parent, grandparent and great-grandparent paths in
// that order.
template <class Fn>
void for_each_ancestor_pair(const FamilyTreeGraph& tree, RelationKind relation,
                            Fn&& fn);

std::vector<std::pair<std::string, std::string>> ancestor_name_pairs(
    const FamilyTreeGraph& tree, RelationKind relation);

// ------------------------------------------------------------------------

namespace detail {

template <class Fn>
void emit_paths(const FamilyTreeGraph& tree, int generations, Fn& fn) {
  using Vertex = FamilyTreeGraph::Vertex;
  const auto n = static_cast<Vertex>(tree.vertex_count());
  for (Vertex child = 0; child < n; ++child) {
    const NameId descendant = tree.name_id(child);
    if (descendant == FamilyTreeGraph::kNoName) continue;
    for (Vertex p : tree.parents(child)) {
      if (generations == 1) {
        if (NameId a = tree.name_id(p); a != FamilyTreeGraph::kNoName) {
          fn(a, descendant);
        }
        continue;
      }
      for (Vertex g : tree.parents(p)) {
        if (generations == 2) {
          if (NameId a = tree.name_id(g); a != FamilyTreeGraph::kNoName) {
            fn(a, descendant);
          }
          continue;
        }
        for (Vertex gg : tree.parents(g)) {
          if (NameId a = tree.name_id(gg); a != FamilyTreeGraph::kNoName) {
            fn(a, descendant);
          }
        }
      }
    }
  }
}

}  // namespace detail

template <class Fn>
void for_each_ancestor_pair(const FamilyTreeGraph& tree, RelationKind relation,
                            Fn&& fn) {
  switch (relation) {
    case RelationKind::parent_child:
      detail::emit_paths(tree, 1, fn);
      break;
    case RelationKind::grandparent_grandchild:
      detail::emit_paths(tree, 2, fn);
      break;
    case RelationKind::greatgrandparent_greatgrandchild:
      detail::emit_paths(tree, 3, fn);
      break;
    case RelationKind::all_ancestors:
      detail::emit_paths(tree, 1, fn);
      detail::emit_paths(tree, 2, fn);
      detail::emit_paths(tree, 3, fn);
      break;
  }
}

}  // namespace graft
