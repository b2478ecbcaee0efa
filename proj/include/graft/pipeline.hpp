#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "graft/namegraph.hpp"
#include "graft/normalize.hpp"
#include "graft/phonetic.hpp"
#include "graft/profile.hpp"
#include "graft/strsim.hpp"
#include "graft/suggest.hpp"
#include "graft/treegraph.hpp"

namespace graft {

struct PipelineConfig {
  NameView name_view = NameView::forename;
  RelationKind relation = RelationKind::parent_child;
  EditDistanceRange ed_range{1, 3};
  int depth = 2;
  std::size_t k = 10;
  OrderingFunction function = OrderingFunction::net_ed_of_dmphone_ed;
  bool hybrid = false;
  // Unset means default_fallback(name_view).
  std::optional<PhoneticAlgorithm> fallback;
  NormalizationConfig normalization;

  PhoneticAlgorithm effective_fallback() const {
    return fallback.value_or(default_fallback(name_view));
  }

  // Throws std::invalid_argument on out-of-range settings.
  void validate() const;
};

struct BuildResult {
  NormalizationStats normalization;
  TreeStats tree;
  NameGraph graph;
};

// normalize -> family tree -> ancestor name pairs -> name graph.
BuildResult build_pipeline(std::span<const RawProfile> profiles,
                           const PipelineConfig& config);

}  // namespace graft
