#include "graft/pipeline.hpp"

#include <stdexcept>

namespace graft {

void PipelineConfig::validate() const {
  if (ed_range.lo < 1) throw std::invalid_argument("ed-lo must be at least 1");
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  normalization.validate();
}

BuildResult build_pipeline(std::span<const RawProfile> profiles,
                           const PipelineConfig& config) {
  config.validate();
  BuildResult result;
  NormalizedProfiles normalized =
      normalize_profiles(profiles, config.normalization);
  result.normalization = normalized.stats;
  const FamilyTreeGraph tree = build_tree(normalized.profiles, config.name_view);
  result.tree = tree.stats();
  NamePairCounter counter;
  counter.add_tree(tree, config.relation);
  result.graph = counter.build(config.ed_range);
  result.graph.set_provenance(config.relation, config.name_view);
  return result;
}

}  // namespace graft
