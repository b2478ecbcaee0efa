#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "graft/profile.hpp"

namespace graft {

struct SyntheticOptions {
  std::uint64_t seed = 42;
  std::size_t families = 200;
  int generations = 4;
  double variant_rate = 0.5;

  // Throws std::invalid_argument unless generations >= 2 and
  // 0 < variant_rate <= 1.
  void validate() const;
};

struct SyntheticGenealogy {
  std::vector<RawProfile> profiles;
  // Each base forename mapped to the spelling variants that were planted in
  // the profiles. Names are lowercase; entries are sorted by query.
  std::vector<GroundTruthEntry> truth;
};

// Seeded family trees in which children reuse an ancestor's forename, often
// in a variant spelling one or two edits away. Output depends only on the
// options.
SyntheticGenealogy generate_synthetic_genealogy(const SyntheticOptions& options);

}  // namespace graft
