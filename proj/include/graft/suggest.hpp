#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graft/namegraph.hpp"
#include "graft/phonetic.hpp"
#include "graft/strsim.hpp"
#include "graft/treegraph.hpp"

namespace graft {

enum class OrderingFunction {
  net_ed,                // 1 / (SP * ED)
  net2_ed,               // 1 / (SP^2 * ED)
  ed_of_dmphone,         // 1 / minDM
  net_ed_of_dmphone_ed,  // 1 / (SP * ED * minDM)
};

inline constexpr OrderingFunction kAllOrderingFunctions[] = {
    OrderingFunction::net_ed, OrderingFunction::net2_ed,
    OrderingFunction::ed_of_dmphone, OrderingFunction::net_ed_of_dmphone_ed};

// Accepts neted, net2ed, edofdmphone, netedofdmphoneed (case-insensitive)
// and the enum spellings.
OrderingFunction parse_ordering_function(std::string_view text);
std::string_view to_string(OrderingFunction function);
bool uses_phonetics(OrderingFunction function);

enum class SuggestionSource { graph, phonetic_fallback, string_similarity };

std::string_view to_string(SuggestionSource source);

struct RankedSuggestion {
  std::string name;
  double score = 0.0;
  std::optional<int> hop_distance;
  int edit_distance = 0;
  std::optional<int> phonetic_factor;
  SuggestionSource source = SuggestionSource::graph;

  friend bool operator==(const RankedSuggestion&,
                         const RankedSuggestion&) = default;
};

// A zero minDM is replaced by 1/2 so that the denominator stays positive.
// Denominators are carried doubled to keep them integral: the score is
// 2 / denominator_halves.
std::int64_t denominator_halves(int hop, int edit_distance,
                                 std::optional<int> min_dm,
                                 OrderingFunction function);

// Minimum edit distance between any primary/secondary Double Metaphone code
// of `a` and any of `b`. A name without letters contributes an empty code.
int min_dm_distance(std::string_view a, std::string_view b);

// Double Metaphone codes, or empty codes for a name without letters.
PhoneticCode dm_codes(std::string_view name);
int min_dm_distance(const PhoneticCode& a, const PhoneticCode& b);

double score(std::string_view query, std::string_view candidate, int hop,
             OrderingFunction function);

// Ranks every name reachable from `query` within `depth` hops and returns
// the best `k`. Empty when the query is not a graph vertex.
std::vector<RankedSuggestion> graft_suggest(
    const NameGraph& graph, std::string_view query, std::size_t k = 10,
    int depth = 2,
    OrderingFunction function = OrderingFunction::net_ed_of_dmphone_ed);

// Number of reachable names at each hop 1..depth.
std::vector<std::size_t> hop_counts(const NameGraph& graph,
                                    std::string_view query, int depth);

PhoneticAlgorithm default_fallback(NameView view);

// Names sharing a code with the query, closest edit distance first.
// Throws UnencodableName.
std::vector<RankedSuggestion> phonetic_retrieve(const CodeIndex& index,
                                                std::string_view query,
                                                std::size_t k);

// GRAFT when the query has graph neighbours, otherwise phonetic retrieval
// over `index`. An unencodable query then yields no suggestions.
std::vector<RankedSuggestion> hgraft_suggest(
    const NameGraph& graph, const CodeIndex& index, std::string_view query,
    std::size_t k = 10, int depth = 2,
    OrderingFunction function = OrderingFunction::net_ed_of_dmphone_ed);

std::vector<RankedSuggestion> string_sim_retrieve(
    std::span<const std::string> corpus, std::string_view query,
    StringMetric metric, std::size_t k);

}  // namespace graft
