#include "graft/suggest.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

namespace graft {

namespace {

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

struct Scored {
  std::int64_t halves;
  RankedSuggestion suggestion;
};

bool better(const Scored& x, const Scored& y) {
  return std::tie(x.halves, x.suggestion.edit_distance, x.suggestion.name) <
         std::tie(y.halves, y.suggestion.edit_distance, y.suggestion.name);
}

bool closer(const RankedSuggestion& x, const RankedSuggestion& y) {
  return std::tie(x.edit_distance, x.name) < std::tie(y.edit_distance, y.name);
}

}  // namespace

OrderingFunction parse_ordering_function(std::string_view text) {
  const std::string t = ascii_lower(text);
  if (t == "neted" || t == "net_ed") return OrderingFunction::net_ed;
  if (t == "net2ed" || t == "net2_ed") return OrderingFunction::net2_ed;
  if (t == "edofdmphone" || t == "ed_of_dmphone") {
    return OrderingFunction::ed_of_dmphone;
  }
  if (t == "netedofdmphoneed" || t == "net_ed_of_dmphone_ed") {
    return OrderingFunction::net_ed_of_dmphone_ed;
  }
  throw std::invalid_argument(
      fmt::format("unknown ordering function '{}'", text));
}

std::string_view to_string(OrderingFunction function) {
  switch (function) {
    case OrderingFunction::net_ed:
      return "neted";
    case OrderingFunction::net2_ed:
      return "net2ed";
    case OrderingFunction::ed_of_dmphone:
      return "edofdmphone";
    case OrderingFunction::net_ed_of_dmphone_ed:
      return "netedofdmphoneed";
  }
  return "?";
}

bool uses_phonetics(OrderingFunction function) {
  return function == OrderingFunction::ed_of_dmphone ||
         function == OrderingFunction::net_ed_of_dmphone_ed;
}

std::string_view to_string(SuggestionSource source) {
  switch (source) {
    case SuggestionSource::graph:
      return "graph";
    case SuggestionSource::phonetic_fallback:
      return "phonetic_fallback";
    case SuggestionSource::string_similarity:
      return "string_similarity";
  }
  return "?";
}

std::int64_t denominator_halves(int hop, int edit_distance,
                                std::optional<int> min_dm,
                                OrderingFunction function) {
  const std::int64_t sp = hop;
  const std::int64_t ed = edit_distance;
  const std::int64_t dm2 = std::max<std::int64_t>(2 * min_dm.value_or(0), 1);
  switch (function) {
    case OrderingFunction::net_ed:
      return 2 * sp * ed;
    case OrderingFunction::net2_ed:
      return 2 * sp * sp * ed;
    case OrderingFunction::ed_of_dmphone:
      return dm2;
    case OrderingFunction::net_ed_of_dmphone_ed:
      return sp * ed * dm2;
  }
  return 1;
}

PhoneticCode dm_codes(std::string_view name) {
  const std::string letters = phonetic_letters(name);
  if (letters.empty()) return {"", std::string{}};
  return double_metaphone(letters);
}

int min_dm_distance(const PhoneticCode& a, const PhoneticCode& b) {
  const std::string_view as[] = {a.primary, a.secondary ? *a.secondary : a.primary};
  const std::string_view bs[] = {b.primary, b.secondary ? *b.secondary : b.primary};
  int best = edit_distance(as[0], bs[0]);
  for (auto x : as) {
    for (auto y : bs) best = std::min(best, edit_distance(x, y));
  }
  return best;
}

int min_dm_distance(std::string_view a, std::string_view b) {
  return min_dm_distance(dm_codes(a), dm_codes(b));
}

double score(std::string_view query, std::string_view candidate, int hop,
             OrderingFunction function) {
  std::optional<int> dm;
  if (uses_phonetics(function)) dm = min_dm_distance(query, candidate);
  return 2.0 / static_cast<double>(denominator_halves(
                   hop, edit_distance(query, candidate), dm, function));
}

std::vector<RankedSuggestion> graft_suggest(const NameGraph& graph,
                                            std::string_view query,
                                            std::size_t k, int depth,
                                            OrderingFunction function) {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  std::vector<RankedSuggestion> out;
  const auto start = graph.find(query);
  if (!start || k == 0) return out;

  const bool phonetic = uses_phonetics(function);
  PhoneticCode query_codes;
  if (phonetic) query_codes = dm_codes(query);

  std::vector<Scored> scored;
  for (const auto& [v, hop] : graph.reachable_within(*start, depth)) {
    RankedSuggestion s;
    s.name = graph.name(v);
    s.hop_distance = hop;
    s.edit_distance = edit_distance(query, s.name);
    if (phonetic) {
      s.phonetic_factor = min_dm_distance(query_codes, dm_codes(s.name));
    }
    const auto halves =
        denominator_halves(hop, s.edit_distance, s.phonetic_factor, function);
    s.score = 2.0 / static_cast<double>(halves);
    s.source = SuggestionSource::graph;
    scored.push_back({halves, std::move(s)});
  }
  const std::size_t keep = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(),
                    better);
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    out.push_back(std::move(scored[i].suggestion));
  }
  return out;
}

std::vector<std::size_t> hop_counts(const NameGraph& graph,
                                    std::string_view query, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  std::vector<std::size_t> counts(static_cast<std::size_t>(depth), 0);
  if (auto v = graph.find(query)) {
    for (const auto& [w, hop] : graph.reachable_within(*v, depth)) {
      ++counts[static_cast<std::size_t>(hop - 1)];
    }
  }
  return counts;
}

PhoneticAlgorithm default_fallback(NameView view) {
  return view == NameView::surname ? PhoneticAlgorithm::nysiis
                                   : PhoneticAlgorithm::double_metaphone;
}

std::vector<RankedSuggestion> phonetic_retrieve(const CodeIndex& index,
                                                std::string_view query,
                                                std::size_t k) {
  const PhoneticCode code = encode(query, index.algorithm());
  std::vector<RankedSuggestion> out;
  for (auto& name : index.candidates(code)) {
    if (name == query) continue;
    RankedSuggestion s;
    s.edit_distance = edit_distance(query, name);
    s.score = 1.0 / std::max(s.edit_distance, 1);
    s.name = std::move(name);
    s.source = SuggestionSource::phonetic_fallback;
    out.push_back(std::move(s));
  }
  const std::size_t keep = std::min(k, out.size());
  std::partial_sort(out.begin(), out.begin() + keep, out.end(), closer);
  out.resize(keep);
  return out;
}

std::vector<RankedSuggestion> hgraft_suggest(const NameGraph& graph,
                                             const CodeIndex& index,
                                             std::string_view query,
                                             std::size_t k, int depth,
                                             OrderingFunction function) {
  if (graph.is_connected(query)) {
    return graft_suggest(graph, query, k, depth, function);
  }
  try {
    return phonetic_retrieve(index, query, k);
  } catch (const UnencodableName&) {
    return {};
  }
}

std::vector<RankedSuggestion> string_sim_retrieve(
    std::span<const std::string> corpus, std::string_view query,
    StringMetric metric, std::size_t k) {
  std::vector<RankedSuggestion> out;
  if (k == 0) return out;

  if (metric == StringMetric::jaro_winkler) {
    struct Candidate {
      double similarity;
      std::string_view name;
    };
    std::vector<Candidate> all;
    all.reserve(corpus.size());
    for (const auto& name : corpus) {
      if (name == query) continue;
      all.push_back({jaro_winkler(query, name), name});
    }
    const std::size_t keep = std::min(k, all.size());
    std::partial_sort(all.begin(), all.begin() + keep, all.end(),
                      [](const Candidate& x, const Candidate& y) {
                        if (x.similarity != y.similarity) {
                          return x.similarity > y.similarity;
                        }
                        return x.name < y.name;
                      });
    for (std::size_t i = 0; i < keep; ++i) {
      RankedSuggestion s;
      s.name = std::string(all[i].name);
      s.score = all[i].similarity;
      s.edit_distance = edit_distance(query, s.name);
      s.source = SuggestionSource::string_similarity;
      out.push_back(std::move(s));
    }
    std::stable_sort(out.begin(), out.end(), closer);
    return out;
  }

  const bool damerau = metric == StringMetric::damerau;
  struct Candidate {
    int distance;
    std::string_view name;
  };
  std::vector<Candidate> all;
  all.reserve(corpus.size());
  for (const auto& name : corpus) {
    if (name == query) continue;
    all.push_back({damerau ? damerau_levenshtein(query, name)
                           : edit_distance(query, name),
                   name});
  }
  const std::size_t keep = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + keep, all.end(),
                    [](const Candidate& x, const Candidate& y) {
                      return std::tie(x.distance, x.name) <
                             std::tie(y.distance, y.name);
                    });
  for (std::size_t i = 0; i < keep; ++i) {
    RankedSuggestion s;
    s.name = std::string(all[i].name);
    s.edit_distance =
        damerau ? edit_distance(query, s.name) : all[i].distance;
    s.score = 1.0 / std::max(all[i].distance, 1);
    s.source = SuggestionSource::string_similarity;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace graft
