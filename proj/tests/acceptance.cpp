// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any
// failure.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "graft/eval.hpp"
#include "graft/ingest.hpp"
#include "graft/namegraph.hpp"
#include "graft/phonetic.hpp"
#include "graft/pipeline.hpp"
#include "graft/strsim.hpp"
#include "graft/suggest.hpp"
#include "graft/synth.hpp"
#include "graft_oracle.hpp"
#include "metrics_fixture.hpp"
#include "oracles.hpp"

using namespace graft;
namespace fs = std::filesystem;

namespace {

struct GoldenCode {
  std::string_view name;
  std::string_view code;
};

#include "golden_codes.inc"

struct Outcome {
  bool ok = true;
  std::string detail;
};

using Pairs = std::vector<std::pair<std::string, std::string>>;

int failures = 0;

void run(int id, std::string_view title, double budget_seconds,
         const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, fmt::format("exception: {}", e.what())};
  }
  const std::chrono::duration<double> took =
      std::chrono::steady_clock::now() - start;
  if (took.count() > budget_seconds) {
    out.ok = false;
    out.detail += fmt::format(" over budget of {:.0f}s", budget_seconds);
  }
  if (!out.ok) ++failures;
  fmt::print("{} {:>2} {} ({:.2f}s) {}\n", out.ok ? "PASS" : "FAIL", id, title,
             took.count(), out.detail);
  std::fflush(stdout);
}

std::string shown(const PhoneticCode& c) {
  if (c.secondary && *c.secondary != c.primary) {
    return c.primary + "/" + *c.secondary;
  }
  return c.primary;
}

template <std::size_t N>
std::size_t golden_mismatches(const GoldenCode (&table)[N],
                              PhoneticAlgorithm algo, std::string& detail) {
  std::size_t bad = N < 25 ? 1 : 0;
  for (const auto& [name, code] : table) {
    if (shown(encode(name, algo)) != code) {
      ++bad;
      detail += fmt::format(" {}:{}", name, code);
    }
  }
  return bad;
}

NameGraph random_graph(std::mt19937_64& rng, std::size_t max_vertices) {
  std::vector<std::string> names;
  const std::size_t want = 2 + rng() % (max_vertices - 1);
  while (names.size() < want) {
    names.push_back(oracle::random_word(rng, std::string_view("abcdeo"), 6, 2));
  }
  Pairs pairs;
  const std::size_t edges = rng() % (3 * want);
  for (std::size_t i = 0; i < edges; ++i) {
    pairs.emplace_back(names[rng() % names.size()], names[rng() % names.size()]);
  }
  return build_name_graph(pairs, {1, 1 + static_cast<int>(rng() % 4)}, names);
}

Outcome worked_example() {
  const Pairs pairs = {{"robert", "rob"}, {"robert", "reuben"}};
  const NameGraph g = build_name_graph(pairs, {1, 4}, {});
  const double rob = score("robert", "rob", 1, OrderingFunction::net_ed);
  const double reuben = score("robert", "reuben", 1, OrderingFunction::net_ed);
  std::vector<std::string> got;
  for (const auto& s : graft_suggest(g, "robert", 10, 2, OrderingFunction::net_ed)) {
    got.push_back(s.name);
  }
  const bool ok = rob == 1.0 / 3 && reuben == 1.0 / 4 &&
                  got == std::vector<std::string>{"rob", "reuben"};
  return {ok, fmt::format("NetED {:.6f} {:.6f} ranking [{}]", rob, reuben,
                          fmt::join(got, ", "))};
}

Outcome phonetic_golden() {
  std::string detail;
  std::size_t bad = 0;
  const std::pair<std::string_view, std::pair<PhoneticAlgorithm, std::string_view>>
      examples[] = {{"robert", {PhoneticAlgorithm::soundex, "R163"}},
                    {"robert", {PhoneticAlgorithm::metaphone, "RBRT"}},
                    {"jean", {PhoneticAlgorithm::double_metaphone, "JN/AN"}},
                    {"robert", {PhoneticAlgorithm::nysiis, "RABAD"}},
                    {"robert", {PhoneticAlgorithm::mra, "RBRT"}}};
  for (const auto& [name, expect] : examples) {
    if (shown(encode(name, expect.first)) != expect.second) {
      ++bad;
      detail += fmt::format(" {}:{}", name, expect.second);
    }
  }
  bad += golden_mismatches(kSoundexGolden, PhoneticAlgorithm::soundex, detail);
  bad += golden_mismatches(kMetaphoneGolden, PhoneticAlgorithm::metaphone, detail);
  bad += golden_mismatches(kDoubleMetaphoneGolden,
                           PhoneticAlgorithm::double_metaphone, detail);
  bad += golden_mismatches(kNysiisGolden, PhoneticAlgorithm::nysiis, detail);
  bad += golden_mismatches(kMraGolden, PhoneticAlgorithm::mra, detail);
  return {bad == 0,
          fmt::format("5 examples; golden {} {} {} {} {}; mismatches {}{}",
                      std::size(kSoundexGolden), std::size(kMetaphoneGolden),
                      std::size(kDoubleMetaphoneGolden), std::size(kNysiisGolden),
                      std::size(kMraGolden), bad, detail)};
}

Outcome string_metrics() {
  std::mt19937_64 rng(3);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e",
                                             "é", "ø", "ß", "n"};
  constexpr int kPairs = 10000;
  std::vector<std::string> words;
  for (int i = 0; i < 2 * kPairs; ++i) {
    words.push_back(oracle::random_word(rng, alphabet, 10));
  }
  int ed_bad = 0, dl_bad = 0, jw_bad = 0, axiom_bad = 0;
  double jw_worst = 0.0;
  for (int i = 0; i < kPairs; ++i) {
    const auto& a = words[2 * i];
    const auto& b = words[2 * i + 1];
    const auto& c = words[(2 * i + 2) % words.size()];
    const int ed = edit_distance(a, b);
    const int dl = damerau_levenshtein(a, b);
    const double jw = jaro_winkler(a, b);
    if (ed != oracle::levenshtein(a, b)) ++ed_bad;
    if (dl != oracle::osa(a, b)) ++dl_bad;
    const double delta = std::abs(jw - oracle::jaro_winkler(a, b));
    jw_worst = std::max(jw_worst, delta);
    if (!(delta < 1e-12)) ++jw_bad;
    if (ed != edit_distance(b, a) || dl != damerau_levenshtein(b, a) ||
        jw != jaro_winkler(b, a) || dl > ed ||
        edit_distance(a, c) > ed + edit_distance(b, c) ||
        (ed == 0) != (a == b) || jw < 0.0 || jw > 1.0) {
      ++axiom_bad;
    }
  }
  return {ed_bad + dl_bad + jw_bad + axiom_bad == 0,
          fmt::format("{} pairs; mismatches ed {} dld {} jw {} (max |d| {:.1e}); "
                      "axiom violations {}",
                      kPairs, ed_bad, dl_bad, jw_bad, jw_worst, axiom_bad)};
}

Outcome graph_invariants() {
  std::mt19937_64 rng(5);
  int bad = 0;
  std::string sizes;
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<std::string> names;
    const std::size_t vocab = 50 + rng() % 400;
    for (std::size_t i = 0; i < vocab; ++i) {
      names.push_back(oracle::random_word(rng, std::string_view("aeiolnrst"), 8, 2));
    }
    Pairs pairs;
    const std::size_t n = 1 + rng() % 10000;
    for (std::size_t i = 0; i < n; ++i) {
      pairs.emplace_back(names[rng() % vocab], names[rng() % vocab]);
    }
    std::size_t prev_edges = 0, prev_active = 0;
    for (int hi = 2; hi <= 5; ++hi) {
      const NameGraph g = build_name_graph(pairs, {1, hi}, {});
      std::uint64_t in_range = 0;
      for (const auto& [x, y] : pairs) {
        const int d = oracle::levenshtein(x, y);
        if (d >= 1 && d <= hi) ++in_range;
      }
      if (g.total_weight() != in_range) ++bad;
      if (g.edge_count() < prev_edges || g.non_isolated_count() < prev_active) {
        ++bad;
      }
      prev_edges = g.edge_count();
      prev_active = g.non_isolated_count();
      if (trial == 0) sizes += fmt::format(" [1,{}]:{}", hi, g.edge_count());
    }
  }
  return {bad == 0, fmt::format("6 streams, violations {}; edges{}", bad, sizes)};
}

Outcome ranking_oracle() {
  std::mt19937_64 rng(7);
  long checked = 0, bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const NameGraph g = random_graph(rng, 50);
    for (const auto& query : g.vocabulary()) {
      for (auto f : kAllOrderingFunctions) {
        for (int depth = 1; depth <= 3; ++depth) {
          ++checked;
          const auto got = graft_suggest(g, query, 10, depth, f);
          const auto want = oracle::graft_rank(g, query, 10, depth, f);
          bool same = got.size() == want.size();
          for (std::size_t i = 0; same && i < got.size(); ++i) {
            same = got[i].name == want[i].name && got[i].score == want[i].score &&
                   got[i].hop_distance == want[i].hop &&
                   got[i].edit_distance == want[i].ed;
          }
          if (!same) ++bad;
        }
      }
    }
  }
  return {bad == 0, fmt::format("{} rankings, mismatches {}", checked, bad)};
}

std::string metric_row(const MethodReport& r) {
  std::string s = fmt::format("{:.4f}\t{:.4f}", r.accuracy, r.f1);
  for (double v : r.ap_at) s += fmt::format("\t{:.4f}", v);
  return s + fmt::format("\t{:.4f}", r.recall);
}

Outcome metric_fixture() {
  const auto truth = fixture::truth();
  const MethodReport r = evaluate_method("fixture", fixture::suggester(), truth);
  const std::string row = metric_row(r);
  const std::string cover = fmt::format("{}\t{:.4f}", r.covered_count, r.covered_pct);
  const bool ok = row == fixture::kExpectedRow && cover == fixture::kExpectedCover &&
                  r.accuracy == r.ap(10);
  return {ok, fmt::format("row {} cover {}", row, cover)};
}

Outcome hybrid_dominance() {
  std::mt19937_64 rng(11);
  int coverage_bad = 0, list_bad = 0;
  long compared = 0;
  for (int config = 0; config < 50; ++config) {
    const NameGraph g = random_graph(rng, 60);
    std::vector<std::string> corpus(g.vocabulary().begin(), g.vocabulary().end());
    for (int i = 0; i < 15; ++i) {
      corpus.push_back(oracle::random_word(rng, std::string_view("abdeiklmorst"), 7, 1));
    }
    const auto algo = kAllPhoneticAlgorithms[rng() % std::size(kAllPhoneticAlgorithms)];
    const auto f = kAllOrderingFunctions[rng() % std::size(kAllOrderingFunctions)];
    const int depth = 1 + static_cast<int>(rng() % 3);
    const std::size_t k = 1 + rng() % 10;
    const CodeIndex index = build_code_index(corpus, algo);

    std::vector<GroundTruthEntry> truth;
    for (int i = 0; i < 20; ++i) {
      GroundTruthEntry e;
      e.query = corpus[rng() % corpus.size()];
      e.synonyms.insert(corpus[rng() % corpus.size()]);
      if (std::none_of(truth.begin(), truth.end(),
                       [&](const auto& t) { return t.query == e.query; })) {
        truth.push_back(std::move(e));
      }
    }
    EvaluationOptions opt;
    opt.k = k;
    const auto plain = evaluate_method(
        "graft", [&](std::string_view q) { return graft_suggest(g, q, k, depth, f); },
        truth, opt);
    const auto hybrid = evaluate_method(
        "hgraft",
        [&](std::string_view q) { return hgraft_suggest(g, index, q, k, depth, f); },
        truth, opt);
    if (hybrid.covered_count < plain.covered_count) ++coverage_bad;
    for (const auto& q : corpus) {
      if (!g.is_connected(q)) continue;
      ++compared;
      if (graft_suggest(g, q, k, depth, f) != hgraft_suggest(g, index, q, k, depth, f)) {
        ++list_bad;
      }
    }
  }
  return {coverage_bad + list_bad == 0,
          fmt::format("50 configs; coverage violations {}; {} in-graph queries, "
                      "list mismatches {}",
                      coverage_bad, compared, list_bad)};
}

Outcome synthetic_end_to_end() {
  SyntheticOptions so;
  so.seed = 42;
  so.families = 200;
  so.generations = 4;
  so.variant_rate = 0.5;
  const SyntheticGenealogy data = generate_synthetic_genealogy(so);
  const PipelineConfig config;
  const BuildResult built = build_pipeline(data.profiles, config);
  const NameGraph& g = built.graph;
  const auto graft = evaluate_method(
      "graft",
      [&](std::string_view q) {
        return graft_suggest(g, q, config.k, config.depth, config.function);
      },
      data.truth);
  const CodeIndex index = build_code_index(g.vocabulary(), PhoneticAlgorithm::soundex);
  const auto soundex = evaluate_method(
      "soundex",
      [&](std::string_view q) -> std::vector<RankedSuggestion> {
        try {
          return phonetic_retrieve(index, q, config.k);
        } catch (const UnencodableName&) {
          return {};
        }
      },
      data.truth);
  const bool ok = graft.ap(1) >= 0.5 && graft.covered_pct >= 0.8 &&
                  graft.ap(1) > soundex.ap(1);
  return {ok, fmt::format("{} profiles, {} queries; graft P@1 {:.4f} cover {:.4f}; "
                          "soundex P@1 {:.4f}",
                          data.profiles.size(), data.truth.size(), graft.ap(1),
                          graft.covered_pct, soundex.ap(1))};
}

Outcome grid_shape() {
  SyntheticOptions so;
  const SyntheticGenealogy data = generate_synthetic_genealogy(so);
  const auto normalized = normalize_profiles(data.profiles, {});
  const FamilyTreeGraph tree = build_tree(normalized.profiles, NameView::forename);
  auto render = [&] {
    std::ostringstream out;
    const auto rows = run_experiment_grid(tree, data.truth);
    for (const auto& row : rows) {
      out << to_string(row.relation) << ' ' << to_string(row.range) << ' '
          << to_string(row.function) << ' ' << metric_row(row.report) << ' '
          << row.report.covered_count << ' ' << row.graph.edges << '\n';
    }
    return std::make_pair(rows.size(), out.str());
  };
  const auto first = render();
  const auto second = render();
  return {first.first == 64 && first == second,
          fmt::format("{} rows, repeat identical: {}", first.first,
                      first == second ? "yes" : "no")};
}

Outcome scale_smoke() {
  const fs::path dir = fs::temp_directory_path() /
                       fmt::format("graft_acceptance_{}", ::getpid());
  fs::create_directories(dir);
  struct Cleanup {
    fs::path p;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(p, ec);
    }
  } cleanup{dir};

  SyntheticOptions so;
  so.seed = 1;
  so.families = 46000;
  const fs::path input = dir / "profiles.tsv";
  {
    const auto data = generate_synthetic_genealogy(so);
    save_profiles(input, data.profiles);
  }
  std::size_t profiles = 0;
  auto build_once = [&](const fs::path& out) {
    const auto raw = load_profiles(input);
    profiles = raw.size();
    const BuildResult built = build_pipeline(raw, PipelineConfig{});
    save_name_graph(out, built.graph);
    return built.graph.edge_count();
  };
  const std::size_t edges = build_once(dir / "a.graph");
  build_once(dir / "b.graph");
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string a = slurp(dir / "a.graph");
  const bool same = !a.empty() && a == slurp(dir / "b.graph");
  return {profiles >= 1'000'000 && same,
          fmt::format("{} profiles, {} edges, {} bytes, identical: {}", profiles,
                      edges, a.size(), same ? "yes" : "no")};
}

}  // namespace

int main() {
  run(1, "worked example", 1, worked_example);
  run(2, "phonetic golden vectors", 1, phonetic_golden);
  run(3, "string metric oracle", 30, string_metrics);
  run(4, "graph build invariants", 30, graph_invariants);
  run(5, "ranking oracle equivalence", 60, ranking_oracle);
  run(6, "metric harness fixture", 1, metric_fixture);
  run(7, "hybrid dominance", 30, hybrid_dominance);
  run(8, "synthetic end-to-end", 120, synthetic_end_to_end);
  run(9, "grid shape", 300, grid_shape);
  run(10, "scale smoke test", 600, scale_smoke);
  return failures == 0 ? 0 : 1;
}
