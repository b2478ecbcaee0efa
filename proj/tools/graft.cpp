// Command-line front end: build name graphs, query them and evaluate.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "graft/eval.hpp"
#include "graft/ingest.hpp"
#include "graft/namegraph.hpp"
#include "graft/normalize.hpp"
#include "graft/phonetic.hpp"
#include "graft/pipeline.hpp"
#include "graft/strsim.hpp"
#include "graft/suggest.hpp"
#include "graft/synth.hpp"
#include "graft/treegraph.hpp"

namespace {

using namespace graft;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// Accepts exactly the values `parse` accepts.
template <class Parse>
CLI::Validator parsed_by(Parse parse, std::string name) {
  return CLI::Validator(
      [parse](std::string& value) -> std::string {
        try {
          parse(value);
          return {};
        } catch (const std::exception& e) {
          return e.what();
        }
      },
      name, name);
}

struct Settings {
  std::string view = "forename";
  std::string relation = "parent_child";
  int ed_lo = 1;
  int ed_hi = 3;
  int depth = 2;
  std::size_t k = 10;
  std::string function = "netedofdmphoneed";
  bool hybrid = false;
  std::string fallback;
  std::size_t min_length = 2;
  std::vector<std::string> prefixes;
  std::vector<std::string> honorifics;
  bool no_prefixes = false;
  bool no_honorifics = false;
  bool no_case_fold = false;
  std::string format;
  unsigned threads = 1;

  PipelineConfig config() const {
    PipelineConfig c;
    c.name_view = parse_name_view(view);
    c.relation = parse_relation(relation);
    c.ed_range = EditDistanceRange{ed_lo, ed_hi};
    c.depth = depth;
    c.k = k;
    c.function = parse_ordering_function(function);
    c.hybrid = hybrid;
    if (!fallback.empty()) c.fallback = parse_phonetic_algorithm(fallback);
    c.normalization.min_name_length = min_length;
    if (no_prefixes) c.normalization.prefixes.clear();
    if (!prefixes.empty()) {
      c.normalization.prefixes = {prefixes.begin(), prefixes.end()};
    }
    if (no_honorifics) c.normalization.honorifics.clear();
    if (!honorifics.empty()) {
      c.normalization.honorifics = {honorifics.begin(), honorifics.end()};
    }
    c.normalization.case_fold = !no_case_fold;
    c.validate();
    return c;
  }

  std::optional<TableFormat> table_format() const {
    if (format.empty()) return std::nullopt;
    return format == "csv" ? TableFormat::csv : TableFormat::tsv;
  }
};

void add_settings(CLI::App& app, Settings& s) {
  const std::string group = "Pipeline settings";
  auto add = [&](const std::string& name, auto& value,
                 const std::string& help) {
    return app.add_option(name, value, help)->group(group);
  };
  add("--view", s.view, "Name field: forename or surname")
      ->check(parsed_by(parse_name_view, "VIEW"));
  add("--relation", s.relation, "parent, grandparent, greatgrandparent or all")
      ->check(parsed_by(parse_relation, "RELATION"));
  add("--ed-lo", s.ed_lo, "Smallest edit distance kept as an edge")
      ->check(CLI::PositiveNumber);
  add("--ed-hi", s.ed_hi, "Largest edit distance kept as an edge")
      ->check(CLI::PositiveNumber);
  add("--depth", s.depth, "Breadth-first search depth")
      ->check(CLI::PositiveNumber);
  add("--k", s.k, "Suggestions per query")->check(CLI::PositiveNumber);
  add("--function", s.function,
      "Ordering function: neted, net2ed, edofdmphone, netedofdmphoneed")
      ->check(parsed_by(parse_ordering_function, "FUNCTION"));
  app.add_flag("--hybrid", s.hybrid,
               "Use phonetic buckets for names outside the graph")
      ->group(group);
  add("--fallback", s.fallback,
      "Phonetic algorithm for --hybrid (dmetaphone for forenames, nysiis "
      "for surnames by default)")
      ->check(parsed_by(parse_phonetic_algorithm, "ALGORITHM"));
  add("--min-length", s.min_length, "Drop name tokens shorter than this")
      ->check(CLI::PositiveNumber);
  add("--prefixes", s.prefixes, "Name prefixes to strip")->delimiter(',');
  add("--honorifics", s.honorifics, "Honorifics to strip")->delimiter(',');
  app.add_flag("--no-prefixes", s.no_prefixes, "Keep all prefixes")
      ->group(group);
  app.add_flag("--no-honorifics", s.no_honorifics, "Keep all honorifics")
      ->group(group);
  app.add_flag("--no-case-fold", s.no_case_fold,
               "Keep the original letter case")
      ->group(group);
  add("--format", s.format, "Profile table format (default from extension)")
      ->check(CLI::IsMember({"tsv", "csv"}));
  add("--threads", s.threads, "Worker threads for evaluation")
      ->check(CLI::PositiveNumber);
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw Error(fmt::format("cannot write '{}'", path));
  return file;
}

void print_tree_stats(std::ostream& out, const TreeStats& t) {
  fmt::print(out, "tree_vertices\t{}\n", t.vertices);
  fmt::print(out, "tree_named_vertices\t{}\n", t.named_vertices);
  fmt::print(out, "tree_edges\t{}\n", t.edges);
  fmt::print(out, "tree_components\t{}\n", t.components);
  fmt::print(out, "dangling_parent_refs\t{}\n", t.dangling_parent_refs);
  fmt::print(out, "self_parent_refs\t{}\n", t.self_parent_refs);
  fmt::print(out, "ancestry_cycles\t{}\n", t.cycles.size());
  for (const auto& cycle : t.cycles) {
    fmt::print(std::cerr, "warning: ancestry cycle among {}\n",
               fmt::join(cycle, ", "));
  }
}

void print_normalization_stats(std::ostream& out, const NormalizationStats& s) {
  fmt::print(out, "names_dropped\t{}\n", s.names_dropped);
  fmt::print(out, "honorifics_stripped\t{}\n", s.honorifics_stripped);
  fmt::print(out, "prefixes_stripped\t{}\n", s.prefixes_stripped);
  fmt::print(out, "short_tokens_dropped\t{}\n", s.short_tokens_dropped);
}

void print_graph_stats(std::ostream& out, const NameGraph& g) {
  fmt::print(out, "graph_vertices\t{}\n", g.vertex_count());
  fmt::print(out, "graph_non_isolated\t{}\n", g.non_isolated_count());
  fmt::print(out, "graph_edges\t{}\n", g.edge_count());
  fmt::print(out, "graph_components\t{}\n", g.component_count());
  fmt::print(out, "graph_total_weight\t{}\n", g.total_weight());
}

FamilyTreeGraph load_tree(const std::string& path, const Settings& s,
                          NormalizationStats* stats = nullptr) {
  const PipelineConfig config = s.config();
  const auto raw = load_profiles(path, s.table_format());
  auto normalized = normalize_profiles(raw, config.normalization);
  if (stats) *stats = normalized.stats;
  return build_tree(normalized.profiles, config.name_view);
}

std::vector<int> parse_ed_his(const std::vector<int>& his) {
  for (int hi : his) {
    if (hi < 1) throw CLI::ValidationError("--ed-his", "values must be >= 1");
  }
  return his;
}

int cmd_build(const Settings& s, const std::string& profiles,
              const std::string& output) {
  const PipelineConfig config = s.config();
  const auto raw = load_profiles(profiles, s.table_format());
  const BuildResult result = build_pipeline(raw, config);
  save_name_graph(output, result.graph);
  std::cout << "metric\tvalue\n";
  fmt::print(std::cout, "profiles\t{}\n", raw.size());
  print_normalization_stats(std::cout, result.normalization);
  print_tree_stats(std::cout, result.tree);
  print_graph_stats(std::cout, result.graph);
  return kExitOk;
}

int cmd_stats_tree(const Settings& s, const std::string& profiles) {
  NormalizationStats stats;
  const FamilyTreeGraph tree = load_tree(profiles, s, &stats);
  std::cout << "metric\tvalue\n";
  print_normalization_stats(std::cout, stats);
  print_tree_stats(std::cout, tree.stats());
  return kExitOk;
}

int cmd_stats_graph(const Settings& s, const std::vector<std::string>& graphs,
                    const std::string& profiles,
                    const std::vector<std::string>& relations,
                    const std::vector<int>& his) {
  std::vector<NameGraph> built;
  for (const auto& path : graphs) built.push_back(load_name_graph(path));
  if (!profiles.empty()) {
    const FamilyTreeGraph tree = load_tree(profiles, s);
    for (const auto& r : relations) {
      const RelationKind relation = parse_relation(r);
      NamePairCounter counter;
      counter.add_tree(tree, relation);
      for (int hi : his) {
        NameGraph g = counter.build(EditDistanceRange{1, hi});
        g.set_provenance(relation, tree.name_view());
        built.push_back(std::move(g));
      }
    }
  }
  if (built.empty()) {
    throw CLI::ValidationError("stats graph",
                               "give graph files or --profiles");
  }
  const auto rows = graph_size_report(built);
  write_size_report(std::cout, rows);
  return kExitOk;
}

std::optional<std::string> normalized_query(const std::string& raw,
                                            const PipelineConfig& config) {
  return normalize_name(raw, config.normalization);
}

int cmd_suggest(const Settings& s, const std::string& graph_path,
                const std::vector<std::string>& queries, bool show_hops) {
  const PipelineConfig config = s.config();
  const NameGraph graph = load_name_graph(graph_path);
  std::optional<CodeIndex> index;
  if (config.hybrid) {
    index = build_code_index(graph.vocabulary(), config.effective_fallback());
  }
  std::cout << "query\trank\tname\tscore\tsp\ted\tsource\n";
  for (const auto& raw : queries) {
    const auto query = normalized_query(raw, config);
    if (!query) continue;
    const auto suggestions =
        config.hybrid ? hgraft_suggest(graph, *index, *query, config.k,
                                       config.depth, config.function)
                      : graft_suggest(graph, *query, config.k, config.depth,
                                      config.function);
    std::size_t rank = 0;
    for (const auto& sug : suggestions) {
      fmt::print(std::cout, "{}\t{}\t{}\t{:.4f}\t{}\t{}\t{}\n", *query, ++rank,
                 sug.name, sug.score,
                 sug.hop_distance ? fmt::format("{}", *sug.hop_distance) : "-",
                 sug.edit_distance, to_string(sug.source));
    }
    if (show_hops) {
      const auto counts = hop_counts(graph, *query, config.depth);
      fmt::print(std::cerr, "{}: candidates per hop {}\n", *query,
                 fmt::join(counts, " "));
    }
  }
  return kExitOk;
}

Suggester method_suggester(const std::string& method, const NameGraph& graph,
                           const PipelineConfig& config,
                           std::vector<CodeIndex>& indexes) {
  const std::size_t k = config.k;
  if (method == "graft") {
    return [&graph, config](std::string_view q) {
      return graft_suggest(graph, q, config.k, config.depth, config.function);
    };
  }
  if (method == "hgraft") {
    indexes.push_back(
        build_code_index(graph.vocabulary(), config.effective_fallback()));
    const CodeIndex* index = &indexes.back();
    return [&graph, index, config](std::string_view q) {
      return hgraft_suggest(graph, *index, q, config.k, config.depth,
                            config.function);
    };
  }
  if (method == "ed" || method == "dld" || method == "jw") {
    const StringMetric metric = parse_string_metric(method);
    return [&graph, metric, k](std::string_view q) {
      return string_sim_retrieve(graph.vocabulary(), q, metric, k);
    };
  }
  const PhoneticAlgorithm algorithm = parse_phonetic_algorithm(method);
  indexes.push_back(build_code_index(graph.vocabulary(), algorithm));
  const CodeIndex* index = &indexes.back();
  return [index, k](std::string_view q) -> std::vector<RankedSuggestion> {
    try {
      return phonetic_retrieve(*index, q, k);
    } catch (const UnencodableName&) {
      return {};
    }
  };
}

int cmd_evaluate(const Settings& s, const std::string& graph_path,
                 const std::string& truth_path,
                 const std::vector<std::string>& methods,
                 bool exclude_uncovered, const std::string& output) {
  const PipelineConfig config = s.config();
  const NameGraph graph = load_name_graph(graph_path);
  const GroundTruth truth = load_ground_truth(truth_path, config.normalization);
  EvaluationOptions options;
  options.k = config.k;
  options.exclude_uncovered = exclude_uncovered;
  options.threads = s.threads;

  std::vector<CodeIndex> indexes;
  indexes.reserve(methods.size());
  std::vector<MethodReport> reports;
  for (const auto& method : methods) {
    const Suggester suggester = method_suggester(method, graph, config, indexes);
    reports.push_back(
        evaluate_method(method, suggester, truth.entries, options));
  }
  std::ofstream file;
  write_report(open_output(output, file), reports);
  return kExitOk;
}

int cmd_grid(const Settings& s, const std::string& profiles,
             const std::string& truth_path,
             const std::vector<std::string>& relations,
             const std::vector<int>& his,
             const std::vector<std::string>& functions,
             bool exclude_uncovered, const std::string& output) {
  const PipelineConfig config = s.config();
  const FamilyTreeGraph tree = load_tree(profiles, s);
  const GroundTruth truth = load_ground_truth(truth_path, config.normalization);
  GridOptions options;
  options.relations.clear();
  for (const auto& r : relations) options.relations.push_back(parse_relation(r));
  options.ed_his = parse_ed_his(his);
  options.functions.clear();
  for (const auto& f : functions) {
    options.functions.push_back(parse_ordering_function(f));
  }
  options.depth = config.depth;
  options.evaluation.k = config.k;
  options.evaluation.exclude_uncovered = exclude_uncovered;
  options.evaluation.threads = s.threads;
  const auto rows = run_experiment_grid(tree, truth.entries, options);
  std::ofstream file;
  write_grid(open_output(output, file), rows);
  return kExitOk;
}

int cmd_phonetic(const std::string& algorithm,
                 const std::vector<std::string>& names) {
  const PhoneticAlgorithm algo = parse_phonetic_algorithm(algorithm);
  for (const auto& name : names) {
    const PhoneticCode code = encode(name, algo);
    if (code.secondary && *code.secondary != code.primary) {
      fmt::print(std::cout, "{}/{}\n", code.primary, *code.secondary);
    } else {
      fmt::print(std::cout, "{}\n", code.primary);
    }
  }
  return kExitOk;
}

int cmd_distance(const std::string& metric, const std::string& a,
                 const std::string& b) {
  switch (parse_string_metric(metric)) {
    case StringMetric::edit_distance:
      fmt::print(std::cout, "{}\n", edit_distance(a, b));
      break;
    case StringMetric::damerau:
      fmt::print(std::cout, "{}\n", damerau_levenshtein(a, b));
      break;
    case StringMetric::jaro_winkler:
      fmt::print(std::cout, "{:.4f}\n", jaro_winkler(a, b));
      break;
  }
  return kExitOk;
}

int cmd_synth(const SyntheticOptions& options, const std::string& prefix) {
  const SyntheticGenealogy data = generate_synthetic_genealogy(options);
  const std::string profiles = prefix + ".profiles.tsv";
  const std::string truth = prefix + ".truth.tsv";
  save_profiles(profiles, data.profiles, TableFormat::tsv);
  save_ground_truth(truth, data.truth);
  std::size_t pairs = 0;
  for (const auto& e : data.truth) pairs += e.synonyms.size();
  std::cout << "metric\tvalue\n";
  fmt::print(std::cout, "profiles\t{}\n", data.profiles.size());
  fmt::print(std::cout, "truth_queries\t{}\n", data.truth.size());
  fmt::print(std::cout, "truth_pairs\t{}\n", pairs);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Suggest name synonyms from family-tree name graphs"};
  app.name("graft");
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file with pipeline settings");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Settings settings;
  add_settings(app, settings);

  const std::vector<std::string> all_relations = {
      "parent_child", "grandparent_grandchild",
      "greatgrandparent_greatgrandchild", "all_ancestors"};
  const std::vector<std::string> all_functions = {
      "neted", "net2ed", "edofdmphone", "netedofdmphoneed"};

  // build [graph]
  auto* build = app.add_subcommand("build", "Build a name graph file");
  build->fallthrough();
  std::string build_profiles, build_output;
  build->add_option("-i,--profiles", build_profiles, "Profile table")
      ->required();
  build->add_option("-o,--output", build_output, "Graph file to write")
      ->required();
  build->add_subcommand("graph", "Same as build")->fallthrough();

  // stats tree | stats graph
  auto* stats = app.add_subcommand("stats", "Tree and graph statistics");
  stats->fallthrough();
  stats->require_subcommand(1);
  auto* stats_tree = stats->add_subcommand("tree", "Family-tree statistics");
  stats_tree->fallthrough();
  std::string tree_profiles;
  stats_tree->add_option("-i,--profiles", tree_profiles, "Profile table")
      ->required();
  auto* stats_graph =
      stats->add_subcommand("graph", "Size table for graph files or a sweep");
  stats_graph->fallthrough();
  std::vector<std::string> stats_graph_files;
  std::string sweep_profiles;
  std::vector<std::string> sweep_relations = all_relations;
  std::vector<int> sweep_his = {2, 3, 4, 5};
  stats_graph->add_option("graphs", stats_graph_files, "Graph files");
  stats_graph->add_option("-i,--profiles", sweep_profiles,
                          "Build a sweep of graphs from this profile table");
  stats_graph->add_option("--relations", sweep_relations, "Sweep relations")
      ->delimiter(',')
      ->check(parsed_by(parse_relation, "RELATION"));
  stats_graph->add_option("--ed-his", sweep_his, "Sweep upper bounds")
      ->delimiter(',');

  // suggest
  auto* suggest = app.add_subcommand("suggest", "Suggest synonyms");
  suggest->fallthrough();
  std::string suggest_graph;
  std::vector<std::string> queries;
  bool show_hops = false;
  suggest->add_option("-g,--graph", suggest_graph, "Graph file")->required();
  suggest->add_option("names", queries, "Query names")->required();
  suggest->add_flag("--hop-counts", show_hops,
                    "Report candidates per hop on standard error");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score methods on ground truth");
  evaluate->fallthrough();
  std::string eval_graph, eval_truth, eval_output;
  std::vector<std::string> methods = {"graft"};
  bool exclude_uncovered = false;
  evaluate->add_option("-g,--graph", eval_graph, "Graph file")->required();
  evaluate->add_option("-t,--ground-truth", eval_truth, "Ground-truth TSV")
      ->required();
  evaluate
      ->add_option("-m,--method", methods,
                   "graft, hgraft, soundex, metaphone, dmetaphone, nysiis, "
                   "mra, ed, dld or jw; repeatable")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->check(CLI::IsMember({"graft", "hgraft", "soundex", "metaphone",
                             "dmetaphone", "nysiis", "mra", "ed", "dld",
                             "jw"}));
  evaluate->add_flag("--exclude-uncovered", exclude_uncovered,
                     "Average only over queries with suggestions");
  evaluate->add_option("-o,--output", eval_output, "Report file (default stdout)");

  // grid
  auto* grid = app.add_subcommand("grid", "Relation x range x function sweep");
  grid->alias("experiment-grid");
  grid->fallthrough();
  std::string grid_profiles, grid_truth, grid_output;
  std::vector<std::string> grid_relations = all_relations;
  std::vector<int> grid_his = {2, 3, 4, 5};
  std::vector<std::string> grid_functions = all_functions;
  bool grid_exclude = false;
  grid->add_option("-i,--profiles", grid_profiles, "Profile table")
      ->required();
  grid->add_option("-t,--ground-truth", grid_truth, "Ground-truth TSV")
      ->required();
  grid->add_option("--relations", grid_relations, "Relations")
      ->delimiter(',')
      ->check(parsed_by(parse_relation, "RELATION"));
  grid->add_option("--ed-his", grid_his, "Upper edit-distance bounds")
      ->delimiter(',');
  grid->add_option("--functions", grid_functions, "Ordering functions")
      ->delimiter(',')
      ->check(parsed_by(parse_ordering_function, "FUNCTION"));
  grid->add_flag("--exclude-uncovered", grid_exclude,
                 "Average only over queries with suggestions");
  grid->add_option("-o,--output", grid_output, "Table file (default stdout)");

  // phonetic
  auto* phonetic = app.add_subcommand("phonetic", "Print phonetic codes");
  std::string algorithm;
  std::vector<std::string> phonetic_names;
  phonetic->add_option("algorithm", algorithm,
                       "soundex, metaphone, dmetaphone, nysiis or mra")
      ->required()
      ->check(parsed_by(parse_phonetic_algorithm, "ALGORITHM"));
  phonetic->add_option("names", phonetic_names, "Names")->required();

  // distance
  auto* distance = app.add_subcommand("distance", "String distance of two names");
  std::string metric, left, right;
  distance->add_option("metric", metric, "ed, dld or jw")
      ->required()
      ->check(parsed_by(parse_string_metric, "METRIC"));
  distance->add_option("a", left)->required();
  distance->add_option("b", right)->required();

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic genealogy");
  SyntheticOptions synth_options;
  std::string synth_prefix;
  synth->add_option("--seed", synth_options.seed, "Random seed");
  synth->add_option("--families", synth_options.families, "Family count");
  synth->add_option("--generations", synth_options.generations,
                    "Generations per family")
      ->check(CLI::Range(2, 64));
  synth->add_option("--variant-rate", synth_options.variant_rate,
                    "Chance a child gets a variant spelling")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("-o,--output", synth_prefix,
                    "Prefix for <prefix>.profiles.tsv and <prefix>.truth.tsv")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (build->parsed()) return cmd_build(settings, build_profiles, build_output);
    if (stats_tree->parsed()) return cmd_stats_tree(settings, tree_profiles);
    if (stats_graph->parsed()) {
      return cmd_stats_graph(settings, stats_graph_files, sweep_profiles,
                             sweep_relations, parse_ed_his(sweep_his));
    }
    if (suggest->parsed()) {
      return cmd_suggest(settings, suggest_graph, queries, show_hops);
    }
    if (evaluate->parsed()) {
      return cmd_evaluate(settings, eval_graph, eval_truth, methods,
                          exclude_uncovered, eval_output);
    }
    if (grid->parsed()) {
      return cmd_grid(settings, grid_profiles, grid_truth, grid_relations,
                      grid_his, grid_functions, grid_exclude, grid_output);
    }
    if (phonetic->parsed()) return cmd_phonetic(algorithm, phonetic_names);
    if (distance->parsed()) return cmd_distance(metric, left, right);
    if (synth->parsed()) {
      synth_options.validate();
      return cmd_synth(synth_options, synth_prefix);
    }
  } catch (const CLI::ParseError& e) {
    fmt::print(std::cerr, "graft: {}\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    fmt::print(std::cerr, "graft: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "graft: {}\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}
