#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graft/namegraph.hpp"
#include "graft/profile.hpp"
#include "graft/suggest.hpp"
#include "graft/treegraph.hpp"

namespace graft {

// One evaluated query. `suggested` holds at most k names in rank order,
// without duplicates and without the query itself.
struct QueryResult {
  std::string query;
  std::vector<std::string> suggested;
  std::set<std::string> relevant;

  bool covered() const noexcept { return !suggested.empty(); }
};

// Drops the query and repeated names from `names` and keeps the first k.
QueryResult make_query_result(std::string query,
                              std::span<const std::string> names,
                              std::set<std::string> relevant, std::size_t k);

// Hits within the first k suggestions divided by k. Requires k >= 1.
double precision_at_k(const QueryResult& result, std::size_t k);
// Hits among all suggestions divided by the number of relevant names.
double recall_of(const QueryResult& result);
// Harmonic mean of precision_at_k(k) and recall; 0 when both are 0.
double f1_of(const QueryResult& result, std::size_t k);

inline constexpr std::array<std::size_t, 5> kApCutoffs = {1, 2, 3, 5, 10};

struct MethodReport {
  std::string method;
  double accuracy = 0.0;
  double f1 = 0.0;
  std::array<double, kApCutoffs.size()> ap_at{};  // aligned with kApCutoffs
  double recall = 0.0;
  std::size_t covered_count = 0;
  std::size_t query_count = 0;
  double covered_pct = 0.0;
  double wall_time_seconds = 0.0;

  double ap(std::size_t cutoff) const;
};

struct EvaluationOptions {
  std::size_t k = 10;
  // Average only over queries that received suggestions.
  bool exclude_uncovered = false;
  unsigned threads = 1;
};

using Suggester =
    std::function<std::vector<RankedSuggestion>(std::string_view query)>;

// Runs the suggester on every query, in parallel when options.threads > 1.
// The suggester must be safe to call concurrently in that case.
std::vector<QueryResult> run_queries(const Suggester& suggester,
                                     std::span<const GroundTruthEntry> truth,
                                     const EvaluationOptions& options);

// Macro averages over `results`, folded in query order.
MethodReport summarize(std::string method,
                       std::span<const QueryResult> results,
                       const EvaluationOptions& options);

MethodReport evaluate_method(std::string method, const Suggester& suggester,
                             std::span<const GroundTruthEntry> truth,
                             const EvaluationOptions& options = {});

// Header row plus one row per report, 4 decimals.
void write_report(std::ostream& out, std::span<const MethodReport> reports);

struct GridOptions {
  std::vector<RelationKind> relations{std::begin(kAllRelations),
                                      std::end(kAllRelations)};
  std::vector<int> ed_his{2, 3, 4, 5};
  std::vector<OrderingFunction> functions{std::begin(kAllOrderingFunctions),
                                          std::end(kAllOrderingFunctions)};
  int depth = 2;
  EvaluationOptions evaluation;
};

struct GridRow {
  RelationKind relation;
  EditDistanceRange range;
  OrderingFunction function;
  MethodReport report;
  GraphSizeRow graph;
};

// One name graph per (relation, [1, hi]) and one evaluation per function on
// it. Rows follow the order of the option vectors, relation outermost.
std::vector<GridRow> run_experiment_grid(
    const FamilyTreeGraph& tree, std::span<const GroundTruthEntry> truth,
    const GridOptions& options = {});

void write_grid(std::ostream& out, std::span<const GridRow> rows);

}  // namespace graft
