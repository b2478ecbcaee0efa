#include "graft/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <ostream>
#include <stdexcept>
#include <mutex>
#include <thread>
#include <unordered_set>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace graft {

namespace {

std::size_t hits_in_top(const QueryResult& result, std::size_t n) {
  const std::size_t end = std::min(n, result.suggested.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < end; ++i) {
    hits += result.relevant.count(result.suggested[i]);
  }
  return hits;
}

void write_report_header(std::ostream& out) {
  out << "accuracy\tf1";
  for (auto c : kApCutoffs) fmt::print(out, "\tap@{}", c);
  out << "\trecall\ttime_sec\tcover\tcover_pct";
}

void write_report_fields(std::ostream& out, const MethodReport& r) {
  fmt::print(out, "{:.4f}\t{:.4f}", r.accuracy, r.f1);
  for (double v : r.ap_at) fmt::print(out, "\t{:.4f}", v);
  fmt::print(out, "\t{:.4f}\t{:.4f}\t{}\t{:.4f}", r.recall,
             r.wall_time_seconds, r.covered_count, r.covered_pct);
}

}  // namespace

QueryResult make_query_result(std::string query,
                              std::span<const std::string> names,
                              std::set<std::string> relevant, std::size_t k) {
  QueryResult r;
  std::unordered_set<std::string_view> seen;
  for (const auto& name : names) {
    if (r.suggested.size() >= k) break;
    if (name == query || !seen.insert(name).second) continue;
    r.suggested.push_back(name);
  }
  r.query = std::move(query);
  r.relevant = std::move(relevant);
  return r;
}

double precision_at_k(const QueryResult& result, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  return static_cast<double>(hits_in_top(result, k)) / static_cast<double>(k);
}

double recall_of(const QueryResult& result) {
  if (result.relevant.empty()) return 0.0;
  return static_cast<double>(hits_in_top(result, result.suggested.size())) /
         static_cast<double>(result.relevant.size());
}

double f1_of(const QueryResult& result, std::size_t k) {
  const double p = precision_at_k(result, k);
  const double r = recall_of(result);
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

double MethodReport::ap(std::size_t cutoff) const {
  for (std::size_t i = 0; i < kApCutoffs.size(); ++i) {
    if (kApCutoffs[i] == cutoff) return ap_at[i];
  }
  throw std::out_of_range(fmt::format("no AP@{} column", cutoff));
}

std::vector<QueryResult> run_queries(const Suggester& suggester,
                                     std::span<const GroundTruthEntry> truth,
                                     const EvaluationOptions& options) {
  std::vector<QueryResult> results(truth.size());
  auto run_one = [&](std::size_t i) {
    const auto& entry = truth[i];
    std::vector<std::string> names;
    for (auto& s : suggester(entry.query)) names.push_back(std::move(s.name));
    results[i] =
        make_query_result(entry.query, names, entry.synonyms, options.k);
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || truth.size() < 2) {
    for (std::size_t i = 0; i < truth.size(); ++i) run_one(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < truth.size();) {
        try {
          run_one(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  workers.clear();
  if (failure) std::rethrow_exception(failure);
  return results;
}

MethodReport summarize(std::string method,
                       std::span<const QueryResult> results,
                       const EvaluationOptions& options) {
  if (options.k == 0) throw std::invalid_argument("k must be at least 1");
  std::vector<const QueryResult*> ordered;
  for (const auto& r : results) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](auto* a, auto* b) { return a->query < b->query; });

  MethodReport report;
  report.method = std::move(method);
  report.query_count = results.size();
  std::size_t averaged = 0;
  for (const QueryResult* r : ordered) {
    if (r->covered()) ++report.covered_count;
    if (options.exclude_uncovered && !r->covered()) continue;
    ++averaged;
    report.accuracy += precision_at_k(*r, options.k);
    report.f1 += f1_of(*r, options.k);
    report.recall += recall_of(*r);
    for (std::size_t i = 0; i < kApCutoffs.size(); ++i) {
      report.ap_at[i] += precision_at_k(*r, kApCutoffs[i]);
    }
  }
  if (averaged > 0) {
    const auto n = static_cast<double>(averaged);
    report.accuracy /= n;
    report.f1 /= n;
    report.recall /= n;
    for (double& v : report.ap_at) v /= n;
  }
  if (report.query_count > 0) {
    report.covered_pct = static_cast<double>(report.covered_count) /
                         static_cast<double>(report.query_count);
  }
  return report;
}

MethodReport evaluate_method(std::string method, const Suggester& suggester,
                             std::span<const GroundTruthEntry> truth,
                             const EvaluationOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const auto results = run_queries(suggester, truth, options);
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  MethodReport report = summarize(std::move(method), results, options);
  report.wall_time_seconds = elapsed.count();
  return report;
}

void write_report(std::ostream& out, std::span<const MethodReport> reports) {
  out << "method\t";
  write_report_header(out);
  out << '\n';
  for (const auto& r : reports) {
    out << r.method << '\t';
    write_report_fields(out, r);
    out << '\n';
  }
}

std::vector<GridRow> run_experiment_grid(
    const FamilyTreeGraph& tree, std::span<const GroundTruthEntry> truth,
    const GridOptions& options) {
  if (options.relations.empty() || options.ed_his.empty() ||
      options.functions.empty()) {
    throw std::invalid_argument("experiment grid parameters must be non-empty");
  }
  std::vector<GridRow> rows;
  for (RelationKind relation : options.relations) {
    NamePairCounter counter;
    counter.add_tree(tree, relation);
    for (int hi : options.ed_his) {
      NameGraph graph = counter.build(EditDistanceRange{1, hi});
      graph.set_provenance(relation, tree.name_view());
      const GraphSizeRow size = graph_size(graph);
      for (OrderingFunction function : options.functions) {
        const Suggester suggester = [&](std::string_view query) {
          return graft_suggest(graph, query, options.evaluation.k,
                               options.depth, function);
        };
        rows.push_back({relation, graph.range(), function,
                        evaluate_method("graft", suggester, truth,
                                        options.evaluation),
                        size});
      }
    }
  }
  return rows;
}

void write_grid(std::ostream& out, std::span<const GridRow> rows) {
  out << "relation\trange\tfunction\tnon_isolated\tedges\t";
  write_report_header(out);
  out << '\n';
  for (const auto& row : rows) {
    fmt::print(out, "{}\t{}\t{}\t{}\t{}\t", to_string(row.relation),
               to_string(row.range), to_string(row.function),
               row.graph.non_isolated, row.graph.edges);
    write_report_fields(out, row.report);
    out << '\n';
  }
}

}  // namespace graft
