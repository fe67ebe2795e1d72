#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ldwpa.hpp"

namespace rhfs {

enum class Algorithm { wpa, ldwpa };

inline char const* to_string(Algorithm a) { return a == Algorithm::wpa ? "wpa" : "ldwpa"; }

inline Algorithm parse_algorithm(std::string const& s) {
  if (s == "wpa") return Algorithm::wpa;
  if (s == "ldwpa") return Algorithm::ldwpa;
  throw std::invalid_argument("unknown algorithm '" + s + "' (expected wpa or ldwpa)");
}

// Runs one algorithm with one seed. WPA uses the shared base parameters with directional scouting.
inline RunReport run_algorithm(Instance const& instance, Algorithm algorithm, LdwpaParams params, std::uint64_t seed) {
  params.base.seed = seed;
  if (algorithm == Algorithm::wpa) {
    WpaParams base = params.base;
    base.scout_mode = ScoutMode::directional;
    return run_wpa(instance, base);
  }
  return run_ldwpa(instance, params);
}

struct ExperimentSummary {
  std::string instance;
  std::string algorithm;
  std::size_t runs = 0;
  Minutes best = 0;
  Minutes worst = 0;
  double average = 0.0;  // mean final makespan over seeds
  double median = 0.0;
  std::optional<Minutes> lower_bound;
  std::optional<double> deviation_best_pct;
  std::optional<double> deviation_average_pct;
};

struct Experiment {
  std::vector<RunReport> reports;  // in seed order
  ExperimentSummary summary;
};

inline ExperimentSummary summarize(std::vector<RunReport> const& reports, std::optional<Minutes> lb) {
  if (reports.empty()) throw std::invalid_argument("cannot summarize an empty experiment");
  ExperimentSummary s;
  s.instance = reports.front().instance;
  s.algorithm = reports.front().algorithm;
  s.runs = reports.size();
  std::vector<Minutes> finals;
  for (auto const& r : reports) finals.push_back(r.best);
  std::sort(finals.begin(), finals.end());
  s.best = finals.front();
  s.worst = finals.back();
  double sum = 0.0;
  for (Minutes f : finals) sum += static_cast<double>(f);
  s.average = sum / static_cast<double>(finals.size());
  std::size_t const mid = finals.size() / 2;
  s.median = finals.size() % 2 ? static_cast<double>(finals[mid])
                               : 0.5 * static_cast<double>(finals[mid - 1] + finals[mid]);
  s.lower_bound = lb;
  if (lb) {
    s.deviation_best_pct = deviation(static_cast<double>(s.best), static_cast<double>(*lb));
    s.deviation_average_pct = deviation(s.average, static_cast<double>(*lb));
  }
  return s;
}

// Seeds base_seed .. base_seed + n_seeds - 1, run independently and reported in seed order.
inline Experiment run_experiment(Instance const& instance, Algorithm algorithm, LdwpaParams const& params,
                                 std::size_t n_seeds, std::uint64_t base_seed, std::size_t parallel_runs = 1) {
  if (n_seeds == 0) throw std::invalid_argument("n_seeds must be at least 1");
  Experiment ex;
  ex.reports.resize(n_seeds);
  detail::parallel_for(n_seeds, parallel_runs, [&](std::size_t s) {
    ex.reports[s] = run_algorithm(instance, algorithm, params, base_seed + s);
  });
  ex.summary = summarize(ex.reports, instance.lower_bound());
  return ex;
}

// ---- export ---------------------------------------------------------------

inline constexpr char const* kResultColumns[] = {"instance", "algorithm", "seed", "best", "average", "deviation_pct",
                                                 "cmax", "tlb", "fur", "twt", "runtime_ms"};

namespace detail {

inline double round4(double v) { return std::round(v * 1e4) / 1e4; }

inline std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", round4(v));
  return buf;
}

}  // namespace detail

struct ExportOptions {
  bool record_runtime = false;
};

// One row per run. `average` is the mean final makespan of the run's experiment.
struct ResultRow {
  std::string instance;
  std::string algorithm;
  std::uint64_t seed = 0;
  Minutes best = 0;
  double average = 0.0;
  std::optional<double> deviation_pct;
  Minutes cmax = 0;
  double tlb = 0.0;
  double fur = 0.0;
  Minutes twt = 0;
  double runtime_ms = 0.0;
};

inline std::vector<ResultRow> result_rows(std::vector<Experiment> const& experiments, ExportOptions const& opt = {}) {
  std::vector<ResultRow> rows;
  for (auto const& ex : experiments) {
    for (auto const& r : ex.reports) {
      ResultRow row;
      row.instance = r.instance;
      row.algorithm = r.algorithm;
      row.seed = r.seed;
      row.best = r.best;
      row.average = detail::round4(ex.summary.average);
      if (r.metrics.deviation_pct) row.deviation_pct = detail::round4(*r.metrics.deviation_pct);
      row.cmax = r.metrics.cmax;
      row.tlb = detail::round4(r.metrics.tlb);
      row.fur = detail::round4(r.metrics.fur);
      row.twt = r.metrics.twt;
      row.runtime_ms = opt.record_runtime ? detail::round4(r.runtime_ms) : 0.0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline std::string results_csv(std::vector<ResultRow> const& rows) {
  std::ostringstream out;
  for (std::size_t c = 0; c < std::size(kResultColumns); ++c) out << (c ? "," : "") << kResultColumns[c];
  out << "\n";
  for (auto const& r : rows) {
    out << r.instance << ',' << r.algorithm << ',' << r.seed << ',' << r.best << ',' << detail::fixed4(r.average) << ','
        << (r.deviation_pct ? detail::fixed4(*r.deviation_pct) : "") << ',' << r.cmax << ',' << detail::fixed4(r.tlb)
        << ',' << detail::fixed4(r.fur) << ',' << r.twt << ',' << detail::fixed4(r.runtime_ms) << "\n";
  }
  return out.str();
}

inline nlohmann::ordered_json summary_json(ExperimentSummary const& s) {
  nlohmann::ordered_json j;
  j["instance"] = s.instance;
  j["algorithm"] = s.algorithm;
  j["runs"] = s.runs;
  j["best"] = s.best;
  j["average"] = detail::round4(s.average);
  j["median"] = detail::round4(s.median);
  j["worst"] = s.worst;
  j["lb"] = s.lower_bound ? nlohmann::ordered_json(*s.lower_bound) : nlohmann::ordered_json();
  j["deviation_pct"] = s.deviation_best_pct ? nlohmann::ordered_json(detail::round4(*s.deviation_best_pct))
                                            : nlohmann::ordered_json();
  j["deviation_average_pct"] = s.deviation_average_pct
                                   ? nlohmann::ordered_json(detail::round4(*s.deviation_average_pct))
                                   : nlohmann::ordered_json();
  return j;
}

inline std::string results_json(std::vector<ResultRow> const& rows, std::vector<ExperimentSummary> const& summaries) {
  nlohmann::ordered_json doc;
  doc["runs"] = nlohmann::ordered_json::array();
  for (auto const& r : rows) {
    nlohmann::ordered_json j;
    j["instance"] = r.instance;
    j["algorithm"] = r.algorithm;
    j["seed"] = r.seed;
    j["best"] = r.best;
    j["average"] = r.average;
    j["deviation_pct"] = r.deviation_pct ? nlohmann::ordered_json(*r.deviation_pct) : nlohmann::ordered_json();
    j["cmax"] = r.cmax;
    j["tlb"] = r.tlb;
    j["fur"] = r.fur;
    j["twt"] = r.twt;
    j["runtime_ms"] = r.runtime_ms;
    doc["runs"].push_back(std::move(j));
  }
  doc["summaries"] = nlohmann::ordered_json::array();
  for (auto const& s : summaries) doc["summaries"].push_back(summary_json(s));
  return doc.dump(2) + "\n";
}

// Long-format convergence traces: one row per (run, iteration).
inline std::string traces_csv(std::vector<RunReport const*> const& reports) {
  std::ostringstream out;
  out << "instance,algorithm,seed,iteration,best\n";
  for (auto const* r : reports) {
    for (std::size_t t = 0; t < r->trace.size(); ++t) {
      out << r->instance << ',' << r->algorithm << ',' << r->seed << ',' << t << ',' << r->trace[t] << "\n";
    }
  }
  return out.str();
}

inline std::string traces_csv(std::vector<Experiment> const& experiments) {
  std::vector<RunReport const*> all;
  for (auto const& ex : experiments) {
    for (auto const& r : ex.reports) all.push_back(&r);
  }
  return traces_csv(all);
}

// Reads a results CSV with the column layout above, e.g. produced by another
// solver, so it can sit next to our runs in a comparison table.
inline std::vector<ResultRow> read_results_csv(std::string const& text) {
  std::vector<ResultRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  std::map<std::string, std::size_t> col;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (col.empty()) {
      for (std::size_t c = 0; c < cells.size(); ++c) col[cells[c]] = c;
      for (char const* required : {"instance", "algorithm", "seed", "best"}) {
        if (!col.contains(required)) throw std::runtime_error(std::string("results CSV lacks column '") + required + "'");
      }
      continue;
    }
    auto get = [&](char const* name) -> std::string {
      auto it = col.find(name);
      return it == col.end() || it->second >= cells.size() ? std::string() : cells[it->second];
    };
    try {
      ResultRow r;
      r.instance = get("instance");
      r.algorithm = get("algorithm");
      r.seed = std::stoull(get("seed"));
      r.best = std::stoll(get("best"));
      r.cmax = get("cmax").empty() ? r.best : std::stoll(get("cmax"));
      if (!get("average").empty()) r.average = std::stod(get("average"));
      if (!get("deviation_pct").empty()) r.deviation_pct = std::stod(get("deviation_pct"));
      if (!get("tlb").empty()) r.tlb = std::stod(get("tlb"));
      if (!get("fur").empty()) r.fur = std::stod(get("fur"));
      if (!get("twt").empty()) r.twt = std::stoll(get("twt"));
      if (!get("runtime_ms").empty()) r.runtime_ms = std::stod(get("runtime_ms"));
      rows.push_back(std::move(r));
    } catch (std::logic_error const&) {
      throw std::runtime_error("results CSV line " + std::to_string(number) + ": malformed number");
    }
  }
  return rows;
}

// Markdown table: best, mean and median per (instance, algorithm).
inline std::string comparison_table(std::vector<ResultRow> const& rows) {
  std::map<std::pair<std::string, std::string>, std::vector<Minutes>> groups;
  for (auto const& r : rows) groups[{r.instance, r.algorithm}].push_back(r.best);
  std::ostringstream out;
  out << "| instance | algorithm | runs | best | mean | median |\n";
  out << "|---|---|---|---|---|---|\n";
  for (auto& [key, v] : groups) {
    std::sort(v.begin(), v.end());
    double sum = 0.0;
    for (Minutes x : v) sum += static_cast<double>(x);
    std::size_t const mid = v.size() / 2;
    double const median = v.size() % 2 ? static_cast<double>(v[mid]) : 0.5 * static_cast<double>(v[mid - 1] + v[mid]);
    out << "| " << key.first << " | " << key.second << " | " << v.size() << " | " << v.front() << " | "
        << detail::fixed4(sum / static_cast<double>(v.size())) << " | " << detail::fixed4(median) << " |\n";
  }
  return out.str();
}

}  // namespace rhfs
