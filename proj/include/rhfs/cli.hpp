#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "experiment.hpp"
#include "gantt.hpp"
#include "generate.hpp"
#include "instance_io.hpp"
#include "params_io.hpp"
#include "schedule_io.hpp"

namespace rhfs::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 1,     // unreadable or malformed instance / schedule / results file
  kInvalidParams = 2,  // bad flags or algorithm parameters
  kInfeasible = 3,     // validate found violations
};

namespace detail {

inline void write_file(std::filesystem::path const& path, std::string const& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

inline std::string quote(std::string const& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

struct ParamSource {
  std::string file;
  std::string inline_json;

  LdwpaParams resolve() const {
    LdwpaParams p;
    if (!file.empty()) {
      std::string text;
      try {
        text = read_file(file);
      } catch (std::exception const& e) {
        throw std::invalid_argument(e.what());
      }
      apply_params_json(p, parse_json(text, file));
    }
    if (!inline_json.empty()) apply_params_json(p, parse_json(inline_json, "--params-json"));
    p.validate();
    return p;
  }

  static nlohmann::json parse_json(std::string const& text, std::string const& where) {
    try {
      return nlohmann::json::parse(text);
    } catch (nlohmann::json::exception const& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
};

}  // namespace detail

// Entry point of the `rhfs` tool. Output goes to `out`/`err` so tests can drive it in-process.
inline int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Re-entrant hybrid flow shop scheduling with wolf pack search"};
  app.require_subcommand(1);

  detail::ParamSource params_src;
  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--params", params_src.file, "JSON parameter file");
    sub->add_option("--params-json", params_src.inline_json, "Inline JSON parameters, applied after --params");
  };

  // solve
  auto* solve = app.add_subcommand("solve", "Optimize one instance and write its best schedule");
  std::string solve_instance, solve_algo = "ldwpa", solve_out = ".";
  std::uint64_t solve_seed = 1;
  std::vector<std::string> solve_formats{"json", "csv"};
  bool solve_runtime = false;
  solve->add_option("--instance", solve_instance, "Instance file")->required();
  solve->add_option("--algo", solve_algo, "wpa or ldwpa")->check(CLI::IsMember({"wpa", "ldwpa"}));
  solve->add_option("--seed", solve_seed, "Random seed");
  solve->add_option("--out", solve_out, "Output directory");
  solve->add_option("--format", solve_formats, "Artifacts: json (schedule, metrics), csv (trace), svg, txt (Gantt)")
      ->check(CLI::IsMember({"csv", "json", "svg", "txt"}))
      ->delimiter(',');
  solve->add_flag("--record-runtime", solve_runtime, "Record wall-clock time in the metrics artifact");
  add_params(solve);

  // bench
  auto* bench = app.add_subcommand("bench", "Run seeded experiments over instances and algorithms");
  std::vector<std::string> bench_instances, bench_algos{"wpa", "ldwpa"}, bench_formats{"csv", "json"}, bench_compare;
  std::string bench_suite, bench_out = ".";
  std::size_t bench_count = 5, bench_seeds = 20, bench_jobs = 1;
  std::uint64_t bench_gen_seed = 1;
  std::optional<std::uint64_t> bench_seed;
  bool bench_runtime = false;
  bench->add_option("--instance", bench_instances, "Instance files");
  bench->add_option("--suite", bench_suite, "Generated suite: tiny, small, medium or large");
  bench->add_option("--count", bench_count, "Instances drawn from --suite");
  bench->add_option("--gen-seed", bench_gen_seed, "Seed of the first generated instance");
  bench->add_option("--algo", bench_algos, "Algorithms")->check(CLI::IsMember({"wpa", "ldwpa"}))->delimiter(',');
  bench->add_option("--seed", bench_seed, "Base seed (required)");
  bench->add_option("--seeds", bench_seeds, "Seeds per instance and algorithm")->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "Output directory");
  bench->add_option("--format", bench_formats, "csv and/or json")->check(CLI::IsMember({"csv", "json"}))->delimiter(',');
  bench->add_option("--compare", bench_compare, "External results CSVs merged into comparison.md");
  bench->add_option("--jobs", bench_jobs, "Runs executed concurrently")->check(CLI::PositiveNumber);
  bench->add_flag("--record-runtime", bench_runtime, "Fill runtime_ms with wall-clock time (breaks byte-identical reruns)");
  add_params(bench);

  // validate
  auto* validate = app.add_subcommand("validate", "Check a schedule artifact against an instance");
  std::string val_instance, val_schedule;
  validate->add_option("--instance", val_instance, "Instance file")->required();
  validate->add_option("--schedule", val_schedule, "Schedule JSON")->required();

  // gantt
  auto* gantt = app.add_subcommand("gantt", "Render a schedule artifact as a Gantt chart");
  std::string gantt_schedule, gantt_format = "svg", gantt_out;
  std::size_t gantt_width = 100;
  gantt->add_option("--schedule", gantt_schedule, "Schedule JSON")->required();
  gantt->add_option("--format", gantt_format, "svg or txt")->check(CLI::IsMember({"svg", "txt"}));
  gantt->add_option("--out", gantt_out, "Output file (default: stdout)");
  gantt->add_option("--width", gantt_width, "Columns of the text chart");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate random instance files");
  std::string gen_suite, gen_out = ".", gen_name;
  std::optional<std::uint64_t> gen_seed;
  std::size_t gen_count = 1;
  GeneratorSpec custom;
  std::vector<std::size_t> gen_stations;
  gen->add_option("--suite", gen_suite, "Named family: tiny, small, medium, large");
  gen->add_option("--seed", gen_seed, "Seed of the first instance (required)");
  gen->add_option("--count", gen_count, "Number of instances")->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "Output directory");
  gen->add_option("--name", gen_name, "Name prefix");
  gen->add_option("--n", custom.n, "Jobs");
  gen->add_option("--nrm", custom.nrm, "Non-re-entrant stages");
  gen->add_option("--rm", custom.rm, "Re-entrant stages");
  gen->add_option("--stations", gen_stations, "Stations per stage")->delimiter(',');
  gen->add_option("--rts-min", custom.rts_min, "Minimum passes");
  gen->add_option("--rts-max", custom.rts_max, "Maximum passes");
  gen->add_option("--dur-min", custom.duration_min, "Minimum duration");
  gen->add_option("--dur-max", custom.duration_max, "Maximum duration");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidParams;
  }

  try {
    if (*solve) {
      LdwpaParams params;
      try {
        params = params_src.resolve();
      } catch (std::invalid_argument const& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return kInvalidParams;
      }
      Instance instance;
      try {
        instance = load_instance(solve_instance);
      } catch (std::exception const& e) {
        err << solve_instance << ": " << e.what() << "\n";
        return kParseError;
      }
      Algorithm const algo = parse_algorithm(solve_algo);
      std::string formats;
      for (auto const& f : solve_formats) formats += (formats.empty() ? "" : ",") + f;
      out << "replay: rhfs solve --instance " << detail::quote(solve_instance) << " --algo " << solve_algo
          << " --seed " << solve_seed << " --out " << detail::quote(solve_out) << " --format " << formats
          << (solve_runtime ? " --record-runtime" : "") << " --params-json "
          << detail::quote(params_to_json(params).dump()) << "\n";

      RunReport const report = run_algorithm(instance, algo, params, solve_seed);
      auto const violations = validate_schedule(instance, report.schedule);
      if (!violations.empty()) {
        err << "internal error: decoded schedule is infeasible: " << violations.front().message << "\n";
        return kInfeasible;
      }
      std::filesystem::path const dir(solve_out);
      std::string const stem = instance.name() + "_" + solve_algo + "_s" + std::to_string(solve_seed);
      auto wants = [&](char const* f) { return std::find(solve_formats.begin(), solve_formats.end(), f) != solve_formats.end(); };
      if (wants("json")) {
        nlohmann::ordered_json art;
        art["instance"] = instance.name();
        art["algorithm"] = solve_algo;
        art["seed"] = solve_seed;
        art["schedule"] = schedule_to_json(report.schedule);
        art["best_position"] = report.best_position;
        detail::write_file(dir / (stem + "_schedule.json"), art.dump(2) + "\n");
        nlohmann::ordered_json m = metrics_to_json(report.metrics);
        m["evaluations"] = report.evaluations;
        m["iterations"] = report.iterations;
        m["renewals"] = report.renewals;
        m["runtime_ms"] = solve_runtime ? report.runtime_ms : 0.0;
        m["params"] = params_to_json(params);
        detail::write_file(dir / (stem + "_metrics.json"), m.dump(2) + "\n");
      }
      if (wants("csv")) detail::write_file(dir / (stem + "_trace.csv"), traces_csv({&report}));
      if (wants("svg")) detail::write_file(dir / (stem + "_gantt.svg"), render_gantt_svg(report.schedule));
      if (wants("txt")) detail::write_file(dir / (stem + "_gantt.txt"), render_gantt_text(report.schedule));

      char line[256];
      std::snprintf(line, sizeof line, "cmax=%lld tlb=%.2f fur=%.4f twt=%lld", static_cast<long long>(report.metrics.cmax),
                    report.metrics.tlb, report.metrics.fur, static_cast<long long>(report.metrics.twt));
      out << instance.name() << " " << solve_algo << " seed=" << solve_seed << " " << line;
      if (report.metrics.deviation_pct) out << " deviation_pct=" << rhfs::detail::fixed4(*report.metrics.deviation_pct);
      out << "\n";
      return kOk;
    }

    if (*bench) {
      if (!bench_seed) {
        err << "bench: --seed is required\n";
        return kInvalidParams;
      }
      if (bench_instances.empty() && bench_suite.empty()) {
        err << "bench: give --instance files or a --suite\n";
        return kInvalidParams;
      }
      LdwpaParams params;
      try {
        params = params_src.resolve();
      } catch (std::invalid_argument const& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return kInvalidParams;
      }
      std::vector<Instance> instances;
      bool failed = false;
      for (auto const& path : bench_instances) {
        try {
          instances.push_back(load_instance(path));
        } catch (std::exception const& e) {
          err << path << ": " << e.what() << "\n";
          failed = true;
        }
      }
      if (!bench_suite.empty()) {
        try {
          for (std::size_t c = 0; c < bench_count; ++c) {
            instances.push_back(generate_instance(suite_spec(bench_suite, c), bench_gen_seed + c));
          }
        } catch (std::invalid_argument const& e) {
          err << "bench: " << e.what() << "\n";
          return kInvalidParams;
        }
      }
      std::string algos;
      for (auto const& a : bench_algos) algos += (algos.empty() ? "" : ",") + a;
      out << "replay: rhfs bench";
      for (auto const& p : bench_instances) out << " --instance " << detail::quote(p);
      if (!bench_suite.empty()) out << " --suite " << bench_suite << " --count " << bench_count << " --gen-seed " << bench_gen_seed;
      out << " --algo " << algos << " --seed " << *bench_seed << " --seeds " << bench_seeds << " --out "
          << detail::quote(bench_out) << (bench_runtime ? " --record-runtime" : "") << " --params-json "
          << detail::quote(params_to_json(params).dump()) << "\n";

      std::vector<Experiment> experiments;
      for (auto const& inst : instances) {
        for (auto const& a : bench_algos) {
          experiments.push_back(run_experiment(inst, parse_algorithm(a), params, bench_seeds, *bench_seed, bench_jobs));
          auto const& s = experiments.back().summary;
          out << s.instance << " " << s.algorithm << " best=" << s.best << " average=" << rhfs::detail::fixed4(s.average)
              << " median=" << rhfs::detail::fixed4(s.median) << "\n";
        }
      }
      auto const rows = result_rows(experiments, {bench_runtime});
      std::vector<ExperimentSummary> summaries;
      for (auto const& ex : experiments) summaries.push_back(ex.summary);
      std::filesystem::path const dir(bench_out);
      for (auto const& f : bench_formats) {
        if (f == "csv") detail::write_file(dir / "results.csv", results_csv(rows));
        if (f == "json") detail::write_file(dir / "results.json", results_json(rows, summaries));
      }
      detail::write_file(dir / "traces.csv", traces_csv(experiments));
      if (!bench_compare.empty()) {
        auto merged = rows;
        for (auto const& path : bench_compare) {
          try {
            auto extra = read_results_csv(read_file(path));
            merged.insert(merged.end(), extra.begin(), extra.end());
          } catch (std::exception const& e) {
            err << path << ": " << e.what() << "\n";
            failed = true;
          }
        }
        detail::write_file(dir / "comparison.md", comparison_table(merged));
      }
      return failed ? kParseError : kOk;
    }

    if (*validate) {
      Instance instance;
      Schedule schedule;
      try {
        instance = load_instance(val_instance);
        schedule = parse_schedule_artifact(read_file(val_schedule));
      } catch (std::exception const& e) {
        err << e.what() << "\n";
        return kParseError;
      }
      auto const violations = validate_schedule(instance, schedule);
      for (auto const& v : violations) out << to_string(v.rule) << ": " << v.message << "\n";
      if (violations.empty()) {
        out << "feasible: " << schedule.ops.size() << " ops, cmax=" << makespan(schedule) << "\n";
        return kOk;
      }
      out << violations.size() << " violation(s)\n";
      return kInfeasible;
    }

    if (*gantt) {
      Schedule schedule;
      try {
        schedule = parse_schedule_artifact(read_file(gantt_schedule));
      } catch (std::exception const& e) {
        err << e.what() << "\n";
        return kParseError;
      }
      std::string const chart = gantt_format == "svg" ? render_gantt_svg(schedule) : render_gantt_text(schedule, gantt_width);
      if (gantt_out.empty()) {
        out << chart;
      } else {
        detail::write_file(gantt_out, chart);
      }
      return kOk;
    }

    if (*gen) {
      if (!gen_seed) {
        err << "gen: --seed is required\n";
        return kInvalidParams;
      }
      std::filesystem::path const dir(gen_out);
      for (std::size_t c = 0; c < gen_count; ++c) {
        GeneratorSpec spec;
        try {
          if (!gen_suite.empty()) {
            spec = suite_spec(gen_suite, c);
          } else {
            spec = custom;
            if (!gen_stations.empty()) spec.stations = gen_stations;
            spec.name = (gen_name.empty() ? std::string("generated") : gen_name) + "_" + std::to_string(c + 1);
          }
          if (!gen_name.empty() && !gen_suite.empty()) spec.name = gen_name + "_" + std::to_string(c + 1);
          Instance const inst = generate_instance(spec, *gen_seed + c);
          detail::write_file(dir / (inst.name() + ".rhfs"), serialize_instance(inst));
          out << (dir / (inst.name() + ".rhfs")).string() << "\n";
        } catch (std::invalid_argument const& e) {
          err << "gen: " << e.what() << "\n";
          return kInvalidParams;
        }
      }
      return kOk;
    }
  } catch (std::invalid_argument const& e) {
    err << e.what() << "\n";
    return kInvalidParams;
  } catch (std::exception const& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }
  return kOk;
}

}  // namespace rhfs::cli
