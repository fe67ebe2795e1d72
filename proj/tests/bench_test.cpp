#include <gtest/gtest.h>

#include <random>

#include <rhfs/experiment.hpp>
#include <rhfs/generate.hpp>
#include <rhfs/instance_io.hpp>
#include <rhfs/params_io.hpp>
#include <rhfs/schedule_io.hpp>

#include "test_support.hpp"

namespace {

using namespace rhfs;

constexpr char kTwoJobs[] = R"(# comment line
rhfs 1
name two
nrm 1
rm 1
stations 1 2
lb 9
jobs 2
job 1 rts 2
op 1 1 4
op 2 2 3 5   # trailing comment
op 3 2 2 2
job 2 rts 1
op 1 1 6
op 2 2 1 1
end
)";

std::size_t parse_error_line(std::string const& text) {
  try {
    parse_instance(text);
  } catch (ParseError const& e) {
    return e.line();
  }
  return 0;
}

std::string replace(std::string s, std::string const& from, std::string const& to) {
  auto const at = s.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return s.replace(at, from.size(), to);
}

TEST(ParseInstance, ReadsAllFields) {
  Instance const inst = parse_instance(kTwoJobs);
  EXPECT_EQ(inst.name(), "two");
  EXPECT_EQ(inst.job_count(), 2u);
  EXPECT_EQ(inst.stations_per_stage(), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(inst.rts(), (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(inst.lower_bound(), 9);
  EXPECT_EQ(inst.time(0, 1, 1), 5);
  EXPECT_EQ(inst.time(1, 0, 0), 6);
}

TEST(ParseInstance, BundledPaintingCase) {
  Instance const inst = rhfs::testing::painting();
  EXPECT_EQ(inst.job_count(), 15u);
  EXPECT_EQ(inst.nrm(), 0u);
  EXPECT_EQ(inst.rm(), 3u);
  EXPECT_EQ(inst.stations_per_stage(), (std::vector<std::size_t>{2, 3, 4}));
  EXPECT_EQ(inst.total_operations(), 78u);
  EXPECT_EQ(inst.rts(), (std::vector<std::size_t>{3, 3, 3, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1}));
  Instance const two = rhfs::testing::painting_two_booths();
  EXPECT_EQ(two.stations_per_stage(), (std::vector<std::size_t>{2, 3, 2}));
  EXPECT_EQ(two.total_operations(), 78u);
  for (std::size_t i = 0; i < inst.job_count(); ++i) {
    for (std::size_t l = 0; l < inst.operation_count(i); ++l) {
      if (inst.stage_of(l) == 2) {
        EXPECT_EQ(inst.time(i, l, 0), two.time(i, l, 0));
      }
    }
  }
}

TEST(ParseInstance, ErrorsCarryLineNumbers) {
  std::string const ok = kTwoJobs;
  EXPECT_EQ(parse_error_line(replace(ok, "op 1 1 6", "op 1 1 -6")), 14u);
  EXPECT_EQ(parse_error_line(replace(ok, "op 2 2 1 1", "op 2 2 1")), 15u);
  EXPECT_EQ(parse_error_line(replace(ok, "op 2 2 1 1", "op 2 1 1 1")), 15u);
  EXPECT_EQ(parse_error_line(replace(ok, "stations 1 2", "stations 1")), 6u);
  EXPECT_EQ(parse_error_line(replace(ok, "rhfs 1", "rhfs 2")), 2u);
  EXPECT_EQ(parse_error_line(replace(ok, "job 2 rts 1", "job 3 rts 1")), 13u);
  EXPECT_EQ(parse_error_line(replace(ok, "op 1 1 4", "op 1 1 four")), 10u);
  EXPECT_EQ(parse_error_line(replace(ok, "end", "end\nextra 1")), 17u);
  EXPECT_NE(parse_error_line(ok.substr(0, ok.find("job 2"))), 0u);
  EXPECT_THROW(load_instance("/nonexistent/file.rhfs"), std::runtime_error);
}

TEST(ParseInstance, RoundTrip) {
  for (std::size_t k = 0; k < 10; ++k) {
    Instance inst = generate_instance(suite_spec(k % 2 ? "small" : "tiny", k), k);
    if (k % 3 == 0) inst.set_lower_bound(40 + k);
    EXPECT_EQ(parse_instance(serialize_instance(inst)), inst);
  }
  Instance const painting = rhfs::testing::painting();
  EXPECT_EQ(parse_instance(serialize_instance(painting)), painting);
}

// Deleting any single data line of a serialized instance must be rejected.
TEST(ParseInstance, RejectsEveryDroppedLine) {
  std::string const text = serialize_instance(generate_instance(suite_spec("tiny", 2), 1));
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  for (std::size_t drop = 0; drop + 1 < lines.size(); ++drop) {  // the final "end" is optional
    std::string mutated;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (i != drop) mutated += lines[i] + "\n";
    }
    EXPECT_THROW(parse_instance(mutated), ParseError) << "dropped line " << drop + 1 << ": " << lines[drop];
  }
}

TEST(ParseCarlierNeron, MapsToSinglePassFlowShop) {
  Instance const inst = parse_carlier_neron("3 2\n2 1\n4 5\n6 7\n8 9\n", "cn", 20);
  EXPECT_EQ(inst.nrm(), 2u);
  EXPECT_EQ(inst.rm(), 0u);
  EXPECT_EQ(inst.stations_per_stage(), (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(inst.time(2, 0, 1), 8);
  EXPECT_EQ(inst.time(1, 1, 0), 7);
  EXPECT_EQ(inst.lower_bound(), 20);
  EXPECT_THROW(parse_carlier_neron("3 2\n2 1\n4 5\n6 7\n", "cn"), ParseError);
  EXPECT_THROW(parse_carlier_neron("1 1\n1\n4 5\n", "cn"), ParseError);
  EXPECT_THROW(parse_carlier_neron("1 1\n0\n4\n", "cn"), ParseError);
}

TEST(Generator, DeterministicPerSeed) {
  auto const spec = suite_spec("medium", 2);
  EXPECT_EQ(generate_instance(spec, 7), generate_instance(spec, 7));
  EXPECT_FALSE(generate_instance(spec, 7) == generate_instance(spec, 8));
  EXPECT_EQ(generate_instance(spec, 7).name(), "medium_3");
}

TEST(Generator, RespectsRanges) {
  GeneratorSpec spec;
  spec.n = 6;
  spec.duration_min = spec.duration_max = 5;
  spec.rts_min = 2;
  spec.rts_max = 2;
  Instance const inst = generate_instance(spec, 1);
  for (std::size_t i = 0; i < inst.job_count(); ++i) {
    EXPECT_EQ(inst.rts()[i], 2u);
    for (std::size_t l = 0; l < inst.operation_count(i); ++l) {
      for (Minutes t : inst.times(i, l)) EXPECT_EQ(t, 5);
    }
  }
  spec.duration_min = 6;
  EXPECT_THROW(generate_instance(spec, 1), std::invalid_argument);
  EXPECT_THROW(suite_spec("huge"), std::invalid_argument);
}

TEST(Generator, MediumSuiteShape) {
  Instance const inst = generate_instance(suite_spec("medium"), 1);
  EXPECT_EQ(inst.job_count(), 15u);
  EXPECT_EQ(inst.stage_count(), 3u);
  EXPECT_EQ(inst.stations_per_stage(), (std::vector<std::size_t>{2, 3, 4}));
}

LdwpaParams quick() {
  LdwpaParams p;
  p.base.np = 8;
  p.base.q = 2;
  p.base.sc_max = 2;
  p.base.gen_max = 4;
  return p;
}

TEST(Experiment, SingleSeed) {
  Instance inst = generate_instance(suite_spec("small"), 3);
  inst.set_lower_bound(critical_path_bound(inst));
  auto const ex = run_experiment(inst, Algorithm::ldwpa, quick(), 1, 9);
  ASSERT_EQ(ex.reports.size(), 1u);
  EXPECT_EQ(ex.reports[0].seed, 9u);
  EXPECT_EQ(ex.summary.best, ex.summary.worst);
  EXPECT_DOUBLE_EQ(ex.summary.median, static_cast<double>(ex.summary.best));
  ASSERT_TRUE(ex.summary.deviation_best_pct.has_value());
  EXPECT_GE(*ex.summary.deviation_best_pct, 0.0);
  EXPECT_THROW(run_experiment(inst, Algorithm::wpa, quick(), 0, 1), std::invalid_argument);
}

TEST(Experiment, ParallelRunsMatchSerial) {
  Instance const inst = generate_instance(suite_spec("small"), 3);
  auto const a = run_experiment(inst, Algorithm::wpa, quick(), 4, 1, 1);
  auto const b = run_experiment(inst, Algorithm::wpa, quick(), 4, 1, 3);
  for (std::size_t s = 0; s < 4; ++s) EXPECT_EQ(a.reports[s].trace, b.reports[s].trace);
  EXPECT_EQ(a.reports[0].algorithm, "wpa");
}

TEST(Experiment, SummaryStatistics) {
  std::vector<RunReport> reports(4);
  Minutes const finals[] = {12, 10, 15, 11};
  for (std::size_t k = 0; k < 4; ++k) {
    reports[k].instance = "x";
    reports[k].algorithm = "wpa";
    reports[k].best = finals[k];
  }
  auto const s = summarize(reports, 10);
  EXPECT_EQ(s.best, 10);
  EXPECT_EQ(s.worst, 15);
  EXPECT_DOUBLE_EQ(s.average, 12.0);
  EXPECT_DOUBLE_EQ(s.median, 11.5);
  EXPECT_DOUBLE_EQ(*s.deviation_best_pct, 0.0);
  EXPECT_DOUBLE_EQ(*s.deviation_average_pct, 20.0);
}

TEST(Export, EmptyCsvHasOnlyTheHeader) {
  EXPECT_EQ(results_csv({}), "instance,algorithm,seed,best,average,deviation_pct,cmax,tlb,fur,twt,runtime_ms\n");
}

TEST(Export, CsvAndJsonAgree) {
  Instance inst = generate_instance(suite_spec("small"), 5);
  inst.set_lower_bound(critical_path_bound(inst));
  std::vector<Experiment> exps{run_experiment(inst, Algorithm::wpa, quick(), 2, 1),
                               run_experiment(inst, Algorithm::ldwpa, quick(), 2, 1)};
  auto const rows = result_rows(exps);
  std::string const csv = results_csv(rows);
  std::istringstream in(csv);
  std::string header, line;
  std::getline(in, header);
  std::size_t n = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 10);
    ++n;
  }
  EXPECT_EQ(n, 4u);

  auto const doc = nlohmann::json::parse(results_json(rows, {exps[0].summary, exps[1].summary}));
  ASSERT_EQ(doc["runs"].size(), 4u);
  auto const back = read_results_csv(csv);
  ASSERT_EQ(back.size(), 4u);
  for (std::size_t r = 0; r < 4; ++r) {
    auto const& j = doc["runs"][r];
    EXPECT_EQ(j["instance"], back[r].instance);
    EXPECT_EQ(j["algorithm"], back[r].algorithm);
    EXPECT_EQ(j["seed"].get<std::uint64_t>(), back[r].seed);
    EXPECT_EQ(j["best"].get<Minutes>(), back[r].best);
    EXPECT_EQ(j["cmax"].get<Minutes>(), back[r].cmax);
    EXPECT_NEAR(j["fur"].get<double>(), back[r].fur, 5e-5);
    EXPECT_NEAR(j["tlb"].get<double>(), back[r].tlb, 5e-5);
    EXPECT_NEAR(j["deviation_pct"].get<double>(), *back[r].deviation_pct, 5e-5);
    EXPECT_EQ(j["runtime_ms"].get<double>(), 0.0);
  }
  EXPECT_EQ(doc["summaries"][1]["algorithm"], "ldwpa");
  EXPECT_EQ(doc["summaries"][0]["runs"], 2);
}

TEST(Export, MissingBoundLeavesDeviationEmpty) {
  Instance const inst = generate_instance(suite_spec("small"), 5);
  auto const rows = result_rows({run_experiment(inst, Algorithm::wpa, quick(), 1, 1)});
  std::string const csv = results_csv(rows);
  EXPECT_NE(csv.find(",,"), std::string::npos);
  EXPECT_FALSE(read_results_csv(csv)[0].deviation_pct.has_value());
  auto const doc = nlohmann::json::parse(results_json(rows, {}));
  EXPECT_TRUE(doc["runs"][0]["deviation_pct"].is_null());
}

TEST(Export, TracesAreLongFormat) {
  Instance const inst = generate_instance(suite_spec("small"), 5);
  auto const ex = run_experiment(inst, Algorithm::wpa, quick(), 2, 1);
  std::string const t = traces_csv(std::vector<Experiment>{ex});
  EXPECT_EQ(t.substr(0, t.find('\n')), "instance,algorithm,seed,iteration,best");
  EXPECT_EQ(static_cast<std::size_t>(std::count(t.begin(), t.end(), '\n')), 1 + 2 * (quick().base.gen_max + 1));
}

TEST(Export, ComparisonTableFromExternalCsv) {
  std::string const external =
      "instance,algorithm,seed,best\n"
      "p,neh,1,90\n"
      "p,neh,2,94\n"
      "p,ldwpa,1,88\n";
  auto const rows = read_results_csv(external);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].cmax, 90);
  std::string const table = comparison_table(rows);
  EXPECT_NE(table.find("| p | ldwpa | 1 | 88 | 88.0000 | 88.0000 |"), std::string::npos);
  EXPECT_NE(table.find("| p | neh | 2 | 90 | 92.0000 | 92.0000 |"), std::string::npos);
  EXPECT_THROW(read_results_csv("instance,seed\np,1\n"), std::runtime_error);
  EXPECT_THROW(read_results_csv("instance,algorithm,seed,best\np,neh,x,9\n"), std::runtime_error);
}

TEST(Params, JsonRoundTrip) {
  LdwpaParams p;
  p.base.np = 25;
  p.base.mu = 0.35;
  p.base.scout_mode = ScoutMode::hybrid;
  p.base.remaining_rule = RemainingTimeRule::mean_station;
  p.start_gen = 12;
  p.kr = 0.5;
  LdwpaParams q;
  apply_params_json(q, params_to_json(p));
  EXPECT_EQ(params_to_json(q), params_to_json(p));
  EXPECT_EQ(q.base.np, 25u);
  EXPECT_EQ(q.start_gen, 12u);
}

TEST(Params, RejectsBadKeysAndValues) {
  LdwpaParams p;
  EXPECT_THROW(apply_params_json(p, nlohmann::json{{"npp", 3}}), std::invalid_argument);
  EXPECT_THROW(apply_params_json(p, nlohmann::json{{"np", -3}}), std::invalid_argument);
  EXPECT_THROW(apply_params_json(p, nlohmann::json{{"np", "many"}}), std::invalid_argument);
  EXPECT_THROW(apply_params_json(p, nlohmann::json{{"scout_mode", "spiral"}}), std::invalid_argument);
}

TEST(ScheduleArtifact, RoundTrip) {
  Instance const inst = rhfs::testing::painting();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(inst.total_operations());
  for (double& g : x) g = u(rng);
  Schedule const s = decode(inst, x);
  EXPECT_EQ(parse_schedule_artifact(schedule_to_json(s).dump()), s);
  nlohmann::json wrapped{{"schedule", schedule_to_json(s)}};
  EXPECT_EQ(parse_schedule_artifact(wrapped.dump()), s);
  EXPECT_THROW(parse_schedule_artifact("{"), ArtifactError);
  EXPECT_THROW(parse_schedule_artifact(R"({"instance":"x","stations_per_stage":[1],"ops":[{"job":0}]})"),
               ArtifactError);
}

}  // namespace
