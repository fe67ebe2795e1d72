#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace rhfs {

// Durations and timestamps are whole minutes.
using Minutes = std::int64_t;

// Identifies one work station: stage j and station k inside it, both 0-based.
struct StationId {
  std::size_t stage = 0;
  std::size_t station = 0;

  friend auto operator<=>(StationId const&, StationId const&) = default;
};

// One visit of a job to a stage.
//
// `step` is the 0-based position in the job's process flow and `pass` is the
// 1-based re-entrant pass the step belongs to (0 for non-re-entrant stages).
struct FlowStep {
  std::size_t job = 0;
  std::size_t step = 0;
  std::size_t stage = 0;
  std::size_t pass = 0;

  friend bool operator==(FlowStep const&, FlowStep const&) = default;
};

// A re-entrant hybrid flow shop instance.
//
// The first `nrm` stages are visited once; the remaining `rm` stages form a
// block that job i traverses `rts[i]` times in ascending stage order. Every
// flow step of every job carries one processing time per station of its stage.
class Instance {
 public:
  Instance() = default;

  // times[i][l][k]: duration of job i at flow step l on station k of that step's stage.
  Instance(std::string name, std::size_t nrm, std::size_t rm,
           std::vector<std::size_t> stations_per_stage, std::vector<std::size_t> rts,
           std::vector<std::vector<std::vector<Minutes>>> times,
           std::optional<Minutes> lower_bound = std::nullopt)
      : name_(std::move(name)),
        nrm_(nrm),
        rm_(rm),
        stations_(std::move(stations_per_stage)),
        rts_(std::move(rts)),
        times_(std::move(times)),
        lb_(lower_bound) {
    check();
    offsets_.resize(rts_.size() + 1, 0);
    for (std::size_t i = 0; i < rts_.size(); ++i) {
      offsets_[i + 1] = offsets_[i] + operation_count(i);
    }
  }

  std::string const& name() const { return name_; }
  std::size_t job_count() const { return rts_.size(); }
  std::size_t nrm() const { return nrm_; }
  std::size_t rm() const { return rm_; }
  std::size_t stage_count() const { return nrm_ + rm_; }
  std::vector<std::size_t> const& stations_per_stage() const { return stations_; }
  std::size_t station_count(std::size_t stage) const { return stations_.at(stage); }
  std::size_t total_station_count() const {
    return std::accumulate(stations_.begin(), stations_.end(), std::size_t{0});
  }
  std::vector<std::size_t> const& rts() const { return rts_; }
  std::optional<Minutes> lower_bound() const { return lb_; }
  void set_lower_bound(std::optional<Minutes> lb) {
    if (lb && *lb <= 0) throw std::invalid_argument("lower bound must be positive");
    lb_ = lb;
  }

  // om_i = nrm + rm * rts_i
  std::size_t operation_count(std::size_t job) const { return nrm_ + rm_ * rts_.at(job); }

  // Σ_i om_i, i.e. the number of genes of a position.
  std::size_t total_operations() const { return offsets_.empty() ? 0 : offsets_.back(); }

  // Index of (job, step) in a flat gene vector.
  std::size_t gene_index(std::size_t job, std::size_t step) const { return offsets_.at(job) + step; }

  std::size_t stage_of(std::size_t step) const {
    return step < nrm_ ? step : nrm_ + (step - nrm_) % rm_;
  }
  std::size_t pass_of(std::size_t step) const {
    return step < nrm_ ? 0 : 1 + (step - nrm_) / rm_;
  }

  Minutes time(std::size_t job, std::size_t step, std::size_t station) const {
    return times_.at(job).at(step).at(station);
  }
  std::vector<Minutes> const& times(std::size_t job, std::size_t step) const {
    return times_.at(job).at(step);
  }
  std::vector<std::vector<std::vector<Minutes>>> const& all_times() const { return times_; }

  friend bool operator==(Instance const& a, Instance const& b) {
    return std::tie(a.name_, a.nrm_, a.rm_, a.stations_, a.rts_, a.times_, a.lb_) ==
           std::tie(b.name_, b.nrm_, b.rm_, b.stations_, b.rts_, b.times_, b.lb_);
  }

 private:
  void check() const {
    auto fail = [](std::string const& what) { throw std::invalid_argument(what); };
    if (nrm_ + rm_ == 0) fail("instance needs at least one stage");
    if (stations_.size() != nrm_ + rm_) {
      fail("stations_per_stage has " + std::to_string(stations_.size()) + " entries, expected " +
           std::to_string(nrm_ + rm_));
    }
    for (std::size_t j = 0; j < stations_.size(); ++j) {
      if (stations_[j] == 0) fail("stage " + std::to_string(j + 1) + " has no stations");
    }
    if (rts_.empty()) fail("instance needs at least one job");
    if (times_.size() != rts_.size()) fail("processing times given for a different number of jobs");
    for (std::size_t i = 0; i < rts_.size(); ++i) {
      if (rts_[i] == 0) fail("job " + std::to_string(i + 1) + " has rts = 0");
      std::size_t const om = nrm_ + rm_ * rts_[i];
      if (times_[i].size() != om) {
        fail("job " + std::to_string(i + 1) + " has " + std::to_string(times_[i].size()) +
             " flow steps, expected om = " + std::to_string(om));
      }
      for (std::size_t l = 0; l < om; ++l) {
        std::size_t const stage = stage_of(l);
        if (times_[i][l].size() != stations_[stage]) {
          fail("job " + std::to_string(i + 1) + " step " + std::to_string(l + 1) + " lists " +
               std::to_string(times_[i][l].size()) + " station times, stage " +
               std::to_string(stage + 1) + " has " + std::to_string(stations_[stage]));
        }
        for (std::size_t k = 0; k < times_[i][l].size(); ++k) {
          if (times_[i][l][k] <= 0) {
            fail("job " + std::to_string(i + 1) + " step " + std::to_string(l + 1) + " station " +
                 std::to_string(k + 1) + " has non-positive duration " +
                 std::to_string(times_[i][l][k]));
          }
        }
      }
    }
    if (lb_ && *lb_ <= 0) fail("lower bound must be positive");
  }

  std::string name_;
  std::size_t nrm_ = 0;
  std::size_t rm_ = 0;
  std::vector<std::size_t> stations_;
  std::vector<std::size_t> rts_;
  std::vector<std::vector<std::vector<Minutes>>> times_;
  std::optional<Minutes> lb_;
  std::vector<std::size_t> offsets_;
};

// Process flow of one job: the nrm non-re-entrant stages, then rts_i
// repetitions of the re-entrant block.
inline std::vector<FlowStep> build_flow(Instance const& instance, std::size_t job) {
  if (job >= instance.job_count()) {
    throw std::out_of_range("unknown job index " + std::to_string(job));
  }
  std::vector<FlowStep> flow;
  std::size_t const om = instance.operation_count(job);
  flow.reserve(om);
  for (std::size_t l = 0; l < om; ++l) {
    flow.push_back({job, l, instance.stage_of(l), instance.pass_of(l)});
  }
  return flow;
}

struct ScheduledOp {
  std::size_t job = 0;
  std::size_t step = 0;
  std::size_t stage = 0;
  std::size_t station = 0;
  std::size_t pass = 0;
  Minutes start = 0;
  Minutes completion = 0;

  StationId station_id() const { return {stage, station}; }
  Minutes duration() const { return completion - start; }

  friend bool operator==(ScheduledOp const&, ScheduledOp const&) = default;
};

// A decoded schedule. Carries the station layout so it can be inspected
// (and rendered) without the instance it came from.
struct Schedule {
  std::string instance_name;
  std::vector<std::size_t> stations_per_stage;
  std::vector<ScheduledOp> ops;

  // At indicator: 1 iff job's flow step ran on the given station.
  bool assigned(std::size_t job, std::size_t step, StationId where) const {
    return std::any_of(ops.begin(), ops.end(), [&](ScheduledOp const& op) {
      return op.job == job && op.step == step && op.station_id() == where;
    });
  }

  friend bool operator==(Schedule const&, Schedule const&) = default;
};

// n_{j,k}: number of visits served by a station, counting every re-entrant pass.
inline std::size_t station_job_count(Schedule const& schedule, std::size_t stage, std::size_t station) {
  if (stage >= schedule.stations_per_stage.size() || station >= schedule.stations_per_stage[stage]) {
    throw std::out_of_range("station (" + std::to_string(stage + 1) + "," + std::to_string(station + 1) +
                            ") does not exist");
  }
  return static_cast<std::size_t>(std::count_if(
      schedule.ops.begin(), schedule.ops.end(),
      [&](ScheduledOp const& op) { return op.stage == stage && op.station == station; }));
}

enum class Rule {
  unknown_station,  // op references a stage/station outside the instance
  flow_mismatch,    // job/step/stage do not match the job's process flow
  duration,         // C = S + WT
  negative_start,
  coverage,         // every flow step scheduled exactly once
  station_overlap,  // one job at a time per station
  precedence,       // step l+1 starts after step l completes
};

inline char const* to_string(Rule rule) {
  switch (rule) {
    case Rule::unknown_station: return "unknown-station";
    case Rule::flow_mismatch: return "flow-mismatch";
    case Rule::duration: return "duration";
    case Rule::negative_start: return "negative-start";
    case Rule::coverage: return "coverage";
    case Rule::station_overlap: return "station-overlap";
    case Rule::precedence: return "precedence";
  }
  return "?";
}

struct Violation {
  Rule rule;
  std::size_t job;
  std::vector<std::size_t> ops;  // indices into Schedule::ops
  std::string message;
};

// Checks a schedule against the shop rules. Returns every violation found;
// an empty result means the schedule is feasible.
inline std::vector<Violation> validate_schedule(Instance const& instance, Schedule const& schedule) {
  std::vector<Violation> out;
  auto describe = [](ScheduledOp const& op) {
    std::ostringstream s;
    s << "J" << op.job + 1 << " step " << op.step + 1 << " on WS(" << op.stage + 1 << ","
      << op.station + 1 << ") [" << op.start << "," << op.completion << ")";
    return s.str();
  };

  // (job, step) -> op indices
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_step;
  std::vector<bool> usable(schedule.ops.size(), false);

  for (std::size_t idx = 0; idx < schedule.ops.size(); ++idx) {
    ScheduledOp const& op = schedule.ops[idx];
    if (op.job >= instance.job_count() || op.step >= instance.operation_count(op.job)) {
      out.push_back({Rule::flow_mismatch, op.job, {idx}, describe(op) + ": no such flow step"});
      continue;
    }
    if (op.stage >= instance.stage_count() || op.station >= instance.station_count(op.stage)) {
      out.push_back({Rule::unknown_station, op.job, {idx}, describe(op) + ": station does not exist"});
      continue;
    }
    if (instance.stage_of(op.step) != op.stage) {
      out.push_back({Rule::flow_mismatch, op.job, {idx},
                     describe(op) + ": flow step belongs to stage " +
                         std::to_string(instance.stage_of(op.step) + 1)});
      continue;
    }
    usable[idx] = true;
    by_step[{op.job, op.step}].push_back(idx);
    Minutes const wt = instance.time(op.job, op.step, op.station);
    if (op.completion != op.start + wt) {
      out.push_back({Rule::duration, op.job, {idx},
                     describe(op) + ": completion should be start + " + std::to_string(wt)});
    }
    if (op.start < 0) {
      out.push_back({Rule::negative_start, op.job, {idx}, describe(op) + ": negative start"});
    }
  }

  for (std::size_t i = 0; i < instance.job_count(); ++i) {
    for (std::size_t l = 0; l < instance.operation_count(i); ++l) {
      auto it = by_step.find({i, l});
      std::size_t const n = it == by_step.end() ? 0 : it->second.size();
      if (n != 1) {
        out.push_back({Rule::coverage, i, n ? it->second : std::vector<std::size_t>{},
                       "J" + std::to_string(i + 1) + " step " + std::to_string(l + 1) + " scheduled " +
                           std::to_string(n) + " times"});
      }
    }
  }

  // station disjointness
  std::map<StationId, std::vector<std::size_t>> by_station;
  for (std::size_t idx = 0; idx < schedule.ops.size(); ++idx) {
    if (usable[idx]) by_station[schedule.ops[idx].station_id()].push_back(idx);
  }
  for (auto& [where, list] : by_station) {
    std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(schedule.ops[a].start, a) < std::tie(schedule.ops[b].start, b);
    });
    // sweep keeping the op that reaches furthest, so every overlap is reported once
    std::size_t reach = list.empty() ? 0 : list.front();
    for (std::size_t p = 1; p < list.size(); ++p) {
      ScheduledOp const& cur = schedule.ops[list[p]];
      ScheduledOp const& prev = schedule.ops[reach];
      if (cur.start < prev.completion) {
        out.push_back({Rule::station_overlap, cur.job, {reach, list[p]},
                       describe(prev) + " overlaps " + describe(cur)});
      }
      if (cur.completion > prev.completion) reach = list[p];
    }
  }

  // precedence along each job's flow
  for (std::size_t i = 0; i < instance.job_count(); ++i) {
    for (std::size_t l = 1; l < instance.operation_count(i); ++l) {
      auto a = by_step.find({i, l - 1});
      auto b = by_step.find({i, l});
      if (a == by_step.end() || b == by_step.end()) continue;
      ScheduledOp const& before = schedule.ops[a->second.front()];
      ScheduledOp const& after = schedule.ops[b->second.front()];
      if (after.start < before.completion) {
        out.push_back({Rule::precedence, i, {a->second.front(), b->second.front()},
                       describe(after) + " starts before " + describe(before) + " completes"});
      }
    }
  }
  return out;
}

}  // namespace rhfs
