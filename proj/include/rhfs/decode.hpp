#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "model.hpp"

namespace rhfs {

// Genes live in [kGeneMin, kGeneMax]; anything outside is clamped on decode.
inline constexpr double kGeneMin = 0.0;
inline constexpr double kGeneMax = 1.0;

inline double clamp_gene(double g) { return std::clamp(g, kGeneMin, kGeneMax); }

// One random key per (job, flow step), laid out job-major (see Instance::gene_index).
using Position = std::vector<double>;

// Station assigned to every flow step, in gene order.
using AssignmentMatrix = std::vector<StationId>;

enum class RemainingTimeRule {
  min_station,   // Σ min_k WT over the remaining flow
  mean_station,  // Σ mean_k WT over the remaining flow
};

inline double step_time(std::vector<Minutes> const& t, RemainingTimeRule rule) {
  if (rule == RemainingTimeRule::min_station) return static_cast<double>(*std::min_element(t.begin(), t.end()));
  return static_cast<double>(std::accumulate(t.begin(), t.end(), Minutes{0})) / static_cast<double>(t.size());
}

// Remaining processing time of `job` counting flow steps from `from_step`
// (0-based, inclusive) to the end of its flow.
inline double remaining_time(Instance const& instance, std::size_t job, std::size_t from_step,
                             RemainingTimeRule rule = RemainingTimeRule::min_station) {
  if (job >= instance.job_count()) throw std::out_of_range("unknown job index " + std::to_string(job));
  std::size_t const om = instance.operation_count(job);
  if (from_step > om) {
    throw std::out_of_range("flow step " + std::to_string(from_step) + " beyond om = " + std::to_string(om));
  }
  double total = 0.0;
  for (std::size_t l = from_step; l < om; ++l) total += step_time(instance.times(job, l), rule);
  return total;
}

// Σ_l min_k WT for the job's whole flow; no schedule can finish the job sooner.
inline Minutes critical_path_bound(Instance const& instance) {
  Minutes best = 0;
  for (std::size_t i = 0; i < instance.job_count(); ++i) {
    Minutes sum = 0;
    for (std::size_t l = 0; l < instance.operation_count(i); ++l) {
      auto const& t = instance.times(i, l);
      sum += *std::min_element(t.begin(), t.end());
    }
    best = std::max(best, sum);
  }
  return best;
}

// Event-driven list scheduler.
//
// Jobs are released into the first stage one at a time, in ascending order of
// their first-step gene: only the next unreleased job competes for a stage-1
// station. Whenever a station is free and jobs wait for its stage, the job with
// the least remaining processing time is served first; ties go to the smaller
// gene of the waiting flow step, then to the lower job index. The chosen job
// takes the free station that has been idle longest (lowest index on ties).
class Decoder {
 public:
  explicit Decoder(Instance const& instance, RemainingTimeRule rule = RemainingTimeRule::min_station)
      : instance_(&instance) {
    remaining_.resize(instance.job_count());
    for (std::size_t i = 0; i < instance.job_count(); ++i) {
      std::size_t const om = instance.operation_count(i);
      remaining_[i].assign(om + 1, 0.0);
      for (std::size_t l = om; l-- > 0;) {
        remaining_[i][l] = remaining_[i][l + 1] + step_time(instance.times(i, l), rule);
      }
    }
  }

  Instance const& instance() const { return *instance_; }

  Schedule decode(std::span<double const> position) const {
    Instance const& inst = *instance_;
    std::size_t const n = inst.job_count();
    std::size_t const total = inst.total_operations();
    if (position.size() != total) {
      throw std::invalid_argument("position has " + std::to_string(position.size()) + " genes, instance needs " +
                                  std::to_string(total));
    }
    auto gene = [&](std::size_t job, std::size_t step) { return clamp_gene(position[inst.gene_index(job, step)]); };

    std::vector<std::size_t> release(n);
    std::iota(release.begin(), release.end(), std::size_t{0});
    std::sort(release.begin(), release.end(), [&](std::size_t a, std::size_t b) {
      return std::make_tuple(gene(a, 0), a) < std::make_tuple(gene(b, 0), b);
    });
    std::size_t next_release = 0;

    std::vector<std::size_t> next_step(n, 0);
    std::vector<Minutes> ready(n, 0);
    std::vector<bool> released(n, false);
    std::vector<std::vector<Minutes>> station_free(inst.stage_count());
    for (std::size_t j = 0; j < inst.stage_count(); ++j) station_free[j].assign(inst.station_count(j), 0);

    Schedule schedule;
    schedule.instance_name = inst.name();
    schedule.stations_per_stage = inst.stations_per_stage();
    schedule.ops.reserve(total);

    Minutes now = 0;
    while (schedule.ops.size() < total) {
      for (std::size_t stage = 0; stage < inst.stage_count(); ++stage) {
        auto& free = station_free[stage];
        for (;;) {
          std::size_t station = free.size();
          for (std::size_t k = 0; k < free.size(); ++k) {
            if (free[k] <= now && (station == free.size() || free[k] < free[station])) station = k;
          }
          if (station == free.size()) break;

          std::size_t pick = n;
          auto better = [&](std::size_t a, std::size_t b) {
            auto key = [&](std::size_t job) {
              return std::make_tuple(remaining_[job][next_step[job]], gene(job, next_step[job]), job);
            };
            return key(a) < key(b);
          };
          for (std::size_t job = 0; job < n; ++job) {
            if (!released[job] || next_step[job] >= inst.operation_count(job)) continue;
            if (inst.stage_of(next_step[job]) != stage || ready[job] > now) continue;
            if (pick == n || better(job, pick)) pick = job;
          }
          if (stage == 0 && next_release < n) {
            std::size_t const head = release[next_release];
            if (pick == n || better(head, pick)) pick = head;
          }
          if (pick == n) break;

          if (!released[pick]) {
            released[pick] = true;
            ++next_release;
          }
          std::size_t const step = next_step[pick];
          Minutes const start = std::max(free[station], ready[pick]);
          Minutes const done = start + inst.time(pick, step, station);
          schedule.ops.push_back({pick, step, stage, station, inst.pass_of(step), start, done});
          free[station] = done;
          ready[pick] = done;
          ++next_step[pick];
        }
      }
      Minutes next = std::numeric_limits<Minutes>::max();
      for (auto const& stage_free : station_free) {
        for (Minutes f : stage_free) {
          if (f > now) next = std::min(next, f);
        }
      }
      if (next == std::numeric_limits<Minutes>::max()) break;
      now = next;
    }
    return schedule;
  }

 private:
  Instance const* instance_;
  // remaining_[i][l]: remaining time of job i when it waits for flow step l
  std::vector<std::vector<double>> remaining_;
};

inline Schedule decode(Instance const& instance, std::span<double const> position,
                       RemainingTimeRule rule = RemainingTimeRule::min_station) {
  return Decoder(instance, rule).decode(position);
}

// Reads the station of every flow step off a complete schedule, ordered by
// (job, step), which is gene order.
inline AssignmentMatrix assignment_matrix(Schedule const& schedule) {
  std::vector<ScheduledOp const*> ops;
  ops.reserve(schedule.ops.size());
  for (ScheduledOp const& op : schedule.ops) ops.push_back(&op);
  std::sort(ops.begin(), ops.end(), [](ScheduledOp const* a, ScheduledOp const* b) {
    return std::tie(a->job, a->step) < std::tie(b->job, b->step);
  });
  AssignmentMatrix matrix;
  matrix.reserve(ops.size());
  for (ScheduledOp const* op : ops) matrix.push_back(op->station_id());
  return matrix;
}

}  // namespace rhfs
