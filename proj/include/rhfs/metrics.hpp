#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "model.hpp"

namespace rhfs {

struct MetricReport {
  Minutes cmax = 0;
  double tlb = 0.0;
  double fur = 0.0;
  Minutes twt = 0;
  std::optional<double> deviation_pct;
};

inline Minutes makespan(Schedule const& schedule) {
  if (schedule.ops.empty()) throw std::invalid_argument("makespan of an empty schedule");
  Minutes c = 0;
  for (ScheduledOp const& op : schedule.ops) c = std::max(c, op.completion);
  return c;
}

namespace detail {

struct StationLoad {
  Minutes busy = 0;
  Minutes first_start = std::numeric_limits<Minutes>::max();
  Minutes last_completion = std::numeric_limits<Minutes>::min();
  bool used = false;

  Minutes span() const { return used ? last_completion - first_start : 0; }
};

inline std::vector<std::vector<StationLoad>> station_loads(std::vector<std::size_t> const& layout,
                                                           Schedule const& schedule) {
  std::vector<std::vector<StationLoad>> loads(layout.size());
  for (std::size_t j = 0; j < loads.size(); ++j) loads[j].resize(layout[j]);
  for (ScheduledOp const& op : schedule.ops) {
    StationLoad& s = loads.at(op.stage).at(op.station);
    s.busy += op.duration();
    s.first_start = std::min(s.first_start, op.start);
    s.last_completion = std::max(s.last_completion, op.completion);
    s.used = true;
  }
  return loads;
}

}  // namespace detail

// Total load balance cost: per stage, the root of the summed squared
// deviation of station busy time from the stage mean; summed over stages.
inline double tlb(Instance const& instance, Schedule const& schedule) {
  double total = 0.0;
  for (auto const& stage : detail::station_loads(instance.stations_per_stage(), schedule)) {
    double mean = 0.0;
    for (auto const& s : stage) mean += static_cast<double>(s.busy);
    mean /= static_cast<double>(stage.size());
    double sq = 0.0;
    for (auto const& s : stage) sq += (static_cast<double>(s.busy) - mean) * (static_cast<double>(s.busy) - mean);
    total += std::sqrt(sq);
  }
  return total;
}

// Total equipment utilization: busy time over active span, both summed over
// all stations. Throws when no station was ever active.
inline double fur(Instance const& instance, Schedule const& schedule) {
  Minutes busy = 0;
  Minutes span = 0;
  for (auto const& stage : detail::station_loads(instance.stations_per_stage(), schedule)) {
    for (auto const& s : stage) {
      busy += s.busy;
      span += s.span();
    }
  }
  if (span == 0) throw std::domain_error("utilization undefined: no station has a positive active span");
  return static_cast<double>(busy) / static_cast<double>(span);
}

// Total workstation free time: idle minutes inside each station's active span.
inline Minutes twt(Instance const& instance, Schedule const& schedule) {
  Minutes idle = 0;
  for (auto const& stage : detail::station_loads(instance.stations_per_stage(), schedule)) {
    for (auto const& s : stage) idle += s.span() - (s.used ? s.busy : 0);
  }
  return idle;
}

// d = (cmax - lb) / lb * 100
inline double deviation(double cmax, double lb) {
  if (!(lb > 0.0)) throw std::invalid_argument("deviation needs a positive lower bound");
  return (cmax - lb) / lb * 100.0;
}

inline MetricReport evaluate_metrics(Instance const& instance, Schedule const& schedule) {
  MetricReport r;
  r.cmax = makespan(schedule);
  r.tlb = tlb(instance, schedule);
  r.fur = fur(instance, schedule);
  r.twt = twt(instance, schedule);
  if (auto lb = instance.lower_bound()) {
    r.deviation_pct = deviation(static_cast<double>(r.cmax), static_cast<double>(*lb));
  }
  return r;
}

}  // namespace rhfs
