#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "metrics.hpp"
#include "model.hpp"

namespace rhfs {

// Schedule artifact. Job, step, stage and station numbers are 1-based.
inline nlohmann::ordered_json schedule_to_json(Schedule const& s) {
  nlohmann::ordered_json j;
  j["instance"] = s.instance_name;
  j["stations_per_stage"] = s.stations_per_stage;
  j["ops"] = nlohmann::ordered_json::array();
  for (ScheduledOp const& op : s.ops) {
    j["ops"].push_back({{"job", op.job + 1},
                        {"step", op.step + 1},
                        {"stage", op.stage + 1},
                        {"station", op.station + 1},
                        {"pass", op.pass},
                        {"start", op.start},
                        {"completion", op.completion}});
  }
  return j;
}

inline nlohmann::ordered_json metrics_to_json(MetricReport const& m) {
  nlohmann::ordered_json j;
  j["cmax"] = m.cmax;
  j["tlb"] = m.tlb;
  j["fur"] = m.fur;
  j["twt"] = m.twt;
  j["deviation_pct"] = m.deviation_pct ? nlohmann::ordered_json(*m.deviation_pct) : nlohmann::ordered_json();
  return j;
}

class ArtifactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Schedule schedule_from_json(nlohmann::json const& j) {
  try {
    Schedule s;
    s.instance_name = j.at("instance").get<std::string>();
    s.stations_per_stage = j.at("stations_per_stage").get<std::vector<std::size_t>>();
    for (std::size_t m : s.stations_per_stage) {
      if (m == 0) throw ArtifactError("schedule artifact: stage without stations");
    }
    auto one_based = [](nlohmann::json const& op, char const* key) {
      auto const v = op.at(key).get<std::int64_t>();
      if (v < 1) throw ArtifactError(std::string("schedule artifact: '") + key + "' must be >= 1");
      return static_cast<std::size_t>(v - 1);
    };
    for (auto const& op : j.at("ops")) {
      ScheduledOp o;
      o.job = one_based(op, "job");
      o.step = one_based(op, "step");
      o.stage = one_based(op, "stage");
      o.station = one_based(op, "station");
      o.pass = op.at("pass").get<std::size_t>();
      o.start = op.at("start").get<Minutes>();
      o.completion = op.at("completion").get<Minutes>();
      if (o.stage >= s.stations_per_stage.size() || o.station >= s.stations_per_stage[o.stage]) {
        throw ArtifactError("schedule artifact: op references a station outside the layout");
      }
      if (o.completion < o.start) throw ArtifactError("schedule artifact: op completes before it starts");
      s.ops.push_back(o);
    }
    return s;
  } catch (nlohmann::json::exception const& e) {
    throw ArtifactError(std::string("schedule artifact: ") + e.what());
  }
}

// Accepts either a bare schedule or a solve artifact wrapping one under "schedule".
inline Schedule parse_schedule_artifact(std::string const& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (nlohmann::json::exception const& e) {
    throw ArtifactError(std::string("schedule artifact is not JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("schedule")) return schedule_from_json(j.at("schedule"));
  return schedule_from_json(j);
}

}  // namespace rhfs
