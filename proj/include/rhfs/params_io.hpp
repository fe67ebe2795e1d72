#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ldwpa.hpp"

namespace rhfs {

inline char const* to_string(ScoutMode m) {
  switch (m) {
    case ScoutMode::directional: return "directional";
    case ScoutMode::levy: return "levy";
    case ScoutMode::hybrid: return "hybrid";
  }
  return "?";
}

inline ScoutMode parse_scout_mode(std::string const& s) {
  if (s == "directional") return ScoutMode::directional;
  if (s == "levy") return ScoutMode::levy;
  if (s == "hybrid") return ScoutMode::hybrid;
  throw std::invalid_argument("unknown scout_mode '" + s + "'");
}

inline char const* to_string(RemainingTimeRule r) {
  return r == RemainingTimeRule::min_station ? "min_station" : "mean_station";
}

inline RemainingTimeRule parse_remaining_rule(std::string const& s) {
  if (s == "min_station") return RemainingTimeRule::min_station;
  if (s == "mean_station") return RemainingTimeRule::mean_station;
  throw std::invalid_argument("unknown remaining_rule '" + s + "'");
}

// Flat key set shared by both algorithms. `seed` is not part of it: seeds come from the command line.
inline nlohmann::ordered_json params_to_json(LdwpaParams const& p) {
  WpaParams const& b = p.base;
  nlohmann::ordered_json j;
  j["np"] = b.np;
  j["gen_max"] = b.gen_max;
  j["q"] = b.q;
  j["h"] = b.h;
  j["sc_max"] = b.sc_max;
  j["step_a"] = b.step_a;
  j["step_b"] = b.step_b;
  j["bw"] = b.replaced_per_iteration();
  j["mu"] = b.mu;
  j["ra_max"] = b.ra_max;
  j["ra_min"] = b.ra_min;
  j["siege_radius_starts_at_max"] = b.siege_radius_starts_at_max;
  j["scout_mode"] = to_string(b.scout_mode);
  j["levy_beta"] = b.levy_beta;
  j["remaining_rule"] = to_string(b.remaining_rule);
  j["max_evals"] = b.max_evals;
  j["threads"] = b.threads;
  j["rt"] = p.rt;
  j["kr"] = p.kr;
  j["start_gen"] = p.effective_start_gen();
  j["stagnation_limit"] = p.stagnation_limit;
  j["renewal"] = p.renewal;
  j["rejection_factor"] = p.rejection_factor;
  return j;
}

// Applies the keys present in `j` on top of `p`; unknown keys are an error.
inline void apply_params_json(LdwpaParams& p, nlohmann::json const& j) {
  if (!j.is_object()) throw std::invalid_argument("parameter document must be a JSON object");
  WpaParams& b = p.base;
  auto count = [](nlohmann::json const& v) {
    if (!v.is_number_unsigned()) throw std::invalid_argument("expected a non-negative integer");
    return v.get<std::size_t>();
  };
  for (auto const& [key, value] : j.items()) {
    try {
      if (key == "np") b.np = count(value);
      else if (key == "gen_max") b.gen_max = count(value);
      else if (key == "q") b.q = count(value);
      else if (key == "h") b.h = count(value);
      else if (key == "sc_max") b.sc_max = count(value);
      else if (key == "step_a") b.step_a = value.get<double>();
      else if (key == "step_b") b.step_b = value.get<double>();
      else if (key == "bw") b.bw = count(value);
      else if (key == "mu") b.mu = value.get<double>();
      else if (key == "ra_max") b.ra_max = value.get<double>();
      else if (key == "ra_min") b.ra_min = value.get<double>();
      else if (key == "siege_radius_starts_at_max") b.siege_radius_starts_at_max = value.get<bool>();
      else if (key == "scout_mode") b.scout_mode = parse_scout_mode(value.get<std::string>());
      else if (key == "levy_beta") b.levy_beta = value.get<double>();
      else if (key == "remaining_rule") b.remaining_rule = parse_remaining_rule(value.get<std::string>());
      else if (key == "max_evals") b.max_evals = count(value);
      else if (key == "threads") b.threads = count(value);
      else if (key == "rt") p.rt = value.get<double>();
      else if (key == "kr") p.kr = value.get<double>();
      else if (key == "start_gen") p.start_gen = count(value);
      else if (key == "stagnation_limit") p.stagnation_limit = count(value);
      else if (key == "renewal") p.renewal = value.get<bool>();
      else if (key == "rejection_factor") p.rejection_factor = count(value);
      else throw std::invalid_argument("unknown parameter '" + key + "'");
    } catch (nlohmann::json::exception const& e) {
      throw std::invalid_argument("parameter '" + key + "': " + e.what());
    } catch (std::invalid_argument const& e) {
      if (std::string(e.what()).starts_with("unknown parameter")) throw;
      throw std::invalid_argument("parameter '" + key + "': " + e.what());
    }
  }
}

}  // namespace rhfs
