#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "model.hpp"

namespace rhfs {

struct GeneratorSpec {
  std::string name = "generated";
  std::size_t n = 10;
  std::size_t nrm = 0;
  std::size_t rm = 3;
  std::vector<std::size_t> stations{2, 3, 4};
  std::size_t rts_min = 1;
  std::size_t rts_max = 3;
  Minutes duration_min = 10;
  Minutes duration_max = 25;
};

// Uniform random instance; fully determined by (spec, seed).
inline Instance generate_instance(GeneratorSpec const& spec, std::uint64_t seed) {
  if (spec.n == 0) throw std::invalid_argument("generator needs at least one job");
  if (spec.rts_min == 0 || spec.rts_min > spec.rts_max) throw std::invalid_argument("empty rts range");
  if (spec.duration_min <= 0 || spec.duration_min > spec.duration_max) throw std::invalid_argument("empty duration range");
  if (spec.stations.size() != spec.nrm + spec.rm) throw std::invalid_argument("station list does not match nrm + rm");

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x6e6eu};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> rts_dist(spec.rts_min, spec.rm ? spec.rts_max : spec.rts_min);
  std::uniform_int_distribution<Minutes> dur(spec.duration_min, spec.duration_max);

  std::vector<std::size_t> rts(spec.n);
  std::vector<std::vector<std::vector<Minutes>>> times(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    rts[i] = spec.rm ? rts_dist(rng) : 1;
    std::size_t const om = spec.nrm + spec.rm * rts[i];
    for (std::size_t l = 0; l < om; ++l) {
      std::size_t const stage = l < spec.nrm ? l : spec.nrm + (l - spec.nrm) % spec.rm;
      std::vector<Minutes> row(spec.stations.at(stage));
      for (Minutes& t : row) t = dur(rng);
      times[i].push_back(std::move(row));
    }
  }
  return Instance(spec.name, spec.nrm, spec.rm, spec.stations, std::move(rts), std::move(times));
}

// Named generator families. `index` varies the shape where the family allows it.
//   tiny:   n in 2..4, one or two stages of at most two stations, rts <= 2
//   small:  n = 8, nrm = 1, rm = 2, stations (2, 2, 3)
//   medium: n = 15, nrm = 0, rm = 3, stations (2, 3, 4)
//   large:  n = 30, nrm = 1, rm = 3, stations (3, 3, 4, 4)
inline GeneratorSpec suite_spec(std::string const& suite, std::size_t index = 0) {
  GeneratorSpec s;
  s.name = suite + "_" + std::to_string(index + 1);
  if (suite == "tiny") {
    s.n = 2 + index % 3;
    std::size_t const shape = (index / 3) % 4;
    if (shape == 0) {
      s.nrm = 1, s.rm = 1, s.stations = {2, 1};
    } else if (shape == 1) {
      s.nrm = 0, s.rm = 2, s.stations = {1, 2};
    } else if (shape == 2) {
      s.nrm = 0, s.rm = 1, s.stations = {2};
    } else {
      s.nrm = 1, s.rm = 1, s.stations = {1, 2};
    }
    s.rts_min = 1, s.rts_max = 2;
    s.duration_min = 1, s.duration_max = 9;
  } else if (suite == "small") {
    s.n = 8, s.nrm = 1, s.rm = 2, s.stations = {2, 2, 3};
    s.rts_min = 1, s.rts_max = 2;
    s.duration_min = 5, s.duration_max = 20;
  } else if (suite == "medium") {
    s.n = 15, s.nrm = 0, s.rm = 3, s.stations = {2, 3, 4};
    s.rts_min = 1, s.rts_max = 3;
    s.duration_min = 10, s.duration_max = 25;
  } else if (suite == "large") {
    s.n = 30, s.nrm = 1, s.rm = 3, s.stations = {3, 3, 4, 4};
    s.rts_min = 1, s.rts_max = 3;
    s.duration_min = 5, s.duration_max = 30;
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "' (expected tiny, small, medium or large)");
  }
  return s;
}

}  // namespace rhfs
