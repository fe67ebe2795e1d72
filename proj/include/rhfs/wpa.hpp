#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "decode.hpp"
#include "levy.hpp"
#include "metrics.hpp"

namespace rhfs {

using Rng = std::mt19937_64;

enum class ScoutMode {
  directional,  // h probes at step_a along evenly spread directions
  levy,         // h probes, each a Lévy step
  hybrid,       // h directional probes followed by h Lévy probes
};

struct WpaParams {
  std::size_t np = 40;
  std::size_t gen_max = 100;
  std::size_t q = 5;
  std::size_t h = 4;
  std::size_t sc_max = 15;
  double step_a = 0.6 * (kGeneMax - kGeneMin);
  double step_b = 0.3;
  std::size_t bw = 0;  // 0 selects max(1, np / 10)
  double mu = 0.2;
  double ra_max = 400.0;
  double ra_min = 0.5;
  bool siege_radius_starts_at_max = false;
  ScoutMode scout_mode = ScoutMode::directional;
  double levy_beta = 1.5;
  RemainingTimeRule remaining_rule = RemainingTimeRule::min_station;
  std::uint64_t seed = 1;
  std::size_t max_evals = 0;  // 0: bounded by gen_max only
  std::size_t threads = 1;

  std::size_t replaced_per_iteration() const { return bw ? bw : std::max<std::size_t>(1, np / 10); }

  void validate() const {
    auto fail = [](std::string const& what) { throw std::invalid_argument(what); };
    if (np == 0) fail("np must be positive");
    if (q >= np) fail("q must be smaller than np");
    if (h == 0) fail("h must be positive");
    if (sc_max == 0 || sc_max > 15) fail("sc_max must lie in [1, 15]");
    if (!(mu > 0.0 && mu <= 1.0)) fail("mu must lie in (0, 1]");
    if (np > 1 && replaced_per_iteration() >= np) fail("bw must be smaller than np");
    if (!(step_a >= 0.0) || !(step_b >= 0.0)) fail("step sizes must be non-negative");
    if (!(ra_min > 0.0 && ra_max > 0.0)) fail("siege radii must be positive");
    if (threads == 0) fail("threads must be positive");
    (void)sigma_u(levy_beta);
  }
};

struct Evaluation {
  Minutes cmax = 0;
  AssignmentMatrix assignment;
};

// Fitness of a position: makespan of its decoded schedule. Safe to call concurrently.
class Evaluator {
 public:
  Evaluator(Instance const& instance, RemainingTimeRule rule) : decoder_(instance, rule) {}

  Instance const& instance() const { return decoder_.instance(); }
  std::size_t dimension() const { return decoder_.instance().total_operations(); }

  Evaluation operator()(Position const& position) const {
    Schedule const s = decoder_.decode(position);
    return {makespan(s), assignment_matrix(s)};
  }
  Schedule schedule(Position const& position) const { return decoder_.decode(position); }

 private:
  Decoder decoder_;
};

struct WolfPack {
  std::vector<Position> wolves;
  std::vector<Minutes> fitness;
  std::vector<AssignmentMatrix> assignments;
  std::vector<Rng> streams;  // one per wolf slot
  Rng pack_stream;
  std::size_t leader = 0;
  std::size_t gen = 0;
  std::size_t stop_gen = 0;
  std::vector<std::size_t> scouts;  // chosen by the latest scouting phase
  std::size_t evaluations = 0;

  std::size_t size() const { return wolves.size(); }
  Minutes leader_fitness() const { return fitness.at(leader); }

  void elect_leader() {
    leader = static_cast<std::size_t>(std::min_element(fitness.begin(), fitness.end()) - fitness.begin());
  }

  void assign(std::size_t k, Position position, Evaluation eval) {
    wolves[k] = std::move(position);
    fitness[k] = eval.cmax;
    assignments[k] = std::move(eval.assignment);
  }
};

namespace detail {

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5157u};
  return Rng(seq);
}

// Runs fn(i) for i in [0, count). Work is split in contiguous blocks, so the
// outcome never depends on the thread count as long as fn(i) only touches slot i.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::size_t const chunk = (count + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    std::size_t const lo = t * chunk;
    std::size_t const hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline Position random_position(std::size_t dim, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Position p(dim);
  for (double& g : p) g = kGeneMin + u(rng) * (kGeneMax - kGeneMin);
  return p;
}

// Wolves ordered best first; ties keep the lower index first.
inline std::vector<std::size_t> ranked(WolfPack const& pack) {
  std::vector<std::size_t> order(pack.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pack.fitness[a] < pack.fitness[b]; });
  return order;
}

}  // namespace detail

inline WolfPack init_pack(Evaluator const& evaluator, WpaParams const& params) {
  params.validate();
  WolfPack pack;
  std::size_t const np = params.np;
  pack.wolves.resize(np);
  pack.fitness.resize(np);
  pack.assignments.resize(np);
  pack.streams.reserve(np);
  for (std::size_t k = 0; k < np; ++k) pack.streams.push_back(detail::make_stream(params.seed, k));
  pack.pack_stream = detail::make_stream(params.seed, ~std::uint64_t{0});
  detail::parallel_for(np, params.threads, [&](std::size_t k) {
    Position p = detail::random_position(evaluator.dimension(), pack.streams[k]);
    Evaluation e = evaluator(p);
    pack.assign(k, std::move(p), std::move(e));
  });
  pack.evaluations += np;
  pack.elect_leader();
  return pack;
}

// Stateless probe factory used during scouting.
class ScoutProbes {
 public:
  ScoutProbes(WpaParams const& params)
      : mode_(params.scout_mode), h_(params.h), step_a_(params.step_a), levy_(params.levy_beta) {}

  std::size_t per_round() const { return mode_ == ScoutMode::hybrid ? 2 * h_ : h_; }

  // All probes of one scouting round around `x`.
  std::vector<Position> round(Position const& x, Rng& rng) const {
    std::vector<Position> probes;
    probes.reserve(per_round());
    if (mode_ != ScoutMode::levy) {
      std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
      std::vector<double> phase(x.size());
      for (double& ph : phase) ph = u(rng);
      for (std::size_t p = 0; p < h_; ++p) {
        Position probe(x.size());
        double const angle = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(h_);
        for (std::size_t d = 0; d < x.size(); ++d) probe[d] = clamp_gene(x[d] + step_a_ * std::sin(angle + phase[d]));
        probes.push_back(std::move(probe));
      }
    }
    if (mode_ != ScoutMode::directional) {
      for (std::size_t p = 0; p < h_; ++p) probes.push_back(levy_scout_step(x, step_a_, rng, levy_));
    }
    return probes;
  }

 private:
  ScoutMode mode_;
  std::size_t h_;
  double step_a_;
  LevyParams levy_;
};

// The q best non-leader wolves search around themselves for up to sc_max
// rounds. A probe is kept when it improves the scout; a scout stops as soon as
// it beats the leader.
inline void scout(Evaluator const& evaluator, WolfPack& pack, WpaParams const& params) {
  auto const order = detail::ranked(pack);
  pack.scouts.clear();
  for (std::size_t k : order) {
    if (pack.scouts.size() >= params.q) break;
    if (k != pack.leader) pack.scouts.push_back(k);
  }
  Minutes const leader_fit = pack.leader_fitness();
  ScoutProbes const probes(params);
  std::vector<std::size_t> evals(pack.scouts.size(), 0);

  detail::parallel_for(pack.scouts.size(), params.threads, [&](std::size_t s) {
    std::size_t const k = pack.scouts[s];
    Rng& rng = pack.streams[k];
    for (std::size_t round = 0; round < params.sc_max && pack.fitness[k] >= leader_fit; ++round) {
      auto candidates = probes.round(pack.wolves[k], rng);
      Position best;
      Evaluation best_eval{pack.fitness[k], {}};
      for (Position& c : candidates) {
        Evaluation e = evaluator(c);
        ++evals[s];
        if (e.cmax < best_eval.cmax) {
          best_eval = std::move(e);
          best = std::move(c);
          if (best_eval.cmax < leader_fit) break;
        }
      }
      if (!best.empty()) pack.assign(k, std::move(best), std::move(best_eval));
    }
  });
  pack.evaluations += std::accumulate(evals.begin(), evals.end(), std::size_t{0});
  pack.elect_leader();
}

// Non-scout wolves step toward the leader: x' = x + rand * step_b * (x_leader - x).
inline void summon_follow(Evaluator const& evaluator, WolfPack& pack, WpaParams const& params) {
  std::size_t const leader = pack.leader;
  Position const leader_pos = pack.wolves[leader];
  std::vector<bool> skip(pack.size(), false);
  skip[leader] = true;
  for (std::size_t k : pack.scouts) skip[k] = true;

  std::vector<std::size_t> evals(pack.size(), 0);
  detail::parallel_for(pack.size(), params.threads, [&](std::size_t k) {
    if (skip[k]) return;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Position cand(pack.wolves[k].size());
    for (std::size_t d = 0; d < cand.size(); ++d) {
      double const x = pack.wolves[k][d];
      cand[d] = clamp_gene(x + u(pack.streams[k]) * params.step_b * (leader_pos[d] - x));
    }
    if (cand == pack.wolves[k]) return;
    Evaluation e = evaluator(cand);
    evals[k] = 1;
    if (e.cmax < pack.fitness[k]) pack.assign(k, std::move(cand), std::move(e));
  });
  pack.evaluations += std::accumulate(evals.begin(), evals.end(), std::size_t{0});
  pack.elect_leader();
}

// ra(t) = ra_lead * (x_max - x_min) * exp(ln(ra_min / ra_max) * t / max_t)
inline double siege_radius(WpaParams const& params, std::size_t t) {
  double const lead = params.siege_radius_starts_at_max ? params.ra_max : params.ra_min;
  double const frac = params.gen_max ? static_cast<double>(t) / static_cast<double>(params.gen_max) : 0.0;
  return lead * (kGeneMax - kGeneMin) * std::exp(std::log(params.ra_min / params.ra_max) * frac);
}

// Wolves with r_k > mu move by U(-1, 1) * ra(t) per gene around their position.
inline void siege(Evaluator const& evaluator, WolfPack& pack, WpaParams const& params) {
  std::size_t const leader = pack.leader;
  double const ra = siege_radius(params, pack.gen);
  std::vector<std::size_t> evals(pack.size(), 0);
  detail::parallel_for(pack.size(), params.threads, [&](std::size_t k) {
    if (k == leader) return;
    Rng& rng = pack.streams[k];
    std::uniform_real_distribution<double> r(0.0, 1.0);
    if (r(rng) <= params.mu) return;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Position cand(pack.wolves[k].size());
    for (std::size_t d = 0; d < cand.size(); ++d) cand[d] = clamp_gene(pack.wolves[k][d] + u(rng) * ra);
    Evaluation e = evaluator(cand);
    evals[k] = 1;
    if (e.cmax < pack.fitness[k]) pack.assign(k, std::move(cand), std::move(e));
  });
  pack.evaluations += std::accumulate(evals.begin(), evals.end(), std::size_t{0});
  pack.elect_leader();
}

// The bw worst wolves are replaced by uniform random positions. The leader is never replaced.
inline void renew(Evaluator const& evaluator, WolfPack& pack, WpaParams const& params) {
  if (pack.size() <= 1) return;
  auto order = detail::ranked(pack);
  std::size_t const bw = std::min(params.replaced_per_iteration(), pack.size() - 1);
  std::vector<std::size_t> worst;
  for (auto it = order.rbegin(); it != order.rend() && worst.size() < bw; ++it) {
    if (*it != pack.leader) worst.push_back(*it);
  }
  detail::parallel_for(worst.size(), params.threads, [&](std::size_t w) {
    std::size_t const k = worst[w];
    Position p = detail::random_position(evaluator.dimension(), pack.streams[k]);
    Evaluation e = evaluator(p);
    pack.assign(k, std::move(p), std::move(e));
  });
  pack.evaluations += worst.size();
  pack.elect_leader();
}

// Outcome of one optimization run.
struct RunReport {
  std::string instance;
  std::string algorithm;
  std::uint64_t seed = 0;
  Minutes best = 0;
  std::vector<Minutes> trace;  // best-so-far after initialization and after every iteration
  Position best_position;
  Schedule schedule;
  MetricReport metrics;
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
  std::size_t renewals = 0;
  double runtime_ms = 0.0;
};

namespace detail {

inline void finish_report(RunReport& report, Evaluator const& evaluator, WolfPack const& pack, Position best_position,
                          std::chrono::steady_clock::time_point started) {
  report.best_position = std::move(best_position);
  report.schedule = evaluator.schedule(report.best_position);
  report.metrics = evaluate_metrics(evaluator.instance(), report.schedule);
  report.best = report.metrics.cmax;
  report.evaluations = pack.evaluations;
  report.iterations = pack.gen;
  report.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
}

inline bool budget_spent(WolfPack const& pack, WpaParams const& params) {
  return params.max_evals && pack.evaluations >= params.max_evals;
}

}  // namespace detail

// Base wolf pack search: scout, summon, siege and renew each iteration until
// gen_max (or the evaluation budget) is reached.
inline RunReport run_wpa(Instance const& instance, WpaParams const& params) {
  auto const started = std::chrono::steady_clock::now();
  params.validate();
  Evaluator const evaluator(instance, params.remaining_rule);
  WolfPack pack = init_pack(evaluator, params);

  RunReport report;
  report.instance = instance.name();
  report.algorithm = "wpa";
  report.seed = params.seed;
  Minutes best = pack.leader_fitness();
  Position best_position = pack.wolves[pack.leader];
  report.trace.push_back(best);

  while (pack.gen < params.gen_max && !detail::budget_spent(pack, params)) {
    scout(evaluator, pack, params);
    summon_follow(evaluator, pack, params);
    siege(evaluator, pack, params);
    renew(evaluator, pack, params);
    ++pack.gen;
    if (pack.leader_fitness() < best) {
      best = pack.leader_fitness();
      best_position = pack.wolves[pack.leader];
      pack.stop_gen = 0;
    } else {
      ++pack.stop_gen;
    }
    report.trace.push_back(best);
  }
  detail::finish_report(report, evaluator, pack, std::move(best_position), started);
  return report;
}

}  // namespace rhfs
