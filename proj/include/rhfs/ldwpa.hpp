#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wpa.hpp"

namespace rhfs {

struct LdwpaParams {
  WpaParams base = [] {
    WpaParams p;
    p.scout_mode = ScoutMode::levy;
    return p;
  }();
  double rt = 0.6;  // similarity threshold
  double kr = 0.3;  // share of each similarity group kept on renewal
  std::optional<std::size_t> start_gen;  // unset: ceil(0.3 * gen_max)
  std::size_t stagnation_limit = 10;
  bool renewal = true;
  std::size_t rejection_factor = 50;  // give up on dissimilar candidates after factor * np rejections

  std::size_t effective_start_gen() const {
    return start_gen ? *start_gen
                     : static_cast<std::size_t>(std::ceil(0.3 * static_cast<double>(base.gen_max)));
  }

  void validate() const {
    base.validate();
    if (!(rt > 0.0 && rt < 1.0)) throw std::invalid_argument("rt must lie in (0, 1)");
    if (!(kr > 0.0 && kr < 1.0)) throw std::invalid_argument("kr must lie in (0, 1)");
    if (rejection_factor == 0) throw std::invalid_argument("rejection_factor must be positive");
  }
};

// Share of flow steps that two assignments put on the same station.
inline double similarity(AssignmentMatrix const& a, AssignmentMatrix const& b) {
  if (a.size() != b.size()) throw std::invalid_argument("assignment matrices differ in length");
  if (a.empty()) return 1.0;
  std::size_t same = 0;
  for (std::size_t g = 0; g < a.size(); ++g) same += a[g] == b[g] ? 1 : 0;
  return static_cast<double>(same) / static_cast<double>(a.size());
}

inline double similarity(Instance const& instance, Position const& a, Position const& b) {
  if (a.size() != b.size()) throw std::invalid_argument("positions differ in length");
  return similarity(assignment_matrix(decode(instance, a)), assignment_matrix(decode(instance, b)));
}

struct SubpopPartition {
  std::vector<std::vector<std::size_t>> groups;  // best member first
  std::vector<std::size_t> leftovers;
};

// Greedy grouping: the best unassigned wolf anchors a group holding every
// unassigned wolf more similar to it than rt. Anchors without company become leftovers.
inline SubpopPartition partition_by_similarity(WolfPack const& pack, double rt) {
  SubpopPartition out;
  std::vector<bool> taken(pack.size(), false);
  for (std::size_t anchor : detail::ranked(pack)) {
    if (taken[anchor]) continue;
    taken[anchor] = true;
    std::vector<std::size_t> group{anchor};
    for (std::size_t k : detail::ranked(pack)) {
      if (taken[k]) continue;
      if (similarity(pack.assignments[anchor], pack.assignments[k]) > rt) {
        taken[k] = true;
        group.push_back(k);
      }
    }
    if (group.size() == 1) {
      out.leftovers.push_back(anchor);
    } else {
      out.groups.push_back(std::move(group));
    }
  }
  return out;
}

// Keeps the best ceil(kr * size) wolves of every group plus all leftovers and
// refills the pack with random wolves no more similar than rt to anything kept
// or already added.
inline std::size_t regenerate(Evaluator const& evaluator, WolfPack& pack, SubpopPartition const& partition,
                              LdwpaParams const& params) {
  std::vector<bool> keep(pack.size(), false);
  for (auto const& group : partition.groups) {
    auto const n_keep = static_cast<std::size_t>(std::ceil(params.kr * static_cast<double>(group.size()) - 1e-9));
    for (std::size_t m = 0; m < std::min(n_keep, group.size()); ++m) keep[group[m]] = true;
  }
  for (std::size_t k : partition.leftovers) keep[k] = true;

  std::vector<AssignmentMatrix const*> members;
  std::vector<std::size_t> slots;
  for (std::size_t k = 0; k < pack.size(); ++k) {
    if (keep[k]) {
      members.push_back(&pack.assignments[k]);
    } else {
      slots.push_back(k);
    }
  }

  std::vector<std::pair<Position, Evaluation>> fresh;
  fresh.reserve(slots.size());
  std::size_t const cap = params.rejection_factor * pack.size();
  std::size_t rejected = 0;
  bool capped = false;
  auto max_similarity = [&](AssignmentMatrix const& m) {
    double worst = 0.0;
    for (auto const* other : members) worst = std::max(worst, similarity(m, *other));
    for (auto const& f : fresh) worst = std::max(worst, similarity(m, f.second.assignment));
    return worst;
  };

  for (std::size_t s = 0; s < slots.size(); ++s) {
    std::optional<std::pair<Position, Evaluation>> closest;
    double closest_sim = std::numeric_limits<double>::infinity();
    for (;;) {
      Position p = detail::random_position(evaluator.dimension(), pack.pack_stream);
      Evaluation e = evaluator(p);
      ++pack.evaluations;
      if (capped) {
        closest.emplace(std::move(p), std::move(e));
        break;
      }
      double const sim = max_similarity(e.assignment);
      if (sim <= params.rt) {
        closest.emplace(std::move(p), std::move(e));
        break;
      }
      if (sim < closest_sim) {
        closest_sim = sim;
        closest.emplace(std::move(p), std::move(e));
      }
      if (++rejected >= cap) {
        capped = true;
        break;
      }
    }
    fresh.push_back(std::move(*closest));
  }
  for (std::size_t s = 0; s < slots.size(); ++s) {
    pack.assign(slots[s], std::move(fresh[s].first), std::move(fresh[s].second));
  }
  pack.elect_leader();
  return slots.size();
}

// Wolf pack search with Lévy scouting and similarity-driven population renewal.
inline RunReport run_ldwpa(Instance const& instance, LdwpaParams const& params) {
  auto const started = std::chrono::steady_clock::now();
  params.validate();
  WpaParams const& base = params.base;
  Evaluator const evaluator(instance, base.remaining_rule);
  WolfPack pack = init_pack(evaluator, base);

  RunReport report;
  report.instance = instance.name();
  report.algorithm = "ldwpa";
  report.seed = base.seed;
  Minutes best = pack.leader_fitness();
  Position best_position = pack.wolves[pack.leader];
  report.trace.push_back(best);
  std::size_t const start_gen = params.effective_start_gen();

  while (pack.gen < base.gen_max && !detail::budget_spent(pack, base)) {
    scout(evaluator, pack, base);
    summon_follow(evaluator, pack, base);
    siege(evaluator, pack, base);
    renew(evaluator, pack, base);
    ++pack.gen;
    if (pack.leader_fitness() < best) {
      best = pack.leader_fitness();
      best_position = pack.wolves[pack.leader];
      pack.stop_gen = 0;
    } else {
      ++pack.stop_gen;
    }
    if (params.renewal && pack.gen >= start_gen && pack.stop_gen >= params.stagnation_limit) {
      regenerate(evaluator, pack, partition_by_similarity(pack, params.rt), params);
      pack.stop_gen = 0;
      ++report.renewals;
    }
    report.trace.push_back(best);
  }
  detail::finish_report(report, evaluator, pack, std::move(best_position), started);
  return report;
}

}  // namespace rhfs
