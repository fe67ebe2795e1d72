#pragma once

// Shared fixtures and the exhaustive makespan oracle used by several suites.

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <rhfs/instance_io.hpp>
#include <rhfs/model.hpp>

namespace rhfs::testing {

inline Instance painting() { return load_instance(std::string(RHFS_DATA_DIR) + "/painting.rhfs"); }
inline Instance painting_two_booths() { return load_instance(std::string(RHFS_DATA_DIR) + "/painting_op3x2.rhfs"); }

// Single stage, one station per stage, one duration per job.
inline Instance single_machine(std::vector<Minutes> durations) {
  std::vector<std::vector<std::vector<Minutes>>> times;
  for (Minutes d : durations) times.push_back({{d}});
  return Instance("single", 1, 0, {1}, std::vector<std::size_t>(durations.size(), 1), std::move(times));
}

// Exhaustive search over everything the dispatcher can produce: every
// release order of the jobs, and at every dispatch every job tied on the
// least remaining time. Written independently of rhfs::Decoder.
class DispatchOracle {
 public:
  struct Dispatch {
    std::size_t job;
    std::size_t step;
  };

  explicit DispatchOracle(Instance const& inst) : inst_(inst) {
    for (std::size_t i = 0; i < inst.job_count(); ++i) {
      std::vector<Minutes> rest(inst.operation_count(i) + 1, 0);
      for (std::size_t l = inst.operation_count(i); l-- > 0;) {
        auto const& t = inst.times(i, l);
        rest[l] = rest[l + 1] + *std::min_element(t.begin(), t.end());
      }
      remaining_.push_back(std::move(rest));
    }
  }

  Minutes optimum() {
    solve();
    return best_;
  }
  std::vector<Dispatch> const& best_sequence() {
    solve();
    return best_seq_;
  }
  std::size_t leaves() {
    solve();
    return leaves_;
  }

 private:
  struct State {
    std::vector<std::size_t> order;
    std::size_t released = 0;
    std::vector<std::size_t> next;
    std::vector<Minutes> ready;
    std::vector<std::vector<Minutes>> free;
    Minutes now = 0;
    std::size_t stage = 0;
    std::size_t done = 0;
    Minutes cmax = 0;
    std::vector<Dispatch> seq;
  };

  void solve() {
    if (solved_) return;
    solved_ = true;
    std::vector<std::size_t> order(inst_.job_count());
    std::iota(order.begin(), order.end(), std::size_t{0});
    do {
      State s;
      s.order = order;
      s.next.assign(inst_.job_count(), 0);
      s.ready.assign(inst_.job_count(), 0);
      for (std::size_t j = 0; j < inst_.stage_count(); ++j) s.free.emplace_back(inst_.station_count(j), 0);
      explore(std::move(s));
    } while (std::next_permutation(order.begin(), order.end()));
  }

  void apply(State& s, std::size_t job, std::size_t station) const {
    if (s.released < s.order.size() && s.order[s.released] == job && s.next[job] == 0) ++s.released;
    std::size_t const step = s.next[job];
    Minutes const end = s.now + inst_.time(job, step, station);
    s.free[s.stage][station] = end;
    s.ready[job] = end;
    ++s.next[job];
    ++s.done;
    s.cmax = std::max(s.cmax, end);
    s.seq.push_back({job, step});
  }

  void explore(State s) {
    std::size_t const total = inst_.total_operations();
    for (;;) {
      if (s.cmax >= best_) return;
      if (s.done == total) {
        ++leaves_;
        best_ = s.cmax;
        best_seq_ = s.seq;
        return;
      }
      if (s.stage == inst_.stage_count()) {
        Minutes next = std::numeric_limits<Minutes>::max();
        for (auto const& f : s.free) {
          for (Minutes t : f) {
            if (t > s.now) next = std::min(next, t);
          }
        }
        s.now = next;
        s.stage = 0;
        continue;
      }
      auto const& free = s.free[s.stage];
      std::size_t station = free.size();
      for (std::size_t k = 0; k < free.size(); ++k) {
        if (free[k] <= s.now && (station == free.size() || free[k] < free[station])) station = k;
      }
      if (station == free.size()) {
        ++s.stage;
        continue;
      }
      std::vector<std::size_t> waiting;
      for (std::size_t i = 0; i < inst_.job_count(); ++i) {
        bool const started = s.next[i] > 0;
        bool const head = s.stage == 0 && s.released < s.order.size() && s.order[s.released] == i;
        if (!started && !head) continue;
        if (s.next[i] >= inst_.operation_count(i)) continue;
        if (inst_.stage_of(s.next[i]) != s.stage || s.ready[i] > s.now) continue;
        waiting.push_back(i);
      }
      if (waiting.empty()) {
        ++s.stage;
        continue;
      }
      Minutes least = std::numeric_limits<Minutes>::max();
      for (std::size_t i : waiting) least = std::min(least, remaining_[i][s.next[i]]);
      std::vector<std::size_t> tied;
      for (std::size_t i : waiting) {
        if (remaining_[i][s.next[i]] == least) tied.push_back(i);
      }
      if (tied.size() == 1) {
        apply(s, tied.front(), station);
        continue;
      }
      for (std::size_t i : tied) {
        State branch = s;
        apply(branch, i, station);
        explore(std::move(branch));
      }
      return;
    }
  }

  Instance const& inst_;
  std::vector<std::vector<Minutes>> remaining_;
  bool solved_ = false;
  Minutes best_ = std::numeric_limits<Minutes>::max();
  std::vector<Dispatch> best_seq_;
  std::size_t leaves_ = 0;
};

// Genes equal to dispatch rank: decoding replays exactly the given dispatch sequence.
inline std::vector<double> position_from_sequence(Instance const& inst,
                                                  std::vector<DispatchOracle::Dispatch> const& seq) {
  std::vector<double> genes(inst.total_operations(), 0.0);
  for (std::size_t r = 0; r < seq.size(); ++r) {
    genes[inst.gene_index(seq[r].job, seq[r].step)] = (static_cast<double>(r) + 0.5) / static_cast<double>(seq.size());
  }
  return genes;
}

}  // namespace rhfs::testing
