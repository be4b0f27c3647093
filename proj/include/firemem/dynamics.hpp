#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "firemem/network.hpp"

namespace firemem {

// Eventually periodic orbit: states[0..transient) is the pre-periodic prefix,
// states[transient..transient+period) the cycle.
struct Trajectory {
  std::vector<State> states;
  std::size_t transient = 0;
  std::size_t period = 1;

  // State at time t, extending the orbit periodically past the stored prefix.
  const State& at(std::size_t t) const {
    if (t < states.size()) return states[t];
    return states[transient + (t - transient) % period];
  }
};

struct Attractor {
  std::vector<State> cycle;

  std::size_t period() const { return cycle.size(); }
  bool is_fixed_point() const { return cycle.size() == 1; }
};

// Cycle extracted from a trajectory and rotated to its canonical start.
Attractor attractor_of(const Network& net, const Trajectory& traj);

// Exact transient and minimal period by first-revisit detection on packed
// keys. Throws BudgetExceeded if no state repeats within max_steps steps.
Trajectory find_attractor(const Network& net, const State& s0, std::size_t max_steps);

struct PredictionQuery {
  Network net;
  NodeId node = 0;
  State initial;
};

struct Prediction {
  bool answer = false;
  std::optional<std::size_t> witness_time;
};

// Decides whether node's boolean value ever differs from its value at time 0,
// at some t >= 1. Runs until the trajectory closes.
Prediction predict(const Network& net, const State& initial, NodeId node);
Prediction predict(const PredictionQuery& q);

// Default state-enumeration budget: FIREMEM_BUDGET if set, otherwise 2^26.
std::uint64_t enumeration_budget();

// Period from s0 with a growing step budget capped by enumeration_budget().
std::size_t period_of(const Network& net, const State& s0);

struct CensusEntry {
  Attractor attractor;
  std::uint64_t basin = 0;
};

struct CensusOptions {
  std::uint64_t budget = 0;  // 0 means enumeration_budget()
  unsigned jobs = 1;
};

// Full functional graph of the canonical state space, indexed by
// StateIndexer. attractor_id[s] names the census entry whose basin holds s.
struct StateSpaceMap {
  std::vector<std::uint32_t> successor;
  std::vector<std::uint32_t> attractor_id;
  std::vector<CensusEntry> census;
};

StateSpaceMap explore_state_space(const Network& net, const CensusOptions& opts = {});

// Every attractor with its basin size, sorted by canonical representative.
std::vector<CensusEntry> brute_force_census(const Network& net, const CensusOptions& opts = {});

}  // namespace firemem
