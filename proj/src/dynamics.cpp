#include "firemem/dynamics.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "firemem/state_key.hpp"

namespace firemem {

Attractor attractor_of(const Network& net, const Trajectory& traj) {
  Attractor a;
  a.cycle.assign(traj.states.begin() + static_cast<std::ptrdiff_t>(traj.transient),
                 traj.states.begin() + static_cast<std::ptrdiff_t>(traj.transient + traj.period));
  const StateCodec codec(net);
  std::rotate(a.cycle.begin(),
              a.cycle.begin() + static_cast<std::ptrdiff_t>(least_rotation(a.cycle, codec)),
              a.cycle.end());
  return a;
}

Trajectory find_attractor(const Network& net, const State& s0, std::size_t max_steps) {
  validate_state(net, s0);
  if (max_steps < 1) throw Error(ErrorCode::InvalidArgument, "max_steps must be >= 1");

  const StateCodec codec(net);
  Stepper stepper(net);
  std::unordered_map<PackedKey, std::size_t, PackedKeyHash> seen;
  Trajectory traj;
  State cur = s0;
  for (std::size_t t = 0;; ++t) {
    auto [it, inserted] = seen.try_emplace(codec.pack(cur), t);
    if (!inserted) {
      traj.transient = it->second;
      traj.period = t - it->second;
      return traj;
    }
    if (t == max_steps) break;
    traj.states.push_back(cur);
    stepper.advance(cur);
  }
  throw Error(ErrorCode::BudgetExceeded,
              "no repeated state within " + std::to_string(max_steps) + " steps");
}

Prediction predict(const Network& net, const State& initial, NodeId node) {
  validate_state(net, initial);
  if (node >= net.size()) {
    throw Error(ErrorCode::DanglingNodeId, "query node " + std::to_string(node) + " out of range");
  }
  const bool x0 = initial[node] >= 1;
  const StateCodec codec(net);
  Stepper stepper(net);
  std::unordered_set<PackedKey, PackedKeyHash> seen;
  seen.insert(codec.pack(initial));
  State cur = initial;
  PackedKey key;
  for (std::size_t t = 1;; ++t) {
    stepper.advance(cur);
    if ((cur[node] >= 1) != x0) return {true, t};
    codec.pack_into(cur, key);
    if (!seen.insert(key).second) return {false, std::nullopt};
  }
}

Prediction predict(const PredictionQuery& q) { return predict(q.net, q.initial, q.node); }

std::uint64_t enumeration_budget() {
  if (const char* env = std::getenv("FIREMEM_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t{1} << 26;
}

std::size_t period_of(const Network& net, const State& s0) {
  const std::uint64_t cap = enumeration_budget();
  std::uint64_t budget = std::min<std::uint64_t>(4096, cap);
  for (;;) {
    try {
      return find_attractor(net, s0, static_cast<std::size_t>(budget)).period;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded || budget >= cap) throw;
      budget = std::min(cap, budget * 8);
    }
  }
}

StateSpaceMap explore_state_space(const Network& net, const CensusOptions& opts) {
  const std::uint64_t budget = opts.budget ? opts.budget : enumeration_budget();
  const StateIndexer indexer(net);
  if (indexer.overflowed() || indexer.count() > budget ||
      indexer.count() >= std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::BudgetExceeded,
                "state space of " +
                    (indexer.overflowed() ? std::string("> 2^64") : std::to_string(indexer.count())) +
                    " states exceeds budget " + std::to_string(budget));
  }
  const auto count = static_cast<std::uint32_t>(indexer.count());

  StateSpaceMap map;
  map.successor.resize(count);
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, count));
  auto fill = [&](std::uint32_t begin, std::uint32_t end) {
    Stepper stepper(net);
    State s(std::vector<Delay>(net.size()));
    for (std::uint32_t idx = begin; idx < end; ++idx) {
      indexer.state_into(idx, s);
      stepper.advance(s);
      map.successor[idx] = static_cast<std::uint32_t>(indexer.index(s));
    }
  };
  if (jobs == 1) {
    fill(0, count);
  } else {
    std::vector<std::thread> workers;
    const std::uint32_t chunk = (count + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w) {
      const std::uint32_t b = std::min<std::uint64_t>(count, std::uint64_t{w} * chunk);
      const std::uint32_t e = std::min<std::uint64_t>(count, std::uint64_t{b} + chunk);
      workers.emplace_back(fill, b, e);
    }
    for (auto& t : workers) t.join();
  }

  // Walk the functional graph. walk[s] records which walk first touched s so a
  // walk that meets itself has found a new cycle.
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  map.attractor_id.assign(count, kNone);
  std::vector<std::uint32_t> walk(count, kNone);
  std::vector<std::vector<std::uint32_t>> cycles;
  std::vector<std::uint64_t> basins;
  std::vector<std::uint32_t> path;
  for (std::uint32_t start = 0; start < count; ++start) {
    if (map.attractor_id[start] != kNone) continue;
    path.clear();
    std::uint32_t cur = start;
    while (map.attractor_id[cur] == kNone && walk[cur] == kNone) {
      walk[cur] = start;
      path.push_back(cur);
      cur = map.successor[cur];
    }
    std::uint32_t id;
    if (map.attractor_id[cur] != kNone) {
      id = map.attractor_id[cur];
    } else {
      id = static_cast<std::uint32_t>(cycles.size());
      std::vector<std::uint32_t> cycle{cur};
      for (std::uint32_t s = map.successor[cur]; s != cur; s = map.successor[s]) cycle.push_back(s);
      cycles.push_back(std::move(cycle));
      basins.push_back(0);
    }
    for (std::uint32_t s : path) map.attractor_id[s] = id;
    basins[id] += path.size();
  }

  const StateCodec codec(net);
  std::vector<CensusEntry> entries(cycles.size());
  std::vector<PackedKey> reps(cycles.size());
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    Attractor& a = entries[c].attractor;
    for (std::uint32_t s : cycles[c]) a.cycle.push_back(indexer.state(s));
    std::rotate(a.cycle.begin(),
                a.cycle.begin() + static_cast<std::ptrdiff_t>(least_rotation(a.cycle, codec)),
                a.cycle.end());
    entries[c].basin = basins[c];
    reps[c] = codec.pack(a.cycle.front());
  }
  std::vector<std::uint32_t> order(cycles.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return reps[a] < reps[b]; });
  std::vector<std::uint32_t> rank(cycles.size());
  for (std::uint32_t r = 0; r < order.size(); ++r) {
    rank[order[r]] = r;
    map.census.push_back(std::move(entries[order[r]]));
  }
  for (auto& id : map.attractor_id) id = rank[id];
  return map;
}

std::vector<CensusEntry> brute_force_census(const Network& net, const CensusOptions& opts) {
  return explore_state_space(net, opts).census;
}

}  // namespace firemem
