#pragma once

// Shared generators and reference implementations for the test suites.

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "firemem/circuit.hpp"
#include "firemem/dynamics.hpp"
#include "firemem/network.hpp"
#include "firemem/state_key.hpp"

namespace testsupport {

using namespace firemem;

inline std::string data_dir() { return FIREMEM_TEST_DATA; }

struct NamedCircuit {
  std::string name;
  std::string text;
};

inline std::vector<NamedCircuit> golden_circuits() {
  std::vector<NamedCircuit> out;
  for (const auto& e : std::filesystem::directory_iterator(data_dir() + "/circuits")) {
    if (e.path().extension() != ".txt") continue;
    std::ifstream in(e.path());
    std::stringstream ss;
    ss << in.rdbuf();
    out.push_back({e.path().stem().string(), ss.str()});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

inline std::vector<Bits> all_vectors(std::size_t n) {
  std::vector<Bits> xs;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    Bits x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = (m >> k) & 1;
    xs.push_back(std::move(x));
  }
  return xs;
}

// Literal firing-memory update written from the (x, Delta) pair: a firing
// node is on with a full counter; otherwise the counter drops by one and the
// node stays on only while something is left.
inline State reference_step(const Network& net, const State& s) {
  const std::size_t n = net.size();
  std::vector<bool> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = s[i] > 0;
  std::vector<Delay> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    const LocalRule& r = net.rule(static_cast<NodeId>(i));
    bool f;
    if (r.kind == RuleKind::Conjunctive) {
      f = true;
      for (NodeId j : r.inputs) f = f && x[j];
    } else if (r.kind == RuleKind::Disjunctive) {
      f = false;
      for (NodeId j : r.inputs) f = f || x[j];
    } else {
      std::int64_t sum = 0;
      for (std::size_t k = 0; k < r.inputs.size(); ++k) sum += x[r.inputs[k]] ? r.weights[k] : 0;
      f = sum - r.theta >= 0;
    }
    if (f) {
      next[i] = net.max_delay(static_cast<NodeId>(i));
    } else {
      next[i] = s[i] == 0 ? 0 : static_cast<Delay>(s[i] - 1);
    }
  }
  return State(next);
}

// Random conjunctive network whose canonical state space stays within
// max_states.
inline Network random_conjunctive(std::mt19937_64& rng, std::size_t n, Delay max_dt,
                                  std::uint64_t max_states, double density = 0.35,
                                  bool allow_self_loops = true) {
  std::vector<Delay> dt(n, 1);
  std::uint64_t states = std::uint64_t{1} << n;
  std::uniform_int_distribution<int> pick_dt(1, max_dt);
  for (std::size_t i = 0; i < n; ++i) {
    const Delay d = static_cast<Delay>(pick_dt(rng));
    const std::uint64_t grown = states / 2 * (d + 1);
    if (grown <= max_states) {
      dt[i] = d;
      states = grown;
    }
  }
  std::bernoulli_distribution edge(density);
  std::vector<LocalRule> rules;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<NodeId> in;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i && !allow_self_loops) continue;
      if (edge(rng)) in.push_back(static_cast<NodeId>(j));
    }
    rules.push_back(LocalRule::conjunction(std::move(in)));
  }
  return Network::make(std::move(rules), std::move(dt));
}

// Random disjunctive network over a strongly connected digraph: a directed
// Hamiltonian cycle in random order plus random extra arcs. At least one node
// gets dt >= 2.
inline Network random_strongly_connected_disjunctive(std::mt19937_64& rng, std::size_t n, Delay max_dt) {
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<NodeId>> in(n);
  for (std::size_t k = 0; k < n; ++k) in[order[(k + 1) % n]].push_back(order[k]);
  std::bernoulli_distribution extra(0.25);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (extra(rng) && std::find(in[i].begin(), in[i].end(), j) == in[i].end()) {
        in[i].push_back(static_cast<NodeId>(j));
      }
    }
  }
  std::uniform_int_distribution<int> pick_dt(1, max_dt);
  std::vector<Delay> dt(n);
  for (auto& d : dt) d = static_cast<Delay>(pick_dt(rng));
  dt[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] =
      static_cast<Delay>(std::max<int>(2, pick_dt(rng)));
  std::vector<LocalRule> rules;
  for (auto& v : in) {
    std::sort(v.begin(), v.end());
    rules.push_back(LocalRule::disjunction(std::move(v)));
  }
  return Network::make(std::move(rules), std::move(dt));
}

// answer[s * n + v]: does node v's value at some t >= 1 differ from its value
// in state s. Computed on the successor table: along the functional graph the
// answer of s is "successor differs from s" or the answer of the successor
// for the same reference value, and cycle states are settled first.
inline std::vector<std::uint8_t> prediction_table(const Network& net, const StateSpaceMap& map) {
  const StateIndexer indexer(net);
  const std::size_t count = map.successor.size();
  const std::size_t n = net.size();
  std::vector<Bits> value(count, Bits(n));
  for (std::size_t s = 0; s < count; ++s) {
    const State st = indexer.state(s);
    for (std::size_t v = 0; v < n; ++v) value[s][v] = st[v] > 0;
  }
  // cycle_has[c][v][b]: some state on attractor c has value b at node v.
  std::vector<std::vector<std::array<bool, 2>>> cycle_has(map.census.size(),
                                                          std::vector<std::array<bool, 2>>(n));
  for (std::size_t c = 0; c < map.census.size(); ++c) {
    for (const State& st : map.census[c].attractor.cycle) {
      for (std::size_t v = 0; v < n; ++v) cycle_has[c][v][st[v] > 0] = true;
    }
  }
  // reach[s][v][b]: from s (exclusive) some later state has value != b.
  std::vector<std::uint8_t> done(count, 0);
  std::vector<std::vector<std::array<bool, 2>>> reach(count, std::vector<std::array<bool, 2>>(n));
  std::vector<bool> on_cycle(count, false);
  for (std::size_t s = 0; s < count; ++s) {
    // s is on a cycle iff following successors returns to s within the cycle length.
    const std::size_t len = map.census[map.attractor_id[s]].attractor.period();
    std::uint32_t cur = map.successor[s];
    for (std::size_t k = 1; k < len && cur != s; ++k) cur = map.successor[cur];
    on_cycle[s] = cur == s;
  }
  for (std::size_t s = 0; s < count; ++s) {
    if (!on_cycle[s]) continue;
    for (std::size_t v = 0; v < n; ++v) {
      for (int b = 0; b < 2; ++b) reach[s][v][b] = cycle_has[map.attractor_id[s]][v][1 - b];
    }
    done[s] = 1;
  }
  std::vector<std::uint32_t> stack;
  for (std::size_t s0 = 0; s0 < count; ++s0) {
    std::uint32_t cur = static_cast<std::uint32_t>(s0);
    stack.clear();
    while (!done[cur]) {
      stack.push_back(cur);
      cur = map.successor[cur];
    }
    while (!stack.empty()) {
      const std::uint32_t s = stack.back();
      stack.pop_back();
      const std::uint32_t t = map.successor[s];
      for (std::size_t v = 0; v < n; ++v) {
        for (int b = 0; b < 2; ++b) reach[s][v][b] = value[t][v] != b || reach[t][v][b];
      }
      done[s] = 1;
    }
  }
  std::vector<std::uint8_t> answer(count * n);
  for (std::size_t s = 0; s < count; ++s) {
    for (std::size_t v = 0; v < n; ++v) answer[s * n + v] = reach[s][v][value[s][v]];
  }
  return answer;
}

// Every symmetric conjunctive graph on n nodes (self-loops allowed), encoded
// by a bit mask over the n(n+1)/2 unordered pairs {i, j} with i <= j.
inline Network symmetric_conjunctive(std::size_t n, std::uint64_t mask, Delay dt) {
  std::vector<std::vector<NodeId>> in(n);
  std::size_t bit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j, ++bit) {
      if (!((mask >> bit) & 1)) continue;
      in[i].push_back(static_cast<NodeId>(j));
      if (i != j) in[j].push_back(static_cast<NodeId>(i));
    }
  }
  std::vector<LocalRule> rules;
  for (auto& v : in) {
    std::sort(v.begin(), v.end());
    rules.push_back(LocalRule::conjunction(std::move(v)));
  }
  return Network::make(std::move(rules), std::vector<Delay>(n, dt));
}

}  // namespace testsupport
