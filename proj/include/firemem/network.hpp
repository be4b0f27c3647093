#pragma once

// Boolean networks with firing memory.
//
// A node i holds a boolean value x_i and a remaining delay Delta_i. Each step
// evaluates the local rule F_i on the boolean projection of the previous
// configuration; if it fires the delay is reset to dt_i, otherwise the delay
// counts down and the node switches off once it reaches zero. States are kept
// in shorthand form: one integer per node, delta_i in [0, dt_i], with
// x_i = 1 exactly when delta_i >= 1.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "firemem/error.hpp"

namespace firemem {

using NodeId = std::uint32_t;
using Delay = std::uint16_t;
using Bits = std::vector<std::uint8_t>;

enum class RuleKind { Conjunctive, Disjunctive, Threshold };

struct LocalRule {
  RuleKind kind = RuleKind::Conjunctive;
  std::vector<NodeId> inputs;
  // Threshold only: weights[k] multiplies inputs[k].
  std::vector<std::int64_t> weights;
  std::int64_t theta = 0;

  static LocalRule conjunction(std::vector<NodeId> inputs);
  static LocalRule disjunction(std::vector<NodeId> inputs);
  static LocalRule threshold(std::vector<NodeId> inputs, std::vector<std::int64_t> weights,
                             std::int64_t theta);

  // Evaluates the rule on a boolean configuration (one byte per node, 0 or 1).
  bool evaluate(std::span<const std::uint8_t> x) const;

  friend bool operator==(const LocalRule&, const LocalRule&) = default;
};

class State;

// Immutable after construction. Rules are flattened into CSR arrays so that a
// synchronous step is a single pass over contiguous memory.
class Network {
 public:
  // Validates and builds. Throws Error with LengthMismatch, DelayOutOfRange,
  // DanglingNodeId or DuplicateInput.
  static Network make(std::vector<LocalRule> rules, std::vector<Delay> dt);

  std::size_t size() const { return rules_.size(); }
  const LocalRule& rule(NodeId i) const { return rules_.at(i); }
  const std::vector<LocalRule>& rules() const { return rules_; }
  Delay max_delay(NodeId i) const { return dt_.at(i); }
  std::span<const Delay> max_delays() const { return dt_; }

  // Inputs of node i in rule order.
  std::span<const NodeId> inputs(NodeId i) const {
    return {flat_inputs_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  bool is_conjunctive() const;
  bool is_disjunctive() const;

  // Evaluates F_i on boolean configuration x.
  bool fires(NodeId i, std::span<const std::uint8_t> x) const;

  // Dependency edges (j, i): F_i depends on x_j.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  friend bool operator==(const Network& a, const Network& b) {
    return a.rules_ == b.rules_ && a.dt_ == b.dt_;
  }

 private:
  Network() = default;

  std::vector<LocalRule> rules_;
  std::vector<Delay> dt_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> flat_inputs_;
  std::vector<std::int64_t> flat_weights_;
};

inline Network make_network(std::vector<LocalRule> rules, std::vector<Delay> dt) {
  return Network::make(std::move(rules), std::move(dt));
}

// Shorthand firing-memory configuration.
class State {
 public:
  State() = default;
  explicit State(std::vector<Delay> delta) : delta_(std::move(delta)) {}

  std::size_t size() const { return delta_.size(); }
  Delay operator[](std::size_t i) const { return delta_[i]; }
  Delay& operator[](std::size_t i) { return delta_[i]; }
  const std::vector<Delay>& delta() const { return delta_; }
  std::vector<Delay>& delta() { return delta_; }

  friend bool operator==(const State&, const State&) = default;
  friend auto operator<=>(const State&, const State&) = default;

 private:
  std::vector<Delay> delta_;
};

// Checks that s has one entry per node and 0 <= delta_i <= dt_i.
// Throws LengthMismatch or DeltaOutOfRange.
void validate_state(const Network& net, const State& s);

// Builds a validated state from raw deltas.
State make_state(const Network& net, std::vector<Delay> delta);

Bits boolean_projection(const State& s);

// Maps an arbitrary (x, Delta) pair onto the shorthand form: x_i = 0 forces
// delta 0, x_i = 1 forces delta >= 1.
State canonicalize_initial(const Network& net, const Bits& x, const std::vector<Delay>& delta_raw);

State step(const Network& net, const State& s);

// Reusable stepping context for hot loops; avoids per-step allocation.
class Stepper {
 public:
  explicit Stepper(const Network& net) : net_(&net), x_(net.size()), next_(net.size()) {}

  // Advances s in place by `steps` synchronous updates.
  void advance(State& s, std::size_t steps = 1);

 private:
  const Network* net_;
  Bits x_;
  std::vector<Delay> next_;
};

// Plain synchronous (memoryless) update x -> F(x).
Bits plain_update(const Network& net, const Bits& x);

}  // namespace firemem
