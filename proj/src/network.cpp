#include "firemem/network.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace firemem {

LocalRule LocalRule::conjunction(std::vector<NodeId> inputs) {
  LocalRule r;
  r.kind = RuleKind::Conjunctive;
  r.inputs = std::move(inputs);
  return r;
}

LocalRule LocalRule::disjunction(std::vector<NodeId> inputs) {
  LocalRule r;
  r.kind = RuleKind::Disjunctive;
  r.inputs = std::move(inputs);
  return r;
}

LocalRule LocalRule::threshold(std::vector<NodeId> inputs, std::vector<std::int64_t> weights,
                               std::int64_t theta) {
  LocalRule r;
  r.kind = RuleKind::Threshold;
  r.inputs = std::move(inputs);
  r.weights = std::move(weights);
  r.theta = theta;
  return r;
}

bool LocalRule::evaluate(std::span<const std::uint8_t> x) const {
  switch (kind) {
    case RuleKind::Conjunctive:
      return std::all_of(inputs.begin(), inputs.end(), [&](NodeId j) { return x[j] != 0; });
    case RuleKind::Disjunctive:
      return std::any_of(inputs.begin(), inputs.end(), [&](NodeId j) { return x[j] != 0; });
    case RuleKind::Threshold: {
      std::int64_t sum = 0;
      for (std::size_t k = 0; k < inputs.size(); ++k) {
        if (x[inputs[k]]) sum += weights[k];
      }
      return sum - theta >= 0;
    }
  }
  return false;
}

Network Network::make(std::vector<LocalRule> rules, std::vector<Delay> dt) {
  if (rules.empty()) throw Error(ErrorCode::LengthMismatch, "network needs at least one node");
  if (rules.size() != dt.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(rules.size()) + " rules but " +
                                               std::to_string(dt.size()) + " delays");
  }
  if (rules.size() > std::numeric_limits<NodeId>::max()) {
    throw Error(ErrorCode::LengthMismatch, "too many nodes");
  }
  const auto n = static_cast<NodeId>(rules.size());
  for (NodeId i = 0; i < n; ++i) {
    if (dt[i] < 1) {
      throw Error(ErrorCode::DelayOutOfRange, "dt[" + std::to_string(i) + "] must be >= 1");
    }
    const LocalRule& r = rules[i];
    if (r.kind == RuleKind::Threshold && r.weights.size() != r.inputs.size()) {
      throw Error(ErrorCode::LengthMismatch,
                  "threshold rule of node " + std::to_string(i) + " has mismatched weights");
    }
    std::vector<NodeId> sorted = r.inputs;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (sorted[k] >= n) {
        throw Error(ErrorCode::DanglingNodeId, "node " + std::to_string(i) +
                                                   " references " + std::to_string(sorted[k]));
      }
      if (k > 0 && sorted[k] == sorted[k - 1]) {
        throw Error(ErrorCode::DuplicateInput, "node " + std::to_string(i) + " lists input " +
                                                   std::to_string(sorted[k]) + " twice");
      }
    }
  }

  Network net;
  net.offsets_.reserve(n + 1);
  net.offsets_.push_back(0);
  for (const LocalRule& r : rules) {
    net.flat_inputs_.insert(net.flat_inputs_.end(), r.inputs.begin(), r.inputs.end());
    if (r.kind == RuleKind::Threshold) {
      net.flat_weights_.insert(net.flat_weights_.end(), r.weights.begin(), r.weights.end());
    } else {
      net.flat_weights_.insert(net.flat_weights_.end(), r.inputs.size(), 0);
    }
    net.offsets_.push_back(net.flat_inputs_.size());
  }
  net.rules_ = std::move(rules);
  net.dt_ = std::move(dt);
  return net;
}

bool Network::is_conjunctive() const {
  return std::all_of(rules_.begin(), rules_.end(),
                     [](const LocalRule& r) { return r.kind == RuleKind::Conjunctive; });
}

bool Network::is_disjunctive() const {
  return std::all_of(rules_.begin(), rules_.end(),
                     [](const LocalRule& r) { return r.kind == RuleKind::Disjunctive; });
}

bool Network::fires(NodeId i, std::span<const std::uint8_t> x) const {
  const std::size_t begin = offsets_[i];
  const std::size_t end = offsets_[i + 1];
  switch (rules_[i].kind) {
    case RuleKind::Conjunctive:
      for (std::size_t k = begin; k < end; ++k) {
        if (!x[flat_inputs_[k]]) return false;
      }
      return true;
    case RuleKind::Disjunctive:
      for (std::size_t k = begin; k < end; ++k) {
        if (x[flat_inputs_[k]]) return true;
      }
      return false;
    case RuleKind::Threshold: {
      std::int64_t sum = 0;
      for (std::size_t k = begin; k < end; ++k) {
        if (x[flat_inputs_[k]]) sum += flat_weights_[k];
      }
      return sum - rules_[i].theta >= 0;
    }
  }
  return false;
}

std::vector<std::pair<NodeId, NodeId>> Network::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(flat_inputs_.size());
  for (NodeId i = 0; i < size(); ++i) {
    for (NodeId j : inputs(i)) out.emplace_back(j, i);
  }
  return out;
}

void validate_state(const Network& net, const State& s) {
  if (s.size() != net.size()) {
    throw Error(ErrorCode::LengthMismatch, "state has " + std::to_string(s.size()) +
                                               " entries, network has " +
                                               std::to_string(net.size()) + " nodes");
  }
  for (NodeId i = 0; i < net.size(); ++i) {
    if (s[i] > net.max_delay(i)) {
      throw Error(ErrorCode::DeltaOutOfRange, "delta[" + std::to_string(i) + "] = " +
                                                  std::to_string(s[i]) + " exceeds dt " +
                                                  std::to_string(net.max_delay(i)));
    }
  }
}

State make_state(const Network& net, std::vector<Delay> delta) {
  State s(std::move(delta));
  validate_state(net, s);
  return s;
}

Bits boolean_projection(const State& s) {
  Bits x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) x[i] = s[i] >= 1 ? 1 : 0;
  return x;
}

State canonicalize_initial(const Network& net, const Bits& x, const std::vector<Delay>& delta_raw) {
  if (x.size() != net.size() || delta_raw.size() != net.size()) {
    throw Error(ErrorCode::LengthMismatch, "initial pair does not match network size");
  }
  std::vector<Delay> delta(net.size());
  for (NodeId i = 0; i < net.size(); ++i) {
    if (delta_raw[i] > net.max_delay(i)) {
      throw Error(ErrorCode::DeltaOutOfRange, "raw delta[" + std::to_string(i) + "] exceeds dt");
    }
    if (x[i]) {
      delta[i] = std::max<Delay>(delta_raw[i], 1);
    } else {
      delta[i] = 0;
    }
  }
  return State(std::move(delta));
}

void Stepper::advance(State& s, std::size_t steps) {
  const Network& net = *net_;
  const std::size_t n = net.size();
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t i = 0; i < n; ++i) x_[i] = s[i] >= 1 ? 1 : 0;
    for (NodeId i = 0; i < n; ++i) {
      if (net.fires(i, x_)) {
        next_[i] = net.max_delay(i);
      } else {
        next_[i] = s[i] >= 1 ? static_cast<Delay>(s[i] - 1) : Delay{0};
      }
    }
    std::copy(next_.begin(), next_.end(), s.delta().begin());
  }
}

State step(const Network& net, const State& s) {
  State next = s;
  Stepper(net).advance(next);
  return next;
}

Bits plain_update(const Network& net, const Bits& x) {
  Bits out(net.size());
  for (NodeId i = 0; i < net.size(); ++i) out[i] = net.fires(i, x) ? 1 : 0;
  return out;
}

}  // namespace firemem
