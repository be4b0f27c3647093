#include "firemem/gadgets.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "firemem/dynamics.hpp"

namespace firemem {

namespace {

void check_tau(int tau) {
  if (tau < 2) throw Error(ErrorCode::TauTooSmall, "tau must be >= 2, got " + std::to_string(tau));
  if (tau > 4096) throw Error(ErrorCode::InvalidArgument, "tau too large");
}

void check_primes(const std::vector<int>& primes) {
  if (primes.empty()) throw Error(ErrorCode::EmptyList, "no primes given");
  std::set<int> seen;
  for (int p : primes) {
    if (p < 2) throw Error(ErrorCode::InvalidArgument, "component sizes must be >= 2");
    if (!seen.insert(p).second) {
      throw Error(ErrorCode::NonDistinctPrimes, std::to_string(p) + " appears twice");
    }
  }
}

std::string cat(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

// Appends k blocks wired into one cycle of k(tau+1) path nodes with the
// standard attractor initial condition.
std::vector<BlockRef> append_block_cycle(GraphBuilder& b, int tau, int k, const std::string& prefix) {
  const auto t = static_cast<Delay>(tau);
  // Contact phase of clock l on path node r: (r + 1 + l) mod (tau + 1).
  std::vector<std::vector<Delay>> phases(tau + 1);
  for (int r = 0; r <= tau; ++r) {
    for (int l = 0; l < tau - 1; ++l) phases[r].push_back(static_cast<Delay>((r + 1 + l) % (tau + 1)));
  }
  std::vector<BlockRef> blocks;
  for (int j = 0; j < k; ++j) {
    std::vector<Delay> path(tau + 1);
    for (int r = 0; r <= tau; ++r) path[r] = static_cast<Delay>(r);
    if (j > 0) path[0] = t;
    blocks.push_back(b.add_block(t, path, phases, cat(prefix, "B_" + std::to_string(j + 1))));
  }
  for (int j = 0; j < k; ++j) {
    b.connect(blocks[j].path.back(), blocks[(j + 1) % k].path.front());
  }
  return blocks;
}

std::uint64_t lcm_all(const std::vector<std::uint64_t>& xs) {
  std::uint64_t acc = 1;
  for (auto x : xs) acc = std::lcm(acc, x);
  return acc;
}

}  // namespace

NodeId GraphBuilder::add_node(Delay dt, Delay delta, std::string label) {
  dt_.push_back(dt);
  delta_.push_back(delta);
  labels_.push_back(std::move(label));
  deps_.emplace_back();
  return static_cast<NodeId>(dt_.size() - 1);
}

void GraphBuilder::connect(NodeId a, NodeId b) {
  depend(a, b);
  depend(b, a);
}

void GraphBuilder::depend(NodeId target, NodeId source) {
  auto& d = deps_.at(target);
  if (std::find(d.begin(), d.end(), source) == d.end()) d.push_back(source);
}

ClockRef GraphBuilder::add_clock(Delay tau, Delay contact_delta, const std::string& label) {
  ClockRef c;
  c.tau = tau;
  for (Delay m = 0; m <= tau; ++m) {
    const auto phase = static_cast<Delay>((contact_delta + m) % (tau + 1));
    c.nodes.push_back(add_node(tau, phase, m == 0 ? cat(label, "a") : cat(label, "v" + std::to_string(m))));
  }
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < c.nodes.size(); ++j) connect(c.nodes[i], c.nodes[j]);
  }
  return c;
}

BlockRef GraphBuilder::add_block(Delay tau, const std::vector<Delay>& path_delta,
                                 const std::vector<std::vector<Delay>>& clock_phases,
                                 const std::string& label) {
  BlockRef blk;
  for (std::size_t r = 0; r < path_delta.size(); ++r) {
    blk.path.push_back(add_node(tau, path_delta[r], label + ".path[" + std::to_string(r) + "]"));
    if (r > 0) connect(blk.path[r - 1], blk.path[r]);
  }
  blk.clocks.resize(path_delta.size());
  for (std::size_t r = 0; r < path_delta.size() && r < clock_phases.size(); ++r) {
    for (std::size_t l = 0; l < clock_phases[r].size(); ++l) {
      ClockRef c = add_clock(tau, clock_phases[r][l],
                             "C(" + label + ")_{" + std::to_string(r) + "," + std::to_string(l) + "}");
      connect(c.contact(), blk.path[r]);
      blk.clocks[r].push_back(std::move(c));
    }
  }
  return blk;
}

Network GraphBuilder::network() const {
  std::vector<LocalRule> rules;
  rules.reserve(deps_.size());
  for (const auto& d : deps_) {
    std::vector<NodeId> inputs = d;
    std::sort(inputs.begin(), inputs.end());
    rules.push_back(LocalRule::conjunction(std::move(inputs)));
  }
  return Network::make(std::move(rules), dt_);
}

GadgetInstance build_clock_network(int tau) {
  check_tau(tau);
  GraphBuilder b;
  const ClockRef c = b.add_clock(static_cast<Delay>(tau), 0, "K");
  GadgetInstance g{"clock", b.network(), b.state(), static_cast<std::uint64_t>(tau + 1), b.labels(),
                   {c}, {}, {c.nodes}, {}, Json{{"tau", tau}}};
  return g;
}

GadgetInstance build_block_cycle(int tau, int k) {
  check_tau(tau);
  if (k < 1) throw Error(ErrorCode::KTooSmall, "k must be >= 1, got " + std::to_string(k));
  GraphBuilder b;
  std::vector<BlockRef> blocks = append_block_cycle(b, tau, k, "");
  std::vector<ClockRef> clocks;
  for (const auto& blk : blocks) {
    for (const auto& row : blk.clocks) clocks.insert(clocks.end(), row.begin(), row.end());
  }
  std::vector<NodeId> all(b.size());
  std::iota(all.begin(), all.end(), NodeId{0});
  return GadgetInstance{"block-cycle",
                        b.network(),
                        b.state(),
                        static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(tau + 1),
                        b.labels(),
                        std::move(clocks),
                        std::move(blocks),
                        {std::move(all)},
                        {},
                        Json{{"tau", tau}, {"k", k}}};
}

GadgetInstance build_prime_union_hetero(const std::vector<int>& primes, const HeteroOptions& opts) {
  check_primes(primes);
  GraphBuilder b;
  std::vector<ClockRef> comps;
  std::vector<std::uint64_t> periods;
  for (int p : primes) {
    const int size = opts.coprime_fix ? p : p + 1;
    const auto dt = static_cast<Delay>(size - 1);
    if (dt < 1) throw Error(ErrorCode::InvalidArgument, "component too small");
    comps.push_back(b.add_clock(dt, 0, "K" + std::to_string(size) + "[p=" + std::to_string(p) + "]"));
    periods.push_back(static_cast<std::uint64_t>(size));
  }
  // Connector vertex s_i is the clique node starting at delta 1, so no two
  // connected connector vertices start at 0.
  auto connector_vertex = [&](std::size_t i) { return comps[i].nodes[1]; };
  std::vector<std::pair<NodeId, NodeId>> connectors;
  for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
    const NodeId reader = connector_vertex(i);
    const NodeId source = connector_vertex(i + 1);
    if (opts.connector == ConnectorMode::Direct) {
      b.depend(reader, source);
      connectors.emplace_back(reader, source);
    } else {
      const NodeId relay = b.add_node(2, 2, "relay[" + std::to_string(i) + "]");
      b.depend(relay, source);
      b.depend(reader, relay);
      connectors.emplace_back(relay, source);
      connectors.emplace_back(reader, relay);
    }
  }
  std::vector<std::vector<NodeId>> components;
  for (const auto& c : comps) components.push_back(c.nodes);
  Json params{{"primes", primes},
              {"coprime_fix", opts.coprime_fix},
              {"connector", opts.connector == ConnectorMode::Direct ? "direct" : "buffered"}};
  return GadgetInstance{"prime-union-hetero",
                        b.network(),
                        b.state(),
                        lcm_all(periods),
                        b.labels(),
                        comps,
                        {},
                        std::move(components),
                        std::move(connectors),
                        std::move(params)};
}

GadgetInstance build_prime_union_uniform(int tau, const std::vector<int>& primes) {
  check_tau(tau);
  check_primes(primes);
  GraphBuilder b;
  std::vector<std::vector<BlockRef>> cycles;
  std::vector<std::vector<NodeId>> components;
  std::vector<std::uint64_t> periods;
  for (int p : primes) {
    const NodeId first = static_cast<NodeId>(b.size());
    cycles.push_back(append_block_cycle(b, tau, p, "C" + std::to_string(p)));
    std::vector<NodeId> nodes(b.size() - first);
    std::iota(nodes.begin(), nodes.end(), first);
    components.push_back(std::move(nodes));
    periods.push_back(static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(tau + 1));
  }
  // Contact of the first clock on path[0] of block 1 of C_{p_i} reads the
  // contact of the first clock on path[1] of block 1 of C_{p_{i+1}}. Their
  // phases differ by one, so they are never off on the same step.
  std::vector<std::pair<NodeId, NodeId>> connectors;
  for (std::size_t i = 0; i + 1 < cycles.size(); ++i) {
    const NodeId reader = cycles[i][0].clocks[0][0].contact();
    const NodeId source = cycles[i + 1][0].clocks[1][0].contact();
    b.depend(reader, source);
    connectors.emplace_back(reader, source);
  }
  std::vector<BlockRef> blocks;
  std::vector<ClockRef> clocks;
  for (const auto& cyc : cycles) {
    for (const auto& blk : cyc) {
      blocks.push_back(blk);
      for (const auto& row : blk.clocks) clocks.insert(clocks.end(), row.begin(), row.end());
    }
  }
  return GadgetInstance{"prime-union-uniform",
                        b.network(),
                        b.state(),
                        lcm_all(periods),
                        b.labels(),
                        std::move(clocks),
                        std::move(blocks),
                        std::move(components),
                        std::move(connectors),
                        Json{{"tau", tau}, {"primes", primes}}};
}

PeriodCheck verify_claimed_period(const GadgetInstance& g, std::size_t max_steps) {
  if (max_steps == 0) {
    max_steps = static_cast<std::size_t>(
        std::min<std::uint64_t>(enumeration_budget(), g.claimed_period.value_or(1) * 4 + 1024));
  }
  const Trajectory traj = find_attractor(g.net, g.initial, max_steps);
  PeriodCheck out;
  out.measured = traj.period;
  out.transient = traj.transient;
  out.ok = g.claimed_period.has_value() && traj.transient == 0 && traj.period == *g.claimed_period;
  return out;
}

GadgetInstance isolate_component(const GadgetInstance& g, std::size_t idx) {
  const auto& nodes = g.components.at(idx);
  std::unordered_map<NodeId, NodeId> remap;
  for (NodeId i = 0; i < nodes.size(); ++i) remap.emplace(nodes[i], i);
  std::vector<LocalRule> rules;
  std::vector<Delay> dt;
  std::vector<Delay> delta;
  std::vector<std::string> labels;
  for (NodeId old : nodes) {
    const LocalRule& r = g.net.rule(old);
    LocalRule nr = r;
    nr.inputs.clear();
    nr.weights.clear();
    for (std::size_t k = 0; k < r.inputs.size(); ++k) {
      auto it = remap.find(r.inputs[k]);
      if (it == remap.end()) continue;
      nr.inputs.push_back(it->second);
      if (r.kind == RuleKind::Threshold) nr.weights.push_back(r.weights[k]);
    }
    rules.push_back(std::move(nr));
    dt.push_back(g.net.max_delay(old));
    delta.push_back(g.initial[old]);
    labels.push_back(g.labels[old]);
  }
  std::vector<NodeId> all(nodes.size());
  std::iota(all.begin(), all.end(), NodeId{0});
  return GadgetInstance{g.kind + "-component",
                        Network::make(std::move(rules), std::move(dt)),
                        State(std::move(delta)),
                        std::nullopt,
                        std::move(labels),
                        {},
                        {},
                        {std::move(all)},
                        {},
                        Json{{"component", idx}}};
}

std::uint64_t block_cycle_node_count(int tau, int k) {
  const auto t = static_cast<std::uint64_t>(tau);
  return static_cast<std::uint64_t>(k) * (t + 1) * (1 + (t - 1) * (t + 1));
}

Json gadget_to_json(const GadgetInstance& g) {
  Json j = network_to_json(g.net);
  Json labels = Json::object();
  for (std::size_t i = 0; i < g.labels.size(); ++i) labels[std::to_string(i)] = g.labels[i];
  j["labels"] = std::move(labels);
  if (g.claimed_period) {
    j["claimed_period"] = *g.claimed_period;
  } else {
    j["claimed_period"] = "nonpolynomial";
  }
  j["kind"] = g.kind;
  j["params"] = g.params;
  return j;
}

}  // namespace firemem
