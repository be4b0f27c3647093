#pragma once

// Constructions of conjunctive firing-memory networks with long attractors:
// clocks (complete graphs rotating with period tau+1), blocks (paths whose
// nodes are paced by attached clocks), block-cycles with period k(tau+1), and
// connected unions of prime-sized components whose global period is the lcm of
// the component periods.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "firemem/network.hpp"
#include "firemem/network_io.hpp"

namespace firemem {

struct ClockRef {
  Delay tau = 0;
  std::vector<NodeId> nodes;  // nodes[0] is the contact ("a") vertex
  NodeId contact() const { return nodes.front(); }
};

struct BlockRef {
  std::vector<NodeId> path;
  // clocks[r] are the clocks attached to path[r].
  std::vector<std::vector<ClockRef>> clocks;
};

// Incremental construction of conjunctive networks together with their
// initial state and per-node role labels.
class GraphBuilder {
 public:
  NodeId add_node(Delay dt, Delay delta, std::string label);

  // Mutual dependency (an undirected edge of the interaction graph).
  void connect(NodeId a, NodeId b);
  // One-way dependency: target's rule reads source.
  void depend(NodeId target, NodeId source);

  // Complete graph on tau+1 nodes, all with dt = tau, phased so that the
  // contact vertex holds contact_delta and the others complete the rotation.
  ClockRef add_clock(Delay tau, Delay contact_delta, const std::string& label);

  // Path of path_delta.size() nodes with dt = tau; path node r gets one clock
  // per entry of clock_phases[r], attached through its contact vertex.
  BlockRef add_block(Delay tau, const std::vector<Delay>& path_delta,
                     const std::vector<std::vector<Delay>>& clock_phases, const std::string& label);

  std::size_t size() const { return dt_.size(); }
  Delay delta(NodeId i) const { return delta_[i]; }

  Network network() const;
  State state() const { return State(delta_); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<Delay> dt_;
  std::vector<Delay> delta_;
  std::vector<std::string> labels_;
  std::vector<std::vector<NodeId>> deps_;
};

struct GadgetInstance {
  std::string kind;
  Network net;
  State initial;
  // Empty means only non-polynomial growth is claimed.
  std::optional<std::uint64_t> claimed_period;
  std::vector<std::string> labels;
  std::vector<ClockRef> clocks;
  std::vector<BlockRef> blocks;
  // Node sets of the independent components of a union construction.
  std::vector<std::vector<NodeId>> components;
  // Inter-component dependencies as (reader, source) pairs.
  std::vector<std::pair<NodeId, NodeId>> connectors;
  Json params;
};

GadgetInstance build_clock_network(int tau);

GadgetInstance build_block_cycle(int tau, int k);

enum class ConnectorMode {
  // s_i reads s_{i+1} directly.
  Direct,
  // s_i reads a dt = 2 relay node that reads s_{i+1}. A clique node is never
  // off on two consecutive steps, so the relay never switches off and the
  // coupling cannot stall a component when the two periods are coprime.
  Buffered,
};

struct HeteroOptions {
  // Components K_p with dt = p - 1 (period p) instead of K_{p+1} with dt = p.
  bool coprime_fix = false;
  ConnectorMode connector = ConnectorMode::Buffered;
};

GadgetInstance build_prime_union_hetero(const std::vector<int>& primes,
                                        const HeteroOptions& opts = {});

GadgetInstance build_prime_union_uniform(int tau, const std::vector<int>& primes);

struct PeriodCheck {
  bool ok = false;
  std::size_t measured = 0;
  std::size_t transient = 0;
};

PeriodCheck verify_claimed_period(const GadgetInstance& g, std::size_t max_steps = 0);

// Component idx as a standalone instance: the induced subnetwork with all
// dependencies on nodes outside the component removed.
GadgetInstance isolate_component(const GadgetInstance& g, std::size_t idx);

// Closed-form node count of build_block_cycle(tau, k).
std::uint64_t block_cycle_node_count(int tau, int k);

Json gadget_to_json(const GadgetInstance& g);

}  // namespace firemem
