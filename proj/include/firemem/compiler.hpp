#pragma once

// Compilation of alternating monotone circuits into conjunctive firing-memory
// networks with dt = 2 everywhere.
//
// Every wire value lives in a block: a 3-node path whose nodes each carry one
// K_3 clock. Along the base orbit a block path cycles 122 -> 212 -> 221, and a
// block holding value 1 has its third node at 0 (code 120). Gates are gadgets
// hanging off the third node of their argument blocks; wires on faster paths
// are padded with plain blocks (3 steps each) so that every gate sees its
// arguments in phase. Output k finally feeds the first node of input block k.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "firemem/circuit.hpp"
#include "firemem/dynamics.hpp"
#include "firemem/gadgets.hpp"
#include "firemem/network.hpp"
#include "firemem/network_io.hpp"

namespace firemem {

using BlockNodes = std::array<NodeId, 3>;

// Block path in the base state and the two wire codes.
inline constexpr std::array<Delay, 3> kBlockBase{1, 2, 2};
inline constexpr std::array<Delay, 3> kCodeZero{1, 2, 2};
inline constexpr std::array<Delay, 3> kCodeOne{1, 2, 0};

// Steps from the third node of an argument block to the third node of the
// gate's output block.
inline constexpr std::size_t kOrDelay = 3;
inline constexpr std::size_t kAndDelay = 6;
inline constexpr std::size_t kPadDelay = 3;

struct GadgetNodes {
  std::size_t gate = 0;         // index into the circuit
  std::vector<NodeId> nodes;    // every node owned by the gadget
  BlockNodes output{};          // its output block
};

struct CompiledCircuit {
  MonotoneCircuit circuit;
  Network net;
  State base_state;
  std::vector<BlockNodes> input_blocks;
  std::vector<GadgetNodes> gadgets;
  std::size_t nominal_period = 0;  // arrival time of the output wave at the input blocks
  std::size_t p = 0;               // calibrated simulation period
  std::size_t padding_blocks = 0;
  std::vector<std::string> labels;
};

struct CalibrationOptions {
  bool calibrate = true;
  // Calibration inputs: every vector when n_inputs <= exhaustive_limit,
  // otherwise all-zeros, all-ones and `samples` random vectors.
  std::size_t exhaustive_limit = 10;
  std::size_t samples = 256;
  std::uint64_t seed = 1;
  std::size_t max_period = 0;  // 0 means 4 * nominal_period + 12
};

// Throws NotAlternating or DegreeTooHigh via certification of c upstream,
// CalibrationFailed when no period is found.
CompiledCircuit compile(const AlternatingCircuit& c, const CalibrationOptions& opts = {});

State encode(const CompiledCircuit& cc, const Bits& x);

// Reads every input block. Throws IllFormed on a pattern other than the two
// codes.
Bits decode(const CompiledCircuit& cc, const State& s);

// Smallest p >= 1 with F^p(encode(x)) == encode(C(x)) on the calibration set,
// i.e. the outputs have been delivered and all other nodes are back at their
// base values. Throws CalibrationFailed.
std::size_t determine_period(const CompiledCircuit& cc, const CalibrationOptions& opts = {});

// decode(F^{p t}(encode(x0))).
Bits simulate_iterations(const CompiledCircuit& cc, const Bits& x0, std::size_t t);

// Prediction instance equivalent to iter_circuit_predict(c, x0, i). The query
// node is the first path node of input block i: it holds 1 throughout the base
// orbit and drops to 0 exactly when a 1 arrives on the wire into the block.
PredictionQuery reduce_prediction(const CompiledCircuit& cc, const Bits& x0, std::size_t i);
PredictionQuery reduce_prediction(const AlternatingCircuit& c, const Bits& x0, std::size_t i);

// Upper bound on the node count of a compiled circuit: 25 per gate or input
// (an AND gadget is the largest) plus 12 per padding block.
std::size_t compiled_size_bound(const MonotoneCircuit& c, std::size_t padding_blocks);

Json compiled_to_json(const CompiledCircuit& cc);
CompiledCircuit compiled_from_json(const Json& j);

// A single gate gadget: argument blocks A and B, the gadget, and two
// downstream blocks D1 and D2 hanging off its output.
struct GateGadget {
  GateKind kind = GateKind::Or;
  Network net;
  State base_state;
  BlockNodes a{}, b{}, out{}, d1{}, d2{};
  std::vector<NodeId> relay_nodes;  // AND only: r1, r2, s1, J
  std::size_t clock_count = 0;
  std::vector<std::string> labels;
};

GateGadget build_gate_gadget(GateKind kind);

State encode_gate_inputs(const GateGadget& g, bool a, bool b);

struct GateCheck {
  std::size_t settle_time = 0;  // 0 if never within the horizon
  bool truth_table_ok = false;
  bool machinery_restored = false;
};

// Smallest t (a multiple of 3) at which the output block carries the code of
// the gate's value for all four input pairs, and whether at that instant every
// node outside the blocks equals its base-orbit value.
GateCheck check_gate_gadget(const GateGadget& g, std::size_t horizon = 30);

}  // namespace firemem
