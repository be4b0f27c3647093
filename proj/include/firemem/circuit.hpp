#pragma once

// Monotone boolean circuits iterated through their outputs.
//
// Text format, one statement per line ('#' starts a comment):
//
//   input <name>
//   <gate> = and <arg> [<arg> ...]
//   <gate> = or <arg> [<arg> ...]
//   output <input-name> = <node>
//
// Identifiers match [A-Za-z0-9_]+. Gates may be declared in any order; every
// input needs exactly one output line, and output k feeds input k on the next
// iteration.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "firemem/network.hpp"

namespace firemem {

enum class GateKind { Input, And, Or };

struct Gate {
  GateKind kind = GateKind::Input;
  std::string name;
  std::vector<std::size_t> args;  // indices of earlier gates
};

// Gates are stored in topological order with the inputs first, so that gate
// k < n_inputs is input k.
class MonotoneCircuit {
 public:
  // Validates, deduplicates arguments and sorts topologically. Throws
  // CycleDetected, UnknownIdentifier or OutputArityMismatch.
  MonotoneCircuit(std::size_t n_inputs, std::vector<Gate> gates, std::vector<std::size_t> outputs);

  std::size_t n_inputs() const { return n_inputs_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& gate(std::size_t i) const { return gates_.at(i); }
  const std::vector<std::size_t>& outputs() const { return outputs_; }

  // Values of every gate for input x.
  Bits evaluate_all(const Bits& x) const;

  // Number of gates on the longest input-to-gate path (inputs excluded).
  std::size_t depth() const;

  // Out-degree of each node, counting output slots.
  std::vector<std::size_t> out_degree() const;

 private:
  std::size_t n_inputs_ = 0;
  std::vector<Gate> gates_;
  std::vector<std::size_t> outputs_;
};

MonotoneCircuit parse_circuit(std::string_view text);
std::string circuit_to_text(const MonotoneCircuit& c);

Bits eval(const MonotoneCircuit& c, const Bits& x);
Bits iterate(const MonotoneCircuit& c, const Bits& x0, std::size_t t);

struct CircuitPrediction {
  bool answer = false;
  std::optional<std::size_t> witness_time;
};

// Smallest t >= 1 with C^t(x0)_i = 1, searched until the trajectory repeats.
CircuitPrediction iter_circuit_predict(const MonotoneCircuit& c, const Bits& x0, std::size_t i);

// Layer of each node: length of the shortest path from an input (inputs 0).
std::vector<std::size_t> layers(const MonotoneCircuit& c);

// Empty string when c is alternating of degree 4; otherwise the first
// violation found. Conditions: every input has out-degree 1 and feeds an OR
// gate; OR gates read inputs or AND gates; AND gates read OR gates; outputs
// are OR gates; in-degree + out-degree <= 4 per gate; OR gates sit on odd
// layers and AND gates on even layers.
std::string alternation_violation(const MonotoneCircuit& c);

class AlternatingCircuit {
 public:
  // Throws NotAlternating or DegreeTooHigh.
  static AlternatingCircuit certify(MonotoneCircuit c);

  const MonotoneCircuit& circuit() const { return c_; }
  operator const MonotoneCircuit&() const { return c_; }

 private:
  explicit AlternatingCircuit(MonotoneCircuit c) : c_(std::move(c)) {}
  MonotoneCircuit c_;
};

// Equivalent alternating degree-4 circuit. Arity > 2 becomes balanced trees;
// type clashes and excess fan-out are repaired with one-argument OR / AND
// gates, which act as identities.
AlternatingCircuit normalize_alternating(const MonotoneCircuit& c);

}  // namespace firemem
