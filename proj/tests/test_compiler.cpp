#include <set>

#include "doctest.h"

#include "firemem/compiler.hpp"
#include "support.hpp"

using namespace firemem;

namespace {

const char* kSwap = "input x1\ninput x2\na = or x2\nb = or x1\noutput x1 = a\noutput x2 = b\n";

CompiledCircuit compile_text(const std::string& text) {
  return compile(AlternatingCircuit::certify(parse_circuit(text)));
}

// Alternating chain of the given depth on one input: OR, AND, OR, ...
std::string chain(std::size_t depth) {
  std::string text = "input x0\n";
  std::string prev = "x0";
  for (std::size_t d = 1; d <= depth; ++d) {
    const std::string name = "g" + std::to_string(d);
    text += name + (d % 2 ? " = or " : " = and ") + prev + "\n";
    prev = name;
  }
  return text + "output x0 = " + prev + "\n";
}

}  // namespace

TEST_CASE("single OR gate gadget") {
  const GateGadget g = build_gate_gadget(GateKind::Or);
  // Five blocks (A, B, O, D1, D2): 15 path nodes, each with a K_3 clock.
  CHECK(g.clock_count == 15);
  CHECK(g.net.size() == 15 + 15 * 3);
  CHECK(g.relay_nodes.empty());
  const GateCheck c = check_gate_gadget(g);
  CHECK(c.truth_table_ok);
  CHECK(c.machinery_restored);
  CHECK(c.settle_time == 3);
}

TEST_CASE("single AND gate gadget") {
  const GateGadget g = build_gate_gadget(GateKind::And);
  // Five blocks plus relays r1, r2, s1 (each with a clock) and the junction.
  CHECK(g.clock_count == 18);
  CHECK(g.relay_nodes.size() == 4);
  CHECK(g.net.size() == 15 + 4 + 18 * 3);
  CHECK(g.base_state[g.relay_nodes[0]] == 1);
  CHECK(g.base_state[g.relay_nodes[1]] == 2);
  CHECK(g.base_state[g.relay_nodes[2]] == 1);
  CHECK(g.base_state[g.relay_nodes[3]] == 2);
  const GateCheck c = check_gate_gadget(g);
  CHECK(c.truth_table_ok);
  CHECK(c.machinery_restored);
  // Measured settle time.
  CHECK(c.settle_time == 6);
}

TEST_CASE("gadget structure is uniform") {
  for (GateKind k : {GateKind::Or, GateKind::And}) {
    const GateGadget g = build_gate_gadget(k);
    CHECK(g.net.is_conjunctive());
    for (NodeId i = 0; i < g.net.size(); ++i) CHECK(g.net.max_delay(i) == 2);
    // Every dependency is mutual.
    std::set<std::pair<NodeId, NodeId>> e;
    for (auto p : g.net.edges()) e.insert(p);
    for (auto [a, b] : e) CHECK(e.count({b, a}) == 1);
  }
}

TEST_CASE("base orbit of a block") {
  const GateGadget g = build_gate_gadget(GateKind::Or);
  State s = g.base_state;
  const std::array<std::array<Delay, 3>, 3> orbit{{{1, 2, 2}, {2, 1, 2}, {2, 2, 1}}};
  for (std::size_t t = 0; t < 9; ++t) {
    for (const auto* blk : {&g.a, &g.out, &g.d2}) {
      for (std::size_t r = 0; r < 3; ++r) REQUIRE(s[(*blk)[r]] == orbit[t % 3][r]);
    }
    s = step(g.net, s);
  }
}

TEST_CASE("encode and decode") {
  const CompiledCircuit cc = compile_text(
      "input x0\ninput x1\ng = or x0 x1\noutput x0 = g\noutput x1 = g\n");
  const State s0 = encode(cc, {0, 1});
  const auto& b0 = cc.input_blocks[0];
  const auto& b1 = cc.input_blocks[1];
  CHECK(std::array<Delay, 3>{s0[b0[0]], s0[b0[1]], s0[b0[2]]} == kCodeZero);
  CHECK(std::array<Delay, 3>{s0[b1[0]], s0[b1[1]], s0[b1[2]]} == kCodeOne);
  for (const Bits& x : testsupport::all_vectors(2)) CHECK(decode(cc, encode(cc, x)) == x);

  // Non-block machinery is untouched by encoding.
  const State z = encode(cc, {0, 0});
  CHECK(z == cc.base_state);

  CHECK_THROWS_AS(decode(cc, State(std::vector<Delay>(cc.net.size(), 0))), Error);
  CHECK_THROWS_AS(encode(cc, {1}), Error);

  // Mid-period instants do not carry a code.
  State s = encode(cc, {1, 0});
  s = step(cc.net, s);
  try {
    decode(cc, s);
    FAIL("expected IllFormed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IllFormed);
  }
}

TEST_CASE("compiled networks are uniform conjunctive") {
  for (const auto& nc : testsupport::golden_circuits()) {
    const CompiledCircuit cc = compile_text(nc.text);
    CHECK(cc.net.is_conjunctive());
    for (NodeId i = 0; i < cc.net.size(); ++i) REQUIRE(cc.net.max_delay(i) == 2);
    CHECK(cc.net.size() <= compiled_size_bound(cc.circuit, cc.padding_blocks));
  }
}

TEST_CASE("simulation period") {
  const CompiledCircuit single = compile_text("input x0\ninput x1\ng = or x0 x1\noutput x0 = g\noutput x1 = g\n");
  CHECK(single.p == 6);
  CHECK(single.p == single.nominal_period);
  // One OR delay (3) plus the input block (3), plus the AND delay (6) per AND
  // on the critical path.
  const std::size_t expected[] = {0, 6, 0, 15, 0, 24, 0, 33};
  for (std::size_t d : {1, 3, 5, 7}) {
    const CompiledCircuit cc = compile_text(chain(d));
    CHECK(cc.circuit.depth() == d);
    CHECK(cc.p == expected[d]);
  }
}

TEST_CASE("simulate_iterations examples") {
  const CompiledCircuit cc = compile_text(kSwap);
  CHECK(simulate_iterations(cc, {1, 0}, 1) == Bits{0, 1});
  CHECK(simulate_iterations(cc, {1, 0}, 2) == Bits{1, 0});
  CHECK(simulate_iterations(cc, {1, 0}, 0) == Bits{1, 0});

  const CompiledCircuit id = compile_text("input x0\ng = or x0\noutput x0 = g\n");
  for (std::size_t t = 0; t < 5; ++t) {
    CHECK(simulate_iterations(id, {0}, t) == Bits{0});
    CHECK(simulate_iterations(id, {1}, t) == Bits{1});
  }
}

TEST_CASE("golden suite commutes with iteration") {
  for (const auto& nc : testsupport::golden_circuits()) {
    INFO(nc.name);
    const CompiledCircuit cc = compile_text(nc.text);
    Stepper stepper(cc.net);
    for (const Bits& x : testsupport::all_vectors(cc.circuit.n_inputs())) {
      State s = encode(cc, x);
      Bits want = x;
      for (std::size_t t = 1; t <= 4; ++t) {
        stepper.advance(s, cc.p);
        want = eval(cc.circuit, want);
        REQUIRE(s == encode(cc, want));
      }
    }
  }
}

TEST_CASE("normalized circuits compile") {
  const MonotoneCircuit c = parse_circuit(
      "input x0\ninput x1\ninput x2\ng = and x0 x1 x2\nh = or g x0\noutput x0 = g\noutput x1 = h\noutput x2 = x1\n");
  const CompiledCircuit cc = compile(normalize_alternating(c));
  for (const Bits& x : testsupport::all_vectors(3)) {
    for (std::size_t t = 0; t <= 3; ++t) CHECK(simulate_iterations(cc, x, t) == iterate(c, x, t));
  }
}

TEST_CASE("reduction to prediction") {
  const CompiledCircuit swap = compile_text(kSwap);
  const PredictionQuery q = reduce_prediction(swap, {1, 0}, 1);
  CHECK(q.node == swap.input_blocks[1][0]);
  const Prediction p = predict(q);
  CHECK(p.answer);
  // The wave reaches the first node of the block two steps before the code
  // is complete at t = p.
  CHECK(p.witness_time == swap.p - 2);

  // Identity stays at 0.
  const CompiledCircuit id = compile_text("input x0\ng = or x0\noutput x0 = g\n");
  CHECK_FALSE(predict(reduce_prediction(id, {0}, 0)).answer);
  CHECK(predict(reduce_prediction(id, {1}, 0)).answer);
}

TEST_CASE("reduction agrees with iterated prediction on the golden suite") {
  for (const auto& nc : testsupport::golden_circuits()) {
    INFO(nc.name);
    const CompiledCircuit cc = compile_text(nc.text);
    for (const Bits& x : testsupport::all_vectors(cc.circuit.n_inputs())) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        const CircuitPrediction want = iter_circuit_predict(cc.circuit, x, i);
        const Prediction got = predict(reduce_prediction(cc, x, i));
        REQUIRE(got.answer == want.answer);
        if (want.answer) CHECK(*got.witness_time == cc.p * *want.witness_time - 2);
      }
    }
  }
}

TEST_CASE("compiled json round trip") {
  const CompiledCircuit cc = compile_text(kSwap);
  const CompiledCircuit back = compiled_from_json(parse_json(compiled_to_json(cc).dump()));
  CHECK(back.net == cc.net);
  CHECK(back.p == cc.p);
  CHECK(back.base_state == cc.base_state);
  CHECK(back.input_blocks == cc.input_blocks);
  CHECK(circuit_to_text(back.circuit) == circuit_to_text(cc.circuit));
  CHECK(simulate_iterations(back, {1, 0}, 3) == Bits{0, 1});

  Json broken = compiled_to_json(cc);
  broken.erase("p");
  CHECK_THROWS_AS(compiled_from_json(broken), Error);
}

TEST_CASE("calibration fails on a wrong horizon") {
  const CompiledCircuit cc = compile_text(kSwap);
  CalibrationOptions opts;
  opts.max_period = cc.p - 1;
  try {
    determine_period(cc, opts);
    FAIL("expected CalibrationFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CalibrationFailed);
  }
}

TEST_CASE("sampled calibration on a wide circuit") {
  std::string text;
  for (int k = 0; k < 12; ++k) text += "input x" + std::to_string(k) + "\n";
  for (int k = 0; k < 12; ++k) text += "g" + std::to_string(k) + " = or x" + std::to_string((k + 1) % 12) + "\n";
  for (int k = 0; k < 12; ++k) text += "output x" + std::to_string(k) + " = g" + std::to_string(k) + "\n";
  CalibrationOptions opts;
  opts.samples = 32;
  const CompiledCircuit cc = compile(AlternatingCircuit::certify(parse_circuit(text)), opts);
  CHECK(cc.p == 6);
}
