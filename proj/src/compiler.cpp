#include "firemem/compiler.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace firemem {

namespace {

// Gadget tables. A block is three path nodes with deltas 1 2 2, each with one
// K_3 clock whose contact vertex starts at 2, 0, 1 respectively.
constexpr std::array<Delay, 3> kBlockClockPhase{2, 0, 1};

// AND gadget relays: (label, delta, clock contact phase or -1 for none).
struct RelaySpec {
  const char* name;
  Delay delta;
  int clock_phase;
};
constexpr std::array<RelaySpec, 4> kAndRelays{{
    {"r1", 1, 2},  // reads argument A
    {"r2", 2, 0},
    {"s1", 1, 2},  // reads argument B
    {"J", 2, -1},  // junction feeding the output block
}};

class Layout {
 public:
  BlockNodes block(const std::string& label) {
    const BlockRef ref = b_.add_block(
        2, {kBlockBase.begin(), kBlockBase.end()},
        {{kBlockClockPhase[0]}, {kBlockClockPhase[1]}, {kBlockClockPhase[2]}}, label);
    clocks_ += 3;
    return {ref.path[0], ref.path[1], ref.path[2]};
  }

  // Chain of `count` plain blocks after `from`; returns the node to wire on.
  NodeId pad(NodeId from, std::size_t count, const std::string& label) {
    for (std::size_t k = 0; k < count; ++k) {
      const BlockNodes p = block(label + "#" + std::to_string(k));
      b_.connect(from, p[0]);
      from = p[2];
      ++padding_;
    }
    return from;
  }

  BlockNodes or_gadget(const std::vector<NodeId>& ends, const std::string& label) {
    const BlockNodes out = block(label);
    for (NodeId e : ends) b_.connect(e, out[0]);
    return out;
  }

  // Returns the output block; relays receives r1, r2, s1, J.
  BlockNodes and_gadget(NodeId end_a, NodeId end_b, const std::string& label,
                        std::vector<NodeId>& relays) {
    std::array<NodeId, 4> r{};
    for (std::size_t k = 0; k < kAndRelays.size(); ++k) {
      const RelaySpec& spec = kAndRelays[k];
      r[k] = b_.add_node(2, spec.delta, label + "." + spec.name);
      if (spec.clock_phase >= 0) {
        const ClockRef c =
            b_.add_clock(2, static_cast<Delay>(spec.clock_phase), "C(" + label + "." + spec.name + ")");
        b_.connect(c.contact(), r[k]);
        ++clocks_;
      }
      relays.push_back(r[k]);
    }
    const BlockNodes out = block(label);
    b_.connect(end_a, r[0]);
    b_.connect(r[0], r[1]);
    b_.connect(r[1], r[3]);
    b_.connect(end_b, r[2]);
    b_.connect(r[2], r[3]);
    b_.connect(r[3], out[0]);
    return out;
  }

  GraphBuilder& builder() { return b_; }
  std::size_t padding() const { return padding_; }
  std::size_t clocks() const { return clocks_; }

 private:
  GraphBuilder b_;
  std::size_t padding_ = 0;
  std::size_t clocks_ = 0;
};

void write_block(State& s, const BlockNodes& blk, const std::array<Delay, 3>& code) {
  for (std::size_t r = 0; r < 3; ++r) s[blk[r]] = code[r];
}

int read_block(const State& s, const BlockNodes& blk) {
  const std::array<Delay, 3> got{s[blk[0]], s[blk[1]], s[blk[2]]};
  if (got == kCodeZero) return 0;
  if (got == kCodeOne) return 1;
  return -1;
}

std::string pattern(const State& s, const BlockNodes& blk) {
  return std::to_string(s[blk[0]]) + std::to_string(s[blk[1]]) + std::to_string(s[blk[2]]);
}

std::vector<Bits> calibration_set(std::size_t n, const CalibrationOptions& opts) {
  std::vector<Bits> xs;
  if (n <= opts.exhaustive_limit) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      Bits x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = (m >> k) & 1;
      xs.push_back(std::move(x));
    }
    return xs;
  }
  xs.push_back(Bits(n, 0));
  xs.push_back(Bits(n, 1));
  std::mt19937_64 rng(opts.seed);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t k = 0; k < opts.samples; ++k) {
    Bits x(n);
    for (auto& v : x) v = coin(rng);
    xs.push_back(std::move(x));
  }
  return xs;
}

}  // namespace

CompiledCircuit compile(const AlternatingCircuit& ac, const CalibrationOptions& opts) {
  const MonotoneCircuit& c = ac.circuit();
  const std::size_t n_in = c.n_inputs();
  const std::size_t n = c.gates().size();

  Layout lay;
  std::vector<BlockNodes> input_blocks;
  for (std::size_t k = 0; k < n_in; ++k) input_blocks.push_back(lay.block("in[" + c.gate(k).name + "]"));

  std::vector<std::size_t> arrival(n, 0);
  std::vector<NodeId> tail(n);
  for (std::size_t k = 0; k < n_in; ++k) tail[k] = input_blocks[k][2];

  std::vector<GadgetNodes> gadgets;
  for (std::size_t g = n_in; g < n; ++g) {
    const Gate& gate = c.gate(g);
    const std::size_t first = lay.builder().size();
    std::size_t tmax = 0;
    for (std::size_t a : gate.args) tmax = std::max(tmax, arrival[a]);
    std::vector<NodeId> ends;
    for (std::size_t a : gate.args) {
      ends.push_back(lay.pad(tail[a], (tmax - arrival[a]) / kPadDelay,
                             "pad[" + gate.name + "<-" + c.gate(a).name + "]"));
    }
    BlockNodes out;
    std::vector<NodeId> relays;
    if (gate.kind == GateKind::Or) {
      out = lay.or_gadget(ends, "or[" + gate.name + "]");
      arrival[g] = tmax + kOrDelay;
    } else {
      if (ends.size() > 2) throw Error(ErrorCode::DegreeTooHigh, "AND gate with more than two arguments");
      out = lay.and_gadget(ends.front(), ends.back(), "and[" + gate.name + "]", relays);
      arrival[g] = tmax + kAndDelay;
    }
    tail[g] = out[2];
    GadgetNodes gn{g, {}, out};
    for (NodeId v = static_cast<NodeId>(first); v < lay.builder().size(); ++v) gn.nodes.push_back(v);
    gadgets.push_back(std::move(gn));
  }

  std::size_t t_out = 0;
  for (std::size_t o : c.outputs()) t_out = std::max(t_out, arrival[o]);
  for (std::size_t k = 0; k < n_in; ++k) {
    const std::size_t o = c.outputs()[k];
    const NodeId end = lay.pad(tail[o], (t_out - arrival[o]) / kPadDelay, "out[" + c.gate(k).name + "]");
    lay.builder().connect(end, input_blocks[k][0]);
  }

  CompiledCircuit cc{c,
                     lay.builder().network(),
                     lay.builder().state(),
                     std::move(input_blocks),
                     std::move(gadgets),
                     t_out + kPadDelay,
                     t_out + kPadDelay,
                     lay.padding(),
                     lay.builder().labels()};
  if (opts.calibrate) cc.p = determine_period(cc, opts);
  return cc;
}

State encode(const CompiledCircuit& cc, const Bits& x) {
  if (x.size() != cc.input_blocks.size()) {
    throw Error(ErrorCode::LengthMismatch, "input vector has " + std::to_string(x.size()) +
                                               " entries, circuit has " +
                                               std::to_string(cc.input_blocks.size()));
  }
  State s = cc.base_state;
  for (std::size_t k = 0; k < x.size(); ++k) write_block(s, cc.input_blocks[k], x[k] ? kCodeOne : kCodeZero);
  return s;
}

Bits decode(const CompiledCircuit& cc, const State& s) {
  validate_state(cc.net, s);
  Bits x(cc.input_blocks.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const int v = read_block(s, cc.input_blocks[k]);
    if (v < 0) {
      throw Error(ErrorCode::IllFormed, "input block " + std::to_string(k) + " reads " +
                                            pattern(s, cc.input_blocks[k]));
    }
    x[k] = static_cast<std::uint8_t>(v);
  }
  return x;
}

std::size_t determine_period(const CompiledCircuit& cc, const CalibrationOptions& opts) {
  const std::size_t horizon = opts.max_period ? opts.max_period : 4 * cc.nominal_period + 12;
  std::vector<bool> good(horizon + 1, true);
  good[0] = false;
  Stepper stepper(cc.net);
  for (const Bits& x : calibration_set(cc.circuit.n_inputs(), opts)) {
    const State target = encode(cc, eval(cc.circuit, x));
    State s = encode(cc, x);
    for (std::size_t t = 1; t <= horizon; ++t) {
      stepper.advance(s);
      if (good[t] && s != target) good[t] = false;
    }
  }
  for (std::size_t t = 1; t <= horizon; ++t) {
    if (good[t]) return t;
  }
  throw Error(ErrorCode::CalibrationFailed,
              "no simulation period within " + std::to_string(horizon) + " steps");
}

Bits simulate_iterations(const CompiledCircuit& cc, const Bits& x0, std::size_t t) {
  State s = encode(cc, x0);
  Stepper(cc.net).advance(s, cc.p * t);
  return decode(cc, s);
}

PredictionQuery reduce_prediction(const CompiledCircuit& cc, const Bits& x0, std::size_t i) {
  if (i >= cc.input_blocks.size()) throw Error(ErrorCode::InvalidArgument, "monitored index out of range");
  return PredictionQuery{cc.net, cc.input_blocks[i][0], encode(cc, x0)};
}

PredictionQuery reduce_prediction(const AlternatingCircuit& c, const Bits& x0, std::size_t i) {
  return reduce_prediction(compile(c), x0, i);
}

std::size_t compiled_size_bound(const MonotoneCircuit& c, std::size_t padding_blocks) {
  return 25 * c.gates().size() + 12 * padding_blocks;
}

Json compiled_to_json(const CompiledCircuit& cc) {
  Json j = network_to_json(cc.net);
  j["p"] = cc.p;
  j["nominal_period"] = cc.nominal_period;
  j["padding_blocks"] = cc.padding_blocks;
  Json blocks = Json::array();
  for (const auto& blk : cc.input_blocks) blocks.push_back(Json::array({blk[0], blk[1], blk[2]}));
  j["input_blocks"] = std::move(blocks);
  j["base_state"] = cc.base_state.delta();
  j["circuit"] = circuit_to_text(cc.circuit);
  j["labels"] = cc.labels;
  return j;
}

CompiledCircuit compiled_from_json(const Json& j) {
  try {
    MonotoneCircuit c = parse_circuit(j.at("circuit").get<std::string>());
    Network net = network_from_json(j);
    State base = state_from_json(Json{{"delta", j.at("base_state")}}, net);
    std::vector<BlockNodes> blocks;
    for (const auto& b : j.at("input_blocks")) {
      BlockNodes blk{};
      if (b.size() != 3) throw Error(ErrorCode::FormatError, "input block needs three nodes");
      for (std::size_t r = 0; r < 3; ++r) {
        blk[r] = b.at(r).get<NodeId>();
        if (blk[r] >= net.size()) throw Error(ErrorCode::DanglingNodeId, "input block node out of range");
      }
      blocks.push_back(blk);
    }
    if (blocks.size() != c.n_inputs()) {
      throw Error(ErrorCode::OutputArityMismatch, "input_blocks does not match the circuit");
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    const auto p = j.at("p").get<std::size_t>();
    return CompiledCircuit{std::move(c), std::move(net), std::move(base), std::move(blocks), {},
                           j.value("nominal_period", p), p, j.value("padding_blocks", std::size_t{0}),
                           std::move(labels)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::FormatError, std::string("compiled circuit: ") + e.what());
  }
}

GateGadget build_gate_gadget(GateKind kind) {
  if (kind == GateKind::Input) throw Error(ErrorCode::InvalidArgument, "not a gate kind");
  Layout lay;
  const BlockNodes a = lay.block("A");
  const BlockNodes b = lay.block("B");
  std::vector<NodeId> relays;
  const BlockNodes out = kind == GateKind::Or ? lay.or_gadget({a[2], b[2]}, "O")
                                              : lay.and_gadget(a[2], b[2], "O", relays);
  const BlockNodes d1 = lay.block("D1");
  const BlockNodes d2 = lay.block("D2");
  lay.builder().connect(out[2], d1[0]);
  lay.builder().connect(out[2], d2[0]);
  return GateGadget{kind, lay.builder().network(), lay.builder().state(), a, b, out, d1, d2,
                    std::move(relays), lay.clocks(), lay.builder().labels()};
}

State encode_gate_inputs(const GateGadget& g, bool a, bool b) {
  State s = g.base_state;
  write_block(s, g.a, a ? kCodeOne : kCodeZero);
  write_block(s, g.b, b ? kCodeOne : kCodeZero);
  return s;
}

GateCheck check_gate_gadget(const GateGadget& g, std::size_t horizon) {
  std::set<NodeId> block_nodes;
  for (const auto* blk : {&g.a, &g.b, &g.out, &g.d1, &g.d2}) block_nodes.insert(blk->begin(), blk->end());

  std::vector<std::vector<State>> runs;
  for (int m = 0; m < 4; ++m) {
    State s = encode_gate_inputs(g, m & 1, m & 2);
    std::vector<State> run{s};
    Stepper stepper(g.net);
    for (std::size_t t = 1; t <= horizon; ++t) {
      stepper.advance(s);
      run.push_back(s);
    }
    runs.push_back(std::move(run));
  }
  GateCheck check;
  for (std::size_t t = 3; t <= horizon; t += 3) {
    bool ok = true;
    for (int m = 0; m < 4 && ok; ++m) {
      const bool a = m & 1, b = m & 2;
      const bool want = g.kind == GateKind::And ? (a && b) : (a || b);
      ok = read_block(runs[m][t], g.out) == static_cast<int>(want);
    }
    if (!ok) continue;
    check.settle_time = t;
    check.truth_table_ok = true;
    check.machinery_restored = true;
    for (int m = 0; m < 4; ++m) {
      for (NodeId v = 0; v < g.net.size(); ++v) {
        if (!block_nodes.count(v) && runs[m][t][v] != g.base_state[v]) check.machinery_restored = false;
      }
    }
    break;
  }
  return check;
}

}  // namespace firemem
