#include "firemem/circuit.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

namespace firemem {

MonotoneCircuit::MonotoneCircuit(std::size_t n_inputs, std::vector<Gate> gates,
                                 std::vector<std::size_t> outputs) {
  if (n_inputs == 0) throw Error(ErrorCode::OutputArityMismatch, "circuit has no inputs");
  if (gates.size() < n_inputs) throw Error(ErrorCode::LengthMismatch, "missing input gates");
  if (outputs.size() != n_inputs) {
    throw Error(ErrorCode::OutputArityMismatch, std::to_string(outputs.size()) + " outputs for " +
                                                    std::to_string(n_inputs) + " inputs");
  }
  const std::size_t n = gates.size();
  for (std::size_t i = 0; i < n; ++i) {
    Gate& g = gates[i];
    if ((i < n_inputs) != (g.kind == GateKind::Input)) {
      throw Error(ErrorCode::InvalidArgument, "inputs must come first and only there");
    }
    if (g.kind == GateKind::Input) {
      g.args.clear();
      continue;
    }
    if (g.args.empty()) {
      throw Error(ErrorCode::SyntaxError, "gate '" + g.name + "' has no arguments");
    }
    for (std::size_t a : g.args) {
      if (a >= n) throw Error(ErrorCode::UnknownIdentifier, "gate '" + g.name + "' argument out of range");
    }
    std::vector<std::size_t> dedup;
    for (std::size_t a : g.args) {
      if (std::find(dedup.begin(), dedup.end(), a) == dedup.end()) dedup.push_back(a);
    }
    g.args = std::move(dedup);
  }
  for (std::size_t o : outputs) {
    if (o >= n) throw Error(ErrorCode::UnknownIdentifier, "output reference out of range");
  }

  // Kahn's algorithm, smallest original index first for a stable order.
  std::vector<std::size_t> indeg(n, 0);
  std::vector<std::vector<std::size_t>> users(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a : gates[i].args) {
      ++indeg[i];
      users[a].push_back(i);
    }
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indeg[i] == 0) ready.push(i);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t i = ready.top();
    ready.pop();
    order.push_back(i);
    for (std::size_t u : users[i]) {
      if (--indeg[u] == 0) ready.push(u);
    }
  }
  if (order.size() != n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (indeg[i] > 0) throw Error(ErrorCode::CycleDetected, "gate '" + gates[i].name + "' is on a cycle");
    }
  }
  std::vector<std::size_t> pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[order[k]] = k;
  gates_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    Gate g = std::move(gates[order[k]]);
    for (auto& a : g.args) a = pos[a];
    gates_[k] = std::move(g);
  }
  n_inputs_ = n_inputs;
  for (auto& o : outputs) o = pos[o];
  outputs_ = std::move(outputs);
}

Bits MonotoneCircuit::evaluate_all(const Bits& x) const {
  if (x.size() != n_inputs_) {
    throw Error(ErrorCode::LengthMismatch, "input vector has " + std::to_string(x.size()) +
                                               " entries, circuit has " + std::to_string(n_inputs_));
  }
  Bits v(gates_.size());
  for (std::size_t i = 0; i < n_inputs_; ++i) v[i] = x[i] ? 1 : 0;
  for (std::size_t i = n_inputs_; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    if (g.kind == GateKind::And) {
      v[i] = std::all_of(g.args.begin(), g.args.end(), [&](std::size_t a) { return v[a] != 0; });
    } else {
      v[i] = std::any_of(g.args.begin(), g.args.end(), [&](std::size_t a) { return v[a] != 0; });
    }
  }
  return v;
}

std::size_t MonotoneCircuit::depth() const {
  std::vector<std::size_t> d(gates_.size(), 0);
  std::size_t best = 0;
  for (std::size_t i = n_inputs_; i < gates_.size(); ++i) {
    for (std::size_t a : gates_[i].args) d[i] = std::max(d[i], d[a]);
    d[i] += 1;
    best = std::max(best, d[i]);
  }
  return best;
}

std::vector<std::size_t> MonotoneCircuit::out_degree() const {
  std::vector<std::size_t> out(gates_.size(), 0);
  for (const Gate& g : gates_) {
    for (std::size_t a : g.args) ++out[a];
  }
  for (std::size_t o : outputs_) ++out[o];
  return out;
}

namespace {

bool is_identifier(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

[[noreturn]] void syntax(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

MonotoneCircuit parse_circuit(std::string_view text) {
  struct PendingGate {
    std::string name;
    GateKind kind;
    std::vector<std::string> args;
    std::size_t line;
  };
  std::vector<std::string> inputs;
  std::vector<PendingGate> pending;
  std::map<std::string, std::pair<std::string, std::size_t>> output_lines;
  std::set<std::string> names;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "input") {
      if (tok.size() != 2) syntax(line_no, "expected 'input <name>'");
      if (!is_identifier(tok[1])) syntax(line_no, "bad identifier '" + tok[1] + "'");
      if (!names.insert(tok[1]).second) syntax(line_no, "'" + tok[1] + "' defined twice");
      inputs.push_back(tok[1]);
    } else if (tok[0] == "output") {
      if (tok.size() != 4 || tok[2] != "=") syntax(line_no, "expected 'output <input> = <node>'");
      if (!is_identifier(tok[1]) || !is_identifier(tok[3])) syntax(line_no, "bad identifier");
      if (!output_lines.emplace(tok[1], std::make_pair(tok[3], line_no)).second) {
        syntax(line_no, "second output line for '" + tok[1] + "'");
      }
    } else {
      if (tok.size() < 3 || tok[1] != "=") syntax(line_no, "expected '<gate> = and|or <args>'");
      if (!is_identifier(tok[0])) syntax(line_no, "bad identifier '" + tok[0] + "'");
      GateKind kind;
      if (tok[2] == "and") {
        kind = GateKind::And;
      } else if (tok[2] == "or") {
        kind = GateKind::Or;
      } else if (tok[2] == "not") {
        throw Error(ErrorCode::NegationRejected,
                    "line " + std::to_string(line_no) + ": negation is not monotone");
      } else {
        syntax(line_no, "unknown operator '" + tok[2] + "'");
      }
      if (tok.size() < 4) syntax(line_no, "gate needs at least one argument");
      for (std::size_t k = 3; k < tok.size(); ++k) {
        if (!is_identifier(tok[k])) syntax(line_no, "bad identifier '" + tok[k] + "'");
      }
      if (!names.insert(tok[0]).second) syntax(line_no, "'" + tok[0] + "' defined twice");
      pending.push_back({tok[0], kind, {tok.begin() + 3, tok.end()}, line_no});
    }
  }

  if (inputs.empty() || output_lines.size() != inputs.size()) {
    throw Error(ErrorCode::OutputArityMismatch, std::to_string(output_lines.size()) +
                                                    " output lines for " +
                                                    std::to_string(inputs.size()) + " inputs");
  }

  std::unordered_map<std::string, std::size_t> index;
  std::vector<Gate> gates;
  for (const auto& name : inputs) {
    index.emplace(name, gates.size());
    gates.push_back({GateKind::Input, name, {}});
  }
  for (const auto& pg : pending) {
    index.emplace(pg.name, gates.size());
    gates.push_back({pg.kind, pg.name, {}});
  }
  auto resolve = [&](const std::string& name, std::size_t line) {
    auto it = index.find(name);
    if (it == index.end()) {
      throw Error(ErrorCode::UnknownIdentifier,
                  "line " + std::to_string(line) + ": unknown identifier '" + name + "'");
    }
    return it->second;
  };
  for (std::size_t k = 0; k < pending.size(); ++k) {
    for (const auto& a : pending[k].args) {
      gates[inputs.size() + k].args.push_back(resolve(a, pending[k].line));
    }
  }
  std::vector<std::size_t> outputs;
  for (const auto& name : inputs) {
    auto it = output_lines.find(name);
    if (it == output_lines.end()) {
      throw Error(ErrorCode::OutputArityMismatch, "input '" + name + "' has no output line");
    }
    outputs.push_back(resolve(it->second.first, it->second.second));
  }
  for (const auto& [name, ref] : output_lines) {
    if (std::find(inputs.begin(), inputs.end(), name) == inputs.end()) {
      throw Error(ErrorCode::UnknownIdentifier,
                  "line " + std::to_string(ref.second) + ": output names unknown input '" + name + "'");
    }
  }
  return MonotoneCircuit(inputs.size(), std::move(gates), std::move(outputs));
}

std::string circuit_to_text(const MonotoneCircuit& c) {
  std::ostringstream out;
  for (std::size_t i = 0; i < c.n_inputs(); ++i) out << "input " << c.gate(i).name << "\n";
  for (std::size_t i = c.n_inputs(); i < c.gates().size(); ++i) {
    const Gate& g = c.gate(i);
    out << g.name << " = " << (g.kind == GateKind::And ? "and" : "or");
    for (std::size_t a : g.args) out << " " << c.gate(a).name;
    out << "\n";
  }
  for (std::size_t k = 0; k < c.n_inputs(); ++k) {
    out << "output " << c.gate(k).name << " = " << c.gate(c.outputs()[k]).name << "\n";
  }
  return out.str();
}

Bits eval(const MonotoneCircuit& c, const Bits& x) {
  const Bits v = c.evaluate_all(x);
  Bits out(c.n_inputs());
  for (std::size_t k = 0; k < c.n_inputs(); ++k) out[k] = v[c.outputs()[k]];
  return out;
}

Bits iterate(const MonotoneCircuit& c, const Bits& x0, std::size_t t) {
  Bits x = x0;
  for (std::size_t s = 0; s < t; ++s) x = eval(c, x);
  return x;
}

CircuitPrediction iter_circuit_predict(const MonotoneCircuit& c, const Bits& x0, std::size_t i) {
  if (i >= c.n_inputs()) throw Error(ErrorCode::InvalidArgument, "monitored index out of range");
  std::set<Bits> seen{x0};
  Bits x = x0;
  for (std::size_t t = 1;; ++t) {
    x = eval(c, x);
    if (x[i]) return {true, t};
    if (!seen.insert(x).second) return {false, std::nullopt};
  }
}

std::vector<std::size_t> layers(const MonotoneCircuit& c) {
  std::vector<std::size_t> layer(c.gates().size(), 0);
  for (std::size_t i = c.n_inputs(); i < c.gates().size(); ++i) {
    std::size_t best = SIZE_MAX;
    for (std::size_t a : c.gate(i).args) best = std::min(best, layer[a]);
    layer[i] = best + 1;
  }
  return layer;
}

std::string alternation_violation(const MonotoneCircuit& c) {
  const auto out = c.out_degree();
  const auto layer = layers(c);
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    const Gate& g = c.gate(i);
    const std::string who = "'" + g.name + "'";
    if (g.kind == GateKind::Input) {
      if (out[i] != 1) return "input " + who + " has out-degree " + std::to_string(out[i]);
      continue;
    }
    if (g.args.size() + out[i] > 4) {
      return "degree: gate " + who + " has degree " + std::to_string(g.args.size() + out[i]);
    }
    for (std::size_t a : g.args) {
      const GateKind ak = c.gate(a).kind;
      if (g.kind == GateKind::Or && ak == GateKind::Or) return "OR gate " + who + " reads an OR gate";
      if (g.kind == GateKind::And && ak != GateKind::Or) {
        return "AND gate " + who + " reads " + (ak == GateKind::Input ? "an input" : "an AND gate");
      }
    }
    const bool odd = layer[i] % 2 == 1;
    if ((g.kind == GateKind::Or) != odd) {
      return "gate " + who + " on layer " + std::to_string(layer[i]) + " has the wrong type";
    }
  }
  for (std::size_t k = 0; k < c.n_inputs(); ++k) {
    if (c.gate(c.outputs()[k]).kind != GateKind::Or) {
      return "output " + std::to_string(k) + " is not an OR gate";
    }
  }
  return {};
}

AlternatingCircuit AlternatingCircuit::certify(MonotoneCircuit c) {
  const std::string why = alternation_violation(c);
  if (!why.empty()) {
    throw Error(why.rfind("degree", 0) == 0 ? ErrorCode::DegreeTooHigh : ErrorCode::NotAlternating, why);
  }
  return AlternatingCircuit(std::move(c));
}

}  // namespace firemem
