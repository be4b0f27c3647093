#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "firemem/circuit.hpp"
#include "firemem/compiler.hpp"
#include "firemem/dynamics.hpp"
#include "firemem/gadgets.hpp"
#include "firemem/network_io.hpp"
#include "firemem/state_key.hpp"

namespace firemem::cli {

std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct Loaded {
  std::string path;
  std::string text;
  Json json;
};

Loaded load_json(const std::string& path) {
  Loaded l{path, read_file(path), {}};
  l.json = parse_json(l.text, path);
  return l;
}

Json delta_json(const State& s) { return s.delta(); }

Bits parse_bits(const std::string& s) {
  Bits x;
  for (char c : s) {
    if (c == ',' || c == ' ') continue;
    if (c != '0' && c != '1') throw Error(ErrorCode::InvalidArgument, "bit vector must be 0/1 digits");
    x.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return x;
}

std::string bits_text(const Bits& x) {
  std::string s;
  for (auto v : x) s.push_back(v ? '1' : '0');
  return s;
}

std::vector<std::string> labels_of(const Json& j) {
  std::vector<std::string> labels;
  if (!j.contains("labels")) return labels;
  const Json& l = j.at("labels");
  if (l.is_array()) return l.get<std::vector<std::string>>();
  for (const auto& [key, value] : l.items()) {
    const auto i = std::stoul(key);
    if (i >= labels.size()) labels.resize(i + 1);
    labels[i] = value.get<std::string>();
  }
  return labels;
}

class Reporter {
 public:
  Reporter(std::string command, bool timing)
      : timing_(timing), start_(std::chrono::steady_clock::now()) {
    report_["command"] = std::move(command);
    report_["inputs"] = Json::object();
  }

  void input(const Loaded& l) { report_["inputs"][l.path] = digest(l.text); }
  Json& operator[](const char* key) { return report_[key]; }

  void emit(std::ostream& out) {
    if (timing_) {
      const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
      report_["timing"] = Json{{"wall_ms", static_cast<double>(us) / 1000.0}};
    }
    out << report_.dump(2) << "\n";
  }

 private:
  Json report_;
  bool timing_;
  std::chrono::steady_clock::time_point start_;
};

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    try {
      v.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "not an integer: '" + item + "'");
    }
  }
  return v;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Firing-memory boolean network toolkit", "firemem"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "Add wall-clock time to reports");

  std::string net_path, state_path, path;
  std::size_t steps = 0, max_steps = 0, node = 0, samples = 0, t_max = 4;
  unsigned jobs = 1;
  std::uint64_t budget = 0, seed = 1;

  auto* step_cmd = app.add_subcommand("step", "Print an exact trace as JSON lines");
  step_cmd->add_option("network", net_path)->required();
  step_cmd->add_option("state", state_path)->required();
  step_cmd->add_option("--steps,-n", steps, "Number of steps")->required();

  auto* attr_cmd = app.add_subcommand("attractor", "Transient and period from a state");
  attr_cmd->add_option("network", net_path)->required();
  attr_cmd->add_option("state", state_path)->required();
  attr_cmd->add_option("--max-steps", max_steps, "Step budget (default: enumeration budget)");

  auto* pred_cmd = app.add_subcommand("predict", "Does the node's value ever change");
  pred_cmd->add_option("network", net_path)->required();
  pred_cmd->add_option("state", state_path)->required();
  pred_cmd->add_option("--node", node)->required();

  bool list_attractors = false;
  auto* census_cmd = app.add_subcommand("census", "All attractors with basin sizes");
  census_cmd->add_option("network", net_path)->required();
  census_cmd->add_option("--jobs,-j", jobs)->check(CLI::Range(1u, 256u));
  census_cmd->add_option("--budget", budget, "Maximum number of states");
  census_cmd->add_flag("--cycles", list_attractors, "Include every state of each cycle");

  std::string kind, primes_text, out_prefix;
  int tau = 2, k = 2;
  bool coprime_fix = false, direct = false, want_dot = false, verify = false;
  auto* gad_cmd = app.add_subcommand("build-gadget", "Write a gadget network and initial state");
  gad_cmd->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember(
          std::vector<std::string>{"clock", "block-cycle", "prime-union-hetero", "prime-union-uniform"}));
  gad_cmd->add_option("--tau", tau);
  gad_cmd->add_option("--k", k);
  gad_cmd->add_option("--primes", primes_text, "Comma separated, e.g. 2,3,5");
  gad_cmd->add_flag("--coprime-fix", coprime_fix, "Heterogeneous variant with K_p components");
  gad_cmd->add_flag("--direct-connectors", direct, "Heterogeneous variant without relay nodes");
  gad_cmd->add_option("--out,-o", out_prefix, "Writes PREFIX.network.json and PREFIX.state.json")
      ->required();
  gad_cmd->add_flag("--dot", want_dot, "Also write PREFIX.dot");
  gad_cmd->add_flag("--verify", verify, "Simulate and compare with the claimed period");

  std::string circuit_path, compiled_path;
  bool normalize = false;
  auto* comp_cmd = app.add_subcommand("compile", "Compile a monotone circuit");
  comp_cmd->add_option("circuit", circuit_path)->required();
  comp_cmd->add_flag("--normalize", normalize, "Normalize to alternating form first");
  comp_cmd->add_option("-o,--out", compiled_path)->required();

  bool exhaustive = false;
  auto* ver_cmd = app.add_subcommand("verify-sim", "Compare network simulation with circuit iteration");
  ver_cmd->add_option("compiled", compiled_path)->required();
  auto* ex_flag = ver_cmd->add_flag("--exhaustive", exhaustive, "Every input vector");
  ver_cmd->add_option("--samples", samples, "Random input vectors")->excludes(ex_flag);
  ver_cmd->add_option("--t", t_max, "Iterations per input");
  ver_cmd->add_option("--seed", seed);

  std::string x_text;
  auto* enc_cmd = app.add_subcommand("encode", "Encoded network state of an input vector");
  enc_cmd->add_option("compiled", compiled_path)->required();
  enc_cmd->add_option("--x", x_text, "Input bits, e.g. 0110")->required();

  auto* dot_cmd = app.add_subcommand("dot", "Interaction graph in DOT");
  dot_cmd->add_option("network", path)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  std::string echo = "firemem";
  for (const auto& a : args) echo += " " + a;

  try {
    if (*step_cmd) {
      const Loaded n = load_json(net_path);
      const Network net = network_from_json(n.json);
      const State s0 = state_from_json(load_json(state_path).json, net);
      State s = s0;
      Stepper stepper(net);
      for (std::size_t t = 0;; ++t) {
        out << Json{{"t", t}, {"delta", delta_json(s)}}.dump() << "\n";
        if (t == steps) break;
        stepper.advance(s);
      }
      return 0;
    }

    if (*attr_cmd || *pred_cmd) {
      const Loaded n = load_json(net_path);
      const Loaded st = load_json(state_path);
      const Network net = network_from_json(n.json);
      const State s0 = state_from_json(st.json, net);
      Reporter rep(echo, timing);
      rep.input(n);
      rep.input(st);
      if (*attr_cmd) {
        const std::size_t budget_steps =
            max_steps ? max_steps : static_cast<std::size_t>(enumeration_budget());
        const Trajectory traj = find_attractor(net, s0, budget_steps);
        const Attractor a = attractor_of(net, traj);
        rep["transient"] = traj.transient;
        rep["period"] = traj.period;
        rep["representative"] = delta_json(a.cycle.front());
      } else {
        const Prediction p = predict(net, s0, static_cast<NodeId>(node));
        rep["node"] = node;
        rep["answer"] = p.answer;
        rep["witness_time"] = p.witness_time ? Json(*p.witness_time) : Json(nullptr);
      }
      rep.emit(out);
      return 0;
    }

    if (*census_cmd) {
      const Loaded n = load_json(net_path);
      const Network net = network_from_json(n.json);
      Reporter rep(echo, timing);
      rep.input(n);
      const auto census = brute_force_census(net, CensusOptions{budget, jobs});
      Json rows = Json::array();
      std::uint64_t total = 0;
      for (const auto& e : census) {
        Json row{{"period", e.attractor.period()},
                 {"basin", e.basin},
                 {"representative", delta_json(e.attractor.cycle.front())}};
        if (list_attractors) {
          Json cyc = Json::array();
          for (const auto& s : e.attractor.cycle) cyc.push_back(delta_json(s));
          row["cycle"] = std::move(cyc);
        }
        rows.push_back(std::move(row));
        total += e.basin;
      }
      rep["states"] = total;
      rep["attractor_count"] = census.size();
      rep["attractors"] = std::move(rows);
      rep.emit(out);
      return 0;
    }

    if (*gad_cmd) {
      const std::vector<int> primes = parse_int_list(primes_text);
      auto need_primes = [&] {
        if (primes.empty()) throw Error(ErrorCode::EmptyList, "--primes is required for this kind");
      };
      std::optional<GadgetInstance> g;
      if (kind == "clock") {
        g = build_clock_network(tau);
      } else if (kind == "block-cycle") {
        g = build_block_cycle(tau, k);
      } else if (kind == "prime-union-hetero") {
        need_primes();
        g = build_prime_union_hetero(
            primes, HeteroOptions{coprime_fix, direct ? ConnectorMode::Direct : ConnectorMode::Buffered});
      } else {
        need_primes();
        g = build_prime_union_uniform(tau, primes);
      }
      const std::string net_file = out_prefix + ".network.json";
      const std::string state_file = out_prefix + ".state.json";
      write_file(net_file, gadget_to_json(*g).dump(2) + "\n");
      write_file(state_file, state_to_json(g->initial).dump() + "\n");
      Reporter rep(echo, timing);
      rep["kind"] = g->kind;
      rep["params"] = g->params;
      rep["nodes"] = g->net.size();
      rep["claimed_period"] = g->claimed_period ? Json(*g->claimed_period) : Json("nonpolynomial");
      Json files{net_file, state_file};
      if (want_dot) {
        const std::string dot_file = out_prefix + ".dot";
        write_file(dot_file, network_to_dot(g->net, g->labels));
        files.push_back(dot_file);
      }
      rep["files"] = std::move(files);
      if (verify) {
        const PeriodCheck pc = verify_claimed_period(*g);
        rep["verified"] = Json{{"ok", pc.ok}, {"measured", pc.measured}, {"transient", pc.transient}};
      }
      rep.emit(out);
      return 0;
    }

    if (*comp_cmd) {
      Loaded c{circuit_path, read_file(circuit_path), {}};
      const MonotoneCircuit mc = parse_circuit(c.text);
      const AlternatingCircuit ac =
          normalize ? normalize_alternating(mc) : AlternatingCircuit::certify(mc);
      const CompiledCircuit cc = compile(ac);
      write_file(compiled_path, compiled_to_json(cc).dump() + "\n");
      Reporter rep(echo, timing);
      rep.input(c);
      rep["circuit_inputs"] = mc.n_inputs();
      rep["gates"] = ac.circuit().gates().size() - mc.n_inputs();
      rep["depth"] = ac.circuit().depth();
      rep["nodes"] = cc.net.size();
      rep["padding_blocks"] = cc.padding_blocks;
      rep["nominal_period"] = cc.nominal_period;
      rep["p"] = cc.p;
      rep["out"] = compiled_path;
      rep.emit(out);
      return 0;
    }

    if (*ver_cmd || *enc_cmd) {
      const Loaded l = load_json(compiled_path);
      const CompiledCircuit cc = compiled_from_json(l.json);
      const std::size_t n = cc.circuit.n_inputs();
      if (*enc_cmd) {
        const Bits x = parse_bits(x_text);
        out << state_to_json(encode(cc, x)).dump() << "\n";
        return 0;
      }
      std::vector<Bits> xs;
      if (exhaustive || (samples == 0 && n <= 10)) {
        if (n > 20) throw Error(ErrorCode::BudgetExceeded, "too many inputs for --exhaustive");
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
          Bits x(n);
          for (std::size_t q = 0; q < n; ++q) x[q] = (m >> q) & 1;
          xs.push_back(std::move(x));
        }
      } else {
        std::mt19937_64 rng(seed);
        std::bernoulli_distribution coin(0.5);
        for (std::size_t q = 0; q < std::max<std::size_t>(samples, 1); ++q) {
          Bits x(n);
          for (auto& v : x) v = coin(rng);
          xs.push_back(std::move(x));
        }
      }
      Reporter rep(echo, timing);
      rep.input(l);
      Json failure = nullptr;
      std::size_t checked = 0;
      Stepper stepper(cc.net);
      for (const Bits& x : xs) {
        State s = encode(cc, x);
        Bits want = x;
        for (std::size_t t = 0; t <= t_max && failure.is_null(); ++t) {
          if (t > 0) {
            stepper.advance(s, cc.p);
            want = eval(cc.circuit, want);
          }
          ++checked;
          try {
            const Bits got = decode(cc, s);
            if (got != want) {
              failure = Json{{"x", bits_text(x)}, {"t", t}, {"expected", bits_text(want)},
                             {"got", bits_text(got)}};
            }
          } catch (const Error& e) {
            if (e.code() != ErrorCode::IllFormed) throw;
            failure = Json{{"x", bits_text(x)}, {"t", t}, {"expected", bits_text(want)}, {"got", e.what()}};
          }
        }
        if (!failure.is_null()) break;
      }
      rep["p"] = cc.p;
      rep["vectors"] = xs.size();
      rep["t"] = t_max;
      rep["checked"] = checked;
      rep["ok"] = failure.is_null();
      rep["first_failure"] = failure;
      rep.emit(out);
      return 0;
    }

    if (*dot_cmd) {
      const Loaded l = load_json(path);
      out << network_to_dot(network_from_json(l.json), labels_of(l.json));
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace firemem::cli
