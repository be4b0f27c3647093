#include <set>
#include <string>

#include "firemem/circuit.hpp"

namespace firemem {

namespace {

constexpr std::size_t kOutputSlot = SIZE_MAX;

struct Consumer {
  std::size_t gate;  // kOutputSlot for an output
  std::size_t slot;  // argument position, or output index
};

class Normalizer {
 public:
  explicit Normalizer(const MonotoneCircuit& c) : src_(c) {
    for (const Gate& g : c.gates()) used_.insert(g.name);
  }

  AlternatingCircuit run() {
    const std::size_t n = src_.gates().size();
    const std::size_t n_in = src_.n_inputs();

    std::vector<bool> live(n, false);
    for (std::size_t o : src_.outputs()) live[o] = true;
    for (std::size_t i = n; i-- > n_in;) {
      if (!live[i]) continue;
      for (std::size_t a : src_.gate(i).args) live[a] = true;
    }

    // Split wide gates into trees: the compiler takes AND gates of arity 2 and
    // OR gates of arity 3. map_[i] is the node that computes original gate i.
    map_.assign(n, 0);
    for (std::size_t i = 0; i < n_in; ++i) {
      map_[i] = gates_.size();
      gates_.push_back(src_.gate(i));
    }
    for (std::size_t i = n_in; i < n; ++i) {
      if (!live[i]) continue;
      const Gate& g = src_.gate(i);
      std::vector<std::size_t> args;
      for (std::size_t a : g.args) args.push_back(map_[a]);
      map_[i] = tree(g.kind, g.name, args, 0, args.size(), true);
    }

    // Collect consumers of every node, then rebuild all argument lists with
    // type-correct deliveries.
    std::vector<std::vector<Consumer>> consumers(gates_.size());
    for (std::size_t g = n_in; g < gates_.size(); ++g) {
      for (std::size_t k = 0; k < gates_[g].args.size(); ++k) {
        consumers[gates_[g].args[k]].push_back({g, k});
      }
    }
    outputs_.assign(n_in, 0);
    for (std::size_t k = 0; k < n_in; ++k) consumers[map_[src_.outputs()[k]]].push_back({kOutputSlot, k});

    const std::size_t base = gates_.size();
    for (std::size_t u = 0; u < base; ++u) {
      if (u < n_in && consumers[u].empty()) {
        pad(GateKind::Or, u);  // unused input still needs out-degree 1
        continue;
      }
      deliver(u, consumers[u]);
    }
    return AlternatingCircuit::certify(MonotoneCircuit(n_in, std::move(gates_), std::move(outputs_)));
  }

 private:
  std::string fresh(const std::string& stem) {
    for (;;) {
      std::string name = stem + "_" + std::to_string(counter_++);
      if (used_.insert(name).second) return name;
    }
  }

  std::size_t tree(GateKind kind, const std::string& name, const std::vector<std::size_t>& args,
                   std::size_t lo, std::size_t hi, bool root) {
    if (hi - lo == 1 && !root) return args[lo];
    Gate g{kind, root ? name : fresh(name), {}};
    if (hi - lo <= (kind == GateKind::And ? 2u : 3u)) {
      g.args.assign(args.begin() + static_cast<std::ptrdiff_t>(lo),
                    args.begin() + static_cast<std::ptrdiff_t>(hi));
    } else {
      const std::size_t mid = lo + (hi - lo + 1) / 2;
      g.args = {tree(kind, name, args, lo, mid, false), tree(kind, name, args, mid, hi, false)};
    }
    gates_.push_back(std::move(g));
    return gates_.size() - 1;
  }

  std::size_t pad(GateKind kind, std::size_t source) {
    gates_.push_back({kind, fresh(kind == GateKind::Or ? "or1" : "and1"), {source}});
    return gates_.size() - 1;
  }

  GateKind required_source(const Consumer& c) const {
    if (c.gate == kOutputSlot) return GateKind::Or;
    return gates_[c.gate].kind == GateKind::Or ? GateKind::And : GateKind::Or;
  }

  static bool accepts(GateKind required, GateKind source) {
    if (required == GateKind::Or) return source == GateKind::Or;
    return source == GateKind::And || source == GateKind::Input;
  }

  void attach(std::size_t source, const Consumer& c) {
    if (c.gate == kOutputSlot) {
      outputs_[c.slot] = source;
    } else {
      gates_[c.gate].args[c.slot] = source;
    }
  }

  void deliver(std::size_t source, const std::vector<Consumer>& list) {
    const GateKind kind = gates_[source].kind;
    const std::size_t cap = kind == GateKind::Input ? 1 : 4 - gates_[source].args.size();
    const GateKind pad_kind = kind == GateKind::Or ? GateKind::And : GateKind::Or;
    std::vector<Consumer> direct, rest;
    for (const Consumer& c : list) (accepts(required_source(c), kind) ? direct : rest).push_back(c);
    if (direct.size() + (rest.empty() ? 0 : 1) > cap) {
      rest.insert(rest.begin(), direct.begin() + static_cast<std::ptrdiff_t>(cap - 1), direct.end());
      direct.resize(cap - 1);
    }
    for (const Consumer& c : direct) attach(source, c);
    if (!rest.empty()) deliver(pad(pad_kind, source), rest);
  }

  const MonotoneCircuit& src_;
  std::set<std::string> used_;
  std::size_t counter_ = 0;
  std::vector<std::size_t> map_;
  std::vector<Gate> gates_;
  std::vector<std::size_t> outputs_;
};

}  // namespace

AlternatingCircuit normalize_alternating(const MonotoneCircuit& c) { return Normalizer(c).run(); }

}  // namespace firemem
