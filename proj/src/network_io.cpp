#include "firemem/network_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace firemem {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::FormatError, what);
}

template <typename T>
T checked_int(const Json& v, const std::string& where, long long lo, long long hi) {
  require(v.is_number_integer(), where + " must be an integer");
  const long long x = v.get<long long>();
  require(x >= lo && x <= hi, where + " out of range");
  return static_cast<T>(x);
}

}  // namespace

Json parse_json(std::string_view text, std::string_view source_name) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << source_name << ":" << line << ":" << col << ": malformed JSON";
    throw Error(ErrorCode::FormatError, msg.str());
  }
}

Json network_to_json(const Network& net) {
  Json j;
  j["n"] = net.size();
  j["dt"] = Json::array();
  for (Delay d : net.max_delays()) j["dt"].push_back(d);
  Json rules = Json::array();
  for (const LocalRule& r : net.rules()) {
    Json jr;
    switch (r.kind) {
      case RuleKind::Conjunctive: jr["kind"] = "and"; break;
      case RuleKind::Disjunctive: jr["kind"] = "or"; break;
      case RuleKind::Threshold: jr["kind"] = "threshold"; break;
    }
    jr["inputs"] = r.inputs;
    if (r.kind == RuleKind::Threshold) {
      jr["weights"] = r.weights;
      jr["theta"] = r.theta;
    }
    rules.push_back(std::move(jr));
  }
  j["rules"] = std::move(rules);
  return j;
}

Network network_from_json(const Json& j) {
  require(j.is_object(), "network document must be an object");
  require(j.contains("n") && j.contains("dt") && j.contains("rules"),
          "network document needs keys n, dt, rules");
  const auto n = checked_int<std::size_t>(j["n"], "n", 1, 1LL << 31);
  require(j["dt"].is_array() && j["rules"].is_array(), "dt and rules must be arrays");
  require(j["dt"].size() == n && j["rules"].size() == n, "dt and rules must have n entries");

  std::vector<Delay> dt;
  dt.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    dt.push_back(checked_int<Delay>(j["dt"][i], "dt[" + std::to_string(i) + "]", 0, 65535));
  }
  std::vector<LocalRule> rules;
  rules.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& jr = j["rules"][i];
    const std::string where = "rules[" + std::to_string(i) + "]";
    require(jr.is_object() && jr.contains("kind") && jr.contains("inputs"),
            where + " needs kind and inputs");
    require(jr["kind"].is_string(), where + ".kind must be a string");
    require(jr["inputs"].is_array(), where + ".inputs must be an array");
    std::vector<NodeId> inputs;
    for (const Json& v : jr["inputs"]) {
      inputs.push_back(checked_int<NodeId>(v, where + ".inputs", 0, 0xffffffffLL));
    }
    const std::string kind = jr["kind"].get<std::string>();
    if (kind == "and") {
      rules.push_back(LocalRule::conjunction(std::move(inputs)));
    } else if (kind == "or") {
      rules.push_back(LocalRule::disjunction(std::move(inputs)));
    } else if (kind == "threshold") {
      require(jr.contains("weights") && jr["weights"].is_array() && jr.contains("theta"),
              where + " threshold rule needs weights and theta");
      std::vector<std::int64_t> w;
      for (const Json& v : jr["weights"]) {
        require(v.is_number_integer(), where + ".weights must be integers");
        w.push_back(v.get<std::int64_t>());
      }
      require(jr["theta"].is_number_integer(), where + ".theta must be an integer");
      rules.push_back(LocalRule::threshold(std::move(inputs), std::move(w),
                                           jr["theta"].get<std::int64_t>()));
    } else {
      throw Error(ErrorCode::FormatError, where + ".kind '" + kind + "' is not and|or|threshold");
    }
  }
  return Network::make(std::move(rules), std::move(dt));
}

Json state_to_json(const State& s) {
  Json j;
  j["delta"] = s.delta();
  return j;
}

State state_from_json(const Json& j, const Network& net) {
  require(j.is_object() && j.contains("delta") && j["delta"].is_array(),
          "state document needs a delta array");
  std::vector<Delay> delta;
  for (const Json& v : j["delta"]) delta.push_back(checked_int<Delay>(v, "delta", 0, 65535));
  return make_state(net, std::move(delta));
}

std::string network_to_dot(const Network& net, const std::vector<std::string>& roles) {
  std::ostringstream out;
  out << "digraph firemem {\n";
  for (NodeId i = 0; i < net.size(); ++i) {
    out << "  " << i << " [label=\"" << i << ":" << net.max_delay(i);
    if (i < roles.size() && !roles[i].empty()) out << "\\n" << roles[i];
    out << "\"];\n";
  }
  std::set<std::pair<NodeId, NodeId>> deps;
  for (auto e : net.edges()) deps.insert(e);
  for (auto [from, to] : deps) {
    const bool mutual = deps.count({to, from}) > 0;
    if (mutual) {
      if (from < to) out << "  " << from << " -> " << to << " [dir=none];\n";
      else if (from == to) out << "  " << from << " -> " << to << ";\n";
    } else {
      out << "  " << from << " -> " << to << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FormatError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FormatError, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace firemem
