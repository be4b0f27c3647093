#pragma once

// JSON and DOT serialization for networks and states.
//
//   network: {"n": int, "dt": [int], "rules": [{"kind": "and"|"or"|"threshold",
//             "inputs": [int], "weights": [int]?, "theta": int?}]}
//   state:   {"delta": [int]}
//
// Readers ignore unknown keys, so documents that embed a network (gadget and
// compiled-circuit files) can be read back as plain networks.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "firemem/network.hpp"

namespace firemem {

using Json = nlohmann::ordered_json;

// Parses JSON text; syntax errors become FormatError with line and column.
Json parse_json(std::string_view text, std::string_view source_name = "<input>");

Json network_to_json(const Network& net);
Network network_from_json(const Json& j);

Json state_to_json(const State& s);
State state_from_json(const Json& j, const Network& net);

// Interaction graph in DOT. Node labels are "i:dt_i", optionally followed by a
// role label. Mutual dependencies are drawn once without arrowheads; one-way
// dependencies keep their direction.
std::string network_to_dot(const Network& net, const std::vector<std::string>& roles = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace firemem
