#include "doctest.h"

#include "firemem/network.hpp"
#include "firemem/network_io.hpp"
#include "firemem/state_key.hpp"
#include "support.hpp"

using namespace firemem;

namespace {

// K_3 with dt = 2: every node reads the other two.
Network k3() {
  return Network::make({LocalRule::conjunction({1, 2}), LocalRule::conjunction({0, 2}),
                        LocalRule::conjunction({0, 1})},
                       {2, 2, 2});
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("local rules") {
  const Bits x{1, 0, 1};
  CHECK(LocalRule::conjunction({0, 2}).evaluate(x));
  CHECK_FALSE(LocalRule::conjunction({0, 1}).evaluate(x));
  CHECK(LocalRule::disjunction({0, 1}).evaluate(x));
  CHECK_FALSE(LocalRule::disjunction({1}).evaluate(x));
  CHECK(LocalRule::conjunction({}).evaluate(x));
  CHECK_FALSE(LocalRule::disjunction({}).evaluate(x));
  // 2*x0 - 3*x1 + x2 - 3 >= 0
  CHECK(LocalRule::threshold({0, 1, 2}, {2, -3, 1}, 3).evaluate(x));
  CHECK_FALSE(LocalRule::threshold({0, 1, 2}, {2, -3, 1}, 4).evaluate(x));
}

TEST_CASE("network validation") {
  CHECK(code_of([] { Network::make({}, {}); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([] { Network::make({LocalRule::conjunction({})}, {1, 1}); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([] { Network::make({LocalRule::conjunction({})}, {0}); }) == ErrorCode::DelayOutOfRange);
  CHECK(code_of([] { Network::make({LocalRule::conjunction({3})}, {1}); }) == ErrorCode::DanglingNodeId);
  CHECK(code_of([] { Network::make({LocalRule::conjunction({0, 0})}, {1}); }) == ErrorCode::DuplicateInput);
  CHECK(code_of([] { Network::make({LocalRule::threshold({0}, {1, 2}, 0)}, {1}); }) ==
        ErrorCode::LengthMismatch);

  const Network net = k3();
  CHECK(net.size() == 3);
  CHECK(net.is_conjunctive());
  CHECK_FALSE(net.is_disjunctive());
  CHECK(net.inputs(1).size() == 2);
  CHECK(net.edges().size() == 6);
}

TEST_CASE("states are validated") {
  const Network net = k3();
  CHECK(code_of([&] { make_state(net, {0, 1}); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([&] { make_state(net, {0, 1, 3}); }) == ErrorCode::DeltaOutOfRange);
  CHECK(make_state(net, {0, 1, 2}).delta() == std::vector<Delay>{0, 1, 2});
  CHECK(boolean_projection(make_state(net, {0, 1, 2})) == Bits{0, 1, 1});
}

TEST_CASE("canonical initial conditions") {
  const Network net = k3();
  CHECK(canonicalize_initial(net, {1, 0, 1}, {0, 2, 2}).delta() == std::vector<Delay>{1, 0, 2});
  CHECK(code_of([&] { canonicalize_initial(net, {1, 0, 1}, {0, 3, 0}); }) == ErrorCode::DeltaOutOfRange);
  CHECK(code_of([&] { canonicalize_initial(net, {1, 0}, {0, 0, 0}); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("clock rotation on K_3") {
  const Network net = k3();
  State s = make_state(net, {0, 1, 2});
  s = step(net, s);
  CHECK(s.delta() == std::vector<Delay>{2, 0, 1});
  s = step(net, s);
  CHECK(s.delta() == std::vector<Delay>{1, 2, 0});
  s = step(net, s);
  CHECK(s.delta() == std::vector<Delay>{0, 1, 2});

  State t = make_state(net, {0, 1, 2});
  Stepper(net).advance(t, 300);
  CHECK(t == make_state(net, {0, 1, 2}));
}

TEST_CASE("stepper matches the literal update on random networks") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 9;
    const Network net = testsupport::random_conjunctive(rng, n, 4, 1u << 20);
    const StateIndexer idx(net);
    std::uniform_int_distribution<std::uint64_t> pick(0, idx.count() - 1);
    for (int k = 0; k < 20; ++k) {
      State s = idx.state(pick(rng));
      for (int t = 0; t < 10; ++t) {
        const State want = testsupport::reference_step(net, s);
        s = step(net, s);
        REQUIRE(s == want);
      }
    }
  }
}

TEST_CASE("dt = 1 reduces to the memoryless update") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 10;
    const Network net = testsupport::random_conjunctive(rng, n, 1, 1u << 12);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      Bits x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = (m >> i) & 1;
      const State s = canonicalize_initial(net, x, std::vector<Delay>(n, 1));
      REQUIRE(boolean_projection(step(net, s)) == plain_update(net, x));
    }
  }
}

TEST_CASE("packed keys round trip") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial * 3;
    std::vector<LocalRule> rules(n, LocalRule::conjunction({}));
    std::vector<Delay> dt(n);
    for (auto& d : dt) d = static_cast<Delay>(1 + rng() % 300);
    const Network net = Network::make(rules, dt);
    const StateCodec codec(net);
    std::vector<Delay> delta(n);
    for (std::size_t i = 0; i < n; ++i) delta[i] = static_cast<Delay>(rng() % (dt[i] + 1));
    const State s(delta);
    CHECK(codec.unpack(codec.pack(s)) == s);
    State t = s;
    t[n - 1] = t[n - 1] == 0 ? 1 : 0;
    CHECK_FALSE(codec.pack(t) == codec.pack(s));
  }
}

TEST_CASE("mixed-radix indexing") {
  const Network net = Network::make(
      {LocalRule::conjunction({}), LocalRule::conjunction({}), LocalRule::conjunction({})}, {1, 2, 3});
  const StateIndexer idx(net);
  CHECK(idx.count() == 24);
  CHECK_FALSE(idx.overflowed());
  for (std::uint64_t i = 0; i < idx.count(); ++i) CHECK(idx.index(idx.state(i)) == i);
  CHECK(idx.index(State({1, 0, 0})) == 1);
  CHECK(idx.index(State({0, 1, 0})) == 2);
  CHECK(idx.index(State({0, 0, 1})) == 6);

  const Network big = Network::make(std::vector<LocalRule>(70, LocalRule::conjunction({})),
                                    std::vector<Delay>(70, 3));
  CHECK(StateIndexer(big).overflowed());
}

TEST_CASE("json round trip") {
  const Network net = Network::make({LocalRule::conjunction({1}), LocalRule::disjunction({0, 2}),
                                     LocalRule::threshold({0, 1}, {1, -1}, 0)},
                                    {1, 2, 3});
  const Json j = network_to_json(net);
  CHECK(network_from_json(parse_json(j.dump())) == net);
  const State s = make_state(net, {1, 0, 3});
  CHECK(state_from_json(parse_json(state_to_json(s).dump()), net) == s);

  Json extra = j;
  extra["labels"] = {"a", "b", "c"};
  CHECK(network_from_json(extra) == net);
}

TEST_CASE("json errors") {
  try {
    parse_json("{\n  \"n\": 2,\n  oops\n}", "net.json");
    FAIL("expected FormatError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FormatError);
    CHECK(std::string(e.what()).find("net.json:3:") != std::string::npos);
  }
  CHECK(code_of([] { network_from_json(parse_json(R"({"n": 1, "dt": [1], "rules": [{"kind": "xor", "inputs": []}]})")); }) ==
        ErrorCode::FormatError);
  CHECK(code_of([] { network_from_json(parse_json(R"({"n": 2, "dt": [1], "rules": []})")); }) !=
        ErrorCode::InvalidArgument);
  const Network net = k3();
  CHECK(code_of([&] { state_from_json(parse_json(R"({"delta": [0, 1, 5]})"), net); }) ==
        ErrorCode::DeltaOutOfRange);
}

TEST_CASE("dot export") {
  const Network net = Network::make({LocalRule::conjunction({1}), LocalRule::conjunction({0, 1})}, {2, 1});
  const std::string dot = network_to_dot(net, {"a", ""});
  CHECK(dot.find("0 [label=\"0:2\\na\"]") != std::string::npos);
  CHECK(dot.find("0 -> 1 [dir=none]") != std::string::npos);
  CHECK(dot.find("1 -> 1;") != std::string::npos);
  CHECK(dot.find("1 -> 0") == std::string::npos);

  const Network oneway = Network::make({LocalRule::conjunction({1}), LocalRule::conjunction({})}, {1, 1});
  CHECK(network_to_dot(oneway).find("1 -> 0;") != std::string::npos);
}
