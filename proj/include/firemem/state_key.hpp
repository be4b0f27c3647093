#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "firemem/network.hpp"

namespace firemem {

// Packed cycle-detection key: each delta_i occupies ceil(log2(dt_i + 1)) bits,
// concatenated in node order, little-endian within 64-bit words.
struct PackedKey {
  std::vector<std::uint64_t> words;

  friend bool operator==(const PackedKey&, const PackedKey&) = default;
  friend auto operator<=>(const PackedKey&, const PackedKey&) = default;
};

struct PackedKeyHash {
  std::size_t operator()(const PackedKey& k) const noexcept;
};

class StateCodec {
 public:
  explicit StateCodec(const Network& net);

  PackedKey pack(const State& s) const;
  void pack_into(const State& s, PackedKey& key) const;
  State unpack(const PackedKey& key) const;

  std::size_t bit_width(NodeId i) const { return widths_[i]; }
  std::size_t total_bits() const { return total_bits_; }

 private:
  std::vector<std::uint8_t> widths_;
  std::size_t total_bits_ = 0;
};

// Dense mixed-radix numbering of the canonical state space, node 0 least
// significant. Only usable when prod(dt_i + 1) fits in 64 bits.
class StateIndexer {
 public:
  explicit StateIndexer(const Network& net);

  // Number of canonical states, saturated at UINT64_MAX on overflow.
  std::uint64_t count() const { return count_; }
  bool overflowed() const { return overflow_; }

  std::uint64_t index(const State& s) const;
  State state(std::uint64_t index) const;
  void state_into(std::uint64_t index, State& s) const;

 private:
  std::vector<std::uint64_t> radix_;
  std::uint64_t count_ = 1;
  bool overflow_ = false;
};

// Least rotation of a cycle under packed-key ordering; the canonical
// representative used for attractor identity.
std::size_t least_rotation(const std::vector<State>& cycle, const StateCodec& codec);

}  // namespace firemem
