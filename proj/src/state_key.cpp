#include "firemem/state_key.hpp"

#include <bit>
#include <limits>

namespace firemem {

std::size_t PackedKeyHash::operator()(const PackedKey& k) const noexcept {
  // FNV-1a over words, then a final avalanche.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint64_t w : k.words) {
    h ^= w;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  h ^= h >> 32;
  return static_cast<std::size_t>(h);
}

StateCodec::StateCodec(const Network& net) : widths_(net.size()) {
  for (NodeId i = 0; i < net.size(); ++i) {
    widths_[i] = static_cast<std::uint8_t>(std::bit_width(static_cast<unsigned>(net.max_delay(i))));
    total_bits_ += widths_[i];
  }
}

void StateCodec::pack_into(const State& s, PackedKey& key) const {
  key.words.assign((total_bits_ + 63) / 64, 0);
  std::size_t bit = 0;
  for (std::size_t i = 0; i < widths_.size(); ++i) {
    const std::uint64_t v = s[i];
    const std::size_t word = bit / 64;
    const std::size_t off = bit % 64;
    key.words[word] |= v << off;
    if (off + widths_[i] > 64) key.words[word + 1] |= v >> (64 - off);
    bit += widths_[i];
  }
}

PackedKey StateCodec::pack(const State& s) const {
  PackedKey key;
  pack_into(s, key);
  return key;
}

State StateCodec::unpack(const PackedKey& key) const {
  std::vector<Delay> delta(widths_.size());
  std::size_t bit = 0;
  for (std::size_t i = 0; i < widths_.size(); ++i) {
    const std::size_t word = bit / 64;
    const std::size_t off = bit % 64;
    std::uint64_t v = key.words[word] >> off;
    if (off + widths_[i] > 64) v |= key.words[word + 1] << (64 - off);
    const std::uint64_t mask = (std::uint64_t{1} << widths_[i]) - 1;
    delta[i] = static_cast<Delay>(v & mask);
    bit += widths_[i];
  }
  return State(std::move(delta));
}

StateIndexer::StateIndexer(const Network& net) : radix_(net.size()) {
  for (NodeId i = 0; i < net.size(); ++i) {
    radix_[i] = static_cast<std::uint64_t>(net.max_delay(i)) + 1;
    if (!overflow_ && count_ > std::numeric_limits<std::uint64_t>::max() / radix_[i]) {
      overflow_ = true;
    }
    count_ = overflow_ ? std::numeric_limits<std::uint64_t>::max() : count_ * radix_[i];
  }
}

std::uint64_t StateIndexer::index(const State& s) const {
  std::uint64_t idx = 0;
  for (std::size_t i = radix_.size(); i-- > 0;) idx = idx * radix_[i] + s[i];
  return idx;
}

void StateIndexer::state_into(std::uint64_t index, State& s) const {
  for (std::size_t i = 0; i < radix_.size(); ++i) {
    s[i] = static_cast<Delay>(index % radix_[i]);
    index /= radix_[i];
  }
}

State StateIndexer::state(std::uint64_t index) const {
  State s(std::vector<Delay>(radix_.size()));
  state_into(index, s);
  return s;
}

std::size_t least_rotation(const std::vector<State>& cycle, const StateCodec& codec) {
  std::size_t best = 0;
  PackedKey best_key = codec.pack(cycle.front());
  PackedKey key;
  for (std::size_t i = 1; i < cycle.size(); ++i) {
    codec.pack_into(cycle[i], key);
    if (key < best_key) {
      best_key = key;
      best = i;
    }
  }
  return best;
}

}  // namespace firemem
