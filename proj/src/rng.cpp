#include "minorant/rng.hpp"

namespace minorant {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& x,
                         std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * x[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * x[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
  k[0] += kPhiloxW0;
  k[1] += kPhiloxW1;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) philox_round(ctr, key);
  return ctr;
}

void RngStream::refill() {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(counter_),
      static_cast<std::uint32_t>(counter_ >> 32),
      static_cast<std::uint32_t>(stream_),
      static_cast<std::uint32_t>(stream_ >> 32)};
  const std::array<std::uint32_t, 4> out = philox4x32(ctr, key_);
  buf64_[0] = static_cast<std::uint64_t>(out[0]) |
              (static_cast<std::uint64_t>(out[1]) << 32);
  buf64_[1] = static_cast<std::uint64_t>(out[2]) |
              (static_cast<std::uint64_t>(out[3]) << 32);
  ++counter_;
  buf_pos_ = 0;
}

RngStream RngStream::split(std::uint64_t child_index) const {
  // Children live in a stream-id space keyed off the parent id; mix64 is a
  // bijection, so distinct (parent, child) pairs cannot collide for a fixed
  // parent.
  return RngStream(seed(), mix64(stream_ ^ mix64(0x9E3779B97F4A7C15ull +
                                                 child_index)));
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, const char* label) {
  std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a
  for (const char* p = label; *p; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 0x100000001B3ull;
  }
  return mix64(seed ^ h);
}

}  // namespace minorant
