#ifndef MINORANT_RNG_HPP
#define MINORANT_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace minorant {

// Counter-based random stream (Philox4x32-10). A stream is addressed by
// (seed, stream_id); draws depend only on that address and the position
// within the stream, so replication i of a run can always be regenerated
// from (seed, i) no matter how work was scheduled across workers.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream_id) {}

  std::uint64_t seed() const {
    return static_cast<std::uint64_t>(key_[0]) |
           (static_cast<std::uint64_t>(key_[1]) << 32);
  }
  std::uint64_t stream_id() const { return stream_; }

  // Child stream with an unused stream id derived from this one. Distinct
  // (parent, child_index) pairs map to distinct ids.
  RngStream split(std::uint64_t child_index) const;

  std::uint64_t next_u64() {
    if (buf_pos_ >= 2) refill();
    return buf64_[buf_pos_++];
  }

  // Uniform on the open interval (0,1): midpoints of a 2^53 grid, so the
  // result is never 0 or 1 and logs/tangents are always finite.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double exponential() { return -std::log(uniform01()); }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform01()));
    const double t = 6.283185307179586476925286766559 * uniform01();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> buf64_{};
  int buf_pos_ = 2;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Philox4x32-10 block function, exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// 64-bit mix (splitmix64 finalizer); used to derive seeds for named
// sub-domains of an experiment so that stages never share streams.
std::uint64_t mix64(std::uint64_t x);

// Seed for a labelled sub-domain of a run, e.g. derive_seed(seed, "walks").
std::uint64_t derive_seed(std::uint64_t seed, const char* label);

}  // namespace minorant

#endif  // MINORANT_RNG_HPP
