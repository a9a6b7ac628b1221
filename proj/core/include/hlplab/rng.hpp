#ifndef HLPLAB_RNG_HPP
#define HLPLAB_RNG_HPP

#include <cstdint>

namespace hlplab {

namespace detail {

// SplitMix64 finalizer: a well-mixed 64-bit permutation.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

}  // namespace detail

// Counter-based generator: draw i of stream s under seed k is a pure hash of
// (k, s, i). Streams are independent, and the sequence is identical no matter
// how draws are scheduled across threads — which is what makes seeded Monte
// Carlo estimates bit-reproducible.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : base_(detail::mix64(
            seed ^ detail::mix64(stream * 0x9E3779B97F4A7C15ull +
                                 0x632BE59BD9B4E019ull))) {}

  std::uint64_t next_u64() {
    return detail::mix64(base_ + 0x9E3779B97F4A7C15ull * ++counter_);
  }

  // Uniform in the open interval (0, 1): safe under log/pow transforms.
  double next_u01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Random access: position the next draw at counter value `i`.
  void seek(std::uint64_t i) { counter_ = i; }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace hlplab

#endif  // HLPLAB_RNG_HPP
