#ifndef NBAUDIT_RANDOM_HPP
#define NBAUDIT_RANDOM_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace nbaudit {

/// SplitMix64 (Steele, Lea & Flood 2014). Output is fully specified by the
/// 64-bit seed, so shuffles reproduce across compilers and platforms.
class SplitMix64 {
public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

/// Fisher-Yates: for i = n-1 down to 1, swap(v[i], v[next() % (i+1)]).
/// std::shuffle is avoided because its index mapping is implementation-defined.
template <class T>
void fisher_yates(std::span<T> v, SplitMix64& rng) {
  if (v.size() < 2) return;
  for (std::size_t i = v.size() - 1; i > 0; --i) {
    auto j = static_cast<std::size_t>(rng() % (static_cast<std::uint64_t>(i) + 1));
    std::swap(v[i], v[j]);
  }
}

}  // namespace nbaudit

#endif  // NBAUDIT_RANDOM_HPP
