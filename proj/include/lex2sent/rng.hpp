#ifndef LEX2SENT_RNG_HPP_
#define LEX2SENT_RNG_HPP_

#include <cstdint>
#include <random>

namespace lex2sent {

// Finalizer from the splitmix64 generator; full-avalanche 64-bit mix.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives a substream seed from (seed, stream id). Used everywhere a
// component needs its own reproducible random stream: grid cells, runs,
// per-document resampling.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ stream);
}

// Seeded random stream. All draws go through the explicit mappings below so
// results do not depend on implementation-defined distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform over [0, n). Rejection sampling, so every index is equiprobable.
  std::size_t uniform_index(std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t draw;
    do {
      draw = gen_();
    } while (draw >= limit);
    return static_cast<std::size_t>(draw % n);
  }

  // Uniform over {lo, ..., hi}, inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform_index(static_cast<std::size_t>(hi - lo + 1)));
  }

  // Uniform over [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace lex2sent

#endif  // LEX2SENT_RNG_HPP_
