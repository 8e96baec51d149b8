#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "types.hpp"

namespace relucert {

// Deterministic RNG. mt19937_64 has a standard-defined sequence; the float
// mapping is done by hand because std::uniform_real_distribution is
// implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed), seed_(seed) {}

  uint64_t next_u64() { return eng_(); }
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<uint64_t>(n)); }
  Vec uniform_vec(const Vec& lo, const Vec& hi) {
    Vec x(lo.size());
    for (Eigen::Index i = 0; i < lo.size(); ++i) x[i] = uniform(lo[i], hi[i]);
    return x;
  }

  // Independent substream, deterministic in (seed, index).
  Rng derive(uint64_t index) const {
    return Rng(splitmix(seed_ ^ splitmix(0x9e3779b97f4a7c15ULL + index)));
  }
  uint64_t seed() const { return seed_; }

  static uint64_t splitmix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 eng_;
  uint64_t seed_;
};

std::string sha256_hex(const std::string& data);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

}  // namespace relucert
