#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace ndncec {

// One named pseudo-random stream. All samplers consume a fixed number of
// raw engine draws (uniform: 1, bernoulli: 1, normal/lognormal: 2,
// exponential: 1) so that consumers can reason about draw positions when
// setting up paired A/B runs.
class RngStream {
public:
  RngStream() : engine_(0) {}
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() {
    ++raw_draws_;
    return engine_();
  }

  // Uniform in [0,1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  // Box-Muller; the second variate is discarded to keep the draw count fixed.
  double normal(double mean, double sigma) {
    double u1 = uniform01();
    double u2 = uniform01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * r * std::cos(6.283185307179586476925286766559 * u2);
  }

  double lognormal(double mu, double sigma) { return std::exp(normal(mu, sigma)); }

  double exponential(double rate) {
    double u = uniform01();
    return -std::log1p(-u) / rate;
  }

  std::uint64_t uniform_index(std::uint64_t n) {
    // Modulo bias is irrelevant at the set sizes used here.
    return n == 0 ? 0 : next_u64() % n;
  }

  std::uint64_t raw_draw_count() const { return raw_draws_; }

private:
  std::mt19937_64 engine_;
  std::uint64_t raw_draws_ = 0;
};

// FNV-1a, used to derive stream seeds from stream names.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Hands out independent streams derived from a master seed by purpose name
// ("link/Snd-Rt/protocol", "background", "codebook", ...). Same master seed
// and name always yield the same stream.
class RngHub {
public:
  explicit RngHub(std::uint64_t master_seed) : master_(master_seed) {}

  RngStream stream(const std::string& name) const {
    return RngStream(mix_seed(master_, fnv1a(name)));
  }

  std::uint64_t derive_seed(const std::string& name) const {
    return mix_seed(master_, fnv1a(name));
  }

  std::uint64_t master_seed() const { return master_; }

private:
  std::uint64_t master_;
};

} // namespace ndncec
