#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

#include "gramflow/symbols.hpp"

namespace gramflow {

// Deterministic random source. All variates are derived from the raw
// mt19937_64 stream through fixed formulas so that a seed pins the whole
// trajectory of any simulation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_raw() { return gen_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double exponential(double rate) {
    return -std::log1p(-uniform01()) / rate;
  }

  std::size_t pick_uniform(std::size_t n) {
    auto k = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

  // Index distributed proportionally to the weights; total must equal
  // their sum.
  std::size_t pick_weighted(std::span<const double> weights, double total) {
    double u = uniform01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace gramflow
