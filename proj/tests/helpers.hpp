#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "xlap/domain.hpp"

namespace xlap::test {

/// Fixed-seed uniform sampler for randomized property checks.
struct Sampler {
  std::mt19937_64 engine;
  explicit Sampler(std::uint64_t seed) : engine(seed) {}
  double operator()(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
};

inline ScalarField random_field(const Grid& g, Sampler& rnd, double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(g.size());
  for (double& x : v) x = rnd(lo, hi);
  return ScalarField(g, std::move(v));
}

inline std::vector<double> boundary_values(const Grid& g, const ScalarField& u) {
  std::vector<double> out;
  for (std::size_t k : g.boundary_nodes()) out.push_back(u[k]);
  return out;
}

}  // namespace xlap::test
