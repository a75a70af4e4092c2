#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "hots/coefficients.hpp"
#include "hots/tensor.hpp"

namespace hots::testing {

inline Vec random_simplex(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exp1(1.0);
  Vec x(n);
  double s = 0.0;
  for (double& v : x) {
    v = exp1(rng);
    s += v;
  }
  for (double& v : x) v /= s;
  return x;
}

// w * random + (1-w) * rank-one; small w keeps T and TL+TR well below 1
// because both vanish on rank-one tensors and are convex in the tensor.
inline DenseTensor3 contractive_mixture(int n, double w, std::uint64_t seed) {
  auto r = random_stochastic(n, seed);
  auto v = rank_one_tensor(random_simplex(n, mix_seed(seed, 7)));
  DenseTensor3 t(n);
  for (std::size_t p = 0; p < t.data().size(); ++p) {
    t.data()[p] = w * r.data()[p] + (1.0 - w) * v.data()[p];
  }
  return t;
}

// All entries >= (1-w)/n > 1/(2n) when w < 1/2.
inline DenseTensor3 positive_mixture(int n, double w, std::uint64_t seed) {
  auto r = random_stochastic(n, seed);
  DenseTensor3 t(n);
  const double floor = (1.0 - w) / n;
  for (std::size_t p = 0; p < t.data().size(); ++p) t.data()[p] = w * r.data()[p] + floor;
  return t;
}

// Independent six-index scan of the extremal cross ratio; the reference for
// the factored O(n^4) implementation.
inline double cross_ratio_six_index(const DenseTensor3& p) {
  const int n = p.n();
  double best = 1.0;
  bool unbounded = false;
  for (int i1 = 0; i1 < n; ++i1)
    for (int j1 = 0; j1 < n; ++j1)
      for (int k1 = 0; k1 < n; ++k1)
        for (int i2 = 0; i2 < n; ++i2)
          for (int j2 = 0; j2 < n; ++j2)
            for (int k2 = 0; k2 < n; ++k2) {
              const double num = p(i1, j1, k1) * p(i2, j2, k2);
              const double den = p(i1, j2, k1) * p(i2, j1, k2);
              if (den == 0.0) {
                if (num > 0.0) unbounded = true;
                continue;  // 0/0 counts as 1
              }
              best = std::max(best, num / den);
            }
  return unbounded ? std::numeric_limits<double>::infinity() : best;
}

}  // namespace hots::testing
