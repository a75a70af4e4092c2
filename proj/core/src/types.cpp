#include "hots/types.hpp"

#include <cmath>

namespace hots {

Vec uniform_vector(int n) {
  if (n <= 0) throw std::invalid_argument("uniform_vector: n must be positive");
  return Vec(n, 1.0 / n);
}

double one_norm(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double one_norm_diff(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("one_norm_diff: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

bool in_simplex(const Vec& x, double entry_tol, double sum_tol) {
  double s = 0.0;
  for (double v : x) {
    if (v < -entry_tol) return false;
    s += v;
  }
  return std::abs(s - 1.0) <= sum_tol;
}

void require_simplex(const Vec& x, const char* what) {
  if (!in_simplex(x)) {
    throw std::invalid_argument(std::string(what) + ": vector is not in the simplex");
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace hots
