#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hots {

using Vec = std::vector<double>;

// Thrown when a documented invariant of the library fails at runtime
// (distinct from invalid user input, which maps to std::invalid_argument).
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kStochasticTol = 1e-12;  // validation
inline constexpr double kClosureTol = 1e-10;     // simplex closure assertions
inline constexpr int kDenseCoefficientGuard = 64;

Vec uniform_vector(int n);

double one_norm(const Vec& v);
double one_norm_diff(const Vec& a, const Vec& b);

// x >= -tol entrywise and sum(x) within sum_tol of 1.
bool in_simplex(const Vec& x, double entry_tol = kStochasticTol,
                double sum_tol = kClosureTol);

void require_simplex(const Vec& x, const char* what);

// splitmix64 step; used to derive independent per-task seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace hots
