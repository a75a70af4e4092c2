#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hots/coefficients.hpp"
#include "hots/tensor.hpp"

namespace hots {

struct SolveOptions {
  double tol = 1e-8;
  int maxit = 100000;
  bool record_iterates = false;
  bool compute_certificate = true;  // skipped automatically above the dense guard
};

struct SolveReport {
  Vec final;
  Vec final_y;  // VRRW only
  int iterations = 0;
  std::vector<double> residual_history;  // ||x_{t+1} - x_t||_1 per step
  bool converged = false;
  std::optional<double> certified_rate;  // absent when not computed or >= 1
  std::string certificate_name;
  bool unique_certified = false;
  std::vector<Vec> iterate_history;  // filled when record_iterates
};

struct ScheduleC {
  enum class Kind { constant, harmonic, custom };
  Kind kind = Kind::harmonic;
  double c = 1.0;                     // constant value, kind == constant
  std::vector<double> values;         // kind == custom; last value repeats
  bool declared_divergent = false;    // user asserts sum c_t = inf for custom lists

  static ScheduleC constant(double c);
  static ScheduleC harmonic();                    // c_t = 1/(t+1)
  static ScheduleC custom(std::vector<double> v, bool divergent_sum);

  double at(int t) const;
  bool divergent_sum() const;
  void validate() const;  // entries in [0,1], non-increasing
};

using BilinearFn = std::function<Vec(const Vec&, const Vec&)>;

// Higher-order power method x_{t+1} = P x_t x_t. The dense overload attaches
// the contraction certificate T(P) when n is within the coefficient guard.
SolveReport hopm(const DenseTensor3& p, Vec x0, const SolveOptions& opt = {});
SolveReport hopm(const SparseTensor3& p, Vec x0, const SolveOptions& opt = {});
SolveReport hopm(const TransitionOperator& p, Vec x0, const SolveOptions& opt = {});
SolveReport hopm_fn(const BilinearFn& apply, int n, Vec x0, const SolveOptions& opt,
                    std::optional<double> rate = {}, std::string certificate = {});

// Alternate power method x_{t+1} = P x_t x_{t-1}; certificate s = TL + TR.
SolveReport alternate_pm(const DenseTensor3& p, Vec x0, Vec x_minus1,
                         const SolveOptions& opt = {});

// Coupled process x_{t+1} = P x_t y_t, y_{t+1} = c_t x_t + (1-c_t) y_t.
SolveReport vrrw_iterate(const DenseTensor3& p, Vec x0, Vec y0, const ScheduleC& schedule,
                         const SolveOptions& opt = {});

struct McReport {
  Vec occupation;                   // (1 + visits_j) / (steps + n)
  std::vector<long long> visits;
  int final_state = 0;
};
McReport simulate_spacey_mc(const DenseTensor3& p, int x0_state, long long steps,
                            std::uint64_t seed);
McReport simulate_spacey_mc(const SparseTensor3& p, int x0_state, long long steps,
                            std::uint64_t seed);

// Multilinear PageRank x = alpha Pxx + (1-alpha) v; certificate alpha T(P).
SolveReport mlpr_fixed_point(const DenseTensor3& p, double alpha, const Vec& v,
                             const SolveOptions& opt = {});
SolveReport mlpr_fixed_point(const TransitionOperator& p, double alpha, const Vec& v,
                             const SolveOptions& opt = {},
                             std::optional<double> tau_p = {});

// Lazy walk x_{t+1} = sigma Pxx + (1-sigma) x_t; certificate T(P_sigma).
SolveReport shifted_pm(const DenseTensor3& p, double sigma, double e_left_weight, Vec x0,
                       const SolveOptions& opt = {});

struct ShiftChoice {
  double sigma_star = 0.0;
  double value = 0.0;  // T(P_{sigma*})
};
// Grid scan plus golden-section refinement of the convex map sigma -> T(P_sigma).
ShiftChoice optimal_shift(const DenseTensor3& p, double e_left_weight = 0.5,
                          int grid_points = 33, double refine_tol = 1e-6);

struct PerturbationReport {
  double actual = 0.0;                 // ||x - x'||_1
  double norm_diff = 0.0;              // ||P - P'||_1
  double tau_p = 0.0;
  double delta_p = 0.0;
  std::optional<double> bound_T;       // requires T(P) < 1
  std::optional<double> bound_delta;   // requires delta(P) > 1/2
};
PerturbationReport perturbation_bound(const DenseTensor3& p, const DenseTensor3& p_prime,
                                      const Vec& x, const Vec& x_prime);

struct PairChainReport {
  DenseMatrix Y;
  Vec rowsum;             // Y * 1
  int iterations = 0;
  bool converged = false;
  double fixed_point_residual = 0.0;  // entrywise l1 residual of the stationarity equation
};
// Exact joint pair-chain: power iteration of Y_{ij} = sum_k P_{ijk} Y_{jk}.
PairChainReport pair_chain_stationary(const DenseTensor3& p, double tol = 1e-12,
                                      int maxit = 1000000);

struct CertificateEntry {
  std::string name;
  double value = 0.0;
  bool certifies = false;  // value < 1
  std::string statement;
};
struct CertificateSummary {
  std::vector<CertificateEntry> entries;
  bool any_certifies() const;
};
CertificateSummary convergence_certificate(const DenseTensor3& p);

}  // namespace hots
