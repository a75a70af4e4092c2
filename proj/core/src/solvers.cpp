#include "hots/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hots {

namespace {

void check_iterate(Vec& x, const char* solver) {
  if (!in_simplex(x)) {
    throw InvariantViolation(std::string(solver) + ": iterate left the simplex");
  }
  // Rescale away rounding drift; sum(Pxx) = sum(x)^2, so a 1-ulp drift in the
  // mass would otherwise compound geometrically over long runs.
  double s = 0.0;
  for (double v : x) s += v;
  if (s > 0.0 && s != 1.0) {
    for (double& v : x) v /= s;
  }
}

std::optional<double> dense_tau_certificate(const DenseTensor3& p, const SolveOptions& opt) {
  if (!opt.compute_certificate || p.n() > kDenseCoefficientGuard) return std::nullopt;
  const double t = tau(p).value;
  if (t < 1.0) return t;
  return std::nullopt;
}

}  // namespace

ScheduleC ScheduleC::constant(double c) {
  ScheduleC s;
  s.kind = Kind::constant;
  s.c = c;
  return s;
}

ScheduleC ScheduleC::harmonic() {
  ScheduleC s;
  s.kind = Kind::harmonic;
  return s;
}

ScheduleC ScheduleC::custom(std::vector<double> v, bool divergent_sum) {
  ScheduleC s;
  s.kind = Kind::custom;
  s.values = std::move(v);
  s.declared_divergent = divergent_sum;
  return s;
}

double ScheduleC::at(int t) const {
  switch (kind) {
    case Kind::constant: return c;
    case Kind::harmonic: return 1.0 / (t + 1);
    case Kind::custom:
      if (values.empty()) return 0.0;
      return t < static_cast<int>(values.size()) ? values[t] : values.back();
  }
  return 0.0;
}

bool ScheduleC::divergent_sum() const {
  switch (kind) {
    case Kind::constant: return c > 0.0;
    case Kind::harmonic: return true;
    case Kind::custom: return declared_divergent;
  }
  return false;
}

void ScheduleC::validate() const {
  if (kind == Kind::constant && (c < 0.0 || c > 1.0)) {
    throw std::invalid_argument("ScheduleC: constant must lie in [0,1]");
  }
  if (kind == Kind::custom) {
    double prev = 1.0;
    for (double v : values) {
      if (v < 0.0 || v > 1.0) throw std::invalid_argument("ScheduleC: value out of [0,1]");
      if (v > prev + 1e-15) throw std::invalid_argument("ScheduleC: schedule must be non-increasing");
      prev = v;
    }
  }
}

SolveReport hopm_fn(const BilinearFn& apply, int n, Vec x0, const SolveOptions& opt,
                    std::optional<double> rate, std::string certificate) {
  require_simplex(x0, "hopm");
  SolveReport rep;
  rep.certified_rate = rate;
  rep.certificate_name = std::move(certificate);
  rep.unique_certified = rate.has_value();
  Vec x = std::move(x0);
  if (opt.record_iterates) rep.iterate_history.push_back(x);
  for (int t = 0; t < opt.maxit; ++t) {
    Vec next = apply(x, x);
    check_iterate(next, "hopm");
    const double res = one_norm_diff(next, x);
    rep.residual_history.push_back(res);
    x = std::move(next);
    if (opt.record_iterates) rep.iterate_history.push_back(x);
    ++rep.iterations;
    if (res < opt.tol) {
      rep.converged = true;
      break;
    }
  }
  rep.final = std::move(x);
  (void)n;
  return rep;
}

SolveReport hopm(const DenseTensor3& p, Vec x0, const SolveOptions& opt) {
  auto rate = dense_tau_certificate(p, opt);
  return hopm_fn([&p](const Vec& x, const Vec& y) { return apply_bilinear(p, x, y); }, p.n(),
                 std::move(x0), opt, rate, rate ? "T(P) < 1" : "");
}

SolveReport hopm(const SparseTensor3& p, Vec x0, const SolveOptions& opt) {
  return hopm_fn([&p](const Vec& x, const Vec& y) { return apply_bilinear(p, x, y); }, p.n,
                 std::move(x0), opt);
}

SolveReport hopm(const TransitionOperator& p, Vec x0, const SolveOptions& opt) {
  std::optional<double> rate;
  std::string name;
  if (opt.compute_certificate && p.n <= kDenseCoefficientGuard) {
    const double t = tau(densify(p)).value;
    if (t < 1.0) {
      rate = t;
      name = "T(P) < 1";
    }
  }
  return hopm_fn([&p](const Vec& x, const Vec& y) { return apply_bilinear(p, x, y); }, p.n,
                 std::move(x0), opt, rate, name);
}

SolveReport alternate_pm(const DenseTensor3& p, Vec x0, Vec x_minus1,
                         const SolveOptions& opt) {
  require_simplex(x0, "alternate_pm");
  require_simplex(x_minus1, "alternate_pm");
  SolveReport rep;
  if (opt.compute_certificate && p.n() <= kDenseCoefficientGuard) {
    const double s = tauL(p).value + tauR(p).value;
    if (s < 1.0) {
      rep.certified_rate = s;
      rep.certificate_name = "TL(P) + TR(P) < 1";
      rep.unique_certified = true;
    }
  }
  Vec prev = std::move(x_minus1);
  Vec x = std::move(x0);
  if (opt.record_iterates) {
    rep.iterate_history.push_back(prev);
    rep.iterate_history.push_back(x);
  }
  for (int t = 0; t < opt.maxit; ++t) {
    Vec next = apply_bilinear(p, x, prev);
    check_iterate(next, "alternate_pm");
    const double res = one_norm_diff(next, x);
    rep.residual_history.push_back(res);
    prev = std::move(x);
    x = std::move(next);
    if (opt.record_iterates) rep.iterate_history.push_back(x);
    ++rep.iterations;
    if (res < opt.tol) {
      rep.converged = true;
      break;
    }
  }
  rep.final = std::move(x);
  return rep;
}

SolveReport vrrw_iterate(const DenseTensor3& p, Vec x0, Vec y0, const ScheduleC& schedule,
                         const SolveOptions& opt) {
  require_simplex(x0, "vrrw_iterate");
  require_simplex(y0, "vrrw_iterate");
  schedule.validate();
  SolveReport rep;
  if (opt.compute_certificate && p.n() <= kDenseCoefficientGuard && schedule.divergent_sum()) {
    const double s = tauL(p).value + tauR(p).value;
    if (s < 1.0) {
      rep.certified_rate = s;
      rep.certificate_name = "TL(P) + TR(P) < 1 with divergent schedule";
      rep.unique_certified = true;
    }
  }
  Vec x = std::move(x0), y = std::move(y0);
  const int n = p.n();
  for (int t = 0; t < opt.maxit; ++t) {
    Vec xn = apply_bilinear(p, x, y);
    check_iterate(xn, "vrrw_iterate");
    const double c = schedule.at(t);
    Vec yn(n);
    for (int i = 0; i < n; ++i) yn[i] = c * x[i] + (1.0 - c) * y[i];
    const double res = one_norm_diff(xn, x) + one_norm_diff(yn, y);
    rep.residual_history.push_back(res);
    x = std::move(xn);
    y = std::move(yn);
    if (opt.record_iterates) rep.iterate_history.push_back(x);
    ++rep.iterations;
    if (res < opt.tol) {
      rep.converged = true;
      break;
    }
  }
  rep.final = std::move(x);
  rep.final_y = std::move(y);
  return rep;
}

namespace {

template <class Tensor>
McReport simulate_spacey_impl(const Tensor& p, int n, int x0_state, long long steps,
                              std::uint64_t seed) {
  if (steps < 1) throw std::invalid_argument("simulate_spacey_mc: steps must be >= 1");
  if (x0_state < 0 || x0_state >= n) {
    throw std::invalid_argument("simulate_spacey_mc: start state out of range");
  }
  McReport rep;
  rep.visits.assign(n, 0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int state = x0_state;
  Vec y(n, 1.0 / n);
  for (long long t = 1; t <= steps; ++t) {
    const Vec col = occupation_column(p, y, state);
    double u = uni(rng) ;
    int next = n - 1;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += col[i];
      if (u < acc) {
        next = i;
        break;
      }
    }
    state = next;
    rep.visits[state] += 1;
    // (y_t)_j = (1 + visits_j) / (t + n)
    for (int i = 0; i < n; ++i) y[i] = (1.0 + rep.visits[i]) / static_cast<double>(t + n);
  }
  rep.occupation = y;
  rep.final_state = state;
  return rep;
}

}  // namespace

McReport simulate_spacey_mc(const DenseTensor3& p, int x0_state, long long steps,
                            std::uint64_t seed) {
  return simulate_spacey_impl(p, p.n(), x0_state, steps, seed);
}

McReport simulate_spacey_mc(const SparseTensor3& p, int x0_state, long long steps,
                            std::uint64_t seed) {
  SparseTensor3 copy;
  const SparseTensor3* ptr = &p;
  if (p.cols_of_j.empty()) {
    copy = p;
    copy.build_j_index();
    ptr = &copy;
  }
  return simulate_spacey_impl(*ptr, p.n, x0_state, steps, seed);
}

SolveReport mlpr_fixed_point(const TransitionOperator& p, double alpha, const Vec& v,
                             const SolveOptions& opt, std::optional<double> tau_p) {
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("mlpr_fixed_point: alpha out of [0,1]");
  require_simplex(v, "mlpr_fixed_point");
  SolveReport rep;
  if (tau_p && alpha * *tau_p < 1.0) {
    rep.certified_rate = alpha * *tau_p;
    rep.certificate_name = "alpha T(P) < 1";
    rep.unique_certified = true;
  }
  const int n = p.n;
  Vec x = v;  // iteration is a contraction toward the ball around v
  for (int t = 0; t < opt.maxit; ++t) {
    Vec pxx = apply_bilinear(p, x, x);
    Vec next(n);
    for (int i = 0; i < n; ++i) next[i] = alpha * pxx[i] + (1.0 - alpha) * v[i];
    check_iterate(next, "mlpr_fixed_point");
    const double res = one_norm_diff(next, x);
    rep.residual_history.push_back(res);
    x = std::move(next);
    if (opt.record_iterates) rep.iterate_history.push_back(x);
    ++rep.iterations;
    if (res < opt.tol) {
      rep.converged = true;
      break;
    }
  }
  if (rep.converged) {
    const double dv = one_norm_diff(x, v);
    if (dv > 2.0 * alpha + kClosureTol) {
      throw InvariantViolation("mlpr_fixed_point: ||x - v||_1 exceeds 2 alpha");
    }
  }
  rep.final = std::move(x);
  return rep;
}

SolveReport mlpr_fixed_point(const DenseTensor3& p, double alpha, const Vec& v,
                             const SolveOptions& opt) {
  TransitionOperator op;
  op.n = p.n();
  // Wrap without copying the tensor; the operator only lives for this call.
  auto shared = std::shared_ptr<const DenseTensor3>(&p, [](const DenseTensor3*) {});
  op.terms.push_back({1.0, shared});
  std::optional<double> t;
  if (opt.compute_certificate && p.n() <= kDenseCoefficientGuard) t = tau(p).value;
  return mlpr_fixed_point(op, alpha, v, opt, t);
}

SolveReport shifted_pm(const DenseTensor3& p, double sigma, double e_left_weight, Vec x0,
                       const SolveOptions& opt) {
  if (sigma <= 0.0 || sigma > 1.0) throw std::invalid_argument("shifted_pm: sigma out of (0,1]");
  require_simplex(x0, "shifted_pm");
  SolveReport rep;
  if (opt.compute_certificate && p.n() <= kDenseCoefficientGuard) {
    auto shared = std::shared_ptr<const DenseTensor3>(&p, [](const DenseTensor3*) {});
    const double t = tau(densify(shift_operator(shared, sigma, e_left_weight))).value;
    if (t < 1.0) {
      rep.certified_rate = t;
      rep.certificate_name = "T(P_sigma) < 1";
      rep.unique_certified = true;
    }
  }
  Vec x = std::move(x0);
  const int n = p.n();
  for (int t = 0; t < opt.maxit; ++t) {
    Vec pxx = apply_bilinear(p, x, x);
    Vec next(n);
    for (int i = 0; i < n; ++i) next[i] = sigma * pxx[i] + (1.0 - sigma) * x[i];
    check_iterate(next, "shifted_pm");
    const double res = one_norm_diff(next, x);
    rep.residual_history.push_back(res);
    x = std::move(next);
    if (opt.record_iterates) rep.iterate_history.push_back(x);
    ++rep.iterations;
    if (res < opt.tol) {
      rep.converged = true;
      break;
    }
  }
  rep.final = std::move(x);
  return rep;
}

namespace {

double shifted_tau(const DenseTensor3& p, double e_left_weight, double sigma) {
  auto shared = std::shared_ptr<const DenseTensor3>(&p, [](const DenseTensor3*) {});
  return tau(densify(shift_operator(shared, sigma, e_left_weight))).value;
}

}  // namespace

ShiftChoice optimal_shift(const DenseTensor3& p, double e_left_weight, int grid_points,
                          double refine_tol) {
  if (grid_points < 3) throw std::invalid_argument("optimal_shift: need at least 3 grid points");
  const double at_zero = shifted_tau(p, e_left_weight, 0.0);
  if (std::abs(at_zero - 1.0) > 1e-9) {
    throw InvariantViolation("optimal_shift: T(P_0) = T(E) must equal 1");
  }
  double best_sigma = 0.0, best_val = at_zero;
  for (int g = 0; g < grid_points; ++g) {
    const double sigma = static_cast<double>(g) / (grid_points - 1);
    const double v = shifted_tau(p, e_left_weight, sigma);
    if (v < best_val) {
      best_val = v;
      best_sigma = sigma;
    }
  }
  // Golden-section refinement around the grid minimizer; valid by convexity.
  const double h = 1.0 / (grid_points - 1);
  double lo = std::max(0.0, best_sigma - h), hi = std::min(1.0, best_sigma + h);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
  double fa = shifted_tau(p, e_left_weight, a), fb = shifted_tau(p, e_left_weight, b);
  while (hi - lo > refine_tol) {
    if (fa <= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - gr * (hi - lo);
      fa = shifted_tau(p, e_left_weight, a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + gr * (hi - lo);
      fb = shifted_tau(p, e_left_weight, b);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fmid = shifted_tau(p, e_left_weight, mid);
  if (fmid < best_val) {
    best_val = fmid;
    best_sigma = mid;
  }
  return {best_sigma, best_val};
}

PerturbationReport perturbation_bound(const DenseTensor3& p, const DenseTensor3& p_prime,
                                      const Vec& x, const Vec& x_prime) {
  PerturbationReport rep;
  rep.actual = one_norm_diff(x, x_prime);
  rep.norm_diff = one_norm_diff(p, p_prime);
  rep.tau_p = tau(p).value;
  rep.delta_p = delta_closed_form(p);
  if (rep.tau_p < 1.0) rep.bound_T = rep.norm_diff / (1.0 - rep.tau_p);
  if (rep.delta_p > 0.5) rep.bound_delta = rep.norm_diff / (2.0 * rep.delta_p - 1.0);
  return rep;
}

PairChainReport pair_chain_stationary(const DenseTensor3& p, double tol, int maxit) {
  const int n = p.n();
  if (n > 100) throw std::invalid_argument("pair_chain_stationary: n > 100 (n^2 state space)");
  PairChainReport rep;
  DenseMatrix y(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) y(i, j) = 1.0 / (static_cast<double>(n) * n);
  DenseMatrix next(n);
  for (int t = 0; t < maxit; ++t) {
    double diff = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += p(i, j, k) * y(j, k);
        next(i, j) = s;
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) diff += std::abs(next(i, j) - y(i, j));
    std::swap(y, next);
    ++rep.iterations;
    if (diff < tol) {
      rep.converged = true;
      break;
    }
  }
  double resid = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += p(i, j, k) * y(j, k);
      resid += std::abs(s - y(i, j));
    }
  rep.fixed_point_residual = resid;
  rep.rowsum.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rep.rowsum[i] += y(i, j);
  rep.Y = std::move(y);
  return rep;
}

bool CertificateSummary::any_certifies() const {
  for (const auto& e : entries) {
    if (e.certifies) return true;
  }
  return false;
}

CertificateSummary convergence_certificate(const DenseTensor3& p) {
  if (p.n() > kDenseCoefficientGuard) {
    throw std::invalid_argument("convergence_certificate: n exceeds the dense coefficient guard");
  }
  CertificateSummary s;
  const double t = tau(p).value;
  s.entries.push_back({"T", t, t < 1.0, "unique Z-eigenvector; power method converges at rate T"});
  const double sum = tauL(p).value + tauR(p).value;
  s.entries.push_back({"TL+TR", sum, sum < 1.0,
                       "alternate power method and VRRW converge; rate s^ceil(t/2)"});
  const double th = tauH(p);
  s.entries.push_back({"TH", th, th < 1.0, "Hilbert-metric contraction; power method converges"});
  const double d = 2.0 - 2.0 * delta_closed_form(p);
  s.entries.push_back({"2-2delta", d, d < 1.0, "uniqueness via delta > 1/2"});
  const auto shift = optimal_shift(p, 0.5, 101, 1e-4);
  auto& e = s.entries.emplace_back();
  e.name = "min_sigma T(P_sigma)";
  e.value = shift.value;
  e.certifies = shift.value < 1.0;
  e.statement = "shifted power method at sigma* = " + std::to_string(shift.sigma_star) +
                " converges";
  return s;
}

}  // namespace hots
