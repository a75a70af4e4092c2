#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hots/builtins.hpp"
#include "hots/solvers.hpp"
#include "helpers.hpp"

using namespace hots;
using namespace hots::testing;

namespace {

DenseTensor3 contractive(int n, std::uint64_t seed) {
  for (std::uint64_t trial = 0;; ++trial) {
    auto p = contractive_mixture(n, 0.3, mix_seed(seed, trial));
    if (tau(p).value < 0.9) return p;
  }
}

}  // namespace

TEST_CASE("hopm converges and certifies on a contractive tensor") {
  auto p = contractive(5, 1);
  auto rep = hopm(p, uniform_vector(5), {});
  CHECK(rep.converged);
  REQUIRE(rep.certified_rate.has_value());
  CHECK(*rep.certified_rate == doctest::Approx(tau(p).value));
  CHECK(rep.unique_certified);
  // fixed point property
  auto pxx = apply_bilinear(p, rep.final, rep.final);
  CHECK(one_norm_diff(pxx, rep.final) < 1e-7);
}

TEST_CASE("hopm multi-start limits coincide when T < 1") {
  auto p = contractive(4, 2);
  SolveOptions opt;
  opt.tol = 1e-12;
  auto a = hopm(p, random_simplex(4, 10), opt);
  auto b = hopm(p, random_simplex(4, 11), opt);
  CHECK(a.converged);
  CHECK(b.converged);
  CHECK(one_norm_diff(a.final, b.final) < 1e-9);
}

TEST_CASE("hopm residuals contract at rate T") {
  auto p = contractive(4, 3);
  const double t = tau(p).value;
  SolveOptions opt;
  opt.tol = 1e-11;
  auto rep = hopm(p, random_simplex(4, 12), opt);
  for (std::size_t i = 1; i + 1 < rep.residual_history.size(); ++i) {
    if (rep.residual_history[i - 1] > 1e-13) {
      CHECK(rep.residual_history[i] <= t * rep.residual_history[i - 1] + 1e-13);
    }
  }
}

TEST_CASE("alternate power method respects the square-root-rate envelope") {
  auto p = contractive(4, 4);
  const double s = tauL(p).value + tauR(p).value;
  REQUIRE(s < 1.0);
  SolveOptions ref_opt;
  ref_opt.tol = 1e-14;
  auto star = hopm(p, uniform_vector(4), ref_opt).final;
  Vec x0 = random_simplex(4, 13), xm1 = random_simplex(4, 14);
  SolveOptions opt;
  opt.tol = 1e-13;
  opt.record_iterates = true;
  auto rep = alternate_pm(p, x0, xm1, opt);
  CHECK(rep.converged);
  REQUIRE(rep.certified_rate.has_value());
  CHECK(*rep.certified_rate == doctest::Approx(s));
  const double m = std::max(one_norm_diff(x0, star), one_norm_diff(xm1, star));
  // iterate_history = [x_{-1}, x_0, x_1, ...]; error of x_{t+1} bounded by
  // s^ceil((t+1)/2) * m.
  for (std::size_t h = 2; h < rep.iterate_history.size(); ++h) {
    const int tp1 = static_cast<int>(h) - 1;
    const double bound = std::pow(s, (tp1 + 1) / 2) * m;
    CHECK(one_norm_diff(rep.iterate_history[h], star) <= bound + 1e-9);
  }
}

TEST_CASE("vrrw with constant schedule 1 reproduces the alternate method") {
  auto p = contractive(3, 5);
  Vec x0 = random_simplex(3, 15);
  SolveOptions opt;
  opt.record_iterates = true;
  opt.maxit = 40;
  opt.tol = 0.0;
  auto v = vrrw_iterate(p, x0, x0, ScheduleC::constant(1.0), opt);
  auto a = alternate_pm(p, x0, x0, opt);
  // with c_t = 1, y_t = x_{t-1}, so both produce the same x trajectory.
  const std::size_t steps = std::min(v.iterate_history.size(), a.iterate_history.size() - 1);
  for (std::size_t t = 0; t < steps; ++t) {
    CHECK(one_norm_diff(v.iterate_history[t], a.iterate_history[t + 2]) < 1e-12);
  }
}

TEST_CASE("vrrw with harmonic schedule reaches the hopm limit") {
  auto p = contractive(4, 6);
  REQUIRE(tauL(p).value + tauR(p).value < 1.0);
  SolveOptions opt;
  opt.tol = 1e-12;
  auto star = hopm(p, uniform_vector(4), opt).final;
  SolveOptions vopt;
  vopt.tol = 1e-11;  // harmonic schedule: error ~ 1/t, residual ~ 1/t^2
  vopt.maxit = 2000000;
  auto rep = vrrw_iterate(p, random_simplex(4, 16), random_simplex(4, 17),
                          ScheduleC::harmonic(), vopt);
  CHECK(rep.converged);
  CHECK(one_norm_diff(rep.final, star) < 1e-6);
  CHECK(rep.unique_certified);
}

TEST_CASE("vrrw certificate requires a divergent schedule") {
  auto p = contractive(3, 7);
  REQUIRE(tauL(p).value + tauR(p).value < 1.0);
  SolveOptions opt;
  opt.maxit = 50;
  auto rep = vrrw_iterate(p, uniform_vector(3), uniform_vector(3),
                          ScheduleC::custom({0.5, 0.25, 0.125}, false), opt);
  CHECK_FALSE(rep.unique_certified);
}

TEST_CASE("schedule validation rejects out-of-range and increasing lists") {
  CHECK_THROWS_AS(ScheduleC::constant(1.5).validate(), std::invalid_argument);
  CHECK_THROWS_AS(ScheduleC::custom({0.1, 0.5}, true).validate(), std::invalid_argument);
  CHECK_NOTHROW(ScheduleC::harmonic().validate());
}

TEST_CASE("mlpr fixed point stays within 2 alpha of the teleport vector") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto p = random_stochastic(4, 60 + s);
    const Vec v = random_simplex(4, 70 + s);
    const double alpha = 0.4;
    auto rep = mlpr_fixed_point(p, alpha, v, {});
    CHECK(rep.converged);
    CHECK(one_norm_diff(rep.final, v) <= 2.0 * alpha + 1e-10);
    Vec pxx = apply_bilinear(p, rep.final, rep.final);
    for (int i = 0; i < 4; ++i) {
      CHECK(rep.final[i] ==
            doctest::Approx(alpha * pxx[i] + (1 - alpha) * v[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("mlpr certificate uses alpha T(P)") {
  auto p = builtin_P2();
  const double t = tau(p).value;
  auto rep = mlpr_fixed_point(p, 0.5, uniform_vector(3), {});
  REQUIRE(rep.certified_rate.has_value());
  CHECK(*rep.certified_rate == doctest::Approx(0.5 * t));
  auto rep2 = mlpr_fixed_point(p, 0.9, uniform_vector(3), {});
  CHECK_FALSE(rep2.certified_rate.has_value());  // 0.9 * 1.5 >= 1
}

TEST_CASE("shifted power method finds a fixed point of the original tensor") {
  for (const auto* name : {"P1", "P2"}) {
    auto p = builtin_tensor(name);
    auto choice = optimal_shift(p);
    CHECK(choice.value < 1.0);
    SolveOptions opt;
    opt.tol = 1e-12;
    auto rep = shifted_pm(p, choice.sigma_star, 0.5, uniform_vector(3), opt);
    CHECK(rep.converged);
    auto pxx = apply_bilinear(p, rep.final, rep.final);
    CHECK(one_norm_diff(pxx, rep.final) < 1e-7);
  }
}

TEST_CASE("optimal shift values for the builtin tensors") {
  auto c1 = optimal_shift(builtin_P1());
  CHECK(c1.value == doctest::Approx(8.0 / 9.0).epsilon(1e-4));
  auto c2 = optimal_shift(builtin_P2());
  CHECK(c2.value == doctest::Approx(0.578948).epsilon(1e-4));
  CHECK(c2.sigma_star == doctest::Approx(0.6316).epsilon(1e-2));
}

TEST_CASE("perturbation report bounds the fixed point movement") {
  auto p = contractive(4, 8);
  auto r = random_stochastic(4, 80);
  DenseTensor3 pp(4);
  const double eps = 0.01;
  for (std::size_t i = 0; i < pp.data().size(); ++i) {
    pp.data()[i] = (1 - eps) * p.data()[i] + eps * r.data()[i];
  }
  SolveOptions opt;
  opt.tol = 1e-13;
  auto x = hopm(p, uniform_vector(4), opt).final;
  auto xp = hopm(pp, uniform_vector(4), opt).final;
  auto rep = perturbation_bound(p, pp, x, xp);
  REQUIRE(rep.bound_T.has_value());
  CHECK(rep.actual <= *rep.bound_T + 1e-9);
  CHECK(rep.actual == doctest::Approx(one_norm_diff(x, xp)));
  auto same = perturbation_bound(p, p, x, x);
  CHECK(same.actual == doctest::Approx(0.0));
  CHECK(same.norm_diff == doctest::Approx(0.0));
}

TEST_CASE("spacey Monte Carlo occupation approaches the Z-eigenvector") {
  auto p = contractive(3, 9);
  REQUIRE(tauL(p).value + tauR(p).value < 1.0);
  SolveOptions opt;
  opt.tol = 1e-12;
  auto star = hopm(p, uniform_vector(3), opt).final;
  auto mc = simulate_spacey_mc(p, 0, 400000, 123);
  CHECK(one_norm_diff(mc.occupation, star) < 0.05);
  long long total = 0;
  for (auto v : mc.visits) total += v;
  CHECK(total == 400000);
  auto mc2 = simulate_spacey_mc(p, 0, 1000, 123);
  auto mc3 = simulate_spacey_mc(p, 0, 1000, 123);
  CHECK(mc2.occupation == mc3.occupation);  // seed determinism
}

TEST_CASE("pair chain stationary matrix satisfies its fixed point equation") {
  auto p = random_stochastic(3, 90);
  auto rep = pair_chain_stationary(p);
  CHECK(rep.converged);
  CHECK(rep.fixed_point_residual < 1e-10);
  const int n = 3;
  double rowsum = 0.0, mass = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mass += rep.Y(i, j);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  // Y 1 = Y^T 1: marginals of the stationary pair distribution agree.
  for (int i = 0; i < n; ++i) {
    double r = 0.0, c = 0.0;
    for (int j = 0; j < n; ++j) {
      r += rep.Y(i, j);
      c += rep.Y(j, i);
    }
    CHECK(r == doctest::Approx(c).epsilon(1e-9));
    rowsum += r;
  }
  CHECK(rowsum == doctest::Approx(1.0));
}

TEST_CASE("convergence certificate summary lists every route") {
  auto p = contractive(3, 11);
  auto sum = convergence_certificate(p);
  CHECK(sum.entries.size() >= 4);
  CHECK(sum.any_certifies());
  bool found_tau = false;
  for (const auto& e : sum.entries) {
    if (e.name == "T" && e.certifies) found_tau = true;
  }
  CHECK(found_tau);
}

TEST_CASE("solvers reject starts outside the simplex") {
  auto p = builtin_P1();
  Vec bad{0.5, 0.7, 0.3};
  CHECK_THROWS_AS(hopm(p, bad, {}), std::invalid_argument);
}
