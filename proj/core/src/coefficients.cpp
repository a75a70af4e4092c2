#include "hots/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hots {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kSubsetCap = 20;  // 2^n enumeration cap

void require_subset_size(const DenseTensor3& p, const char* what) {
  if (p.n() > kSubsetCap) {
    throw std::invalid_argument(std::string(what) + ": refused, n > " +
                                std::to_string(kSubsetCap) + " would enumerate 2^n subsets");
  }
}

}  // namespace

const char* coefficient_name(Coefficient c) {
  switch (c) {
    case Coefficient::tau1: return "tau1";
    case Coefficient::TL: return "TL";
    case Coefficient::TR: return "TR";
    case Coefficient::T: return "T";
    case Coefficient::TH: return "TH";
    case Coefficient::kappa: return "kappa";
    case Coefficient::delta: return "delta";
    case Coefficient::gamma: return "gamma";
    case Coefficient::theta: return "theta";
  }
  return "?";
}

double tau1_matrix(const DenseMatrix& m) {
  const int n = m.n();
  double best = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += std::abs(m(i, j) - m(i, k));
      best = std::max(best, s);
    }
  return 0.5 * best;
}

double tau1_matrix_min_form(const DenseMatrix& m) {
  const int n = m.n();
  double worst = kInf;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += std::min(m(i, j), m(i, k));
      worst = std::min(worst, s);
    }
  return 1.0 - worst;
}

CoefficientReport tauL(const DenseTensor3& p) {
  const int n = p.n();
  CoefficientReport rep{Coefficient::TL, 0.0, {0, 0, 0}, "O(n^4) scan"};
  for (int j = 0; j < n; ++j)
    for (int k1 = 0; k1 < n; ++k1)
      for (int k2 = k1 + 1; k2 < n; ++k2) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::abs(p(i, j, k1) - p(i, j, k2));
        if (0.5 * s > rep.value) {
          rep.value = 0.5 * s;
          rep.witness = {j, k1, k2};
        }
      }
  return rep;
}

CoefficientReport tauR(const DenseTensor3& p) {
  const int n = p.n();
  CoefficientReport rep{Coefficient::TR, 0.0, {0, 0, 0}, "O(n^4) scan"};
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = j1 + 1; j2 < n; ++j2)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::abs(p(i, j1, k) - p(i, j2, k));
        if (0.5 * s > rep.value) {
          rep.value = 0.5 * s;
          rep.witness = {j1, j2, k};
        }
      }
  return rep;
}

CoefficientReport tau(const DenseTensor3& p) {
  const int n = p.n();
  CoefficientReport rep{Coefficient::T, 0.0, {0, 0, 0}, "O(n^4) scan"};
  for (int j = 0; j < n; ++j)
    for (int k1 = 0; k1 < n; ++k1)
      for (int k2 = k1 + 1; k2 < n; ++k2) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
          s += std::abs(p(i, j, k1) - p(i, j, k2) + p(i, k1, j) - p(i, k2, j));
        }
        if (0.5 * s > rep.value) {
          rep.value = 0.5 * s;
          rep.witness = {j, k1, k2};
        }
      }
  return rep;
}

double tauL_min_form(const DenseTensor3& p) {
  const int n = p.n();
  double worst = kInf;
  for (int j = 0; j < n; ++j)
    for (int k1 = 0; k1 < n; ++k1)
      for (int k2 = 0; k2 < n; ++k2) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::min(p(i, j, k1), p(i, j, k2));
        worst = std::min(worst, s);
      }
  return 1.0 - worst;
}

double tauR_min_form(const DenseTensor3& p) { return tauL_min_form(s_transpose(p)); }

double tau_min_form(const DenseTensor3& p) {
  const int n = p.n();
  double worst = kInf;
  for (int j = 0; j < n; ++j)
    for (int k1 = 0; k1 < n; ++k1)
      for (int k2 = 0; k2 < n; ++k2) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
          s += std::min(p(i, j, k1) + p(i, k1, j), p(i, j, k2) + p(i, k2, j));
        }
        worst = std::min(worst, s);
      }
  return 2.0 - worst;
}

LipschitzReport tau_lipschitz_check(const DenseTensor3& p, const DenseTensor3& q) {
  if (p.n() != q.n()) throw std::invalid_argument("tau_lipschitz_check: dimension mismatch");
  const int n = p.n();
  DenseTensor3 d(n);
  for (std::size_t t = 0; t < d.data().size(); ++t) d.data()[t] = p.data()[t] - q.data()[t];
  const double nd = one_norm(d);
  const double slack = 1e-12;
  LipschitzReport rep;
  rep.TL = {std::abs(tauL(p).value - tauL(q).value), tauL(d).value, nd, false};
  rep.TL.holds = rep.TL.coefficient_gap <= rep.TL.tau_of_difference + slack &&
                 rep.TL.tau_of_difference <= rep.TL.norm_bound + slack;
  rep.TR = {std::abs(tauR(p).value - tauR(q).value), tauR(d).value, nd, false};
  rep.TR.holds = rep.TR.coefficient_gap <= rep.TR.tau_of_difference + slack &&
                 rep.TR.tau_of_difference <= rep.TR.norm_bound + slack;
  rep.T = {std::abs(tau(p).value - tau(q).value), tau(d).value, 2.0 * nd, false};
  rep.T.holds = rep.T.coefficient_gap <= rep.T.tau_of_difference + slack &&
                rep.T.tau_of_difference <= rep.T.norm_bound + slack;
  return rep;
}

namespace {

// max_{i,k} P_{iak} / P_{ibk} with the ratio conventions 0/0 -> 1, pos/0 -> inf.
double extreme_column_ratio(const DenseTensor3& p, int a, int b) {
  const int n = p.n();
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double num = p(i, a, k), den = p(i, b, k);
      double r;
      if (den == 0.0) {
        r = (num == 0.0) ? 1.0 : kInf;
      } else {
        r = num / den;
      }
      best = std::max(best, r);
      if (best == kInf) return kInf;
    }
  return best;
}

// Delta(P) = max over all six indices of P_{i1 j1 k1} P_{i2 j2 k2} /
// (P_{i1 j2 k1} P_{i2 j1 k2}); the max factors over the swapped j pair.
double cross_ratio_impl(const DenseTensor3& p) {
  const int n = p.n();
  double best = 1.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const double r1 = extreme_column_ratio(p, a, b);
      const double r2 = extreme_column_ratio(p, b, a);
      if (r1 == kInf || r2 == kInf) return kInf;
      best = std::max(best, r1 * r2);
    }
  return best;
}

}  // namespace

double birkhoff_cross_ratio(const DenseTensor3& p) {
  for (double v : p.data()) {
    if (v < 0.0) throw std::invalid_argument("birkhoff_cross_ratio: negative entry");
  }
  return cross_ratio_impl(p);
}

double kappa(const DenseTensor3& p) {
  const double d = birkhoff_cross_ratio(p);
  if (d == kInf) return 1.0;
  return std::tanh(0.25 * std::log(d));
}

double tauH(const DenseTensor3& p) {
  const int n = p.n();
  DenseTensor3 q(n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) q(i, j, k) = p(i, j, k) + p(i, k, j);
  return 2.0 * kappa(q);
}

double hilbert_distance(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("hilbert_distance: size mismatch");
  if (x.empty()) throw std::domain_error("hilbert_distance: empty vectors");
  double up = 0.0, down = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0 || y[i] <= 0.0) {
      throw std::domain_error("hilbert_distance: entries must be strictly positive");
    }
    up = std::max(up, x[i] / y[i]);
    down = std::max(down, y[i] / x[i]);
  }
  return std::log(up * down);
}

double delta_closed_form(const DenseTensor3& p) {
  if (!validate_stochastic(p).ok) {
    throw std::invalid_argument("delta_closed_form: tensor is not stochastic");
  }
  const int n = p.n();
  double best = 0.0;
  // max over column pairs of the l1 distance between (j,k) columns
  for (int j1 = 0; j1 < n; ++j1)
    for (int k1 = 0; k1 < n; ++k1)
      for (int j2 = 0; j2 < n; ++j2)
        for (int k2 = 0; k2 < n; ++k2) {
          double s = 0.0;
          for (int i = 0; i < n; ++i) s += std::abs(p(i, j1, k1) - p(i, j2, k2));
          best = std::max(best, s);
        }
  return 1.0 - 0.5 * best;
}

double delta_bruteforce(const DenseTensor3& p) {
  require_subset_size(p, "delta_bruteforce");
  const int n = p.n();
  const int ncols = n * n;
  // colsum_in[c] = sum over i in I of column c; updated one flip at a time.
  std::vector<double> in(ncols, 0.0), total(ncols, 0.0);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) total[j + n * k] += p(i, j, k);

  double best = kInf;
  auto consider = [&]() {
    double min_out = kInf, min_in = kInf;
    for (int c = 0; c < ncols; ++c) {
      min_out = std::min(min_out, total[c] - in[c]);
      min_in = std::min(min_in, in[c]);
    }
    best = std::min(best, min_out + min_in);
  };
  consider();  // I = empty set
  std::vector<char> member(n, 0);
  const std::uint64_t count = 1ULL << n;
  for (std::uint64_t g = 1; g < count; ++g) {
    // Gray code: flip the lowest set bit position of g.
    const int bit = __builtin_ctzll(g);
    const double sgn = member[bit] ? -1.0 : 1.0;
    member[bit] = !member[bit];
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) in[j + n * k] += sgn * p(bit, j, k);
    consider();
  }
  return best;
}

double gamma_coefficient(const DenseTensor3& p) {
  require_subset_size(p, "gamma_coefficient");
  if (!validate_stochastic(p).ok) {
    throw std::invalid_argument("gamma_coefficient: tensor is not stochastic");
  }
  const int n = p.n();
  std::vector<double> in(static_cast<std::size_t>(n) * n, 0.0);   // sum_{i in I} P_{ijk}
  std::vector<double> tot(static_cast<std::size_t>(n) * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) tot[j + n * k] += p(i, j, k);

  std::vector<char> member(n, 0);
  double best = kInf;
  auto consider = [&]() {
    // first term: min_k ( min_{j in I} out(j,k) + min_{j not in I} in(j,k) )
    double term1 = kInf, term2 = kInf;
    for (int k = 0; k < n; ++k) {
      double a = kInf, b = kInf;
      for (int j = 0; j < n; ++j) {
        const double out_jk = tot[j + n * k] - in[j + n * k];
        const double in_jk = in[j + n * k];
        if (member[j]) a = std::min(a, out_jk);
        else b = std::min(b, in_jk);
      }
      term1 = std::min(term1, a + b);
    }
    for (int j = 0; j < n; ++j) {
      double a = kInf, b = kInf;
      for (int k = 0; k < n; ++k) {
        const double out_jk = tot[j + n * k] - in[j + n * k];
        const double in_jk = in[j + n * k];
        if (member[k]) a = std::min(a, out_jk);
        else b = std::min(b, in_jk);
      }
      term2 = std::min(term2, a + b);
    }
    best = std::min(best, term1 + term2);
  };

  const std::uint64_t count = 1ULL << n;
  for (std::uint64_t g = 1; g < count; ++g) {
    const int bit = __builtin_ctzll(g);
    const double sgn = member[bit] ? -1.0 : 1.0;
    member[bit] = !member[bit];
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) in[j + n * k] += sgn * p(bit, j, k);
    bool proper = false, nonempty = false;
    for (int i = 0; i < n; ++i) {
      if (member[i]) nonempty = true;
      else proper = true;
    }
    if (nonempty && proper) consider();
  }
  return best;
}

double theta(const DenseTensor3& p, const Vec& sigma) {
  const int n = p.n();
  if (static_cast<int>(sigma.size()) != n) throw std::invalid_argument("theta: sigma length mismatch");
  double best = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k1 = 0; k1 < n; ++k1)
      for (int k2 = 0; k2 < n; ++k2) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
          s += std::abs(p(i, j, k1) - sigma[i]) + std::abs(p(i, k2, j) - sigma[i]);
        }
        best = std::max(best, s);
      }
  return best;
}

SigmaVectors sigma_vectors(const DenseTensor3& p) {
  const int n = p.n();
  SigmaVectors s;
  s.sigma1.assign(n, -kInf);
  s.sigma2.assign(n, kInf);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        s.sigma1[i] = std::max(s.sigma1[i], p(i, j, k));
        s.sigma2[i] = std::min(s.sigma2[i], p(i, j, k));
      }
  s.sigma3.resize(n);
  for (int i = 0; i < n; ++i) s.sigma3[i] = 0.5 * (s.sigma1[i] + s.sigma2[i]);
  return s;
}

}  // namespace hots
