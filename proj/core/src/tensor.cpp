#include "hots/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hots {

DenseTensor3::DenseTensor3(int n) : n_(n) {
  if (n <= 0) throw std::invalid_argument("DenseTensor3: dimension must be positive");
  a_.assign(static_cast<std::size_t>(n) * n * n, 0.0);
}

void SparseTensor3::build_j_index() {
  cols_of_j.assign(n, {});
  for (std::size_t c = 0; c < num_columns(); ++c) cols_of_j[col_j[c]].push_back(static_cast<int>(c));
}

Vec SparseMatrix::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("SparseMatrix::apply: dimension mismatch");
  Vec r(n, 0.0);
  double dangling_mass = 0.0;
  for (int j = 0; j < n; ++j) {
    if (cols[j].empty()) {
      dangling_mass += x[j];
      continue;
    }
    for (auto [i, v] : cols[j]) r[i] += v * x[j];
  }
  if (dangling_mass != 0.0) {
    const double u = dangling_mass / n;
    for (double& ri : r) ri += u;
  }
  return r;
}

void TransitionOperator::validate() const {
  double s = 0.0;
  for (const auto& t : terms) {
    if (t.weight < -kStochasticTol || t.weight > 1.0 + kStochasticTol) {
      throw std::invalid_argument("TransitionOperator: weight out of [0,1]");
    }
    s += t.weight;
  }
  if (std::abs(s - 1.0) > kStochasticTol) {
    throw std::invalid_argument("TransitionOperator: weights must sum to 1");
  }
}

ValidationReport validate_stochastic(const DenseTensor3& t, double tol) {
  if (tol <= 0) throw std::invalid_argument("validate_stochastic: tol must be positive");
  if (t.n() == 0) throw std::invalid_argument("validate_stochastic: empty tensor");
  ValidationReport rep;
  rep.ok = true;
  const int n = t.n();
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      double sum = 0.0, neg = 0.0;
      for (int i = 0; i < n; ++i) {
        const double v = t(i, j, k);
        sum += v;
        neg = std::min(neg, v);
      }
      const double dev = std::max(std::abs(sum - 1.0), -neg);
      if (dev > rep.worst_deviation) {
        rep.worst_deviation = dev;
        rep.worst_j = j;
        rep.worst_k = k;
      }
      if (std::abs(sum - 1.0) > tol || neg < -tol) rep.ok = false;
    }
  }
  return rep;
}

ValidationReport validate_stochastic(const SparseTensor3& t, double tol) {
  if (tol <= 0) throw std::invalid_argument("validate_stochastic: tol must be positive");
  if (t.n == 0) throw std::invalid_argument("validate_stochastic: empty tensor");
  ValidationReport rep;
  rep.ok = true;
  auto consider = [&](double dev, int j, int k, bool bad) {
    if (dev > rep.worst_deviation) {
      rep.worst_deviation = dev;
      rep.worst_j = j;
      rep.worst_k = k;
    }
    if (bad) rep.ok = false;
  };
  for (std::size_t c = 0; c < t.num_columns(); ++c) {
    double sum = 0.0, neg = 0.0;
    for (std::size_t p = t.col_ptr[c]; p < t.col_ptr[c + 1]; ++p) {
      sum += t.val[p];
      neg = std::min(neg, t.val[p]);
    }
    const double dev = std::max(std::abs(sum - 1.0), -neg);
    consider(dev, t.col_j[c], t.col_k[c], std::abs(sum - 1.0) > tol || neg < -tol);
  }
  // Dangling columns carry dangling_default; validate it once.
  double dsum = 0.0, dneg = 0.0;
  for (double v : t.dangling_default) {
    dsum += v;
    dneg = std::min(dneg, v);
  }
  const double ddev = std::max(std::abs(dsum - 1.0), -dneg);
  if (ddev > tol) consider(ddev, -1, -1, true);
  return rep;
}

Vec apply_bilinear(const DenseTensor3& t, const Vec& x, const Vec& y) {
  const int n = t.n();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n) {
    throw std::invalid_argument("apply_bilinear: dimension mismatch");
  }
  Vec r(n, 0.0);
  for (int k = 0; k < n; ++k) {
    if (y[k] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double w = x[j] * y[k];
      if (w == 0.0) continue;
      for (int i = 0; i < n; ++i) r[i] += w * t(i, j, k);
    }
  }
  return r;
}

Vec apply_bilinear(const SparseTensor3& t, const Vec& x, const Vec& y) {
  if (static_cast<int>(x.size()) != t.n || static_cast<int>(y.size()) != t.n) {
    throw std::invalid_argument("apply_bilinear: dimension mismatch");
  }
  Vec r(t.n, 0.0);
  double stored_mass = 0.0;
  for (std::size_t c = 0; c < t.num_columns(); ++c) {
    const double w = x[t.col_j[c]] * y[t.col_k[c]];
    if (w == 0.0) continue;
    stored_mass += w;
    for (std::size_t p = t.col_ptr[c]; p < t.col_ptr[c + 1]; ++p) r[t.row[p]] += w * t.val[p];
  }
  // Dangling (j,k) mass is whatever the stored columns did not absorb.
  const double dm = std::max(0.0, 1.0 - stored_mass);
  if (dm > 0.0) {
    for (int i = 0; i < t.n; ++i) r[i] += dm * t.dangling_default[i];
  }
  return r;
}

Vec apply_bilinear(const SparseMatrix& a, const Vec& x, const Vec& y) {
  // The edge tensor A_{ijk} = A_{ij}: (Axy)_i = sum_j A_{ij} x_j * sum_k y_k.
  double ys = 0.0;
  for (double v : y) ys += v;
  Vec r = a.apply(x);
  if (ys != 1.0) {
    for (double& v : r) v *= ys;
  }
  return r;
}

namespace {

Vec apply_operand(const Operand& op, const Vec& x, const Vec& y) {
  return std::visit(
      [&](const auto& o) -> Vec {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, RankOneTensor>) {
          double xs = 0.0, ys = 0.0;
          for (double v : x) xs += v;
          for (double v : y) ys += v;
          Vec r = o.v;
          for (double& v : r) v *= xs * ys;
          return r;
        } else if constexpr (std::is_same_v<T, LeftIdentity>) {
          double ys = 0.0;
          for (double v : y) ys += v;
          Vec r = x;
          for (double& v : r) v *= ys;
          return r;
        } else if constexpr (std::is_same_v<T, RightIdentity>) {
          double xs = 0.0;
          for (double v : x) xs += v;
          Vec r = y;
          for (double& v : r) v *= xs;
          return r;
        } else {
          return apply_bilinear(*o, x, y);
        }
      },
      op);
}

}  // namespace

Vec apply_bilinear(const TransitionOperator& op, const Vec& x, const Vec& y) {
  if (static_cast<int>(x.size()) != op.n || static_cast<int>(y.size()) != op.n) {
    throw std::invalid_argument("apply_bilinear: dimension mismatch");
  }
  Vec r(op.n, 0.0);
  for (const auto& term : op.terms) {
    if (term.weight == 0.0) continue;
    const Vec part = apply_operand(term.op, x, y);
    for (int i = 0; i < op.n; ++i) r[i] += term.weight * part[i];
  }
  return r;
}

DenseMatrix collapse(const DenseTensor3& t, const Vec& x) {
  const int n = t.n();
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("collapse: dimension mismatch");
  DenseMatrix m(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (x[k] == 0.0) continue;
      for (int i = 0; i < n; ++i) m(i, j) += t(i, k, j) * x[k];
    }
  }
  return m;
}

Vec occupation_column(const DenseTensor3& t, const Vec& y, int j) {
  const int n = t.n();
  Vec col(n, 0.0);
  for (int k = 0; k < n; ++k) {
    if (y[k] == 0.0) continue;
    for (int i = 0; i < n; ++i) col[i] += t(i, j, k) * y[k];
  }
  return col;
}

Vec occupation_column(const SparseTensor3& t, const Vec& y, int j) {
  if (t.cols_of_j.empty()) throw std::logic_error("occupation_column: call build_j_index first");
  Vec col(t.n, 0.0);
  double stored = 0.0;
  for (int c : t.cols_of_j[j]) {
    const double w = y[t.col_k[c]];
    if (w == 0.0) continue;
    stored += w;
    for (std::size_t p = t.col_ptr[c]; p < t.col_ptr[c + 1]; ++p) col[t.row[p]] += w * t.val[p];
  }
  const double dm = std::max(0.0, 1.0 - stored);
  if (dm > 0.0) {
    for (int i = 0; i < t.n; ++i) col[i] += dm * t.dangling_default[i];
  }
  return col;
}

DenseTensor3 s_transpose(const DenseTensor3& t) {
  const int n = t.n();
  DenseTensor3 r(n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) r(i, j, k) = t(i, k, j);
  r.set_stochastic_checked(t.stochastic_checked());
  return r;
}

DenseTensor3 symmetrize(const DenseTensor3& t) {
  const int n = t.n();
  DenseTensor3 r(n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) r(i, j, k) = 0.5 * (t(i, j, k) + t(i, k, j));
  r.set_stochastic_checked(t.stochastic_checked());
  return r;
}

double one_norm(const DenseTensor3& t) {
  const int n = t.n();
  double best = 0.0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += std::abs(t(i, j, k));
      best = std::max(best, s);
    }
  return best;
}

double one_norm_diff(const DenseTensor3& a, const DenseTensor3& b) {
  if (a.n() != b.n()) throw std::invalid_argument("one_norm_diff: dimension mismatch");
  const int n = a.n();
  double best = 0.0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += std::abs(a(i, j, k) - b(i, j, k));
      best = std::max(best, s);
    }
  return best;
}

TransitionOperator make_identity(int n, double left_weight) {
  if (left_weight < 0.0 || left_weight > 1.0) {
    throw std::invalid_argument("make_identity: left weight out of [0,1]");
  }
  TransitionOperator op;
  op.n = n;
  op.terms.push_back({left_weight, LeftIdentity{}});
  op.terms.push_back({1.0 - left_weight, RightIdentity{}});
  return op;
}

DenseTensor3 random_stochastic(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_stochastic: n must be at least 2");
  DenseTensor3 t(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        const double v = uni(rng);
        t(i, j, k) = v;
        s += v;
      }
      for (int i = 0; i < n; ++i) t(i, j, k) /= s;
    }
  t.set_stochastic_checked(true);
  return t;
}

DenseTensor3 rank_one_tensor(const Vec& v) {
  const int n = static_cast<int>(v.size());
  DenseTensor3 t(n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) t(i, j, k) = v[i];
  return t;
}

DenseTensor3 densify(const TransitionOperator& op) {
  const int n = op.n;
  DenseTensor3 t(n);
  for (const auto& term : op.terms) {
    if (term.weight == 0.0) continue;
    const double w = term.weight;
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, RankOneTensor>) {
            for (int k = 0; k < n; ++k)
              for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) t(i, j, k) += w * o.v[i];
          } else if constexpr (std::is_same_v<T, LeftIdentity>) {
            for (int k = 0; k < n; ++k)
              for (int i = 0; i < n; ++i) t(i, i, k) += w;
          } else if constexpr (std::is_same_v<T, RightIdentity>) {
            for (int k = 0; k < n; ++k)
              for (int j = 0; j < n; ++j) t(k, j, k) += w;
          } else if constexpr (std::is_same_v<T, std::shared_ptr<const DenseTensor3>>) {
            for (int k = 0; k < n; ++k)
              for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) t(i, j, k) += w * (*o)(i, j, k);
          } else if constexpr (std::is_same_v<T, std::shared_ptr<const SparseTensor3>>) {
            // stored columns, then dangling default everywhere else
            std::vector<char> stored(static_cast<std::size_t>(n) * n, 0);
            for (std::size_t c = 0; c < o->num_columns(); ++c) {
              stored[o->col_j[c] + static_cast<std::size_t>(n) * o->col_k[c]] = 1;
              for (std::size_t p = o->col_ptr[c]; p < o->col_ptr[c + 1]; ++p) {
                t(o->row[p], o->col_j[c], o->col_k[c]) += w * o->val[p];
              }
            }
            for (int k = 0; k < n; ++k)
              for (int j = 0; j < n; ++j)
                if (!stored[j + static_cast<std::size_t>(n) * k])
                  for (int i = 0; i < n; ++i) t(i, j, k) += w * o->dangling_default[i];
          } else {  // SparseMatrix as edge tensor A_{ijk} = A_{ij}
            for (int j = 0; j < n; ++j) {
              Vec col(n, 0.0);
              if (o->cols[j].empty()) {
                col.assign(n, 1.0 / n);
              } else {
                for (auto [i, v] : o->cols[j]) col[i] = v;
              }
              for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i) t(i, j, k) += w * col[i];
            }
          }
        },
        term.op);
  }
  return t;
}

TransitionOperator teleport_operator(std::shared_ptr<const DenseTensor3> p, double alpha,
                                     Vec v) {
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("teleport_operator: alpha out of [0,1]");
  require_simplex(v, "teleport_operator");
  TransitionOperator op;
  op.n = p->n();
  op.terms.push_back({alpha, p});
  op.terms.push_back({1.0 - alpha, RankOneTensor{std::move(v)}});
  return op;
}

TransitionOperator shift_operator(std::shared_ptr<const DenseTensor3> p, double sigma,
                                  double left_weight) {
  if (sigma < 0.0 || sigma > 1.0) throw std::invalid_argument("shift_operator: sigma out of [0,1]");
  if (left_weight < 0.0 || left_weight > 1.0) {
    throw std::invalid_argument("shift_operator: identity weight out of [0,1]");
  }
  TransitionOperator op;
  op.n = p->n();
  op.terms.push_back({sigma, p});
  op.terms.push_back({(1.0 - sigma) * left_weight, LeftIdentity{}});
  op.terms.push_back({(1.0 - sigma) * (1.0 - left_weight), RightIdentity{}});
  return op;
}

}  // namespace hots
