#pragma once

#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include "hots/types.hpp"

namespace hots {

// Square matrix with column-major storage; entry (i,j) is m(i,j).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}
  int n() const { return n_; }
  double& operator()(int i, int j) { return a_[i + static_cast<std::size_t>(n_) * j]; }
  double operator()(int i, int j) const { return a_[i + static_cast<std::size_t>(n_) * j]; }
  const std::vector<double>& data() const { return a_; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

// Cubical order-3 tensor, entry (i,j,k); first-mode (i) columns are the
// stochastic columns when the tensor is a transition law.
class DenseTensor3 {
 public:
  DenseTensor3() = default;
  explicit DenseTensor3(int n);
  int n() const { return n_; }
  double& operator()(int i, int j, int k) { return a_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return a_[index(i, j, k)]; }
  std::vector<double>& data() { return a_; }
  const std::vector<double>& data() const { return a_; }
  bool stochastic_checked() const { return stochastic_checked_; }
  void set_stochastic_checked(bool v) { stochastic_checked_ = v; }

 private:
  std::size_t index(int i, int j, int k) const {
    return i + static_cast<std::size_t>(n_) * (j + static_cast<std::size_t>(n_) * k);
  }
  int n_ = 0;
  bool stochastic_checked_ = false;
  std::vector<double> a_;
};

// Coordinate-format tensor grouped by (j,k) column. Every (j,k) pair with no
// stored entries implicitly carries dangling_default as its column.
struct SparseTensor3 {
  int n = 0;
  Vec dangling_default;

  // Stored columns: column c has pair (col_j[c], col_k[c]) and entries
  // row[col_ptr[c] .. col_ptr[c+1]) with values val[...].
  std::vector<int> col_j, col_k;
  std::vector<std::size_t> col_ptr{0};
  std::vector<int> row;
  std::vector<double> val;

  // Column ids grouped by j; built on demand, used by the sampled process.
  std::vector<std::vector<int>> cols_of_j;

  std::size_t nnz() const { return row.size(); }
  std::size_t num_columns() const { return col_j.size(); }
  void build_j_index();
};

// Column-stochastic sparse matrix in column-list form. Columns with no
// stored entries act as the uniform column 1/n.
struct SparseMatrix {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> cols;

  Vec apply(const Vec& x) const;
};

struct RankOneTensor {
  Vec v;  // V_{ijk} = v_i
};
struct LeftIdentity {};   // E^L_{ijk} = delta_{ij}
struct RightIdentity {};  // E^R_{ijk} = delta_{ik}

using Operand = std::variant<std::shared_ptr<const DenseTensor3>,
                             std::shared_ptr<const SparseTensor3>, RankOneTensor,
                             LeftIdentity, RightIdentity,
                             std::shared_ptr<const SparseMatrix>>;

// Convex combination of stochastic operands; applies bilinearly without
// densifying any term.
struct TransitionOperator {
  struct Term {
    double weight;
    Operand op;
  };
  int n = 0;
  std::vector<Term> terms;

  void validate() const;  // weights in [0,1], sum to 1 within tolerance
};

struct ValidationReport {
  bool ok = false;
  double worst_deviation = 0.0;
  int worst_j = -1, worst_k = -1;  // 0-based; -1 when no offender
};

ValidationReport validate_stochastic(const DenseTensor3& t, double tol = kStochasticTol);
ValidationReport validate_stochastic(const SparseTensor3& t, double tol = kStochasticTol);

Vec apply_bilinear(const DenseTensor3& t, const Vec& x, const Vec& y);
Vec apply_bilinear(const SparseTensor3& t, const Vec& x, const Vec& y);
Vec apply_bilinear(const SparseMatrix& a, const Vec& x, const Vec& y);
Vec apply_bilinear(const TransitionOperator& op, const Vec& x, const Vec& y);

// (Px)_{ij} = sum_k P_{ikj} x_k, so that (Px)y = Pxy.
DenseMatrix collapse(const DenseTensor3& t, const Vec& x);

// Column j of M(y), M(y)_{ij} = sum_k P_{ijk} y_k; the transition column of
// the vertex-reinforced process out of state j.
Vec occupation_column(const DenseTensor3& t, const Vec& y, int j);
Vec occupation_column(const SparseTensor3& t, const Vec& y, int j);

DenseTensor3 s_transpose(const DenseTensor3& t);  // (P^S)_{ijk} = P_{ikj}
DenseTensor3 symmetrize(const DenseTensor3& t);   // (P + P^S)/2

double one_norm(const DenseTensor3& t);  // max_{j,k} sum_i |P_{ijk}|
double one_norm_diff(const DenseTensor3& a, const DenseTensor3& b);

TransitionOperator make_identity(int n, double left_weight);
DenseTensor3 random_stochastic(int n, std::uint64_t seed);
DenseTensor3 rank_one_tensor(const Vec& v);

DenseTensor3 densify(const TransitionOperator& op);

// P_alpha = alpha P + (1-alpha) V with V the rank-one tensor of v.
TransitionOperator teleport_operator(std::shared_ptr<const DenseTensor3> p, double alpha,
                                     Vec v);
// P_sigma = sigma P + (1-sigma) E, E = w E^L + (1-w) E^R.
TransitionOperator shift_operator(std::shared_ptr<const DenseTensor3> p, double sigma,
                                  double left_weight);

}  // namespace hots
