#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hots/builtins.hpp"
#include "hots/tensor.hpp"
#include "helpers.hpp"

using namespace hots;
using hots::testing::random_simplex;

TEST_CASE("validate_stochastic accepts the builtin tensors") {
  for (const char* name : {"P1", "P2", "example61"}) {
    auto rep = validate_stochastic(builtin_tensor(name));
    CHECK(rep.ok);
    CHECK(rep.worst_deviation <= kStochasticTol);
  }
}

TEST_CASE("validate_stochastic reports the worst offending column") {
  DenseTensor3 t = builtin_P1();
  t(0, 1, 2) += 0.25;
  auto rep = validate_stochastic(t);
  CHECK_FALSE(rep.ok);
  CHECK(rep.worst_j == 1);
  CHECK(rep.worst_k == 2);
  CHECK(rep.worst_deviation == doctest::Approx(0.25));
}

TEST_CASE("apply_bilinear maps simplex points into the simplex") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const int n = 2 + static_cast<int>(s % 6);
    auto p = random_stochastic(n, s);
    auto x = random_simplex(n, 100 + s), y = random_simplex(n, 200 + s);
    auto z = apply_bilinear(p, x, y);
    CHECK(in_simplex(z));
  }
}

TEST_CASE("collapse is consistent with the bilinear apply") {
  // (Px) y must equal Pxy where (Px)_{ij} = sum_k P_{ikj} x_k.
  auto p = random_stochastic(5, 42);
  auto x = random_simplex(5, 1), y = random_simplex(5, 2);
  auto m = collapse(p, x);
  Vec via_matrix(5, 0.0);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) via_matrix[i] += m(i, j) * y[j];
  auto direct = apply_bilinear(p, x, y);
  for (int i = 0; i < 5; ++i) CHECK(via_matrix[i] == doctest::Approx(direct[i]).epsilon(1e-13));
}

TEST_CASE("s_transpose is an involution and swaps the two bilinear slots") {
  auto p = random_stochastic(4, 7);
  auto pt = s_transpose(p);
  auto ptt = s_transpose(pt);
  for (std::size_t i = 0; i < p.data().size(); ++i) CHECK(p.data()[i] == ptt.data()[i]);
  auto x = random_simplex(4, 3), y = random_simplex(4, 4);
  auto a = apply_bilinear(p, x, y), b = apply_bilinear(pt, y, x);
  for (int i = 0; i < 4; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
}

TEST_CASE("symmetrize produces a stochastic S-symmetric tensor") {
  auto p = random_stochastic(5, 11);
  auto q = symmetrize(p);
  CHECK(validate_stochastic(q).ok);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) CHECK(q(i, j, k) == doctest::Approx(q(i, k, j)));
}

TEST_CASE("one_norm of a stochastic tensor is 1 and satisfies the triangle inequality") {
  auto p = random_stochastic(4, 5), q = random_stochastic(4, 6);
  CHECK(one_norm(p) == doctest::Approx(1.0));
  DenseTensor3 d(4);
  for (std::size_t i = 0; i < d.data().size(); ++i) d.data()[i] = p.data()[i] - q.data()[i];
  CHECK(one_norm(d) <= one_norm(p) + one_norm(q) + 1e-14);
}

TEST_CASE("occupation_column matches a direct contraction") {
  auto p = random_stochastic(4, 9);
  auto y = random_simplex(4, 10);
  for (int j = 0; j < 4; ++j) {
    auto col = occupation_column(p, y, j);
    for (int i = 0; i < 4; ++i) {
      double want = 0.0;
      for (int k = 0; k < 4; ++k) want += p(i, j, k) * y[k];
      CHECK(col[i] == doctest::Approx(want).epsilon(1e-14));
    }
  }
}

TEST_CASE("identity operands act as expected on the simplex") {
  const int n = 4;
  auto x = random_simplex(n, 21), y = random_simplex(n, 22);
  TransitionOperator left;
  left.n = n;
  left.terms.push_back({1.0, LeftIdentity{}});
  auto lx = apply_bilinear(left, x, y);
  for (int i = 0; i < n; ++i) CHECK(lx[i] == doctest::Approx(x[i]));
  TransitionOperator right;
  right.n = n;
  right.terms.push_back({1.0, RightIdentity{}});
  auto ry = apply_bilinear(right, x, y);
  for (int i = 0; i < n; ++i) CHECK(ry[i] == doctest::Approx(y[i]));
}

TEST_CASE("densify agrees with the lazy apply on random operators") {
  const int n = 4;
  auto base = std::make_shared<DenseTensor3>(random_stochastic(n, 31));
  auto op = shift_operator(base, 0.7, 0.3);
  auto dense = densify(op);
  CHECK(validate_stochastic(dense).ok);
  auto x = random_simplex(n, 32), y = random_simplex(n, 33);
  auto a = apply_bilinear(op, x, y), b = apply_bilinear(dense, x, y);
  for (int i = 0; i < n; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
}

TEST_CASE("teleport operator matches the convex combination with a rank-one tensor") {
  const int n = 3;
  auto base = std::make_shared<DenseTensor3>(builtin_P2());
  auto v = random_simplex(n, 44);
  auto op = teleport_operator(base, 0.6, v);
  auto dense = densify(op);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        CHECK(dense(i, j, k) ==
              doctest::Approx(0.6 * (*base)(i, j, k) + 0.4 * v[i]).epsilon(1e-14));
      }
}

TEST_CASE("random_stochastic is stochastic and seed-deterministic") {
  auto a = random_stochastic(6, 99), b = random_stochastic(6, 99), c = random_stochastic(6, 98);
  CHECK(validate_stochastic(a).ok);
  CHECK(a.data() == b.data());
  CHECK(a.data() != c.data());
}

TEST_CASE("sparse and dense bilinear apply agree, including dangling columns") {
  SparseTensor3 sp;
  sp.n = 3;
  sp.dangling_default = uniform_vector(3);
  // store only column (j=0,k=0) = e_2; every other column is dangling.
  sp.col_j = {0};
  sp.col_k = {0};
  sp.row = {2};
  sp.val = {1.0};
  sp.col_ptr = {0, 1};
  sp.build_j_index();
  DenseTensor3 de(3);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i) de(i, j, k) = (j == 0 && k == 0) ? (i == 2) : 1.0 / 3;
  auto x = random_simplex(3, 55), y = random_simplex(3, 56);
  auto a = apply_bilinear(sp, x, y), b = apply_bilinear(de, x, y);
  for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
  auto ys = random_simplex(3, 57);
  for (int j = 0; j < 3; ++j) {
    auto ca = occupation_column(sp, ys, j), cb = occupation_column(de, ys, j);
    for (int i = 0; i < 3; ++i) CHECK(ca[i] == doctest::Approx(cb[i]).epsilon(1e-13));
  }
}
