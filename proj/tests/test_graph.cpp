#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "hots/graph.hpp"
#include "helpers.hpp"

using namespace hots;

namespace {

Graph complete_graph(int n) {
  std::ostringstream os;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) os << i << ' ' << j << "\n";
  std::istringstream is(os.str());
  return load_edge_list(is, IndexBase::zero);
}

Graph random_graph(int n, double prob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::ostringstream os;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (uni(rng) < prob) os << i << ' ' << j << "\n";
    }
  std::istringstream is(os.str());
  return load_edge_list(is, IndexBase::zero);
}

}  // namespace

TEST_CASE("edge list loader handles comments, duplicates and self loops") {
  std::istringstream is(
      "# a comment\n"
      "1 2\n"
      "2 1\n"
      "2 2\n"
      "2 3\n");
  EdgeListStats stats;
  auto g = load_edge_list(is, IndexBase::auto_detect, &stats);
  CHECK(g.n == 3);  // 1-based input detected, nodes 1..3
  CHECK(g.m == 2);
  CHECK(stats.self_loops_dropped == 1);
  CHECK(stats.duplicate_edges_dropped == 1);
  CHECK(g.adj[1].size() == 2);  // node 2 connects to both others
}

TEST_CASE("edge list loader reports malformed lines") {
  std::istringstream is("1 2\nbogus line\n");
  CHECK_THROWS_AS(load_edge_list(is), std::invalid_argument);
}

TEST_CASE("largest connected component keeps the biggest piece and its node map") {
  std::istringstream is("0 1\n1 2\n5 6\n");
  auto g = load_edge_list(is, IndexBase::zero);
  std::vector<int> node_map;
  auto lcc = largest_connected_component(g, &node_map);
  CHECK(lcc.n == 3);
  CHECK(lcc.m == 2);
  REQUIRE(node_map.size() == 3);
  CHECK(node_map == std::vector<int>{0, 1, 2});
}

TEST_CASE("transition matrix columns are stochastic") {
  auto g = random_graph(30, 0.2, 5);
  auto a = transition_matrix(g);
  auto x = hots::testing::random_simplex(g.n, 3);
  auto y = a.apply(x);
  CHECK(in_simplex(y));
}

TEST_CASE("triangle tensor of K4: counts, stochastic columns, S-symmetry") {
  auto g = complete_graph(4);
  TriangleTensorStats stats;
  auto t = triangle_tensor(g, &stats);
  CHECK(stats.triangle_count == 4);
  // every (j,k) edge pair lies in 2 triangles; each contributes 2 entries
  CHECK(stats.nonzeros == 24);
  auto rep = validate_stochastic(t);
  CHECK(rep.ok);
  // S-symmetry through the bilinear form: Txy = Tyx
  auto x = hots::testing::random_simplex(4, 8);
  auto y = hots::testing::random_simplex(4, 9);
  auto ab = apply_bilinear(t, x, y), ba = apply_bilinear(t, y, x);
  for (int i = 0; i < 4; ++i) CHECK(ab[i] == doctest::Approx(ba[i]).epsilon(1e-13));
}

TEST_CASE("triangle tensor dangling pairs use the uniform column") {
  // path graph 0-1-2 has no triangles at all
  std::istringstream is("0 1\n1 2\n");
  auto g = load_edge_list(is, IndexBase::zero);
  TriangleTensorStats stats;
  auto t = triangle_tensor(g, &stats);
  CHECK(stats.triangle_count == 0);
  CHECK(stats.nonzeros == 0);
  CHECK(stats.dangling_pair_fraction == doctest::Approx(1.0));
  auto x = hots::testing::random_simplex(3, 10);
  auto z = apply_bilinear(t, x, x);
  for (int i = 0; i < 3; ++i) CHECK(z[i] == doctest::Approx(1.0 / 3));
}

TEST_CASE("blend operator applies beta T + (1-beta) A without densifying") {
  auto g = random_graph(25, 0.3, 7);
  auto op = blend_operator(g, 0.6);
  auto t = triangle_tensor(g);
  auto a = transition_matrix(g);
  auto x = hots::testing::random_simplex(g.n, 11);
  auto y = hots::testing::random_simplex(g.n, 12);
  auto got = apply_bilinear(op, x, y);
  auto tpart = apply_bilinear(t, x, y);
  auto apart = a.apply(x);
  for (int i = 0; i < g.n; ++i) {
    CHECK(got[i] == doctest::Approx(0.6 * tpart[i] + 0.4 * apart[i]).epsilon(1e-12));
  }
}

TEST_CASE("pagerank fixed point") {
  auto g = random_graph(40, 0.15, 13);
  auto a = transition_matrix(g);
  const Vec v = uniform_vector(g.n);
  auto z = pagerank(a, 0.85, v, {});
  CHECK(in_simplex(z));
  auto az = a.apply(z);
  for (int i = 0; i < g.n; ++i) {
    CHECK(z[i] == doctest::Approx(0.85 * az[i] + 0.15 * v[i]).epsilon(1e-6));
  }
}

TEST_CASE("triangle mlpr on K4: certificate, agreement bound") {
  auto g = complete_graph(4);
  auto rep = triangle_mlpr(g, 0.6, 0.6, uniform_vector(4), {});
  CHECK(rep.solve.converged);
  CHECK(rep.certificate == doctest::Approx(0.96));
  CHECK(rep.x_minus_z <= rep.bound + 1e-9);
  // K4 is vertex-transitive: both solutions are uniform
  for (int i = 0; i < 4; ++i) CHECK(rep.solve.final[i] == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("operator norm difference between T and A covers dangling columns") {
  std::istringstream is("0 1\n1 2\n");  // no triangles: T is all-uniform
  auto g = load_edge_list(is, IndexBase::zero);
  auto t = triangle_tensor(g);
  auto a = transition_matrix(g);
  double want = 0.0;
  const Vec u = uniform_vector(3);
  for (int j = 0; j < 3; ++j) {
    Vec acol(3, 0.0);
    for (auto [i, v] : a.cols[j]) acol[i] = v;
    want = std::max(want, one_norm_diff(u, acol));
  }
  CHECK(operator_one_norm_diff(t, a) == doctest::Approx(want));
}
