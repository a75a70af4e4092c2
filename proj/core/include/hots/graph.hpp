#pragma once

#include <iosfwd>
#include <vector>

#include "hots/solvers.hpp"
#include "hots/tensor.hpp"

namespace hots {

struct Graph {
  int n = 0;
  long long m = 0;  // undirected edge count
  std::vector<std::vector<int>> adj;  // sorted, deduplicated, no self-loops
};

enum class IndexBase { auto_detect, zero, one };

struct EdgeListStats {
  long long self_loops_dropped = 0;
  long long duplicate_edges_dropped = 0;
};

// Whitespace-separated integer pairs; '#' starts a comment line.
Graph load_edge_list(std::istream& in, IndexBase base = IndexBase::auto_detect,
                     EdgeListStats* stats = nullptr);
Graph load_edge_list_file(const std::string& path, IndexBase base = IndexBase::auto_detect,
                          EdgeListStats* stats = nullptr);

// node_map, when given, receives the original index of each kept node.
Graph largest_connected_component(const Graph& g, std::vector<int>* node_map = nullptr);

// A_{ij} = 1/d(j) on edges, uniform columns for isolated nodes.
SparseMatrix transition_matrix(const Graph& g);

struct TriangleTensorStats {
  long long triangle_count = 0;
  std::size_t nonzeros = 0;
  double dangling_pair_fraction = 0.0;  // fraction of the n^2 (j,k) pairs with no triangle
};

// T_{ijk} = 1/triangles(j,k) when {i,j,k} is a triangle; dangling default 1/n.
SparseTensor3 triangle_tensor(const Graph& g, TriangleTensorStats* stats = nullptr);

// P = beta T + (1-beta) A as a lazily-applied operator.
TransitionOperator blend_operator(const Graph& g, double beta);

// max_{j,k} sum_i |T_{ijk} - A_{ij}|, dangling columns of T included.
double operator_one_norm_diff(const SparseTensor3& t, const SparseMatrix& a);

Vec pagerank(const SparseMatrix& a, double alpha, const Vec& v, const SolveOptions& opt = {});

struct TriangleMlprReport {
  SolveReport solve;
  Vec z;                       // classical PageRank with the same alpha, v
  double x_minus_v = 0.0;      // ||x - v||_1
  double x_minus_z = 0.0;      // ||x - z||_1
  double bound = 0.0;          // alpha beta / (1-alpha) * ||T - A||_1
  double certificate = 0.0;    // alpha (1 + beta)
};
TriangleMlprReport triangle_mlpr(const Graph& g, double alpha, double beta, Vec v,
                                 const SolveOptions& opt = {});

}  // namespace hots
