#include "hots/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace hots {

Graph load_edge_list(std::istream& in, IndexBase base, EdgeListStats* stats) {
  std::vector<std::pair<long long, long long>> raw;
  long long max_id = -1, min_id = std::numeric_limits<long long>::max();
  std::string line;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    long long a, b;
    if (!(ls >> a)) {
      if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;  // blank line
      throw std::invalid_argument("load_edge_list: malformed line " + std::to_string(lineno));
    }
    if (!(ls >> b)) {
      throw std::invalid_argument("load_edge_list: malformed line " + std::to_string(lineno));
    }
    long long extra;
    if (ls >> extra) {
      throw std::invalid_argument("load_edge_list: malformed line " + std::to_string(lineno) +
                                  " (more than two fields)");
    }
    if (a < 0 || b < 0) {
      throw std::invalid_argument("load_edge_list: negative node id at line " +
                                  std::to_string(lineno));
    }
    raw.emplace_back(a, b);
    max_id = std::max({max_id, a, b});
    min_id = std::min({min_id, a, b});
  }
  Graph g;
  if (raw.empty()) return g;
  long long offset;
  switch (base) {
    case IndexBase::zero: offset = 0; break;
    case IndexBase::one: offset = 1; break;
    case IndexBase::auto_detect: offset = (min_id == 0) ? 0 : 1; break;
  }
  if (min_id < offset) {
    throw std::invalid_argument("load_edge_list: node id below the declared index base");
  }
  g.n = static_cast<int>(max_id - offset + 1);
  g.adj.assign(g.n, {});
  EdgeListStats st;
  for (auto [a, b] : raw) {
    const int u = static_cast<int>(a - offset), v = static_cast<int>(b - offset);
    if (u == v) {
      ++st.self_loops_dropped;
      continue;
    }
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& nbrs : g.adj) {
    std::sort(nbrs.begin(), nbrs.end());
    const auto last = std::unique(nbrs.begin(), nbrs.end());
    st.duplicate_edges_dropped += (nbrs.end() - last);
    nbrs.erase(last, nbrs.end());
    g.m += static_cast<long long>(nbrs.size());
  }
  st.duplicate_edges_dropped /= 2;
  g.m /= 2;
  if (stats) *stats = st;
  return g;
}

Graph load_edge_list_file(const std::string& path, IndexBase base, EdgeListStats* stats) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_edge_list_file: cannot open " + path);
  return load_edge_list(in, base, stats);
}

Graph largest_connected_component(const Graph& g, std::vector<int>* node_map) {
  std::vector<int> comp(g.n, -1);
  int ncomp = 0;
  std::vector<int> stack, size;
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] != -1) continue;
    stack.push_back(s);
    comp[s] = ncomp;
    int cnt = 0;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      ++cnt;
      for (int v : g.adj[u]) {
        if (comp[v] == -1) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
      }
    }
    size.push_back(cnt);
    ++ncomp;
  }
  const int best = static_cast<int>(std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<int> new_id(g.n, -1), keep;
  for (int u = 0; u < g.n; ++u) {
    if (comp[u] == best) {
      new_id[u] = static_cast<int>(keep.size());
      keep.push_back(u);
    }
  }
  Graph out;
  out.n = static_cast<int>(keep.size());
  out.adj.assign(out.n, {});
  for (int u : keep) {
    for (int v : g.adj[u]) {
      if (new_id[v] != -1) out.adj[new_id[u]].push_back(new_id[v]);
    }
    out.m += static_cast<long long>(out.adj[new_id[u]].size());
  }
  out.m /= 2;
  if (node_map) *node_map = keep;
  return out;
}

SparseMatrix transition_matrix(const Graph& g) {
  SparseMatrix a;
  a.n = g.n;
  a.cols.assign(g.n, {});
  for (int j = 0; j < g.n; ++j) {
    const auto& nbrs = g.adj[j];
    if (nbrs.empty()) continue;  // empty column acts as uniform 1/n
    const double w = 1.0 / nbrs.size();
    a.cols[j].reserve(nbrs.size());
    for (int i : nbrs) a.cols[j].emplace_back(i, w);
  }
  return a;
}

SparseTensor3 triangle_tensor(const Graph& g, TriangleTensorStats* stats) {
  SparseTensor3 t;
  t.n = g.n;
  t.dangling_default = uniform_vector(std::max(g.n, 1));
  long long triangles = 0;

  // Common neighbors per edge, both orders emitted so T is S-symmetric.
  std::vector<int> common;
  for (int j = 0; j < g.n; ++j) {
    for (int k : g.adj[j]) {
      common.clear();
      const auto& a = g.adj[j];
      const auto& b = g.adj[k];
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      if (common.empty()) continue;
      if (j < k) triangles += static_cast<long long>(common.size());
      const double w = 1.0 / common.size();
      t.col_j.push_back(j);
      t.col_k.push_back(k);
      for (int i : common) {
        t.row.push_back(i);
        t.val.push_back(w);
      }
      t.col_ptr.push_back(t.row.size());
    }
  }
  triangles /= 3;
  if (stats) {
    stats->triangle_count = triangles;
    stats->nonzeros = t.nnz();
    const double pairs = static_cast<double>(g.n) * g.n;
    stats->dangling_pair_fraction = pairs > 0 ? 1.0 - t.num_columns() / pairs : 0.0;
  }
  return t;
}

TransitionOperator blend_operator(const Graph& g, double beta) {
  if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("blend_operator: beta out of [0,1]");
  TransitionOperator op;
  op.n = g.n;
  op.terms.push_back({beta, std::make_shared<const SparseTensor3>(triangle_tensor(g))});
  op.terms.push_back({1.0 - beta, std::make_shared<const SparseMatrix>(transition_matrix(g))});
  return op;
}

double operator_one_norm_diff(const SparseTensor3& t, const SparseMatrix& a) {
  if (t.n != a.n) throw std::invalid_argument("operator_one_norm_diff: dimension mismatch");
  const int n = t.n;
  Vec acol(n);
  auto fill_a_col = [&](int j) {
    if (a.cols[j].empty()) {
      acol.assign(n, 1.0 / n);
    } else {
      acol.assign(n, 0.0);
      for (auto [i, v] : a.cols[j]) acol[i] = v;
    }
  };
  double best = 0.0;
  // Stored triangle columns against A's column j.
  for (std::size_t c = 0; c < t.num_columns(); ++c) {
    const int j = t.col_j[c];
    fill_a_col(j);
    double s = 0.0;
    double touched = 0.0;
    for (std::size_t p = t.col_ptr[c]; p < t.col_ptr[c + 1]; ++p) {
      s += std::abs(t.val[p] - acol[t.row[p]]);
      touched += std::abs(acol[t.row[p]]);
    }
    s += one_norm(acol) - touched;  // A entries where T is zero
    best = std::max(best, s);
  }
  // Dangling columns of T are uniform; a (j,j) pair is always dangling
  // (no self-loops), so every j contributes one such column.
  for (int j = 0; j < n; ++j) {
    fill_a_col(j);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::abs(1.0 / n - acol[i]);
    best = std::max(best, s);
  }
  return best;
}

Vec pagerank(const SparseMatrix& a, double alpha, const Vec& v, const SolveOptions& opt) {
  require_simplex(v, "pagerank");
  Vec z = v;
  for (int t = 0; t < opt.maxit; ++t) {
    Vec az = a.apply(z);
    for (int i = 0; i < a.n; ++i) az[i] = alpha * az[i] + (1.0 - alpha) * v[i];
    const double res = one_norm_diff(az, z);
    z = std::move(az);
    if (res < opt.tol) break;
  }
  return z;
}

TriangleMlprReport triangle_mlpr(const Graph& g, double alpha, double beta, Vec v,
                                 const SolveOptions& opt) {
  if (v.empty()) v = uniform_vector(g.n);
  require_simplex(v, "triangle_mlpr");
  TriangleMlprReport rep;
  rep.certificate = alpha * (1.0 + beta);

  auto tri = std::make_shared<const SparseTensor3>(triangle_tensor(g));
  auto mat = std::make_shared<const SparseMatrix>(transition_matrix(g));
  TransitionOperator op;
  op.n = g.n;
  op.terms.push_back({beta, tri});
  op.terms.push_back({1.0 - beta, mat});

  std::optional<double> tau_bound;
  if (rep.certificate < 1.0) tau_bound = 1.0 + beta;  // T(P) <= beta + 1 (Cor 8.2 route)
  rep.solve = mlpr_fixed_point(op, alpha, v, opt, tau_bound);
  if (rep.solve.unique_certified) rep.solve.certificate_name = "alpha (1 + beta) < 1";

  rep.z = pagerank(*mat, alpha, v, opt);
  rep.x_minus_v = one_norm_diff(rep.solve.final, v);
  rep.x_minus_z = one_norm_diff(rep.solve.final, rep.z);
  rep.bound = alpha < 1.0
                  ? alpha * beta / (1.0 - alpha) * operator_one_norm_diff(*tri, *mat)
                  : std::numeric_limits<double>::infinity();
  return rep;
}

}  // namespace hots
