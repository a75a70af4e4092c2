#include "hots/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace hots {

TensorEntries read_tensor_entries(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("tensor file: empty input");
  int n = 0;
  if (std::sscanf(header.c_str(), "tensor3 n=%d", &n) != 1 || n <= 0) {
    throw std::invalid_argument("tensor file: bad header, expected 'tensor3 n=<n>'");
  }
  TensorEntries out;
  out.n = n;
  std::string line;
  long long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    int i, j, k;
    double v;
    if (!(ls >> i)) continue;
    if (!(ls >> j >> k >> v)) {
      throw std::invalid_argument("tensor file: malformed line " + std::to_string(lineno));
    }
    if (i < 1 || i > n || j < 1 || j > n || k < 1 || k > n) {
      throw std::invalid_argument("tensor file: index out of range at line " +
                                  std::to_string(lineno));
    }
    out.entries.emplace_back(i - 1, j - 1, k - 1, v);
  }
  return out;
}

TensorEntries read_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("tensor file: cannot open " + path);
  return read_tensor_entries(in);
}

DenseTensor3 to_dense(const TensorEntries& e) {
  DenseTensor3 t(e.n);
  for (auto [i, j, k, v] : e.entries) t(i, j, k) += v;
  return t;
}

SparseTensor3 to_sparse(const TensorEntries& e) {
  SparseTensor3 t;
  t.n = e.n;
  t.dangling_default = uniform_vector(e.n);
  std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> cols;
  for (auto [i, j, k, v] : e.entries) {
    if (v == 0.0) continue;
    cols[{j, k}].emplace_back(i, v);
  }
  for (auto& [jk, rows] : cols) {
    std::sort(rows.begin(), rows.end());
    for (std::size_t p = 1; p < rows.size(); ++p) {
      if (rows[p].first == rows[p - 1].first) {
        throw std::invalid_argument("tensor file: duplicate (i,j,k) entry");
      }
    }
    t.col_j.push_back(jk.first);
    t.col_k.push_back(jk.second);
    for (auto [i, v] : rows) {
      t.row.push_back(i);
      t.val.push_back(v);
    }
    t.col_ptr.push_back(t.row.size());
  }
  t.build_j_index();
  return t;
}

namespace {

void write_header(std::ostream& out, int n) { out << "tensor3 n=" << n << "\n"; }

void write_entry(std::ostream& out, int i, int j, int k, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << (i + 1) << ' ' << (j + 1) << ' ' << (k + 1) << ' ' << buf << "\n";
}

}  // namespace

void write_tensor(std::ostream& out, const DenseTensor3& t) {
  const int n = t.n();
  write_header(out, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        if (t(i, j, k) != 0.0) write_entry(out, i, j, k, t(i, j, k));
      }
}

void write_tensor(std::ostream& out, const SparseTensor3& t) {
  write_header(out, t.n);
  std::vector<std::size_t> order(t.num_columns());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::make_pair(t.col_k[a], t.col_j[a]) < std::make_pair(t.col_k[b], t.col_j[b]);
  });
  for (std::size_t c : order) {
    for (std::size_t p = t.col_ptr[c]; p < t.col_ptr[c + 1]; ++p) {
      write_entry(out, t.row[p], t.col_j[c], t.col_k[c], t.val[p]);
    }
  }
}

}  // namespace hots
