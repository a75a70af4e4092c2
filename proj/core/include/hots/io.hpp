#pragma once

#include <iosfwd>
#include <string>
#include <tuple>
#include <vector>

#include "hots/tensor.hpp"

namespace hots {

// Text format: header "tensor3 n=<n>", then one "i j k value" line per
// nonzero, 1-based indices. The writer emits entries sorted by (k,j,i).
struct TensorEntries {
  int n = 0;
  std::vector<std::tuple<int, int, int, double>> entries;  // 0-based here
};

TensorEntries read_tensor_entries(std::istream& in);
TensorEntries read_tensor_file(const std::string& path);

DenseTensor3 to_dense(const TensorEntries& e);
// Columns present in the file must be stochastic; absent (j,k) pairs get the
// uniform dangling default.
SparseTensor3 to_sparse(const TensorEntries& e);

void write_tensor(std::ostream& out, const DenseTensor3& t);
void write_tensor(std::ostream& out, const SparseTensor3& t);

}  // namespace hots
