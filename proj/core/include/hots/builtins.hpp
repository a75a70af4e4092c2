#pragma once

#include <string>

#include "hots/tensor.hpp"

namespace hots {

// Small named 3x3 stochastic test tensors used throughout the tests and CLI.
DenseTensor3 builtin_P1();
DenseTensor3 builtin_P2();
DenseTensor3 builtin_example61();

// Lookup by name ("P1", "P2", "example61"); throws std::invalid_argument.
DenseTensor3 builtin_tensor(const std::string& name);

}  // namespace hots
