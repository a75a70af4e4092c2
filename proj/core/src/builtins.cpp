#include "hots/builtins.hpp"

#include <stdexcept>

namespace hots {

namespace {

// slices[k][i][j] holds entry (i,j,k).
DenseTensor3 from_slices(const double (&slices)[3][3][3], double scale = 1.0) {
  DenseTensor3 t(3);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j, k) = scale * slices[k][i][j];
  return t;
}

}  // namespace

DenseTensor3 builtin_P1() {
  const double h = 1.0 / 2.0, c = 1.0 / 3.0;
  const double s[3][3][3] = {{{c, c, c}, {c, c, c}, {c, c, c}},
                             {{c, 0, 0}, {c, 0, h}, {c, 1, h}},
                             {{0, 0, 0}, {1, 0, 1}, {0, 1, 0}}};
  return from_slices(s);
}

DenseTensor3 builtin_P2() {
  const double h = 1.0 / 2.0, c = 1.0 / 3.0;
  const double s[3][3][3] = {{{0, 0, c}, {0, 0, c}, {1, 1, c}},
                             {{c, 0, 0}, {c, 0, 0}, {c, 1, 1}},
                             {{h, h, h}, {0, 0, h}, {h, h, 0}}};
  return from_slices(s);
}

DenseTensor3 builtin_example61() {
  const double s[3][3][3] = {{{0, 1, 1}, {1, 0, 0}, {1, 1, 1}},
                             {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}},
                             {{0, 0, 0}, {2, 0, 1}, {0, 2, 1}}};
  return from_slices(s, 0.5);
}

DenseTensor3 builtin_tensor(const std::string& name) {
  if (name == "P1") return builtin_P1();
  if (name == "P2") return builtin_P2();
  if (name == "example61") return builtin_example61();
  throw std::invalid_argument("unknown builtin tensor: " + name);
}

}  // namespace hots
