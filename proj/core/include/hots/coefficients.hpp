#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hots/tensor.hpp"

namespace hots {

enum class Coefficient { tau1, TL, TR, T, TH, kappa, delta, gamma, theta };

const char* coefficient_name(Coefficient c);

struct CoefficientReport {
  Coefficient name;
  double value = 0.0;
  std::vector<int> witness;  // achieving index tuple, 0-based; lexicographically first
  std::string runtime_note;
};

// Dobrushin coefficient of a square matrix, (1/2) max_{j,k} sum_i |M_ij - M_ik|.
double tau1_matrix(const DenseMatrix& m);
// Alternate formula for stochastic matrices, 1 - min_{j,k} sum_i min{M_ij, M_ik}.
double tau1_matrix_min_form(const DenseMatrix& m);

CoefficientReport tauL(const DenseTensor3& p);
CoefficientReport tauR(const DenseTensor3& p);
CoefficientReport tau(const DenseTensor3& p);

// Min-based forms, valid for stochastic tensors; kept as independent routes.
double tauL_min_form(const DenseTensor3& p);
double tauR_min_form(const DenseTensor3& p);
double tau_min_form(const DenseTensor3& p);

struct LipschitzRow {
  double coefficient_gap = 0.0;   // |T_*(P) - T_*(Q)|
  double tau_of_difference = 0.0; // T_*(P - Q)
  double norm_bound = 0.0;        // ||P - Q||_1, scaled by 2 for T
  bool holds = false;
};
struct LipschitzReport {
  LipschitzRow TL, TR, T;
};
LipschitzReport tau_lipschitz_check(const DenseTensor3& p, const DenseTensor3& q);

// Birkhoff contraction ratio of the bilinear map, tanh((1/4) log Delta(P)).
double kappa(const DenseTensor3& p);
// Hilbert-metric coefficient of x -> Pxx: 2 kappa(P + P^S), in [0,2].
double tauH(const DenseTensor3& p);
// Six-index cross ratio Delta(P); +inf when a positive/zero ratio occurs.
double birkhoff_cross_ratio(const DenseTensor3& p);

double hilbert_distance(const Vec& x, const Vec& y);

double delta_closed_form(const DenseTensor3& p);
double delta_bruteforce(const DenseTensor3& p);  // exact subset minimum, n <= 20
double gamma_coefficient(const DenseTensor3& p); // proper nonempty subsets, n <= 20

double theta(const DenseTensor3& p, const Vec& sigma);
struct SigmaVectors {
  Vec sigma1;  // entrywise max over (j,k)
  Vec sigma2;  // entrywise min
  Vec sigma3;  // their average
};
SigmaVectors sigma_vectors(const DenseTensor3& p);

}  // namespace hots
