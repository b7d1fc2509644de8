#pragma once

#include <string>

namespace wpe {

// Constants of a warped product B x_f F over a base of dimension n with an
// m-dimensional fiber: Einstein constant lambda, screening parameter beta,
// fiber Einstein constant mu and base Gaussian curvature K.
struct WarpParams {
  int n = 2;
  int m = 2;
  double lambda = 0.0;
  double beta = 1.0;
  double mu = 0.0;
  double K = 0.0;

  double base_scalar_curvature() const { return 2.0 * K; }
  double fiber_scalar_curvature() const { return mu * m; }
};

// Base curvature forced by the contracted equation when Delta f = beta f:
// R_B = 2 lambda + m beta, so K = lambda + m beta / 2.
inline double base_curvature(int m, double lambda, double beta) { return lambda + 0.5 * m * beta; }

// Builds the parameter block of the homogeneous screened problem at a root lambda.
WarpParams theorem_params(int m, double lambda, double beta);

// Throws PreconditionError unless n = 2, mu = 0, m >= 2, lambda < 0, K < 0, beta > 0.
void require_theorem_mode(const WarpParams& wp);

enum class Admissibility {
  admissible,
  fiber_dimension_out_of_domain,  // m < 2: the gradient identity divides by m - 1
  degenerate_profile,             // lambda + beta = 0: p vanishes identically
  imaginary_profile,              // lambda + beta > 0
  nonnegative_curvature,          // K = lambda + m beta / 2 >= 0
  invalid_beta,
};

Admissibility classify(int m, double lambda, double beta);
std::string to_string(Admissibility a);

}  // namespace wpe
