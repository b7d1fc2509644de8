#pragma once

// End-to-end certification of the warped-product construction for (m, beta):
// relation root -> profiles -> constructed metric -> curvature, compatibility and
// Einstein residuals on the base metric of curvature K.

#include <string>

#include "wpe/compatibility.hpp"
#include "wpe/einstein.hpp"
#include "wpe/error.hpp"
#include "wpe/relation.hpp"

namespace wpe {

class NoAdmissibleRoot : public Error {
 public:
  using Error::Error;
};

struct Tolerances {
  double relation = 1e-10;
  double compat = 1e-8;
  double curvature_fd = 1e-5;
  double curvature_exact = 1e-10;
  double einstein = 1e-6;
};

struct VerifyOptions {
  Variant variant = Variant::rederived;
  Tolerances tol;
  StripSpec strip;
  bool finite_differences = false;
  FdOptions fd{1e-3, true};
};

struct VerifyReport {
  int m = 0;
  double beta = 0.0;
  Variant variant = Variant::rederived;
  double lambda = 0.0;
  double K = 0.0;
  double relation_residual = 0.0;   // |poly(lambda)| / max(1, |a0|)
  PseudosphericalReport pseudospherical;
  ResidualReport einstein;
  double vertical_ricci_defect = 0.0;  // max |coeff + lambda|
  double curvature_tol = 0.0;
  Tolerances tol;
  bool finite_differences = false;
  bool pass = false;
  std::string note;
};

// Throws NoAdmissibleRoot when the relation has no admissible root for (m, beta).
VerifyReport verify_theorem(int m, double beta, const VerifyOptions& opts = {});

// Base metric of curvature K and the warping function realised on the constructed
// chart for an admissible (m, lambda, beta): g = g_bar / (-K) and f(u, v) = u.
struct BaseSolution {
  Metric2D metric;
  ScalarField2D warping;
  WarpParams params;
};

BaseSolution base_solution(int m, double lambda, double beta, const StripSpec& strip,
                           std::optional<FdOptions> fd = std::nullopt);

}  // namespace wpe
