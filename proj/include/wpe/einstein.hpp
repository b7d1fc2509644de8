#pragma once

// Residuals of the Einstein condition for a warped product g_B + f^2 g_F over
// a 2D base:
//   Ric_B - (m/f) Hess f = lambda g_B
//   R_B f - m Delta f = n lambda f
//   f Delta f + (m-1) |grad f|^2 + lambda f^2 = mu

#include <cstddef>
#include <span>

#include "wpe/geometry2d.hpp"
#include "wpe/params.hpp"

namespace wpe {

// K g - (m/f) Hess f - lambda g, using Ric_B = K g_B (valid in two dimensions only).
SymMat2 tensor_residual(const Metric2D& g, const ScalarField2D& f, const WarpParams& wp, Point2 p);

// R_B f - m Delta f - n f lambda with R_B = 2 K(p).
double contracted_residual(const Metric2D& g, const ScalarField2D& f, const WarpParams& wp, Point2 p);

// f Delta f + (m-1) |grad f|^2 + lambda f^2 - mu.
double scalar_constraint_residual(const Metric2D& g, const ScalarField2D& f, const WarpParams& wp,
                                  Point2 p);

// Delta f / f + (m-1) |grad f|^2 / f^2, so that Ric_M(V,V) = Ric_F(V,V) - |V|^2 * coeff
// for vertical V.
double vertical_ricci_coeff(double f_val, double lap, double gradsq, int m);

struct ResidualReport {
  SymMat2 tensor_residual;  // componentwise max-abs
  double contracted_residual = 0.0;
  double scalar_constraint_residual = 0.0;
  std::size_t sample_count = 0;
  Point2 max_point;  // where the largest of the three residual magnitudes occurs

  double max_residual() const;
};

ResidualReport evaluate_residuals(const Metric2D& g, const ScalarField2D& f, const WarpParams& wp,
                                  std::span<const Point2> samples);

}  // namespace wpe
