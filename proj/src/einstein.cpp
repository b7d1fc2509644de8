#include "wpe/einstein.hpp"

#include <algorithm>
#include <cmath>

#include "wpe/error.hpp"

namespace wpe {

namespace {

double positive_value(const Metric2D& g, const ScalarField2D& f, Point2 p) {
  g.require(p);
  const double fv = f(p);
  if (!(fv > 0.0)) throw PreconditionError("warping function must be positive");
  return fv;
}

}  // namespace

SymMat2 tensor_residual(const Metric2D& g, const ScalarField2D& f, const WarpParams& wp, Point2 p) {
  if (wp.n != 2) throw PreconditionError("tensor residual uses Ric_B = K g_B and needs n = 2");
  const double fv = positive_value(g, f, p);
  const double K = gauss_curvature(g, p);
  const SymMat2 H = hessian(g, f, p);
  const double s = wp.m / fv;
  return SymMat2{
      .a11 = (K - wp.lambda) * g.E(p) - s * H.a11,
      .a12 = -s * H.a12,
      .a22 = (K - wp.lambda) * g.G(p) - s * H.a22,
  };
}

double contracted_residual(const Metric2D& g, const ScalarField2D& f, const WarpParams& wp, Point2 p) {
  const double fv = positive_value(g, f, p);
  const double RB = scalar_curvature(g, p);
  return RB * fv - wp.m * laplace_beltrami(g, f, p) - wp.n * fv * wp.lambda;
}

double scalar_constraint_residual(const Metric2D& g, const ScalarField2D& f, const WarpParams& wp,
                                  Point2 p) {
  const double fv = positive_value(g, f, p);
  return fv * laplace_beltrami(g, f, p) + (wp.m - 1) * grad_norm_sq(g, f, p) + wp.lambda * fv * fv -
         wp.mu;
}

double vertical_ricci_coeff(double f_val, double lap, double gradsq, int m) {
  if (!(f_val > 0.0)) throw PreconditionError("warping function value must be positive");
  if (m < 1) throw PreconditionError("fiber dimension must be at least 1");
  return lap / f_val + (m - 1) * gradsq / (f_val * f_val);
}

double ResidualReport::max_residual() const {
  return std::max({tensor_residual.max_abs(), std::fabs(contracted_residual),
                   std::fabs(scalar_constraint_residual)});
}

ResidualReport evaluate_residuals(const Metric2D& g, const ScalarField2D& f, const WarpParams& wp,
                                  std::span<const Point2> samples) {
  if (samples.empty()) throw PreconditionError("residual evaluation needs at least one sample");
  ResidualReport r;
  double worst = -1.0;
  for (const Point2 p : samples) {
    const SymMat2 t = tensor_residual(g, f, wp, p);
    const double c = std::fabs(contracted_residual(g, f, wp, p));
    const double s = std::fabs(scalar_constraint_residual(g, f, wp, p));
    r.tensor_residual.a11 = std::max(r.tensor_residual.a11, std::fabs(t.a11));
    r.tensor_residual.a12 = std::max(r.tensor_residual.a12, std::fabs(t.a12));
    r.tensor_residual.a22 = std::max(r.tensor_residual.a22, std::fabs(t.a22));
    r.contracted_residual = std::max(r.contracted_residual, c);
    r.scalar_constraint_residual = std::max(r.scalar_constraint_residual, s);
    const double here = std::max({t.max_abs(), c, s});
    if (here > worst) {
      worst = here;
      r.max_point = p;
    }
  }
  r.sample_count = samples.size();
  return r;
}

}  // namespace wpe
