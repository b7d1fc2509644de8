#pragma once

// Independent numerical oracles used by the tests. Nothing here calls into the
// library's derivative or curvature code.

#include <cmath>
#include <functional>
#include <random>

namespace wpe::oracle {

using Fn2 = std::function<double(double, double)>;

// Five-point Euclidean Laplacian.
inline double euclid_laplacian(const Fn2& f, double u, double v, double h = 1e-3) {
  return (f(u + h, v) + f(u - h, v) + f(u, v + h) + f(u, v - h) - 4.0 * f(u, v)) / (h * h);
}

// Laplace-Beltrami on the Poincare disk written as ((1 - r^2)^2 / 4) (f_uu + f_vv).
inline double disk_laplacian(const Fn2& f, double u, double v, double h = 1e-3) {
  const double w = 1.0 - u * u - v * v;
  return 0.25 * w * w * euclid_laplacian(f, u, v, h);
}

// Gaussian curvature of a conformal metric lambda (du^2 + dv^2):
// K = -Delta_E(log lambda) / (2 lambda).
inline double conformal_curvature(const Fn2& lambda, double u, double v, double h = 1e-3) {
  const Fn2 log_lambda = [&](double a, double b) { return std::log(lambda(a, b)); };
  return -euclid_laplacian(log_lambda, u, v, h) / (2.0 * lambda(u, v));
}

// Gaussian curvature of dr^2 + G(r) dh^2 from the Jacobi equation K = -(sqrt G)'' / sqrt G,
// differentiated in the arclength r with d/dr = p(f) d/df.
inline double warped_curvature(const std::function<double(double)>& p, const std::function<double(double)>& s,
                               double f, double h = 1e-4) {
  auto ds_dr = [&](double x) { return p(x) * (s(x + h) - s(x - h)) / (2.0 * h); };
  const double d2 = p(f) * (ds_dr(f + h) - ds_dr(f - h)) / (2.0 * h);
  return -d2 / s(f);
}

inline std::mt19937_64 rng(std::uint64_t seed = 20240503) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace wpe::oracle
