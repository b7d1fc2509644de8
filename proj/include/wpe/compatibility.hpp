#pragma once

// Profile-function reduction of the warping-function problem. A field f with
// |grad f|^2 = p(f)^2 and Delta f = p(f) q(f) exists on a pseudospherical
// surface iff
//   p p'' - p'^2 + 2 q p' - p q' - q^2 + 1 = 0,
// and then g = (df / p(f))^2 + (s(f) dh)^2 with s'/s = (q - p')/p has K = -1.

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "wpe/geometry2d.hpp"
#include "wpe/jet.hpp"
#include "wpe/params.hpp"

namespace wpe {

// Open interval (lo, hi); infinite ends allowed.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return t > lo && t < hi; }
};

inline constexpr Interval kPositiveReals{0.0, std::numeric_limits<double>::infinity()};

class ProfileFn {
 public:
  enum class Form { constant, linear, general };
  using ValueFn = std::function<double(double)>;
  using JetFn = std::function<Jet1(double)>;

  static ProfileFn constant(double c, Interval domain = {});
  // a t + b
  static ProfileFn linear(double a, double b, Interval domain = {});

  // `expr` must be callable with double and Jet1.
  template <class Expr>
  static ProfileFn from_expr(Expr expr, Interval domain) {
    return from_jet([expr](double t) { return Jet1(expr(Jet1::variable(t, 0))); }, domain);
  }

  static ProfileFn from_jet(JetFn jet, Interval domain);
  // Derivatives by central differences with the given step.
  static ProfileFn sampled(ValueFn value, Interval domain, double step = 1e-4);

  const Interval& domain() const { return domain_; }
  Form form() const { return form_; }
  // Coefficients of a t + b for constant/linear forms.
  double slope() const { return a_; }
  double intercept() const { return b_; }

  // Both throw DomainError outside the domain (or when an FD stencil leaves it).
  double operator()(double t) const;
  Jet1 jet(double t) const;

 private:
  JetFn jet_;
  ValueFn value_;
  Interval domain_;
  Form form_ = Form::general;
  double a_ = 0.0;
  double b_ = 0.0;
  double step_ = 0.0;  // > 0 selects finite differences
};

struct PQPair {
  ProfileFn p;
  ProfileFn q;
  bool rescaled = false;  // true for (p-bar, q-bar) with respect to the K = -1 metric
};

// p p'' - p'^2 + 2 q p' - p q' - q^2 - curvature. With the default curvature
// -1 this is the pseudospherical compatibility residual.
double compat_residual(const PQPair& pq, double t, double curvature = -1.0);

// Rescaled profiles for |grad f|^2 = -f^2 (lambda + beta)/(m - 1), Delta f = beta f on a
// base of curvature K = lambda + m beta / 2, after rescaling the base metric by -K.
// Throws PreconditionError unless the parameters are admissible.
PQPair pq_from_params(int m, double lambda, double beta);

// Curvature-weighted residual of the unrescaled profiles p = sqrt(A) f,
// q = beta / sqrt(A), A = -(lambda + beta)/(m - 1), continued formally to A < 0:
//   -A + 2 beta - beta^2 / A - K.
// Equals (-K) times the rescaled residual when the parameters are admissible.
double formal_compat_residual(int m, double lambda, double beta);

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_depth = 50;
};

// s with s' = s (q - p') / p and s(f0) = 1; closed form when p is a t and q is constant.
ProfileFn integrate_s(const PQPair& pq, double f0, double f1, QuadratureOptions opts = {});

// E = 1/p(u)^2, G = s(u)^2 on the chart (u, v) = (f, h).
Metric2D build_metric(const PQPair& pq, const ProfileFn& s, std::optional<FdOptions> fd = std::nullopt);

// Sample strip of the constructed chart.
struct StripSpec {
  double f_lo = 0.5;
  double f_hi = 4.0;
  double h_lo = -1.0;
  double h_hi = 1.0;
  int nf = 32;
  int nh = 8;

  std::vector<double> f_samples() const;
  std::vector<double> h_samples() const;
  std::vector<Point2> points() const;
};

struct PseudosphericalReport {
  double max_curvature_defect = 0.0;  // max |K + 1|
  double max_compat_residual = 0.0;
  double curvature_tol = 0.0;
  double compat_tol = 0.0;
  bool curvature_ok = false;
  bool compat_ok = false;
  std::size_t sample_count = 0;

  // Both checks certify the same outcome.
  bool consistent() const { return curvature_ok == compat_ok; }
  bool pseudospherical() const { return curvature_ok && compat_ok; }
};

PseudosphericalReport verify_pseudospherical(const PQPair& pq, const StripSpec& strip, double curvature_tol,
                                             double compat_tol = 1e-8,
                                             std::optional<FdOptions> fd = std::nullopt);

// Residual certificate of a candidate root: the sampled compatibility residual of
// the generated (p-bar, q-bar) when admissible, otherwise |formal_compat_residual|.
struct RootCertificate {
  double lambda = 0.0;
  Admissibility admissibility = Admissibility::admissible;
  bool via_pipeline = false;
  double residual = 0.0;
};

RootCertificate certify_root(int m, double lambda, double beta, const StripSpec& strip = {});

}  // namespace wpe
