#pragma once

// Differential geometry of 2D Riemannian metrics written in orthogonal
// coordinates, ds^2 = E du^2 + G dv^2.

#include <functional>
#include <string>
#include <utility>

#include "wpe/jet.hpp"

namespace wpe {

struct Point2 {
  double u = 0.0;
  double v = 0.0;
};

bool is_finite(Point2 p);

using Domain = std::function<bool(Point2)>;

// Points with u^2 + v^2 >= 1 - eps (disk) or v < eps (half-plane) are rejected.
inline constexpr double kDomainEps = 1e-8;

enum class DerivMode { exact, finite_difference };

struct FdOptions {
  double step = 1e-4;
  bool richardson = false;
};

// Scalar field on a chart. Derivatives are either exact (forward-mode jets
// evaluated through the field's own expression, or user callbacks) or
// central finite differences.
class ScalarField2D {
 public:
  using ValueFn = std::function<double(Point2)>;
  using JetFn = std::function<Jet2(Point2)>;

  // `expr` must be callable as expr(u, v) for both double and Jet2 arguments.
  template <class Expr>
  static ScalarField2D from_expr(Expr expr) {
    ScalarField2D f;
    f.value_ = [expr](Point2 p) { return static_cast<double>(expr(p.u, p.v)); };
    f.exact_ = [expr](Point2 p) {
      return Jet2(expr(Jet2::variable(p.u, 0), Jet2::variable(p.v, 1)));
    };
    f.mode_ = DerivMode::exact;
    return f;
  }

  // Exact callbacks supplied by the caller; second partials are checked for symmetry.
  static ScalarField2D from_jet(JetFn jet);
  static ScalarField2D sampled(ValueFn value, FdOptions fd = {});
  static ScalarField2D constant(double c);

  DerivMode mode() const { return mode_; }
  const FdOptions& fd_options() const { return fd_; }

  double operator()(Point2 p) const { return value_(p); }

  // Value with first and second partials at p. In finite-difference mode every
  // stencil point must satisfy `domain` (when one is given).
  Jet2 jet(Point2 p, const Domain& domain = {}) const;

  ScalarField2D with_finite_differences(FdOptions fd = {}) const;
  ScalarField2D scaled(double c) const;

 private:
  ValueFn value_;
  JetFn exact_;
  DerivMode mode_ = DerivMode::exact;
  FdOptions fd_{};
};

struct SymMat2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;

  double max_abs() const;
};

enum class MetricKind { flat, poincare_disk, poincare_half_plane, constructed, custom, rescaled };

std::string to_string(MetricKind kind);

struct MetricJets {
  Jet2 E;
  Jet2 G;
};

class Metric2D {
 public:
  Metric2D(ScalarField2D E, ScalarField2D G, Domain domain, MetricKind kind);

  static Metric2D flat();
  // 4 (du^2 + dv^2) / (1 - u^2 - v^2)^2
  static Metric2D poincare_disk(double eps = kDomainEps);
  // (du^2 + dv^2) / v^2
  static Metric2D poincare_half_plane(double eps = kDomainEps);

  MetricKind kind() const { return kind_; }
  const Domain& domain() const { return domain_; }
  const ScalarField2D& E_field() const { return E_; }
  const ScalarField2D& G_field() const { return G_; }

  bool contains(Point2 p) const;
  // Throws DomainError when p is not a finite point of the domain.
  void require(Point2 p) const;

  double E(Point2 p) const;
  double G(Point2 p) const;
  // E, G with derivatives; throws DomainError on non-positive components.
  MetricJets jets(Point2 p) const;

  Metric2D with_finite_differences(FdOptions fd = {}) const;
  Metric2D with_kind(MetricKind kind) const;

 private:
  ScalarField2D E_;
  ScalarField2D G_;
  Domain domain_;
  MetricKind kind_;
};

// Gamma^k_ij of an orthogonal metric; `u_vv` reads Gamma^u_vv.
struct Christoffel {
  double u_uu, u_uv, u_vv;
  double v_uu, v_uv, v_vv;
};

Christoffel christoffel(const Metric2D& g, Point2 p);

double laplace_beltrami(const Metric2D& g, const ScalarField2D& f, Point2 p);
double grad_norm_sq(const Metric2D& g, const ScalarField2D& f, Point2 p);
SymMat2 hessian(const Metric2D& g, const ScalarField2D& f, Point2 p);

// g^ij T_ij for a symmetric tensor T.
double metric_trace(const Metric2D& g, const SymMat2& t, Point2 p);

// Brioschi formula specialised to orthogonal coordinates.
double gauss_curvature(const Metric2D& g, Point2 p);
inline double scalar_curvature(const Metric2D& g, Point2 p) { return 2.0 * gauss_curvature(g, p); }

// Constant conformal rescaling c*g, c > 0.
Metric2D rescale(const Metric2D& g, double c);

}  // namespace wpe
