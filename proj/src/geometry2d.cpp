#include "wpe/geometry2d.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "wpe/error.hpp"

namespace wpe {

bool is_finite(Point2 p) { return std::isfinite(p.u) && std::isfinite(p.v); }

namespace {

bool finite_jet(const Jet2& j) {
  if (!std::isfinite(j.val)) return false;
  for (double x : j.d)
    if (!std::isfinite(x)) return false;
  for (double x : j.dd)
    if (!std::isfinite(x)) return false;
  return true;
}

Jet2 central_differences(const ScalarField2D::ValueFn& f, Point2 p, double h) {
  const double f0 = f(p);
  const double fe = f({p.u + h, p.v});
  const double fw = f({p.u - h, p.v});
  const double fn = f({p.u, p.v + h});
  const double fs = f({p.u, p.v - h});
  const double fne = f({p.u + h, p.v + h});
  const double fnw = f({p.u - h, p.v + h});
  const double fse = f({p.u + h, p.v - h});
  const double fsw = f({p.u - h, p.v - h});

  Jet2 j(f0);
  j.d[0] = (fe - fw) / (2.0 * h);
  j.d[1] = (fn - fs) / (2.0 * h);
  j.dd[0] = (fe - 2.0 * f0 + fw) / (h * h);
  j.dd[3] = (fn - 2.0 * f0 + fs) / (h * h);
  j.dd[1] = j.dd[2] = (fne - fse - fnw + fsw) / (4.0 * h * h);
  return j;
}

}  // namespace

ScalarField2D ScalarField2D::from_jet(JetFn jet) {
  ScalarField2D f;
  f.value_ = [jet](Point2 p) { return jet(p).val; };
  f.exact_ = [jet](Point2 p) {
    Jet2 j = jet(p);
    const double scale = 1.0 + std::max({std::fabs(j.dd[1]), std::fabs(j.dd[2])});
    if (std::fabs(j.dd[1] - j.dd[2]) > 1e-10 * scale)
      throw DerivativeError("exact field has asymmetric mixed partials");
    return j;
  };
  f.mode_ = DerivMode::exact;
  return f;
}

ScalarField2D ScalarField2D::sampled(ValueFn value, FdOptions fd) {
  if (!(fd.step > 0.0)) throw PreconditionError("finite-difference step must be positive");
  ScalarField2D f;
  f.value_ = std::move(value);
  f.mode_ = DerivMode::finite_difference;
  f.fd_ = fd;
  return f;
}

ScalarField2D ScalarField2D::constant(double c) {
  return from_expr([c](auto u, auto) { return decltype(u)(c); });
}

ScalarField2D ScalarField2D::with_finite_differences(FdOptions fd) const {
  ScalarField2D f = sampled(value_, fd);
  f.exact_ = exact_;
  return f;
}

ScalarField2D ScalarField2D::scaled(double c) const {
  ScalarField2D f = *this;
  f.value_ = [inner = value_, c](Point2 p) { return c * inner(p); };
  if (exact_) f.exact_ = [inner = exact_, c](Point2 p) { return c * inner(p); };
  return f;
}

Jet2 ScalarField2D::jet(Point2 p, const Domain& domain) const {
  if (mode_ == DerivMode::exact && exact_) {
    Jet2 j = exact_(p);
    if (!finite_jet(j)) throw DerivativeError("non-finite derivative");
    return j;
  }
  const double h = fd_.step;
  if (domain) {
    for (double su : {-h, 0.0, h})
      for (double sv : {-h, 0.0, h})
        if (!domain({p.u + su, p.v + sv}))
          throw DomainError("finite-difference stencil leaves the chart domain");
  }
  Jet2 j = central_differences(value_, p, h);
  if (fd_.richardson) {
    const Jet2 half = central_differences(value_, p, 0.5 * h);
    for (std::size_t i = 0; i < 2; ++i) j.d[i] = (4.0 * half.d[i] - j.d[i]) / 3.0;
    for (std::size_t i = 0; i < 4; ++i) j.dd[i] = (4.0 * half.dd[i] - j.dd[i]) / 3.0;
  }
  if (!finite_jet(j)) throw DerivativeError("non-finite finite-difference derivative");
  return j;
}

double SymMat2::max_abs() const {
  return std::max({std::fabs(a11), std::fabs(a12), std::fabs(a22)});
}

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::flat: return "flat";
    case MetricKind::poincare_disk: return "poincare_disk";
    case MetricKind::poincare_half_plane: return "poincare_half_plane";
    case MetricKind::constructed: return "constructed";
    case MetricKind::custom: return "custom";
    case MetricKind::rescaled: return "rescaled";
  }
  return "unknown";
}

Metric2D::Metric2D(ScalarField2D E, ScalarField2D G, Domain domain, MetricKind kind)
    : E_(std::move(E)), G_(std::move(G)), domain_(std::move(domain)), kind_(kind) {}

Metric2D Metric2D::flat() {
  return Metric2D(ScalarField2D::constant(1.0), ScalarField2D::constant(1.0),
                  [](Point2) { return true; }, MetricKind::flat);
}

Metric2D Metric2D::poincare_disk(double eps) {
  auto conformal = [](auto u, auto v) {
    auto w = 1.0 - u * u - v * v;
    return 4.0 / (w * w);
  };
  return Metric2D(ScalarField2D::from_expr(conformal), ScalarField2D::from_expr(conformal),
                  [eps](Point2 p) { return p.u * p.u + p.v * p.v < 1.0 - eps; },
                  MetricKind::poincare_disk);
}

Metric2D Metric2D::poincare_half_plane(double eps) {
  auto conformal = [](auto, auto v) { return 1.0 / (v * v); };
  return Metric2D(ScalarField2D::from_expr(conformal), ScalarField2D::from_expr(conformal),
                  [eps](Point2 p) { return p.v >= eps; }, MetricKind::poincare_half_plane);
}

bool Metric2D::contains(Point2 p) const { return is_finite(p) && (!domain_ || domain_(p)); }

void Metric2D::require(Point2 p) const {
  if (!is_finite(p)) throw DomainError("non-finite chart point");
  if (domain_ && !domain_(p)) throw DomainError("point outside the " + to_string(kind_) + " chart domain");
}

double Metric2D::E(Point2 p) const {
  require(p);
  return E_(p);
}

double Metric2D::G(Point2 p) const {
  require(p);
  return G_(p);
}

MetricJets Metric2D::jets(Point2 p) const {
  require(p);
  MetricJets m{E_.jet(p, domain_), G_.jet(p, domain_)};
  if (!(m.E.val > 0.0) || !(m.G.val > 0.0)) throw DomainError("metric components must be positive");
  if (m.E.val * m.G.val < 1e-300) throw DomainError("metric determinant below positivity tolerance");
  return m;
}

Metric2D Metric2D::with_finite_differences(FdOptions fd) const {
  return Metric2D(E_.with_finite_differences(fd), G_.with_finite_differences(fd), domain_, kind_);
}

Metric2D Metric2D::with_kind(MetricKind kind) const {
  Metric2D g = *this;
  g.kind_ = kind;
  return g;
}

Christoffel christoffel(const Metric2D& g, Point2 p) {
  const auto [E, G] = g.jets(p);
  return Christoffel{
      .u_uu = E.d[0] / (2.0 * E.val),
      .u_uv = E.d[1] / (2.0 * E.val),
      .u_vv = -G.d[0] / (2.0 * E.val),
      .v_uu = -E.d[1] / (2.0 * G.val),
      .v_uv = G.d[0] / (2.0 * G.val),
      .v_vv = G.d[1] / (2.0 * G.val),
  };
}

double laplace_beltrami(const Metric2D& g, const ScalarField2D& f, Point2 p) {
  const auto [E, G] = g.jets(p);
  const Jet2 F = f.jet(p, g.domain());
  // (1/W) [d_u(W f_u / E) + d_v(W f_v / G)], W = sqrt(EG)
  const double W = std::sqrt(E.val * G.val);
  const double Wu = (E.d[0] * G.val + E.val * G.d[0]) / (2.0 * W);
  const double Wv = (E.d[1] * G.val + E.val * G.d[1]) / (2.0 * W);
  return F.dd[0] / E.val + F.dd[3] / G.val +
         F.d[0] * (Wu / (W * E.val) - E.d[0] / (E.val * E.val)) +
         F.d[1] * (Wv / (W * G.val) - G.d[1] / (G.val * G.val));
}

double grad_norm_sq(const Metric2D& g, const ScalarField2D& f, Point2 p) {
  const auto [E, G] = g.jets(p);
  const Jet2 F = f.jet(p, g.domain());
  return F.d[0] * F.d[0] / E.val + F.d[1] * F.d[1] / G.val;
}

SymMat2 hessian(const Metric2D& g, const ScalarField2D& f, Point2 p) {
  const Christoffel c = christoffel(g, p);
  const Jet2 F = f.jet(p, g.domain());
  return SymMat2{
      .a11 = F.dd[0] - c.u_uu * F.d[0] - c.v_uu * F.d[1],
      .a12 = F.dd[1] - c.u_uv * F.d[0] - c.v_uv * F.d[1],
      .a22 = F.dd[3] - c.u_vv * F.d[0] - c.v_vv * F.d[1],
  };
}

double metric_trace(const Metric2D& g, const SymMat2& t, Point2 p) {
  return t.a11 / g.E(p) + t.a22 / g.G(p);
}

double gauss_curvature(const Metric2D& g, Point2 p) {
  const auto [E, G] = g.jets(p);
  const double W = std::sqrt(E.val * G.val);
  const double Wu = (E.d[0] * G.val + E.val * G.d[0]) / (2.0 * W);
  const double Wv = (E.d[1] * G.val + E.val * G.d[1]) / (2.0 * W);
  const double du_term = G.dd[0] / W - G.d[0] * Wu / (W * W);
  const double dv_term = E.dd[3] / W - E.d[1] * Wv / (W * W);
  return -(du_term + dv_term) / (2.0 * W);
}

Metric2D rescale(const Metric2D& g, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw PreconditionError("rescale factor must be positive and finite");
  return Metric2D(g.E_field().scaled(c), g.G_field().scaled(c), g.domain(), MetricKind::rescaled);
}

}  // namespace wpe
