#include "wpe/compatibility.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "wpe/error.hpp"

namespace wpe {

ProfileFn ProfileFn::constant(double c, Interval domain) {
  ProfileFn f = from_jet([c](double) { return Jet1(c); }, domain);
  f.form_ = Form::constant;
  f.b_ = c;
  return f;
}

ProfileFn ProfileFn::linear(double a, double b, Interval domain) {
  ProfileFn f = from_jet([a, b](double t) { return a * Jet1::variable(t, 0) + b; }, domain);
  f.form_ = a == 0.0 ? Form::constant : Form::linear;
  f.a_ = a;
  f.b_ = b;
  return f;
}

ProfileFn ProfileFn::from_jet(JetFn jet, Interval domain) {
  ProfileFn f;
  f.value_ = [jet](double t) { return jet(t).val; };
  f.jet_ = std::move(jet);
  f.domain_ = domain;
  return f;
}

ProfileFn ProfileFn::sampled(ValueFn value, Interval domain, double step) {
  if (!(step > 0.0)) throw PreconditionError("finite-difference step must be positive");
  ProfileFn f;
  f.value_ = std::move(value);
  f.domain_ = domain;
  f.step_ = step;
  return f;
}

double ProfileFn::operator()(double t) const {
  if (!std::isfinite(t) || !domain_.contains(t)) throw DomainError("profile argument outside its interval");
  return value_(t);
}

Jet1 ProfileFn::jet(double t) const {
  if (!std::isfinite(t) || !domain_.contains(t)) throw DomainError("profile argument outside its interval");
  if (step_ == 0.0) return jet_(t);
  const double h = step_;
  if (!domain_.contains(t - h) || !domain_.contains(t + h))
    throw DomainError("finite-difference stencil leaves the profile interval");
  const double f0 = value_(t), fp = value_(t + h), fm = value_(t - h);
  Jet1 j(f0);
  j.d[0] = (fp - fm) / (2.0 * h);
  j.dd[0] = (fp - 2.0 * f0 + fm) / (h * h);
  return j;
}

double compat_residual(const PQPair& pq, double t, double curvature) {
  const Jet1 p = pq.p.jet(t);
  const Jet1 q = pq.q.jet(t);
  if (!(p.val > 0.0)) throw PreconditionError("p must be positive");
  const double pd = p.d[0], qd = q.d[0];
  return p.val * p.dd[0] - pd * pd + 2.0 * q.val * pd - p.val * qd - q.val * q.val - curvature;
}

PQPair pq_from_params(int m, double lambda, double beta) {
  const Admissibility a = classify(m, lambda, beta);
  if (a != Admissibility::admissible) {
    std::ostringstream os;
    os << "parameters (m=" << m << ", lambda=" << lambda << ", beta=" << beta
       << ") are not admissible: " << to_string(a);
    throw PreconditionError(os.str());
  }
  const double A = -(lambda + beta) / (m - 1);
  const double negK = -base_curvature(m, lambda, beta);
  const double slope = std::sqrt(A / negK);
  const double qbar = beta / std::sqrt(A * negK);
  return PQPair{ProfileFn::linear(slope, 0.0, kPositiveReals), ProfileFn::constant(qbar, kPositiveReals),
                true};
}

double formal_compat_residual(int m, double lambda, double beta) {
  if (m < 2) throw PreconditionError("formal residual needs m >= 2");
  const double A = -(lambda + beta) / (m - 1);
  if (A == 0.0) return std::numeric_limits<double>::infinity();
  return -A + 2.0 * beta - beta * beta / A - base_curvature(m, lambda, beta);
}

namespace {

struct Simpson {
  const std::function<double(double)>& f;
  int max_depth;
  bool failed = false;

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth) {
      failed = true;
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, QuadratureOptions opts) {
  if (a == b) return 0.0;
  const double sign = a < b ? 1.0 : -1.0;
  const double lo = std::min(a, b), hi = std::max(a, b);
  const double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
  const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
  Simpson s{f, opts.max_depth};
  const double value = s.recurse(lo, hi, fa, fm, fb, whole, opts.abs_tol, 0);
  if (s.failed || !std::isfinite(value))
    throw SolverError("adaptive Simpson quadrature did not converge", std::fabs(value));
  return sign * value;
}

Interval intersect(const Interval& a, const Interval& b) {
  return Interval{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

}  // namespace

ProfileFn integrate_s(const PQPair& pq, double f0, double f1, QuadratureOptions opts) {
  if (!(f0 > 0.0) || !(f1 > f0)) throw PreconditionError("integrate_s needs 0 < f0 < f1");
  const Interval domain = intersect(pq.p.domain(), pq.q.domain());
  if (!domain.contains(f0) || !domain.contains(f1))
    throw DomainError("normalisation interval is not inside the profile domain");
  constexpr int kScan = 256;
  for (int i = 0; i <= kScan; ++i) {
    const double t = f0 + (f1 - f0) * i / kScan;
    if (!(pq.p(t) > 0.0)) throw PreconditionError("p vanishes on the integration interval");
  }

  if (pq.p.form() == ProfileFn::Form::linear && pq.p.intercept() == 0.0 &&
      pq.q.form() == ProfileFn::Form::constant) {
    const double a = pq.p.slope(), c = pq.q.intercept();
    const double k = (c - a) / a;
    return ProfileFn::from_expr([f0, k](auto t) { return pow(t / f0, k); },
                                intersect(domain, kPositiveReals));
  }

  const PQPair profiles = pq;
  auto log_derivative = [profiles](double t) {
    const Jet1 p = profiles.p.jet(t);
    return (profiles.q(t) - p.d[0]) / p.val;
  };
  return ProfileFn::from_jet(
      [profiles, log_derivative, f0, opts](double t) {
        const Jet1 p = profiles.p.jet(t);
        const Jet1 q = profiles.q.jet(t);
        const double s = std::exp(adaptive_simpson(log_derivative, f0, t, opts));
        const double phi = (q.val - p.d[0]) / p.val;
        const double dphi = (q.d[0] - p.dd[0]) / p.val - (q.val - p.d[0]) * p.d[0] / (p.val * p.val);
        Jet1 j(s);
        j.d[0] = s * phi;
        j.dd[0] = s * (phi * phi + dphi);
        return j;
      },
      domain);
}

Metric2D build_metric(const PQPair& pq, const ProfileFn& s, std::optional<FdOptions> fd) {
  const Interval domain = intersect(pq.p.domain(), s.domain());
  const ProfileFn p = pq.p;
  auto E = ScalarField2D::from_jet([p](Point2 x) {
    const Jet2 P = compose(p.jet(x.u), Jet2::variable(x.u, 0));
    if (!(P.val > 0.0)) throw DomainError("p must be positive on the chart strip");
    return 1.0 / (P * P);
  });
  auto G = ScalarField2D::from_jet([s](Point2 x) {
    const Jet2 S = compose(s.jet(x.u), Jet2::variable(x.u, 0));
    if (!(S.val > 0.0)) throw DomainError("s must be positive on the chart strip");
    return S * S;
  });
  Metric2D g(std::move(E), std::move(G), [domain](Point2 x) { return domain.contains(x.u); },
             MetricKind::constructed);
  if (fd) return g.with_finite_differences(*fd);
  return g;
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw PreconditionError("sample count must be positive");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return out;
}

}  // namespace

std::vector<double> StripSpec::f_samples() const { return linspace(f_lo, f_hi, nf); }
std::vector<double> StripSpec::h_samples() const { return linspace(h_lo, h_hi, nh); }

std::vector<Point2> StripSpec::points() const {
  std::vector<Point2> pts;
  for (double f : f_samples())
    for (double h : h_samples()) pts.push_back({f, h});
  return pts;
}

PseudosphericalReport verify_pseudospherical(const PQPair& pq, const StripSpec& strip, double curvature_tol,
                                             double compat_tol, std::optional<FdOptions> fd) {
  const ProfileFn s = integrate_s(pq, strip.f_lo, strip.f_hi);
  const Metric2D g = build_metric(pq, s, fd);

  PseudosphericalReport r;
  r.curvature_tol = curvature_tol;
  r.compat_tol = compat_tol;
  for (const Point2 x : strip.points()) {
    r.max_curvature_defect = std::max(r.max_curvature_defect, std::fabs(gauss_curvature(g, x) + 1.0));
    ++r.sample_count;
  }
  for (double f : strip.f_samples())
    r.max_compat_residual = std::max(r.max_compat_residual, std::fabs(compat_residual(pq, f)));
  r.curvature_ok = r.max_curvature_defect <= curvature_tol;
  r.compat_ok = r.max_compat_residual <= compat_tol;
  return r;
}

RootCertificate certify_root(int m, double lambda, double beta, const StripSpec& strip) {
  RootCertificate c;
  c.lambda = lambda;
  c.admissibility = classify(m, lambda, beta);
  if (c.admissibility == Admissibility::admissible) {
    const PQPair pq = pq_from_params(m, lambda, beta);
    c.via_pipeline = true;
    for (double f : strip.f_samples()) c.residual = std::max(c.residual, std::fabs(compat_residual(pq, f)));
  } else if (m >= 2) {
    c.residual = std::fabs(formal_compat_residual(m, lambda, beta));
  } else {
    c.residual = std::numeric_limits<double>::infinity();
  }
  return c;
}

}  // namespace wpe
