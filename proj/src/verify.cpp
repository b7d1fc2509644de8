#include "wpe/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wpe {

BaseSolution base_solution(int m, double lambda, double beta, const StripSpec& strip,
                           std::optional<FdOptions> fd) {
  const PQPair pq = pq_from_params(m, lambda, beta);
  const ProfileFn s = integrate_s(pq, strip.f_lo, strip.f_hi);
  const WarpParams wp = theorem_params(m, lambda, beta);
  Metric2D g = rescale(build_metric(pq, s, fd), -1.0 / wp.K);
  ScalarField2D f = ScalarField2D::from_expr([](auto u, auto) { return u; });
  if (fd) f = f.with_finite_differences(*fd);
  return BaseSolution{std::move(g), std::move(f), wp};
}

VerifyReport verify_theorem(int m, double beta, const VerifyOptions& opts) {
  VerifyReport r;
  r.m = m;
  r.beta = beta;
  r.variant = opts.variant;
  r.tol = opts.tol;
  r.finite_differences = opts.finite_differences;
  r.curvature_tol = opts.finite_differences ? opts.tol.curvature_fd : opts.tol.curvature_exact;

  if (m < 2) {
    throw NoAdmissibleRoot("m = " + std::to_string(m) +
                           " is out of domain: the gradient identity divides by m - 1");
  }
  const RelationPoly poly = make_poly(opts.variant, m, beta);
  const RootReport roots = solve_lambda(poly);
  const std::vector<double> admissible = roots.admissible_roots();
  if (admissible.empty()) {
    std::ostringstream os;
    os << "no admissible root for m = " << m << ", beta = " << beta << " (" << to_string(opts.variant)
       << " relation)";
    throw NoAdmissibleRoot(os.str());
  }
  r.lambda = admissible.front();
  r.K = base_curvature(m, r.lambda, beta);
  r.relation_residual = std::fabs(poly(r.lambda)) / std::max(1.0, std::fabs(poly.a0));
  if (opts.variant == Variant::published && beta != 1.0)
    r.note = "published relation differs from the rederived one when beta != 1";

  const std::optional<FdOptions> fd =
      opts.finite_differences ? std::optional<FdOptions>(opts.fd) : std::nullopt;
  const PQPair pq = pq_from_params(m, r.lambda, beta);
  r.pseudospherical = verify_pseudospherical(pq, opts.strip, r.curvature_tol, opts.tol.compat, fd);

  const BaseSolution base = base_solution(m, r.lambda, beta, opts.strip, fd);
  const std::vector<Point2> pts = opts.strip.points();
  r.einstein = evaluate_residuals(base.metric, base.warping, base.params, pts);
  for (const Point2 p : pts) {
    const double coeff = vertical_ricci_coeff(base.warping(p), laplace_beltrami(base.metric, base.warping, p),
                                              grad_norm_sq(base.metric, base.warping, p), m);
    r.vertical_ricci_defect = std::max(r.vertical_ricci_defect, std::fabs(coeff + r.lambda));
  }

  r.pass = r.relation_residual <= opts.tol.relation && r.pseudospherical.compat_ok &&
           r.pseudospherical.curvature_ok && r.einstein.max_residual() <= opts.tol.einstein &&
           r.vertical_ricci_defect <= opts.tol.einstein;
  return r;
}

}  // namespace wpe
