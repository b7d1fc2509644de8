#include "wpe/relation.hpp"

#include <algorithm>
#include <cmath>

#include "wpe/error.hpp"

namespace wpe {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::published_beta1: return "published_beta1";
    case Provenance::published_general: return "published_general";
    case Provenance::rederived: return "rederived";
  }
  return "unknown";
}

std::string to_string(Variant v) { return v == Variant::published ? "published" : "rederived"; }

Variant parse_variant(const std::string& s) {
  if (s == "published") return Variant::published;
  if (s == "rederived") return Variant::rederived;
  throw PreconditionError("unknown relation variant '" + s + "'");
}

namespace {

void require_inputs(int m, double beta) {
  if (m < 1) throw PreconditionError("fiber dimension m must be at least 1");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw PreconditionError("beta must be positive and finite");
}

RelationPoly to_poly(const ExactCoefficients& c, Provenance prov, int m, double beta) {
  return RelationPoly{c.a2.convert_to<double>(), c.a1.convert_to<double>(), c.a0.convert_to<double>(),
                      prov, m, beta};
}

}  // namespace

ExactCoefficients exact_published(int m, const Rational& beta) {
  const Rational M(m), half(1, 2);
  const Rational b2 = beta * beta;
  return ExactCoefficients{
      2 - M,
      beta + 3 * M * beta * half - M * M * beta * half,
      M * M * (1 - b2 * half) + M * (5 * b2 * half - 2),
  };
}

ExactCoefficients exact_rederived(int m, const Rational& beta) {
  const Rational M(m), half(1, 2);
  return ExactCoefficients{
      2 - M,
      beta * (1 + 3 * M * half - M * M * half),
      beta * beta * (M * M + M) * half,
  };
}

ExactCoefficients exact_published_beta1(int m) {
  const Rational M(m), half(1, 2);
  return ExactCoefficients{2 - M, 1 + 3 * M * half - M * M * half, M * M * half + M * half};
}

RelationPoly poly_published(int m, double beta) {
  require_inputs(m, beta);
  return to_poly(exact_published(m, Rational(beta)), Provenance::published_general, m, beta);
}

RelationPoly poly_published_beta1(int m) {
  require_inputs(m, 1.0);
  return to_poly(exact_published_beta1(m), Provenance::published_beta1, m, 1.0);
}

RelationPoly poly_rederived(int m, double beta) {
  require_inputs(m, beta);
  return to_poly(exact_rederived(m, Rational(beta)), Provenance::rederived, m, beta);
}

RelationPoly make_poly(Variant variant, int m, double beta) {
  return variant == Variant::published ? poly_published(m, beta) : poly_rederived(m, beta);
}

std::vector<double> RootReport::admissible_roots() const {
  std::vector<double> out;
  for (const RootFlags& f : flags)
    if (f.overall) out.push_back(f.lambda);
  return out;
}

namespace {

// One Newton step; kept only if it does not increase the residual.
double polish(const RelationPoly& poly, double r) {
  const double d = 2.0 * poly.a2 * r + poly.a1;
  if (d == 0.0) return r;
  const double next = r - poly(r) / d;
  return std::fabs(poly(next)) < std::fabs(poly(r)) ? next : r;
}

RootFlags classify_root(const RelationPoly& poly, double lambda) {
  RootFlags f;
  f.lambda = lambda;
  f.K = base_curvature(poly.m, lambda, poly.beta);
  f.lambda_plus_beta_negative = lambda + poly.beta < 0.0;
  f.K_negative = f.K < 0.0;
  f.m_in_domain = poly.m >= 2;
  f.classification = classify(poly.m, lambda, poly.beta);
  f.overall = f.classification == Admissibility::admissible;
  return f;
}

}  // namespace

RootReport solve_lambda(const RelationPoly& poly) {
  const double a = poly.a2, b = poly.a1, c = poly.a0;
  if (a == 0.0 && b == 0.0) throw PreconditionError("relation polynomial has no lambda dependence");

  RootReport r;
  if (a == 0.0) {
    r.degenerate_linear = true;
    r.roots = {-c / b};
    r.multiplicity = {1};
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
      // no real roots
    } else if (disc == 0.0) {
      r.roots = {-b / (2.0 * a)};
      r.multiplicity = {2};
    } else {
      const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
      double r1 = q / a;
      double r2 = q != 0.0 ? c / q : -r1;
      r1 = polish(poly, r1);
      r2 = polish(poly, r2);
      r.roots = {std::max(r1, r2), std::min(r1, r2)};
      r.multiplicity = {1, 1};
    }
  }
  for (double root : r.roots) {
    r.back_substitution.push_back(std::fabs(poly(root)));
    r.flags.push_back(classify_root(poly, root));
  }
  return r;
}

std::vector<SweepRow> existence_sweep(int m_lo, int m_hi, std::vector<double> betas, Variant variant) {
  if (m_lo > m_hi || betas.empty()) throw PreconditionError("existence sweep needs nonempty ranges");
  std::sort(betas.begin(), betas.end());
  std::vector<SweepRow> rows;
  for (int m = m_lo; m <= m_hi; ++m) {
    for (double beta : betas) {
      SweepRow row;
      row.m = m;
      row.beta = beta;
      row.variant = variant;
      row.poly = make_poly(variant, m, beta);
      if (m < 2) row.note = "out of domain: m - 1 divides the gradient identity";
      if (row.poly.a2 != 0.0 || row.poly.a1 != 0.0) {
        row.report = solve_lambda(row.poly);
        const std::vector<double> adm = row.report->admissible_roots();
        if (!adm.empty()) {
          row.admissible_root = adm.front();
          row.K = base_curvature(m, adm.front(), beta);
          row.exists = true;
        } else if (row.report->roots.empty() && row.note.empty()) {
          row.note = "no real roots";
        } else if (row.note.empty()) {
          row.note = "no admissible root";
        }
      } else if (row.note.empty()) {
        row.note = "identically constant relation";
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace wpe
