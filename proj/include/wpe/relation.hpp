#pragma once

// Quadratic relation a2 lambda^2 + a1 lambda + a0 = 0 between the fiber
// dimension m, the Einstein constant lambda and the screening parameter beta.
//
// Two coefficient sets are provided:
//   published : (2 - m, beta (1 + 3m/2 - m^2/2), m^2 (1 - beta^2/2) + m (5 beta^2/2 - 2))
//   rederived : (2 - m, beta (1 + 3m/2 - m^2/2), beta^2 (m^2 + m) / 2)
// They coincide at beta = 1; otherwise published a0 - rederived a0 = m (m - 2)(1 - beta^2).
// Only the rederived set is covariant under lambda -> beta lambda and agrees
// with the profile compatibility residual for beta != 1.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wpe/params.hpp"

namespace wpe {

using Rational = boost::multiprecision::cpp_rational;

enum class Provenance { published_beta1, published_general, rederived };
enum class Variant { published, rederived };

std::string to_string(Provenance p);
std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

struct RelationPoly {
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;
  Provenance provenance = Provenance::rederived;
  int m = 0;
  double beta = 1.0;

  double operator()(double lambda) const { return (a2 * lambda + a1) * lambda + a0; }
};

struct ExactCoefficients {
  Rational a2, a1, a0;

  bool operator==(const ExactCoefficients&) const = default;
};

// Exact coefficients; every double beta is an exact dyadic rational.
ExactCoefficients exact_published(int m, const Rational& beta);
ExactCoefficients exact_rederived(int m, const Rational& beta);
// The beta = 1 form (2 - m, 1 + 3m/2 - m^2/2, m^2/2 + m/2).
ExactCoefficients exact_published_beta1(int m);

RelationPoly poly_published(int m, double beta);
RelationPoly poly_published_beta1(int m);
RelationPoly poly_rederived(int m, double beta);
RelationPoly make_poly(Variant variant, int m, double beta);

struct RootFlags {
  double lambda = 0.0;
  double K = 0.0;  // lambda + m beta / 2
  bool lambda_plus_beta_negative = false;
  bool K_negative = false;
  bool m_in_domain = false;
  bool overall = false;
  Admissibility classification = Admissibility::admissible;
};

struct RootReport {
  std::vector<double> roots;  // descending; a double root appears once
  std::vector<int> multiplicity;
  std::vector<double> back_substitution;  // |poly(root)|
  bool degenerate_linear = false;
  std::vector<RootFlags> flags;  // one per root

  std::vector<double> admissible_roots() const;
};

// Cancellation-free quadratic formula; a2 = 0 is solved as a linear equation.
// Throws PreconditionError when a2 = a1 = 0.
RootReport solve_lambda(const RelationPoly& poly);

struct SweepRow {
  int m = 0;
  double beta = 0.0;
  Variant variant = Variant::rederived;
  RelationPoly poly;
  std::optional<RootReport> report;  // empty when the polynomial is identically constant
  std::optional<double> admissible_root;
  std::optional<double> K;
  bool exists = false;
  std::string note;
};

// Rows ordered by m ascending, then beta ascending.
std::vector<SweepRow> existence_sweep(int m_lo, int m_hi, std::vector<double> betas, Variant variant);

}  // namespace wpe
