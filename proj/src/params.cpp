#include "wpe/params.hpp"

#include "wpe/error.hpp"

namespace wpe {

WarpParams theorem_params(int m, double lambda, double beta) {
  return WarpParams{.n = 2, .m = m, .lambda = lambda, .beta = beta, .mu = 0.0,
                    .K = base_curvature(m, lambda, beta)};
}

void require_theorem_mode(const WarpParams& wp) {
  if (wp.n != 2) throw PreconditionError("theorem mode requires a 2-dimensional base");
  if (wp.mu != 0.0) throw PreconditionError("theorem mode requires a Ricci-flat fiber (mu = 0)");
  if (wp.m < 2) throw PreconditionError("theorem mode requires m >= 2");
  if (!(wp.lambda < 0.0)) throw PreconditionError("theorem mode requires lambda < 0");
  if (!(wp.K < 0.0)) throw PreconditionError("theorem mode requires K < 0");
  if (!(wp.beta > 0.0)) throw PreconditionError("beta must be positive");
}

Admissibility classify(int m, double lambda, double beta) {
  if (!(beta > 0.0)) return Admissibility::invalid_beta;
  if (m < 2) return Admissibility::fiber_dimension_out_of_domain;
  if (lambda + beta == 0.0) return Admissibility::degenerate_profile;
  if (lambda + beta > 0.0) return Admissibility::imaginary_profile;
  if (!(base_curvature(m, lambda, beta) < 0.0)) return Admissibility::nonnegative_curvature;
  return Admissibility::admissible;
}

std::string to_string(Admissibility a) {
  switch (a) {
    case Admissibility::admissible: return "admissible";
    case Admissibility::fiber_dimension_out_of_domain: return "fiber dimension out of domain (m < 2)";
    case Admissibility::degenerate_profile: return "degenerate (lambda + beta = 0, p == 0)";
    case Admissibility::imaginary_profile: return "imaginary profile (lambda + beta > 0)";
    case Admissibility::nonnegative_curvature: return "non-negative base curvature (lambda + m beta/2 >= 0)";
    case Admissibility::invalid_beta: return "beta must be positive";
  }
  return "unknown";
}

}  // namespace wpe
