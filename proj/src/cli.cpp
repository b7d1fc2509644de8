#include "wpe/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "wpe/compatibility.hpp"
#include "wpe/error.hpp"
#include "wpe/geometry2d.hpp"
#include "wpe/relation.hpp"
#include "wpe/screened_pde.hpp"
#include "wpe/verify.hpp"

namespace wpe::cli {

namespace {

using nlohmann::ordered_json;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::pair<int, int> parse_m_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int m = std::stoi(text);
      return {m, m};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw PreconditionError("--m expects an integer or a range A..B, got '" + text + "'");
  }
}

ordered_json coefficients_json(const RelationPoly& p) {
  return ordered_json{{"a2", p.a2}, {"a1", p.a1}, {"a0", p.a0}};
}

ordered_json root_report_json(const RelationPoly& poly, const RootReport& rep, Variant variant) {
  ordered_json j;
  j["m"] = poly.m;
  j["beta"] = poly.beta;
  j["variant"] = to_string(variant);
  j["provenance"] = to_string(poly.provenance);
  j["coefficients"] = coefficients_json(poly);
  j["degenerate_linear"] = rep.degenerate_linear;
  j["roots"] = rep.roots;
  j["multiplicity"] = rep.multiplicity;
  j["back_substitution"] = rep.back_substitution;
  ordered_json flags = ordered_json::array();
  for (const RootFlags& f : rep.flags) {
    flags.push_back(ordered_json{{"lambda", f.lambda},
                                 {"K", f.K},
                                 {"lambda_plus_beta_negative", f.lambda_plus_beta_negative},
                                 {"K_negative", f.K_negative},
                                 {"m_in_domain", f.m_in_domain},
                                 {"overall", f.overall},
                                 {"classification", to_string(f.classification)}});
  }
  j["root_flags"] = flags;
  j["admissible"] = rep.admissible_roots();
  return j;
}

std::string variant_note(Variant variant, double beta) {
  if (beta == 1.0) return "";
  if (variant == Variant::rederived)
    return "rederived relation in use; the published form has a0 larger by m(m-2)(1-beta^2) for beta != 1";
  return "published relation in use; it differs from the rederived form for beta != 1";
}

int relation_solve(int m, double beta, Variant variant, std::ostream& out, std::ostream& err) {
  const RelationPoly poly = make_poly(variant, m, beta);
  const RootReport rep = solve_lambda(poly);
  ordered_json j = root_report_json(poly, rep, variant);
  j["note"] = variant_note(variant, beta);
  out << j.dump(2) << '\n';
  if (rep.admissible_roots().empty()) {
    if (m < 2)
      err << "no admissible root: m = " << m << " is out of domain (the gradient identity divides by m - 1)\n";
    else
      err << "no admissible root: every real root violates lambda + beta < 0 or K = lambda + m beta/2 < 0\n";
    return kNoAdmissibleRoot;
  }
  return kSuccess;
}

int relation_sweep(const std::string& m_range, const std::vector<double>& betas, Variant variant,
                   const std::string& format, std::ostream& out) {
  const auto [lo, hi] = parse_m_range(m_range);
  for (double b : betas)
    if (!(b > 0.0)) throw PreconditionError("beta values must be positive");
  if (lo < 1) throw PreconditionError("m must be at least 1");
  const std::vector<SweepRow> rows = existence_sweep(lo, hi, betas, variant);
  if (format == "csv") {
    out << "m,beta,variant,a2,a1,a0,root1,root2,admissible_root,K,exists\n";
    for (const SweepRow& r : rows) {
      const std::vector<double> roots = r.report ? r.report->roots : std::vector<double>{};
      out << r.m << ',' << fmt17(r.beta) << ',' << to_string(r.variant) << ',' << fmt17(r.poly.a2) << ','
          << fmt17(r.poly.a1) << ',' << fmt17(r.poly.a0) << ',' << (roots.size() > 0 ? fmt17(roots[0]) : "")
          << ',' << (roots.size() > 1 ? fmt17(roots[1]) : "") << ','
          << (r.admissible_root ? fmt17(*r.admissible_root) : "") << ',' << (r.K ? fmt17(*r.K) : "") << ','
          << (r.exists ? "true" : "false") << '\n';
    }
    return kSuccess;
  }
  ordered_json arr = ordered_json::array();
  for (const SweepRow& r : rows) {
    ordered_json j;
    j["m"] = r.m;
    j["beta"] = r.beta;
    j["variant"] = to_string(r.variant);
    j["coefficients"] = coefficients_json(r.poly);
    j["roots"] = r.report ? r.report->roots : std::vector<double>{};
    j["admissible_root"] = r.admissible_root ? ordered_json(*r.admissible_root) : ordered_json(nullptr);
    j["K"] = r.K ? ordered_json(*r.K) : ordered_json(nullptr);
    j["exists"] = r.exists;
    j["note"] = r.note;
    arr.push_back(j);
  }
  out << arr.dump(2) << '\n';
  return kSuccess;
}

ordered_json verify_json(const VerifyReport& r) {
  ordered_json j;
  j["m"] = r.m;
  j["beta"] = r.beta;
  j["variant"] = to_string(r.variant);
  j["lambda"] = r.lambda;
  j["K"] = r.K;
  j["relation_residual"] = r.relation_residual;
  j["compat_max_residual"] = r.pseudospherical.max_compat_residual;
  j["curvature_max_defect"] = r.pseudospherical.max_curvature_defect;
  j["einstein"] = ordered_json{
      {"tensor", ordered_json{{"a11", r.einstein.tensor_residual.a11},
                              {"a12", r.einstein.tensor_residual.a12},
                              {"a22", r.einstein.tensor_residual.a22}}},
      {"contracted", r.einstein.contracted_residual},
      {"scalar_constraint", r.einstein.scalar_constraint_residual},
      {"sample_count", r.einstein.sample_count},
      {"max_point", {r.einstein.max_point.u, r.einstein.max_point.v}},
  };
  j["vertical_ricci_defect"] = r.vertical_ricci_defect;
  j["derivatives"] = r.finite_differences ? "finite_difference" : "exact";
  j["tolerances"] = ordered_json{{"relation", r.tol.relation},
                                 {"compat", r.tol.compat},
                                 {"curvature", r.curvature_tol},
                                 {"einstein", r.tol.einstein}};
  j["verdict"] = r.pass ? "pass" : "fail";
  j["note"] = r.note.empty() ? variant_note(r.variant, r.beta) : r.note;
  return j;
}

Metric2D model_metric(const std::string& model) {
  if (model == "disk") return Metric2D::poincare_disk();
  if (model == "halfplane") return Metric2D::poincare_half_plane();
  if (model == "flat") return Metric2D::flat();
  throw PreconditionError("unknown model '" + model + "' (expected disk, halfplane or flat)");
}

PointFn boundary_data(const std::string& name, double beta) {
  if (name == "zero") return [](Point2) { return 0.0; };
  if (name == "one") return [](Point2) { return 1.0; };
  if (name == "cosh") return exact::cosh_distance;
  if (name == "horocycle") return exact::horocyclic(beta);
  if (name == "linear") return [](Point2 p) { return p.u; };
  throw PreconditionError("unknown boundary data '" + name + "' (zero, one, cosh, horocycle, linear)");
}

PointFn source_data(const std::string& name, double beta) {
  if (name == "zero") return {};
  // (beta - Delta_g) u = beta u since u is harmonic.
  if (name == "linear") return [beta](Point2 p) { return beta * p.u; };
  throw PreconditionError("unknown source '" + name + "' (zero, linear)");
}

// Exact solution for a (boundary, source) pair when one is known.
PointFn known_solution(const std::string& bc, const std::string& source, double beta) {
  if (source == "zero") {
    if (bc == "zero") return [](Point2) { return 0.0; };
    if (bc == "cosh" && beta == 2.0) return exact::cosh_distance;
    if (bc == "horocycle") return exact::horocyclic(beta);
  }
  if (source == "linear" && bc == "linear") return [](Point2 p) { return p.u; };
  return {};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification toolkit for Einstein warped products over screened-Poisson warping functions",
               "wpe"};
  // -h stays free so that --h can name the mesh size
  app.set_help_flag("--help", "Print this help message and exit");
  app.failure_message(CLI::FailureMessage::help);
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  app.add_flag("--quiet,-q", quiet, "Suppress the version banner");

  // relation
  auto* relation = app.add_subcommand("relation", "Quadratic lambda-m-beta relation");
  relation->require_subcommand(1);
  relation->fallthrough();
  int rs_m = 0;
  double rs_beta = 1.0;
  std::string rs_variant = "rederived";
  auto* rsolve = relation->add_subcommand("solve", "Solve the relation for lambda");
  rsolve->add_option("--m", rs_m, "Fiber dimension")->required();
  rsolve->add_option("--beta", rs_beta, "Screening parameter")->required();
  rsolve->add_option("--variant", rs_variant)->check(CLI::IsMember({"published", "rederived"}));

  std::string sw_m;
  std::vector<double> sw_beta;
  std::string sw_variant = "rederived", sw_format = "csv";
  auto* rsweep = relation->add_subcommand("sweep", "Existence table over (m, beta)");
  rsweep->add_option("--m", sw_m, "Fiber dimension range A..B")->required();
  rsweep->add_option("--beta", sw_beta, "Comma-separated beta values")->required()->delimiter(',');
  rsweep->add_option("--variant", sw_variant)->check(CLI::IsMember({"published", "rederived"}));
  rsweep->add_option("--format", sw_format)->check(CLI::IsMember({"csv", "json"}));

  // verify
  int v_m = 0;
  double v_beta = 1.0;
  std::string v_variant = "rederived";
  Tolerances tol;
  bool v_fd = false;
  std::vector<double> v_frange;
  std::vector<int> v_samples;
  auto* verify = app.add_subcommand("verify", "Certify the full construction for (m, beta)");
  verify->add_option("--m", v_m)->required();
  verify->add_option("--beta", v_beta)->required();
  verify->add_option("--variant", v_variant)->check(CLI::IsMember({"published", "rederived"}));
  verify->add_option("--tol-relation", tol.relation);
  verify->add_option("--tol-compat", tol.compat);
  verify->add_option("--tol-curvature-fd", tol.curvature_fd);
  verify->add_option("--tol-curvature-exact", tol.curvature_exact);
  verify->add_option("--tol-einstein", tol.einstein);
  verify->add_flag("--fd", v_fd, "Finite-difference derivatives for curvature and residuals");
  verify->add_option("--f-range", v_frange, "Strip range lo,hi in f")->delimiter(',')->expected(2);
  verify->add_option("--samples", v_samples, "Strip samples nf,nh")->delimiter(',')->expected(2);

  // curvature
  std::string c_model = "disk", c_format = "text";
  std::vector<double> c_at;
  double c_scale = 1.0;
  bool c_fd = false;
  auto* curvature = app.add_subcommand("curvature", "Gaussian curvature of a model metric");
  curvature->add_option("--model", c_model)->check(CLI::IsMember({"disk", "halfplane", "flat"}));
  curvature->add_option("--at", c_at, "Chart point x,y")->required()->delimiter(',')->expected(2);
  curvature->add_option("--scale", c_scale, "Constant rescaling factor c > 0");
  curvature->add_flag("--fd", c_fd, "Finite-difference derivatives");
  curvature->add_option("--format", c_format)->check(CLI::IsMember({"text", "json"}));

  // pde
  auto* pde = app.add_subcommand("pde", "Screened Poisson solver on the Poincare disk");
  pde->require_subcommand(1);
  pde->fallthrough();
  double p_beta = 1.0, p_rmax = 0.8, p_h = 0.02;
  std::string p_bc = "cosh", p_source = "zero", p_out;
  auto* psolve = pde->add_subcommand("solve", "Solve one Dirichlet problem");
  psolve->add_option("--beta", p_beta)->required();
  psolve->add_option("--rmax", p_rmax);
  psolve->add_option("--h", p_h);
  psolve->add_option("--bc", p_bc)->check(CLI::IsMember({"zero", "one", "cosh", "horocycle", "linear"}));
  psolve->add_option("--source", p_source)->check(CLI::IsMember({"zero", "linear"}));
  psolve->add_option("--out", p_out, "Grid CSV output path");

  double pc_beta = 2.0, pc_rmax = 0.8;
  std::vector<double> pc_h;
  std::string pc_exact, pc_format = "csv";
  auto* pconv = pde->add_subcommand("converge", "Convergence study against an exact solution");
  pconv->add_option("--beta", pc_beta)->required();
  pconv->add_option("--rmax", pc_rmax);
  pconv->add_option("--h", pc_h, "Decreasing mesh sizes")->required()->delimiter(',');
  pconv->add_option("--exact", pc_exact)->check(CLI::IsMember({"cosh", "horocycle", "linear"}));
  pconv->add_option("--format", pc_format)->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> storage{"wpe"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  if (!quiet) err << "wpe " << kVersion << '\n';

  try {
    if (rsolve->parsed()) {
      if (!(rs_beta > 0.0)) throw PreconditionError("--beta must be positive");
      if (rs_m < 1) throw PreconditionError("--m must be at least 1");
      return relation_solve(rs_m, rs_beta, parse_variant(rs_variant), out, err);
    }
    if (rsweep->parsed()) return relation_sweep(sw_m, sw_beta, parse_variant(sw_variant), sw_format, out);

    if (verify->parsed()) {
      if (!(v_beta > 0.0)) throw PreconditionError("--beta must be positive");
      if (v_m < 1) throw PreconditionError("--m must be at least 1");
      VerifyOptions opts;
      opts.variant = parse_variant(v_variant);
      opts.tol = tol;
      opts.finite_differences = v_fd;
      if (!v_frange.empty()) {
        if (!(v_frange[0] > 0.0) || !(v_frange[1] > v_frange[0]))
          throw PreconditionError("--f-range needs 0 < lo < hi");
        opts.strip.f_lo = v_frange[0];
        opts.strip.f_hi = v_frange[1];
      }
      if (!v_samples.empty()) {
        if (v_samples[0] < 1 || v_samples[1] < 1) throw PreconditionError("--samples must be positive");
        opts.strip.nf = v_samples[0];
        opts.strip.nh = v_samples[1];
      }
      const VerifyReport rep = verify_theorem(v_m, v_beta, opts);
      out << verify_json(rep).dump(2) << '\n';
      return rep.pass ? kSuccess : kVerificationFailed;
    }

    if (curvature->parsed()) {
      Metric2D g = model_metric(c_model);
      if (c_scale != 1.0) g = rescale(g, c_scale);
      if (c_fd) g = g.with_finite_differences();
      const Point2 p{c_at[0], c_at[1]};
      const double K = gauss_curvature(g, p);
      if (c_format == "json") {
        ordered_json j{{"model", c_model}, {"scale", c_scale}, {"at", {p.u, p.v}},
                       {"derivatives", c_fd ? "finite_difference" : "exact"}, {"K", K}, {"R", 2.0 * K}};
        out << j.dump(2) << '\n';
      } else {
        out << "K = " << fmt12(K) << "\nR = " << fmt12(2.0 * K) << '\n';
      }
      return kSuccess;
    }

    if (psolve->parsed()) {
      GridSpec spec{p_rmax, p_h, p_beta, source_data(p_source, p_beta), boundary_data(p_bc, p_beta)};
      SolveInfo info;
      const GridField field = assemble_and_solve(spec, {}, &info);
      if (!p_out.empty()) {
        std::ofstream os(p_out);
        if (!os) throw PreconditionError("cannot open '" + p_out + "' for writing");
        write_csv(field, os);
      }
      ordered_json j;
      j["beta"] = p_beta;
      j["r_max"] = p_rmax;
      j["h"] = p_h;
      j["bc"] = p_bc;
      j["source"] = p_source;
      j["interior_nodes"] = field.count(NodeTag::interior);
      j["boundary_nodes"] = field.count(NodeTag::boundary);
      j["solver"] = info.direct ? "direct" : "conjugate_gradient";
      j["relative_residual"] = info.relative_residual;
      j["residual_field"] = residual_field(field, spec);
      const PointFn known = known_solution(p_bc, p_source, p_beta);
      j["max_error"] = known ? ordered_json(max_error(field, known)) : ordered_json(nullptr);
      j["out"] = p_out;
      out << j.dump(2) << '\n';
      return kSuccess;
    }

    if (pconv->parsed()) {
      std::string which = pc_exact.empty() ? (pc_beta == 2.0 ? "cosh" : "horocycle") : pc_exact;
      if (which == "cosh" && pc_beta != 2.0)
        throw PreconditionError("the cosh solution requires --beta 2");
      GridSpec spec;
      spec.r_max = pc_rmax;
      spec.beta = pc_beta;
      spec.h = pc_h.empty() ? 0.0 : pc_h.front();
      PointFn exact_fn;
      if (which == "linear") {
        exact_fn = [](Point2 p) { return p.u; };
        spec.source = source_data("linear", pc_beta);
      } else {
        exact_fn = which == "cosh" ? PointFn(exact::cosh_distance) : exact::horocyclic(pc_beta);
      }
      spec.boundary = exact_fn;
      const std::vector<ConvergenceRow> rows = convergence_study(spec, pc_h, exact_fn);
      if (pc_format == "csv") {
        out << "h,max_error,observed_rate\n";
        for (const ConvergenceRow& r : rows)
          out << fmt17(r.h) << ',' << fmt17(r.max_error) << ','
              << (r.observed_rate ? fmt17(*r.observed_rate) : "") << '\n';
      } else {
        ordered_json arr = ordered_json::array();
        for (const ConvergenceRow& r : rows)
          arr.push_back(ordered_json{{"h", r.h},
                                     {"max_error", r.max_error},
                                     {"observed_rate", r.observed_rate ? ordered_json(*r.observed_rate)
                                                                       : ordered_json(nullptr)}});
        out << ordered_json{{"exact", which}, {"beta", pc_beta}, {"r_max", pc_rmax}, {"rows", arr}}.dump(2)
            << '\n';
      }
      return kSuccess;
    }
  } catch (const NoAdmissibleRoot& e) {
    err << "error: " << e.what() << '\n';
    return kNoAdmissibleRoot;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kSolverFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  }
  return kUsage;
}

}  // namespace wpe::cli
