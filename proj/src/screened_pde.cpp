#include "wpe/screened_pde.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "wpe/error.hpp"

namespace wpe {

void validate(const GridSpec& spec) {
  if (!(spec.r_max > 0.0) || spec.r_max > 1.0 - 1e-3)
    throw PreconditionError("r_max must lie in (0, 1 - 1e-3]");
  if (!(spec.h > 0.0) || !(spec.h < spec.r_max / 4.0))
    throw PreconditionError("mesh spacing must satisfy 0 < h < r_max / 4");
  if (!(spec.beta > 0.0) || !std::isfinite(spec.beta)) throw PreconditionError("beta must be positive");
  if (!spec.boundary) throw PreconditionError("boundary data is required");
}

const char* to_string(NodeTag tag) {
  switch (tag) {
    case NodeTag::interior: return "interior";
    case NodeTag::boundary: return "boundary";
    case NodeTag::exterior: return "exterior";
  }
  return "unknown";
}

GridField::GridField(double r_max, double h)
    : r_max_(r_max), h_(h), half_width_(static_cast<int>(std::floor(r_max / h + 1e-9))) {
  const std::size_t n = static_cast<std::size_t>(side()) * static_cast<std::size_t>(side());
  tags_.assign(n, NodeTag::exterior);
  values_.assign(n, std::numeric_limits<double>::quiet_NaN());
  const double r2 = r_max * r_max * (1.0 + 1e-12);
  auto inside = [&](int i, int j) {
    if (std::abs(i) > half_width_ || std::abs(j) > half_width_) return false;
    const double x = i * h, y = j * h;
    return x * x + y * y <= r2;
  };
  for (int j = -half_width_; j <= half_width_; ++j)
    for (int i = -half_width_; i <= half_width_; ++i) {
      if (!inside(i, j)) continue;
      const bool all = inside(i + 1, j) && inside(i - 1, j) && inside(i, j + 1) && inside(i, j - 1);
      tags_[index(i, j)] = all ? NodeTag::interior : NodeTag::boundary;
      values_[index(i, j)] = 0.0;
    }
}

std::size_t GridField::index(int i, int j) const {
  return static_cast<std::size_t>(j + half_width_) * static_cast<std::size_t>(side()) +
         static_cast<std::size_t>(i + half_width_);
}

std::size_t GridField::count(NodeTag tag) const { return static_cast<std::size_t>(std::count(tags_.begin(), tags_.end(), tag)); }

bool GridField::same_lattice(const GridField& other) const {
  return half_width_ == other.half_width_ && h_ == other.h_ && tags_ == other.tags_;
}

namespace {

double conformal(Point2 p) {
  const double w = 1.0 - p.u * p.u - p.v * p.v;
  return 0.25 * w * w;
}

double source_at(const GridSpec& spec, Point2 p) { return spec.source ? spec.source(p) : 0.0; }

constexpr std::array<std::array<int, 2>, 4> kNeighbours{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

}  // namespace

GridField sample_field(const GridSpec& spec, const PointFn& fn) {
  validate(spec);
  GridField field(spec.r_max, spec.h);
  field.for_each_node([&](int i, int j) { field.set_value(i, j, fn(field.point(i, j))); });
  return field;
}

GridField assemble_and_solve(const GridSpec& spec, const SolveOptions& opts, SolveInfo* info) {
  validate(spec);
  GridField field(spec.r_max, spec.h);

  std::vector<int> unknown(field.size(), -1);
  int n = 0;
  field.for_each_node([&](int i, int j) {
    if (field.tag(i, j) == NodeTag::interior)
      unknown[field.index(i, j)] = n++;
    else
      field.set_value(i, j, spec.boundary(field.point(i, j)));
  });
  if (n == 0) throw PreconditionError("grid has no interior nodes");

  // Rows divided by the conformal factor, which makes the system symmetric.
  const double inv_h2 = 1.0 / (spec.h * spec.h);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(n) * 5);
  Eigen::VectorXd rhs(n);
  field.for_each_node([&](int i, int j) {
    const int row = unknown[field.index(i, j)];
    if (row < 0) return;
    const Point2 x = field.point(i, j);
    const double c = conformal(x);
    triplets.emplace_back(row, row, spec.beta / c + 4.0 * inv_h2);
    double b = source_at(spec, x) / c;
    for (const auto& [di, dj] : kNeighbours) {
      const int col = unknown[field.index(i + di, j + dj)];
      if (col >= 0)
        triplets.emplace_back(row, col, -inv_h2);
      else
        b += inv_h2 * field.value(i + di, j + dj);
    }
    rhs[row] = b;
  });
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(triplets.begin(), triplets.end());

  SolveInfo local;
  local.unknowns = static_cast<std::size_t>(n);
  Eigen::VectorXd sol;
  if (local.unknowns <= opts.direct_limit) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
    if (ldlt.info() != Eigen::Success) throw SolverError("sparse factorisation failed", NAN);
    sol = ldlt.solve(rhs);
    local.direct = true;
  } else {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::IncompleteCholesky<double>>
        cg;
    cg.setTolerance(opts.rel_tol);
    cg.setMaxIterations(static_cast<Eigen::Index>(opts.max_iterations));
    cg.compute(A);
    sol = cg.solve(rhs);
    local.direct = false;
    local.iterations = static_cast<std::size_t>(cg.iterations());
    if (cg.info() != Eigen::Success)
      throw SolverError("conjugate gradients did not converge", cg.error());
  }
  const double bnorm = rhs.norm();
  local.relative_residual = (A * sol - rhs).norm() / (bnorm > 0.0 ? bnorm : 1.0);
  if (!std::isfinite(local.relative_residual))
    throw SolverError("linear solve produced non-finite values", local.relative_residual);

  field.for_each_node([&](int i, int j) {
    const int row = unknown[field.index(i, j)];
    if (row >= 0) field.set_value(i, j, sol[row]);
  });
  if (info) *info = local;
  return field;
}

double residual_field(const GridField& field, const GridSpec& spec) {
  validate(spec);
  if (!field.same_lattice(GridField(spec.r_max, spec.h)))
    throw PreconditionError("field lattice does not match the grid specification");
  const double inv_h2 = 1.0 / (spec.h * spec.h);
  double worst = 0.0;
  field.for_each_node([&](int i, int j) {
    if (field.tag(i, j) != NodeTag::interior) return;
    const Point2 x = field.point(i, j);
    const double f = field.value(i, j);
    double lap = -4.0 * f;
    for (const auto& [di, dj] : kNeighbours) lap += field.value(i + di, j + dj);
    const double r = conformal(x) * lap * inv_h2 - spec.beta * f + source_at(spec, x);
    worst = std::max(worst, std::fabs(r));
  });
  return worst;
}

double max_error(const GridField& field, const PointFn& exact) {
  double worst = 0.0;
  field.for_each_node([&](int i, int j) {
    worst = std::max(worst, std::fabs(field.value(i, j) - exact(field.point(i, j))));
  });
  return worst;
}

std::vector<ConvergenceRow> convergence_study(const GridSpec& spec, std::span<const double> h_list,
                                              const PointFn& exact, const SolveOptions& opts) {
  if (h_list.size() < 3) throw PreconditionError("convergence study needs at least three mesh sizes");
  if (!exact) throw PreconditionError("convergence study needs an exact solution");
  for (std::size_t k = 1; k < h_list.size(); ++k)
    if (!(h_list[k] < h_list[k - 1])) throw PreconditionError("mesh sizes must be strictly decreasing");

  std::vector<ConvergenceRow> rows;
  for (double h : h_list) {
    GridSpec s = spec;
    s.h = h;
    ConvergenceRow row;
    row.h = h;
    row.max_error = max_error(assemble_and_solve(s, opts), exact);
    if (!rows.empty()) {
      const ConvergenceRow& prev = rows.back();
      row.observed_rate = std::log(prev.max_error / row.max_error) / std::log(prev.h / h);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_csv(const GridField& field, std::ostream& os) {
  os << "x1,x2,tag,value\n";
  char buf[128];
  field.for_each_node([&](int i, int j) {
    const Point2 x = field.point(i, j);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s,%.17g\n", x.u, x.v, to_string(field.tag(i, j)),
                  field.value(i, j));
    os << buf;
  });
}

namespace exact {

double cosh_distance(Point2 p) {
  const double r2 = p.u * p.u + p.v * p.v;
  return (1.0 + r2) / (1.0 - r2);
}

PointFn horocyclic(double beta) {
  const double s = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * beta));
  return [s](Point2 p) {
    const double P = (1.0 - p.u * p.u - p.v * p.v) / ((1.0 - p.u) * (1.0 - p.u) + p.v * p.v);
    return std::pow(P, s);
  };
}

}  // namespace exact

}  // namespace wpe
