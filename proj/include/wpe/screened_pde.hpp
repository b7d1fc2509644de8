#pragma once

// Finite-difference solver for the screened Poisson problem on the Poincare disk
//   ((1 - r^2)^2 / 4) (f_uu + f_vv) - beta f = -psi,   r <= r_max,
// with Dirichlet data on the lattice boundary.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "wpe/geometry2d.hpp"

namespace wpe {

using PointFn = std::function<double(Point2)>;

struct GridSpec {
  double r_max = 0.8;
  double h = 0.02;
  double beta = 1.0;
  PointFn source;    // psi; empty means zero
  PointFn boundary;  // Dirichlet data
};

// Throws PreconditionError unless 0 < r_max <= 1 - 1e-3, 0 < h < r_max / 4, beta > 0.
void validate(const GridSpec& spec);

enum class NodeTag { interior, boundary, exterior };

const char* to_string(NodeTag tag);

// Nodes (i h, j h) for |i|, |j| <= half_width. A node is interior iff it and its
// four lattice neighbours lie in r <= r_max; other nodes inside the disk are boundary.
class GridField {
 public:
  GridField(double r_max, double h);

  int half_width() const { return half_width_; }
  int side() const { return 2 * half_width_ + 1; }
  std::size_t size() const { return tags_.size(); }
  double r_max() const { return r_max_; }
  double h() const { return h_; }

  // Row-major: j (v index) outer, i (u index) inner, both from -half_width.
  std::size_t index(int i, int j) const;
  Point2 point(int i, int j) const { return {i * h_, j * h_}; }
  NodeTag tag(int i, int j) const { return tags_[index(i, j)]; }
  double value(int i, int j) const { return values_[index(i, j)]; }
  void set_value(int i, int j, double v) { values_[index(i, j)] = v; }

  std::size_t count(NodeTag tag) const;

  // Applies fn(i, j) to every non-exterior node in row-major order.
  template <class Fn>
  void for_each_node(Fn&& fn) const {
    for (int j = -half_width_; j <= half_width_; ++j)
      for (int i = -half_width_; i <= half_width_; ++i)
        if (tag(i, j) != NodeTag::exterior) fn(i, j);
  }

  bool same_lattice(const GridField& other) const;

 private:
  double r_max_;
  double h_;
  int half_width_;
  std::vector<NodeTag> tags_;
  std::vector<double> values_;  // NaN on exterior nodes
};

struct SolveOptions {
  std::size_t direct_limit = 100000;  // above this many unknowns use conjugate gradients
  double rel_tol = 1e-12;
  std::size_t max_iterations = 100000;
};

struct SolveInfo {
  std::size_t unknowns = 0;
  bool direct = true;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

// Assembles (beta I - Delta_g) f = psi on interior nodes and solves it.
// Throws SolverError on non-convergence, PreconditionError for a degenerate grid.
GridField assemble_and_solve(const GridSpec& spec, const SolveOptions& opts = {}, SolveInfo* info = nullptr);

// Lattice of `spec` with every non-exterior node set to fn(node).
GridField sample_field(const GridSpec& spec, const PointFn& fn);

// max over interior nodes of |discrete ([Delta_g - beta] f) + psi|.
double residual_field(const GridField& field, const GridSpec& spec);

// max over non-exterior nodes of |field - exact|.
double max_error(const GridField& field, const PointFn& exact);

struct ConvergenceRow {
  double h = 0.0;
  double max_error = 0.0;
  std::optional<double> observed_rate;  // against the previous (coarser) row
};

// Solves on every h of a decreasing list; rates log(e_prev/e)/log(h_prev/h).
std::vector<ConvergenceRow> convergence_study(const GridSpec& spec, std::span<const double> h_list,
                                              const PointFn& exact, const SolveOptions& opts = {});

// CSV with header x1,x2,tag,value; non-exterior nodes in row-major order.
void write_csv(const GridField& field, std::ostream& os);

// Closed-form solutions of the homogeneous equation on the disk.
namespace exact {
// (1 + r^2)/(1 - r^2); solves the equation with beta = 2.
double cosh_distance(Point2 p);
// P^s with P = (1 - r^2)/|1 - z|^2 and s (s - 1) = beta.
PointFn horocyclic(double beta);
}  // namespace exact

}  // namespace wpe
