#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace cyweyl {

/// Weighted list of node indices; applying it to a field gives one derivative
/// at one node.
using Stencil = std::vector<std::pair<int, double>>;

/// Uniform tensor grid on a rectangle (dim 2) or an interval (dim 1, n2 = 1).
/// Node (i, j) has flat index i + n1 * j.
class Grid {
 public:
  Grid() = default;
  Grid(int dim, Eigen::Vector2d lower, Eigen::Vector2d upper, int n1, int n2);

  int dim() const { return dim_; }
  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int size() const { return n1_ * n2_; }
  const Eigen::Vector2d& lower() const { return lower_; }
  const Eigen::Vector2d& upper() const { return upper_; }
  Eigen::Vector2d spacing() const { return h_; }
  double volume() const;

  int index(int i, int j) const { return i + n1_ * j; }
  std::pair<int, int> coords(int p) const { return {p % n1_, p / n1_}; }
  Eigen::Vector2d node(int p) const;
  bool on_boundary(int p) const;
  std::vector<int> interior_nodes() const;

  /// d/dy_axis at node p: central in the interior, one-sided second order
  /// (-3, 4, -1)/(2h) at the ends.
  Stencil first(int p, int axis) const;
  /// d2/dy_a dy_b at node p.  Pure second derivatives use (1, -2, 1)/h^2 in the
  /// interior and (2, -5, 4, -1)/h^2 at the ends; mixed ones are the product
  /// of the two first-derivative stencils (the 4-point cross in the interior).
  Stencil second(int p, int a, int b) const;

  /// Composite trapezoid weights, summing to volume().
  Eigen::VectorXd trapezoid_weights() const;

  bool operator==(const Grid& o) const;
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  int dim_ = 2;
  int n1_ = 0, n2_ = 0;
  Eigen::Vector2d lower_ = Eigen::Vector2d::Zero(), upper_ = Eigen::Vector2d::Zero();
  Eigen::Vector2d h_ = Eigen::Vector2d::Zero();
};

/// Nodal values on a grid.
struct GridField {
  Grid grid;
  Eigen::VectorXd values;

  GridField() = default;
  explicit GridField(Grid g) : grid(std::move(g)), values(Eigen::VectorXd::Zero(grid.size())) {}
  GridField(Grid g, Eigen::VectorXd v);

  template <typename F>
  static GridField sample(const Grid& g, F&& f) {
    GridField out(g);
    for (int p = 0; p < g.size(); ++p) out.values(p) = f(g.node(p));
    return out;
  }

  Eigen::Vector2d spacing() const { return grid.spacing(); }
  double apply(const Stencil& s) const;
  /// Discrete gradient (length dim) at node p.
  Eigen::VectorXd gradient(int p) const;
  /// Discrete Hessian (dim x dim) at node p.
  Eigen::MatrixXd hessian(int p) const;
  double max_abs() const { return values.cwiseAbs().maxCoeff(); }
};

}  // namespace cyweyl
