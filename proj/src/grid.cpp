#include "cyweyl/grid.hpp"

#include "cyweyl/errors.hpp"

#include <string>

namespace cyweyl {

Grid::Grid(int dim, Eigen::Vector2d lower, Eigen::Vector2d upper, int n1, int n2)
    : dim_(dim), n1_(n1), n2_(n2), lower_(lower), upper_(upper) {
  if (dim != 1 && dim != 2) throw DomainError("grid: dimension must be 1 or 2");
  if (dim == 1) {
    n2_ = 1;
    lower_(1) = upper_(1) = 0.0;
  }
  // One-sided second differences reach three nodes inward.
  if (n1_ < 5 || (dim == 2 && n2_ < 5))
    throw DomainError("grid: need at least 5 nodes per axis, got " + std::to_string(n1) + "x" + std::to_string(n2));
  for (int k = 0; k < dim; ++k)
    if (!(upper_(k) > lower_(k))) throw DomainError("grid: empty domain along axis " + std::to_string(k + 1));
  h_(0) = (upper_(0) - lower_(0)) / (n1_ - 1);
  h_(1) = dim == 2 ? (upper_(1) - lower_(1)) / (n2_ - 1) : 0.0;
}

double Grid::volume() const {
  return dim_ == 1 ? upper_(0) - lower_(0) : (upper_(0) - lower_(0)) * (upper_(1) - lower_(1));
}

Eigen::Vector2d Grid::node(int p) const {
  const auto [i, j] = coords(p);
  return {lower_(0) + i * h_(0), dim_ == 2 ? lower_(1) + j * h_(1) : 0.0};
}

bool Grid::on_boundary(int p) const {
  const auto [i, j] = coords(p);
  if (i == 0 || i == n1_ - 1) return true;
  return dim_ == 2 && (j == 0 || j == n2_ - 1);
}

std::vector<int> Grid::interior_nodes() const {
  std::vector<int> out;
  for (int p = 0; p < size(); ++p)
    if (!on_boundary(p)) out.push_back(p);
  return out;
}

namespace {

// 1-D stencils as (position, weight) along an axis with count nodes.
Stencil first_1d(int pos, int count, double h) {
  const double w = 0.5 / h;
  if (pos == 0) return {{0, -3 * w}, {1, 4 * w}, {2, -w}};
  if (pos == count - 1) return {{count - 3, w}, {count - 2, -4 * w}, {count - 1, 3 * w}};
  return {{pos - 1, -w}, {pos + 1, w}};
}

Stencil second_1d(int pos, int count, double h) {
  const double w = 1.0 / (h * h);
  if (pos == 0) return {{0, 2 * w}, {1, -5 * w}, {2, 4 * w}, {3, -w}};
  if (pos == count - 1) return {{count - 4, -w}, {count - 3, 4 * w}, {count - 2, -5 * w}, {count - 1, 2 * w}};
  return {{pos - 1, w}, {pos, -2 * w}, {pos + 1, w}};
}

}  // namespace

Stencil Grid::first(int p, int axis) const {
  if (axis < 0 || axis >= dim_) throw DomainError("grid: axis out of range");
  const auto [i, j] = coords(p);
  Stencil out;
  if (axis == 0)
    for (const auto& [q, w] : first_1d(i, n1_, h_(0))) out.emplace_back(index(q, j), w);
  else
    for (const auto& [q, w] : first_1d(j, n2_, h_(1))) out.emplace_back(index(i, q), w);
  return out;
}

Stencil Grid::second(int p, int a, int b) const {
  if (a < 0 || a >= dim_ || b < 0 || b >= dim_) throw DomainError("grid: axis out of range");
  const auto [i, j] = coords(p);
  Stencil out;
  if (a != b) {
    for (const auto& [qi, wi] : first_1d(i, n1_, h_(0)))
      for (const auto& [qj, wj] : first_1d(j, n2_, h_(1))) out.emplace_back(index(qi, qj), wi * wj);
  } else if (a == 0) {
    for (const auto& [q, w] : second_1d(i, n1_, h_(0))) out.emplace_back(index(q, j), w);
  } else {
    for (const auto& [q, w] : second_1d(j, n2_, h_(1))) out.emplace_back(index(i, q), w);
  }
  return out;
}

Eigen::VectorXd Grid::trapezoid_weights() const {
  Eigen::VectorXd w(size());
  for (int p = 0; p < size(); ++p) {
    const auto [i, j] = coords(p);
    double v = h_(0) * ((i == 0 || i == n1_ - 1) ? 0.5 : 1.0);
    if (dim_ == 2) v *= h_(1) * ((j == 0 || j == n2_ - 1) ? 0.5 : 1.0);
    w(p) = v;
  }
  return w;
}

bool Grid::operator==(const Grid& o) const {
  return dim_ == o.dim_ && n1_ == o.n1_ && n2_ == o.n2_ && lower_ == o.lower_ && upper_ == o.upper_;
}

GridField::GridField(Grid g, Eigen::VectorXd v) : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.size()) throw DomainError("grid field: value count does not match the grid");
}

double GridField::apply(const Stencil& s) const {
  double sum = 0.0;
  for (const auto& [q, w] : s) sum += w * values(q);
  return sum;
}

Eigen::VectorXd GridField::gradient(int p) const {
  Eigen::VectorXd g(grid.dim());
  for (int k = 0; k < grid.dim(); ++k) g(k) = apply(grid.first(p, k));
  return g;
}

Eigen::MatrixXd GridField::hessian(int p) const {
  const int l = grid.dim();
  Eigen::MatrixXd h(l, l);
  for (int a = 0; a < l; ++a)
    for (int b = 0; b <= a; ++b) h(a, b) = h(b, a) = apply(grid.second(p, a, b));
  return h;
}

}  // namespace cyweyl
