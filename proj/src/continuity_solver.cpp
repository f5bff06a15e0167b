#include "cyweyl/continuity_solver.hpp"

#include "cyweyl/errors.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cyweyl {

void MAProblem::validate() const {
  if (l != 1 && l != 2) throw DomainError("problem: l must be 1 or 2");
  if (grid.dim() != l) throw DomainError("problem: grid dimension differs from l");
  if (!A) throw DomainError("problem: A is missing");
  if (static_cast<int>(B.size()) != l) throw DomainError("problem: B needs exactly l matrices");
  if (static_cast<int>(sigma.size()) != l) throw DomainError("problem: sigma needs exactly l entries");
  for (const auto& b : B)
    if (!b) throw DomainError("problem: B entry is missing");
  for (const auto& s : sigma)
    if (!s) throw DomainError("problem: sigma entry is missing");
  if (!(epsilon > 0.0)) throw DomainError("problem: eps must be positive");
  if (target_field && target_field->size() != grid.size())
    throw DomainError("problem: target field does not match the grid");
  for (int p = 0; p < grid.size(); ++p) {
    const Eigen::Vector2d y = grid.node(p);
    const Eigen::MatrixXd a = A(y);
    if (a.rows() != l || a.cols() != l) throw DomainError("problem: A must be l x l");
    if (a.determinant() == 0.0) throw DomainError("problem: det A vanishes at a grid node");
    for (const auto& b : B) {
      const Eigen::MatrixXd m = b(y);
      if (m.rows() != l || m.cols() != l) throw DomainError("problem: B_k must be l x l");
      if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-14 * std::max(1.0, m.cwiseAbs().maxCoeff()))
        throw DomainError("problem: B_k must be symmetric");
    }
  }
}

Eigen::VectorXd MAProblem::target_values() const {
  if (target_field) return *target_field;
  return Eigen::VectorXd::Constant(grid.size(), target);
}

NodeCoefficients sample_coefficients(const MAProblem& problem) {
  problem.validate();
  NodeCoefficients c;
  const int size = problem.grid.size();
  c.A.reserve(size);
  c.B.reserve(size);
  c.sigma.reserve(size);
  c.min_abs_det_A = std::numeric_limits<double>::infinity();
  for (int p = 0; p < size; ++p) {
    const Eigen::Vector2d y = problem.grid.node(p);
    c.A.push_back(problem.A(y));
    c.min_abs_det_A = std::min(c.min_abs_det_A, std::abs(c.A.back().determinant()));
    std::vector<Eigen::MatrixXd> b;
    for (const auto& bk : problem.B) b.push_back(bk(y));
    c.B.push_back(std::move(b));
    Eigen::VectorXd s(problem.l);
    for (int k = 0; k < problem.l; ++k) s(k) = problem.sigma[k](y);
    c.sigma.push_back(s);
  }
  return c;
}

namespace {

Eigen::MatrixXd adjugate(const Eigen::MatrixXd& c) {
  if (c.rows() == 1) return Eigen::MatrixXd::Ones(1, 1);
  Eigen::MatrixXd adj(2, 2);
  adj << c(1, 1), -c(0, 1), -c(1, 0), c(0, 0);
  return adj;
}

}  // namespace

PointwiseOperator evaluate_pointwise(const Eigen::MatrixXd& A, const std::vector<Eigen::MatrixXd>& B,
                                     const Eigen::VectorXd& sigma, const Eigen::VectorXd& grad,
                                     const Eigen::MatrixXd& hess) {
  PointwiseOperator out;
  out.C = A * hess * A.transpose();
  for (Eigen::Index k = 0; k < grad.size(); ++k) out.C += grad(k) * B[static_cast<std::size_t>(k)];
  out.det_C = out.C.determinant();
  out.transport = sigma.dot(grad);
  out.value = out.det_C * out.transport;
  return out;
}

GridField ma_operator(const MAProblem& problem, const NodeCoefficients& coeffs, const GridField& f) {
  if (f.grid != problem.grid) throw DomainError("ma_operator: field grid differs from the problem grid");
  GridField out(problem.grid);
  for (int p = 0; p < problem.grid.size(); ++p)
    out.values(p) = evaluate_pointwise(coeffs.A[p], coeffs.B[p], coeffs.sigma[p], f.gradient(p), f.hessian(p)).value;
  return out;
}

GridField ma_operator(const MAProblem& problem, const GridField& f) {
  return ma_operator(problem, sample_coefficients(problem), f);
}

GridField ma_operator_exact(const MAProblem& problem, const ScalarField& f) {
  const NodeCoefficients coeffs = sample_coefficients(problem);
  GridField out(problem.grid);
  for (int p = 0; p < problem.grid.size(); ++p) {
    const Eigen::VectorXd y = problem.grid.node(p).head(problem.l);
    out.values(p) = evaluate_pointwise(coeffs.A[p], coeffs.B[p], coeffs.sigma[p], f.grad(y), f.hess(y)).value;
  }
  return out;
}

Linearization linearize(const MAProblem& problem, const NodeCoefficients& coeffs, const GridField& f1) {
  if (f1.grid != problem.grid) throw DomainError("linearize: field grid differs from the problem grid");
  const Grid& grid = problem.grid;
  const int l = problem.l;
  Linearization out;
  std::vector<Eigen::Triplet<double>> triplets;
  for (int p = 0; p < grid.size(); ++p) {
    const PointwiseOperator op =
        evaluate_pointwise(coeffs.A[p], coeffs.B[p], coeffs.sigma[p], f1.gradient(p), f1.hessian(p));
    const Eigen::MatrixXd adj = adjugate(op.C);
    if (std::abs(op.det_C) <= 1e-12 * std::max(1.0, op.C.cwiseAbs().maxCoeff() * op.C.cwiseAbs().maxCoeff()))
      out.singular_nodes.push_back(p);
    const Eigen::MatrixXd M = op.transport * coeffs.A[p].transpose() * adj * coeffs.A[p];
    Eigen::VectorXd b(l);
    for (int k = 0; k < l; ++k) b(k) = op.transport * (adj * coeffs.B[p][k]).trace() + op.det_C * coeffs.sigma[p](k);

    for (int a = 0; a < l; ++a)
      for (int c = 0; c < l; ++c)
        for (const auto& [q, w] : grid.second(p, a, c)) triplets.emplace_back(p, q, M(a, c) * w);
    for (int k = 0; k < l; ++k)
      for (const auto& [q, w] : grid.first(p, k)) triplets.emplace_back(p, q, b(k) * w);
    out.principal.push_back(M);
    out.transport.push_back(b);
  }
  out.matrix.resize(grid.size(), grid.size());
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

Linearization linearize(const MAProblem& problem, const GridField& f1) {
  return linearize(problem, sample_coefficients(problem), f1);
}

namespace {

EllipticityCertificate certificate_with(const MAProblem& problem, const NodeCoefficients& coeffs,
                                        const GridField& f1) {
  const Grid& grid = problem.grid;
  const int l = problem.l;
  const double eps = problem.epsilon;
  EllipticityCertificate cert;
  cert.E = GridField(grid);
  cert.E_min = cert.operator_min = cert.transport_min = std::numeric_limits<double>::infinity();
  cert.ok = true;
  for (int p = 0; p < grid.size(); ++p) {
    const PointwiseOperator op =
        evaluate_pointwise(coeffs.A[p], coeffs.B[p], coeffs.sigma[p], f1.gradient(p), f1.hessian(p));
    const double detA = coeffs.A[p].determinant();
    const double E = detA * detA * std::pow(op.value, l - 1) * op.transport;
    cert.E.values(p) = E;
    cert.E_min = std::min(cert.E_min, E);
    cert.operator_min = std::min(cert.operator_min, op.value);
    cert.transport_min = std::min(cert.transport_min, op.transport);
    if (!(op.value >= eps * eps && op.transport >= eps)) {
      cert.ok = false;
      cert.offending_nodes.push_back(p);
    }
  }
  cert.lower_bound = coeffs.min_abs_det_A * coeffs.min_abs_det_A * std::pow(eps, 2 * l - 1);
  return cert;
}

double max_hessian_norm(const GridField& f) {
  double m = 0.0;
  for (int p = 0; p < f.grid.size(); ++p) m = std::max(m, f.hessian(p).norm());
  return m;
}

}  // namespace

EllipticityCertificate ellipticity_certificate(const MAProblem& problem, const GridField& f1) {
  return certificate_with(problem, sample_coefficients(problem), f1);
}

Admissibility admissibility(const MAProblem& problem, const GridField& f) {
  const NodeCoefficients coeffs = sample_coefficients(problem);
  const GridField D = ma_operator(problem, coeffs, f);
  const Eigen::VectorXd w = problem.grid.trapezoid_weights();
  Admissibility out;
  out.integral = w.dot(D.values);
  out.required_integral = w.dot(problem.target_values());
  out.integral_ok = std::abs(out.integral - out.required_integral) <= 1e-8 * std::abs(out.required_integral);
  out.operator_min = std::numeric_limits<double>::infinity();
  out.transport_min = std::numeric_limits<double>::infinity();
  for (int p = 0; p < problem.grid.size(); ++p) {
    out.operator_min = std::min(out.operator_min, D.values(p));
    out.transport_min = std::min(out.transport_min, coeffs.sigma[p].dot(f.gradient(p)));
  }
  out.operator_ok = out.operator_min >= problem.epsilon * problem.epsilon;
  out.transport_ok = out.transport_min >= problem.epsilon;
  return out;
}

GridField normalize_into_admissible(const MAProblem& problem, const GridField& f) {
  const Admissibility a = admissibility(problem, f);
  if (!(a.integral > 0.0) || !(a.required_integral > 0.0))
    throw DomainError("normalize: the operator integral of f and of the target must both be positive");
  const double c = std::pow(a.required_integral / a.integral, 1.0 / (problem.l + 1));
  return GridField(f.grid, c * f.values);
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::newton_divergence: return "newton_divergence";
    case SolveStatus::certificate_violation: return "certificate_violation";
    case SolveStatus::schedule_exhausted: return "schedule_exhausted";
  }
  return "unknown";
}

namespace {

struct NewtonResult {
  bool converged = false;
  GridField f;
  double multiplier = 0.0;
  std::vector<double> history;
  int iterations = 0;
  std::string failure;
};

// Unknowns: interior values of f and the multiplier.  Rows: interior equations
// D(f) - rhs + mu = 0 and the trapezoid integral of D(f) - rhs.
class NewtonSystem {
 public:
  NewtonSystem(const MAProblem& problem, const NodeCoefficients& coeffs)
      : problem_(problem), coeffs_(coeffs), interior_(problem.grid.interior_nodes()),
        position_(problem.grid.size(), -1), weights_(problem.grid.trapezoid_weights()) {
    for (std::size_t i = 0; i < interior_.size(); ++i) position_[interior_[i]] = static_cast<int>(i);
  }

  Eigen::VectorXd residual(const GridField& f, double mu, const Eigen::VectorXd& rhs) const {
    const GridField D = ma_operator(problem_, coeffs_, f);
    const int m = static_cast<int>(interior_.size());
    Eigen::VectorXd r(m + 1);
    for (int i = 0; i < m; ++i) r(i) = D.values(interior_[i]) - rhs(interior_[i]) + mu;
    r(m) = weights_.dot(D.values - rhs);
    return r;
  }

  Eigen::SparseMatrix<double> jacobian(const GridField& f) const {
    const Linearization lin = linearize(problem_, coeffs_, f);
    const int m = static_cast<int>(interior_.size());
    std::vector<Eigen::Triplet<double>> t;
    for (int k = 0; k < lin.matrix.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(lin.matrix, k); it; ++it) {
        const int col = position_[it.col()];
        if (col < 0) continue;
        const int row = position_[it.row()];
        if (row >= 0) t.emplace_back(row, col, it.value());
        t.emplace_back(m, col, weights_(it.row()) * it.value());
      }
    for (int i = 0; i < m; ++i) t.emplace_back(i, m, 1.0);
    Eigen::SparseMatrix<double> J(m + 1, m + 1);
    J.setFromTriplets(t.begin(), t.end());
    return J;
  }

  GridField update(const GridField& f, const Eigen::VectorXd& step, double alpha) const {
    GridField out = f;
    for (std::size_t i = 0; i < interior_.size(); ++i) out.values(interior_[i]) += alpha * step(static_cast<int>(i));
    return out;
  }

  int unknowns() const { return static_cast<int>(interior_.size()) + 1; }

 private:
  const MAProblem& problem_;
  const NodeCoefficients& coeffs_;
  std::vector<int> interior_;
  std::vector<int> position_;
  Eigen::VectorXd weights_;
};

NewtonResult newton(const NewtonSystem& system, GridField f, double mu, const Eigen::VectorXd& rhs,
                    const ContinuationOptions& options) {
  NewtonResult out;
  const double tol = options.tolerance * std::max(1.0, rhs.cwiseAbs().maxCoeff());
  Eigen::VectorXd r = system.residual(f, mu, rhs);
  double norm = r.cwiseAbs().maxCoeff();
  out.history.push_back(norm);
  const int m = system.unknowns() - 1;
  while (norm > tol) {
    if (out.iterations >= options.max_newton) {
      out.failure = "Newton iteration limit reached";
      break;
    }
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(system.jacobian(f));
    if (lu.info() != Eigen::Success) {
      out.failure = "singular Newton matrix";
      break;
    }
    const Eigen::VectorXd step = lu.solve(-r);
    if (lu.info() != Eigen::Success || !step.allFinite()) {
      out.failure = "linear solve failed";
      break;
    }
    double alpha = 1.0;
    bool accepted = false;
    for (int b = 0; b <= options.max_backtracks; ++b, alpha *= 0.5) {
      GridField trial = system.update(f, step, alpha);
      const double trial_mu = mu + alpha * step(m);
      Eigen::VectorXd trial_r = system.residual(trial, trial_mu, rhs);
      const double trial_norm = trial_r.cwiseAbs().maxCoeff();
      if (std::isfinite(trial_norm) && (trial_norm <= (1.0 - 1e-4 * alpha) * norm || trial_norm <= tol)) {
        f = std::move(trial);
        mu = trial_mu;
        r = std::move(trial_r);
        norm = trial_norm;
        accepted = true;
        break;
      }
    }
    ++out.iterations;
    out.history.push_back(norm);
    if (!accepted) {
      out.failure = "residual did not decrease within the backtracking limit";
      break;
    }
  }
  out.converged = norm <= tol;
  out.f = std::move(f);
  out.multiplier = mu;
  return out;
}

ContinuationState make_state(double t, const NewtonResult& nr, const EllipticityCertificate& cert,
                             const MAProblem& problem) {
  ContinuationState s;
  s.t = t;
  s.f = nr.f;
  s.certificate_min = cert.E_min;
  s.newton_iters = nr.iterations;
  s.residual_norm = nr.history.back();
  s.residual_history = nr.history;
  s.multiplier = nr.multiplier;
  s.hessian_max = max_hessian_norm(nr.f);
  s.hessian_cap_exceeded = s.hessian_max > problem.hessian_cap;
  return s;
}

std::string describe_nodes(const Grid& grid, const std::vector<int>& nodes) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(nodes.size(), 8);
  for (std::size_t i = 0; i < shown; ++i) {
    const auto [a, b] = grid.coords(nodes[i]);
    out += (i ? ", (" : "(") + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  if (nodes.size() > shown) out += ", ... (" + std::to_string(nodes.size()) + " cells)";
  return out;
}

}  // namespace

ContinuationReport continuation_solve(const MAProblem& problem, const GridField& f0,
                                      const ContinuationOptions& options) {
  if (f0.grid != problem.grid) throw DomainError("continuation: f0 grid differs from the problem grid");
  if (!(options.initial_step > 0.0) || !(options.min_step > 0.0) || options.min_step > options.initial_step)
    throw DomainError("continuation: need 0 < min_step <= initial_step");
  const NodeCoefficients coeffs = sample_coefficients(problem);
  const NewtonSystem system(problem, coeffs);
  const Eigen::VectorXd rhs0 = ma_operator(problem, coeffs, f0).values;
  const Eigen::VectorXd target = problem.target_values();
  auto rhs_at = [&](double t) -> Eigen::VectorXd { return (1.0 - t) * rhs0 + t * target; };

  ContinuationReport report;
  const Eigen::VectorXd w = problem.grid.trapezoid_weights();
  report.f0_integral_gap = w.dot(rhs0) - w.dot(target);

  const EllipticityCertificate cert0 = certificate_with(problem, coeffs, f0);
  report.certificate_bound = cert0.lower_bound;
  const NewtonResult start = newton(system, f0, 0.0, rhs0, options);
  report.states.push_back(make_state(0.0, start, cert0, problem));
  if (!cert0.ok) {
    report.status = SolveStatus::certificate_violation;
    report.offending_nodes = cert0.offending_nodes;
    report.message = "f0 violates the ellipticity certificate at " + describe_nodes(problem.grid, cert0.offending_nodes);
    return report;
  }

  const bool adaptive = options.schedule.empty();
  std::size_t next = 0;
  double dt = options.initial_step;
  SolveStatus last_failure = SolveStatus::newton_divergence;
  std::string last_message;
  for (;;) {
    const ContinuationState& current = report.states.back();
    if (adaptive && current.t >= 1.0) break;
    double t_try;
    if (adaptive) {
      t_try = current.t + dt;
      if (t_try > 1.0 - 1e-12) t_try = 1.0;
    } else {
      while (next < options.schedule.size() && options.schedule[next] <= current.t) ++next;
      if (next == options.schedule.size()) break;
      t_try = options.schedule[next];
      if (t_try > 1.0) throw DomainError("continuation: schedule values must lie in [0, 1]");
    }

    const NewtonResult nr = newton(system, current.f, current.multiplier, rhs_at(t_try), options);
    bool accepted = false;
    if (nr.converged) {
      const EllipticityCertificate cert = certificate_with(problem, coeffs, nr.f);
      if (cert.ok) {
        report.states.push_back(make_state(t_try, nr, cert, problem));
        accepted = true;
      } else {
        last_failure = SolveStatus::certificate_violation;
        report.offending_nodes = cert.offending_nodes;
        last_message = "certificate violated at t = " + std::to_string(t_try) + " in cells " +
                       describe_nodes(problem.grid, cert.offending_nodes);
      }
    } else {
      last_failure = SolveStatus::newton_divergence;
      last_message = "Newton failed at t = " + std::to_string(t_try) + ": " + nr.failure;
    }

    if (accepted) {
      if (adaptive) dt = std::min(options.initial_step, 2.0 * dt);
      continue;
    }
    ++report.rejected_steps;
    if (!adaptive) {
      report.status = last_failure;
      report.message = last_message;
      return report;
    }
    dt *= 0.5;
    if (dt < options.min_step) {
      report.status = last_failure;
      report.message = last_message + " (step fell below the minimum)";
      return report;
    }
  }

  if (report.states.back().t < 1.0) {
    report.status = SolveStatus::schedule_exhausted;
    report.message = "schedule ended at t = " + std::to_string(report.states.back().t);
  } else {
    report.status = SolveStatus::converged;
    report.message = "reached t = 1";
  }
  return report;
}

namespace {

double bump(const Grid& grid, const Eigen::Vector2d& y) {
  const double s1 = (y(0) - grid.lower()(0)) / (grid.upper()(0) - grid.lower()(0));
  double b = 4.0 * s1 * (1.0 - s1);
  if (grid.dim() == 2) {
    const double s2 = (y(1) - grid.lower()(1)) / (grid.upper()(1) - grid.lower()(1));
    b *= 4.0 * s2 * (1.0 - s2);
  }
  return b;
}

MAProblem assemble_problem(const Grid& grid, MatrixCoefficient A, std::vector<MatrixCoefficient> B,
                           std::vector<ScalarCoefficient> sigma, double epsilon) {
  MAProblem problem;
  problem.l = grid.dim();
  problem.grid = grid;
  problem.A = std::move(A);
  problem.B = std::move(B);
  problem.sigma = std::move(sigma);
  problem.epsilon = epsilon;
  return problem;
}

ManufacturedProblem finish(MAProblem problem, GridField f_star, double delta) {
  const EllipticityCertificate cert = ellipticity_certificate(problem, f_star);
  if (!cert.ok)
    throw DomainError("manufactured problem: f_star violates the certificate (operator min " +
                      std::to_string(cert.operator_min) + ", transport min " + std::to_string(cert.transport_min) +
                      ")");
  GridField f0 = f_star;
  for (int p = 0; p < problem.grid.size(); ++p) f0.values(p) += delta * bump(problem.grid, problem.grid.node(p));
  return {std::move(problem), std::move(f_star), std::move(f0)};
}

}  // namespace

ManufacturedProblem manufactured_problem(const GridField& f_star, MatrixCoefficient A, std::vector<MatrixCoefficient> B,
                                         std::vector<ScalarCoefficient> sigma, double epsilon, double delta) {
  MAProblem problem = assemble_problem(f_star.grid, std::move(A), std::move(B), std::move(sigma), epsilon);
  problem.target_field = ma_operator(problem, f_star).values;
  return finish(std::move(problem), f_star, delta);
}

ManufacturedProblem manufactured_problem(const ScalarField& f_star, const Grid& grid, MatrixCoefficient A,
                                         std::vector<MatrixCoefficient> B, std::vector<ScalarCoefficient> sigma,
                                         double epsilon, double delta) {
  MAProblem problem = assemble_problem(grid, std::move(A), std::move(B), std::move(sigma), epsilon);
  problem.target_field = ma_operator_exact(problem, f_star).values;
  const int l = grid.dim();
  GridField sampled = GridField::sample(grid, [&](const Eigen::Vector2d& y) {
    return f_star.value(Eigen::VectorXd(y.head(l)));
  });
  return finish(std::move(problem), std::move(sampled), delta);
}

ManufacturedProblem builtin_manufactured(int l, int n, double delta, double epsilon) {
  ScalarField f;
  MatrixCoefficient A;
  std::vector<MatrixCoefficient> B;
  std::vector<ScalarCoefficient> sigma;
  if (l == 2) {
    f.value = [](const Eigen::VectorXd& y) {
      return y(0) + 0.3 * y(1) + 0.5 * (y(0) * y(0) + y(1) * y(1)) + 0.1 * std::sin(y(0) + 2.0 * y(1));
    };
    f.gradient = [](const Eigen::VectorXd& y) -> Eigen::VectorXd {
      const double c = 0.1 * std::cos(y(0) + 2.0 * y(1));
      return Eigen::Vector2d(1.0 + y(0) + c, 0.3 + y(1) + 2.0 * c);
    };
    f.hessian = [](const Eigen::VectorXd& y) -> Eigen::MatrixXd {
      const double s = 0.1 * std::sin(y(0) + 2.0 * y(1));
      Eigen::Matrix2d h;
      h << 1.0 - s, -2.0 * s, -2.0 * s, 1.0 - 4.0 * s;
      return h;
    };
    A = [](const Eigen::Vector2d& y) -> Eigen::MatrixXd {
      Eigen::Matrix2d a;
      a << 1.0 + 0.1 * y(0), 0.2, 0.1 * y(1), 1.0;
      return a;
    };
    B = {[](const Eigen::Vector2d&) -> Eigen::MatrixXd { return Eigen::Vector2d(0.05, 0.02).asDiagonal(); },
         [](const Eigen::Vector2d&) -> Eigen::MatrixXd {
           Eigen::Matrix2d b;
           b << 0.0, 0.03, 0.03, 0.04;
           return b;
         }};
    sigma = {[](const Eigen::Vector2d&) { return 1.0; }, [](const Eigen::Vector2d&) { return 0.3; }};
  } else if (l == 1) {
    f.value = [](const Eigen::VectorXd& y) { return y(0) + 0.5 * y(0) * y(0) + 0.1 * std::sin(2.0 * y(0)); };
    f.gradient = [](const Eigen::VectorXd& y) -> Eigen::VectorXd {
      return Eigen::VectorXd::Constant(1, 1.0 + y(0) + 0.2 * std::cos(2.0 * y(0)));
    };
    f.hessian = [](const Eigen::VectorXd& y) -> Eigen::MatrixXd {
      return Eigen::MatrixXd::Constant(1, 1, 1.0 - 0.4 * std::sin(2.0 * y(0)));
    };
    A = [](const Eigen::Vector2d& y) -> Eigen::MatrixXd { return Eigen::MatrixXd::Constant(1, 1, 1.0 + 0.1 * y(0)); };
    B = {[](const Eigen::Vector2d&) -> Eigen::MatrixXd { return Eigen::MatrixXd::Constant(1, 1, 0.05); }};
    sigma = {[](const Eigen::Vector2d&) { return 1.0; }};
  } else {
    throw DomainError("builtin manufactured problem: l must be 1 or 2");
  }
  const Grid grid(l, Eigen::Vector2d(-0.5, -0.5), Eigen::Vector2d(0.5, 0.5), n, l == 2 ? n : 1);
  return manufactured_problem(f, grid, std::move(A), std::move(B), std::move(sigma), epsilon, delta);
}

double ConvergenceStudy::min_order() const {
  double m = std::numeric_limits<double>::infinity();
  for (double o : orders) m = std::min(m, o);
  return m;
}

ConvergenceStudy convergence_study(int l, const std::vector<int>& sizes, double delta,
                                   const ContinuationOptions& options) {
  ConvergenceStudy study;
  for (int n : sizes) {
    const ManufacturedProblem mp = builtin_manufactured(l, n, delta);
    ConvergenceLevel level;
    level.n = n;
    level.h = mp.problem.grid.spacing()(0);
    level.report = continuation_solve(mp.problem, mp.f0, options);
    level.error = (level.report.final_state().f.values - mp.f_star.values).cwiseAbs().maxCoeff();
    study.levels.push_back(std::move(level));
  }
  for (std::size_t i = 1; i < study.levels.size(); ++i) {
    const auto& a = study.levels[i - 1];
    const auto& b = study.levels[i];
    study.orders.push_back(std::log(a.error / b.error) / std::log(a.h / b.h));
  }
  return study;
}

}  // namespace cyweyl
