#pragma once

#include "cyweyl/grid.hpp"
#include "cyweyl/ma_residual.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cyweyl {

using MatrixCoefficient = std::function<Eigen::MatrixXd(const Eigen::Vector2d&)>;
using ScalarCoefficient = std::function<double(const Eigen::Vector2d&)>;

/// det(A Hf A^T + sum_k f_k B_k) * sum_k sigma_k f_k = target on a rectangle
/// (l = 2) or an interval (l = 1; coefficients then see y = (y1, 0)).
struct MAProblem {
  int l = 2;
  Grid grid;
  MatrixCoefficient A;
  std::vector<MatrixCoefficient> B;
  std::vector<ScalarCoefficient> sigma;
  double epsilon = 0.1;
  /// Constant right-hand side (2^n).
  double target = 4.0;
  /// Optional field-valued right-hand side; overrides `target` when set.
  std::optional<Eigen::VectorXd> target_field;
  /// Runtime cap on max |Hf| (Frobenius) reported for each accepted state.
  double hessian_cap = 1e6;

  /// Throws DomainError on shape mismatches, det A = 0 at a node, or a
  /// non-symmetric B_k (tolerance 1e-14 relative).
  void validate() const;
  Eigen::VectorXd target_values() const;
};

/// Coefficients sampled at every node.
struct NodeCoefficients {
  std::vector<Eigen::MatrixXd> A;
  std::vector<std::vector<Eigen::MatrixXd>> B;  // B[p][k]
  std::vector<Eigen::VectorXd> sigma;
  double min_abs_det_A = 0.0;
};

NodeCoefficients sample_coefficients(const MAProblem& problem);

/// Pointwise operator value from the gradient and Hessian of f.
struct PointwiseOperator {
  Eigen::MatrixXd C;  // A Hf A^T + sum_k f_k B_k
  double det_C = 0.0;
  double transport = 0.0;  // sum_k sigma_k f_k
  double value = 0.0;      // det_C * transport
};

PointwiseOperator evaluate_pointwise(const Eigen::MatrixXd& A, const std::vector<Eigen::MatrixXd>& B,
                                     const Eigen::VectorXd& sigma, const Eigen::VectorXd& grad,
                                     const Eigen::MatrixXd& hess);

/// Discrete operator at every node (one-sided stencils on the boundary).
GridField ma_operator(const MAProblem& problem, const GridField& f);
GridField ma_operator(const MAProblem& problem, const NodeCoefficients& coeffs, const GridField& f);
/// Same operator from exact derivatives of a smooth f.
GridField ma_operator_exact(const MAProblem& problem, const ScalarField& f);

/// Linearization at f1: L(g) = sum_kl M_kl g_kl + sum_k b_k g_k with
/// M = S A^T adj(C) A and b_k = S tr(adj(C) B_k) + det(C) sigma_k.
/// There is no zeroth-order term.
struct Linearization {
  Eigen::SparseMatrix<double> matrix;  // size x size, acting on nodal values
  std::vector<Eigen::MatrixXd> principal;  // M at each node
  std::vector<Eigen::VectorXd> transport;  // b at each node
  /// Nodes where C(f1) is numerically singular (the cofactor is still used).
  std::vector<int> singular_nodes;
};

Linearization linearize(const MAProblem& problem, const GridField& f1);
Linearization linearize(const MAProblem& problem, const NodeCoefficients& coeffs, const GridField& f1);

struct EllipticityCertificate {
  /// E = (det A)^2 D^(l-1) S at each node.
  GridField E;
  double E_min = 0.0;
  double operator_min = 0.0;
  double transport_min = 0.0;
  /// operator >= eps^2 and transport >= eps at every node.
  bool ok = false;
  std::vector<int> offending_nodes;
  /// (min |det A|)^2 eps^(2l-1), implied by ok.
  double lower_bound = 0.0;
};

EllipticityCertificate ellipticity_certificate(const MAProblem& problem, const GridField& f1);

struct Admissibility {
  double integral = 0.0;           // trapezoid integral of the operator
  double required_integral = 0.0;  // integral of the target
  bool integral_ok = false;        // relative tolerance 1e-8
  bool operator_ok = false;        // >= eps^2 everywhere
  bool transport_ok = false;       // >= eps everywhere
  double operator_min = 0.0;
  double transport_min = 0.0;
  bool ok() const { return integral_ok && operator_ok && transport_ok; }
};

Admissibility admissibility(const MAProblem& problem, const GridField& f);

/// c f with c = (required / integral)^(1/(l+1)), using the homogeneity
/// D(c f) = c^(l+1) D(f).  Throws DomainError if the integral is not positive.
GridField normalize_into_admissible(const MAProblem& problem, const GridField& f);

enum class SolveStatus { converged, newton_divergence, certificate_violation, schedule_exhausted };
std::string to_string(SolveStatus status);

struct ContinuationOptions {
  /// Explicit t-values; empty selects the adaptive schedule.
  std::vector<double> schedule;
  double initial_step = 0.1;
  double min_step = 1e-4;
  /// Newton stops when max|residual| <= tolerance * max(1, max|rhs|).
  double tolerance = 1e-9;
  int max_newton = 30;
  int max_backtracks = 30;
};

struct ContinuationState {
  double t = 0.0;
  GridField f;
  double certificate_min = 0.0;
  int newton_iters = 0;
  double residual_norm = 0.0;
  std::vector<double> residual_history;
  double multiplier = 0.0;
  double hessian_max = 0.0;
  bool hessian_cap_exceeded = false;
};

struct ContinuationReport {
  SolveStatus status = SolveStatus::converged;
  std::string message;
  /// Accepted states in increasing t, starting with t = 0.
  std::vector<ContinuationState> states;
  /// Nodes that broke the certificate on the last rejected attempt.
  std::vector<int> offending_nodes;
  int rejected_steps = 0;
  /// Integral of the operator of f0 minus the integral of the target; the
  /// integral condition is reported here, not required of f0.
  double f0_integral_gap = 0.0;
  double certificate_bound = 0.0;

  const ContinuationState& final_state() const { return states.back(); }
};

/// Newton continuation for D(f) = (1 - t) D(f0) + t * target, f = f0 on the
/// boundary, with one scalar multiplier carrying the integral constraint.
ContinuationReport continuation_solve(const MAProblem& problem, const GridField& f0,
                                      const ContinuationOptions& options = {});

struct ManufacturedProblem {
  MAProblem problem;
  GridField f_star;
  GridField f0;
};

/// Target is the discrete operator of f_star, so f_star solves the discrete
/// problem exactly.  f0 = f_star + delta * bump with bump = 0 on the boundary.
ManufacturedProblem manufactured_problem(const GridField& f_star, MatrixCoefficient A, std::vector<MatrixCoefficient> B,
                                         std::vector<ScalarCoefficient> sigma, double epsilon, double delta);

/// Target is the exact operator of a smooth f_star sampled at the nodes, so the
/// discrete solution approaches f_star at the rate of the stencils.
ManufacturedProblem manufactured_problem(const ScalarField& f_star, const Grid& grid, MatrixCoefficient A,
                                         std::vector<MatrixCoefficient> B, std::vector<ScalarCoefficient> sigma,
                                         double epsilon, double delta);

/// Built-in smooth non-polynomial test case on [-1/2, 1/2]^2 (l = 2) or [-1/2, 1/2] (l = 1).
ManufacturedProblem builtin_manufactured(int l, int n, double delta = 0.05, double epsilon = 0.1);

struct ConvergenceLevel {
  int n = 0;
  double h = 0.0;
  double error = 0.0;  // max |f_h - f_star|
  ContinuationReport report;
};

struct ConvergenceStudy {
  std::vector<ConvergenceLevel> levels;
  std::vector<double> orders;  // log2(e_k / e_{k+1})
  double min_order() const;
};

ConvergenceStudy convergence_study(int l, const std::vector<int>& sizes, double delta = 0.05,
                                   const ContinuationOptions& options = {});

}  // namespace cyweyl
