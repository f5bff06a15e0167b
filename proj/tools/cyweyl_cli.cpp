// Command-line front end: rank1, rank2-tables, residual, solve, verify.
//
// Exit codes: 0 success, 1 numeric failure (solver or check failed), 2 bad
// configuration (unknown space, malformed file or flag).

#include "cyweyl/continuity_solver.hpp"
#include "cyweyl/descriptor_io.hpp"
#include "cyweyl/errors.hpp"
#include "cyweyl/invariants.hpp"
#include "cyweyl/ma_residual.hpp"
#include "cyweyl/polynomial.hpp"
#include "cyweyl/problem_io.hpp"
#include "cyweyl/radial_profile.hpp"
#include "cyweyl/root_data.hpp"
#include "cyweyl/transversal_operator.hpp"
#include "cyweyl/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace cyweyl;
using nlohmann::json;

namespace {

constexpr int kNumericFailure = 1;
constexpr int kConfigError = 2;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

struct Range {
  double lo = 0.0, hi = 1.0;
  int count = 2;
};

// "lo:hi:count"
Range parse_range(const std::string& text) {
  Range r;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.lo, &r.hi, &r.count, &tail) != 3 || r.count < 1 || !(r.hi >= r.lo))
    throw ParseError("range '" + text + "' must look like lo:hi:count");
  return r;
}

double range_at(const Range& r, int i) { return r.count == 1 ? r.lo : r.lo + (r.hi - r.lo) * i / (r.count - 1); }

// ---- rank1 ----------------------------------------------------------------

struct Rank1Options {
  std::string space;
  int n = 3;
  int d = 0;
  double c = 1.0;
  double C1 = 1.0;
  double C2 = 1.0;
  std::string reading = "inner";
  std::string grid = "0.01:10:200";
  std::string output;
  double completeness = 0.0;
};

int run_rank1(const Rank1Options& o) {
  ProfileParams p;
  if (!o.space.empty()) {
    const SymmetricSpaceDescriptor desc = load_descriptor(o.space);
    p = profile_params_for(desc, o.C1, o.C2, parse_reading(o.reading));
  } else {
    p.n = o.n;
    p.d = o.d;
    p.curvature = o.c;
    p.C1 = o.C1;
    p.C2 = o.C2;
    p.reading = parse_reading(o.reading);
  }
  const RadialProfile profile(p);
  ProfileParams other_params = p;
  other_params.reading = p.reading == Reading::inner ? Reading::outer : Reading::inner;
  const RadialProfile other(other_params);

  const Range r = parse_range(o.grid);
  std::ostringstream csv;
  csv << "s,u,f,f_prime,f_second,radial_second,ode_residual\n";
  double worst = 0.0, worst_other = 0.0;
  for (int i = 0; i < r.count; ++i) {
    const double s = range_at(r, i);
    const double u = s * s;
    const double res = profile.ode_residual(s);
    worst = std::max(worst, std::abs(res));
    worst_other = std::max(worst_other, std::abs(other.ode_residual(s)));
    csv << num(s) << ',' << num(u) << ',' << num(profile.f_value(u)) << ',' << num(profile.f_prime(u)) << ','
        << num(profile.f_second(u)) << ',' << num(profile.radial_second_derivative(s)) << ',' << num(res) << '\n';
  }
  emit(o.output, csv.str());
  std::cerr << "max |ode_residual| (" << to_string(p.reading) << ") = " << num(worst) << '\n'
            << "max |ode_residual| (" << to_string(other_params.reading) << ", for comparison) = " << num(worst_other)
            << '\n';
  if (o.completeness > 0.0) {
    const CompletenessReport c = profile.completeness(o.completeness);
    std::cerr << "radial length L(T_max) = " << num(c.samples.back().length) << ", log-log slope over the last decade = "
              << num(c.slope) << '\n';
  }
  return 0;
}

// ---- rank2-tables ---------------------------------------------------------

int run_rank2_tables(const std::string& space, const std::string& format, const std::string& output) {
  const SymmetricSpaceDescriptor desc = load_descriptor(space);
  if (desc.type == RootType::rank1) throw DomainError("rank2-tables: '" + space + "' is a rank-one space");
  const RestrictedRootSystem rrs = desc.root_system();
  const auto group = weyl_group(rrs);
  const Eigen::Vector2d probe(std::cos(0.3 * chamber_angle(rrs)), std::sin(0.3 * chamber_angle(rrs)));
  const double ratio = symmetrized_closed_form(desc.type, probe) / rho2(desc.type, probe);

  if (format == "csv") {
    std::ostringstream csv;
    csv << "line,direction_1,direction_2,covector_1,covector_2,multiplicity,double_multiplicity\n";
    const int k = rrs.line_count();
    for (int j = 0; j < k; ++j) {
      const double a = j * std::numbers::pi / k;
      const auto& root = rrs.root(j);
      csv << j << ',' << num(std::cos(a)) << ',' << num(std::sin(a)) << ',' << num(root.covector(0)) << ','
          << num(root.covector(1)) << ',' << root.multiplicity << ',' << root.double_multiplicity << '\n';
    }
    emit(output, csv.str());
    return 0;
  }
  if (format != "json") throw ParseError("format must be csv or json");

  json roots = json::array();
  for (int j = 0; j < rrs.line_count(); ++j) {
    const auto& root = rrs.root(j);
    roots.push_back({{"line", j},
                     {"covector", {root.covector(0), root.covector(1)}},
                     {"multiplicity", root.multiplicity},
                     {"double_multiplicity", root.double_multiplicity}});
  }
  json weyl = json::array();
  for (const auto& m : group) weyl.push_back({{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}});
  json doc{{"space", desc.name},
           {"type", to_string(desc.type)},
           {"n", desc.n},
           {"dimension_identity", desc.dimension_identity_holds()},
           {"chamber_angle", chamber_angle(rrs)},
           {"inversion_chamber_angle", chamber_angle(rrs, ChamberKind::inversion)},
           {"weyl_order", group.size()},
           {"roots", roots},
           {"weyl_group", weyl},
           {"symmetrized_seed_over_rho2", ratio}};
  emit(output, doc.dump(2) + "\n");
  return 0;
}

// ---- residual -------------------------------------------------------------

ImageFunction polynomial_function(const Polynomial& p, int dim) {
  ImageFunction f;
  f.value = [p](const Eigen::VectorXd& y) { return p(y(0), y.size() > 1 ? y(1) : 0.0); };
  f.gradient = [p, dim](const Eigen::VectorXd& y) -> Eigen::VectorXd {
    const Eigen::Vector2d yy(y(0), y.size() > 1 ? y(1) : 0.0);
    return p.gradient(yy).head(dim);
  };
  f.hessian = [p, dim](const Eigen::VectorXd& y) -> Eigen::MatrixXd {
    const Eigen::Vector2d yy(y(0), y.size() > 1 ? y(1) : 0.0);
    return p.hessian(yy).topLeftCorner(dim, dim);
  };
  return f;
}

struct ResidualOptions {
  std::string space;
  std::string f = "0.5*y1^2 + y1";
  std::string grid = "0.2:2:10";
  std::string angles = "9";
  std::string coords = "chamber";
  std::string output;
};

int run_residual(const ResidualOptions& o) {
  const SymmetricSpaceDescriptor desc = load_descriptor(o.space);
  const RestrictedRootSystem rrs = desc.root_system();
  const Polynomial poly = Polynomial::parse(o.f);
  const Range radii = parse_range(o.grid);
  std::ostringstream csv;
  csv << "x1,x2,y1,y2,residual,det_factor,transversal_factor\n";
  int skipped = 0;
  double worst = 0.0;

  if (desc.type == RootType::rank1) {
    if (poly.degree_in(2) > 0) throw ParseError("residual: rank-one f may only depend on y1");
    const ImageFunction f = polynomial_function(poly, 1);
    for (int i = 0; i < radii.count; ++i) {
      const double s = range_at(radii, i);
      try {
        const InvariantResidual r = invariant_residual_rank_one(f, rrs, desc.n, s);
        worst = std::max(worst, std::abs(r.residual));
        csv << num(s) << ',' << num(0.0) << ',' << num(s * s) << ',' << num(0.0) << ',' << num(r.residual) << ','
            << num(r.det_factor) << ',' << num(r.transversal_factor) << '\n';
      } catch (const DomainError&) {
        ++skipped;
      }
    }
  } else {
    const int n_angles = std::stoi(o.angles);
    if (n_angles < 1) throw ParseError("residual: --angles must be positive");
    const bool image = o.coords == "image";
    if (!image && o.coords != "chamber") throw ParseError("residual: --coords must be chamber or image");
    const InvariantBasis basis(desc.type);
    const double angle =
        chamber_angle(rrs, image && desc.type == RootType::d2 ? ChamberKind::inversion : ChamberKind::weyl);
    const ImageFunction f = polynomial_function(poly, 2);
    for (int i = 0; i < radii.count; ++i)
      for (int j = 0; j < n_angles; ++j) {
        const double r = range_at(radii, i);
        const double theta = angle * (j + 1) / (n_angles + 1);  // open sector
        const Eigen::Vector2d x(r * std::cos(theta), r * std::sin(theta));
        const Eigen::Vector2d y = basis.forward(x);
        try {
          const InvariantResidual res = image ? image_residual(f, rrs, desc.n, basis, y)
                                              : invariant_residual(f, rrs, desc.n, basis, x);
          worst = std::max(worst, std::abs(res.residual));
          csv << num(res.chamber_point(0)) << ',' << num(res.chamber_point(1)) << ',' << num(y(0)) << ','
              << num(y(1)) << ',' << num(res.residual) << ',' << num(res.det_factor) << ','
              << num(res.transversal_factor) << '\n';
        } catch (const DomainError&) {
          ++skipped;
        }
      }
  }
  emit(o.output, csv.str());
  std::cerr << "max |residual| = " << num(worst) << '\n';
  if (skipped) std::cerr << skipped << " points skipped (outside the domain of f or the image region)\n";
  return 0;
}

// ---- solve ----------------------------------------------------------------

struct SolveOptions {
  std::string problem;
  std::string grid;
  double eps = 0.0;
  std::string schedule = "adaptive";
  std::string output_json;
  std::string output_csv;
  bool manufactured = false;
  int l = 2;
  std::vector<int> sizes{9, 17, 33};
  double delta = 0.05;
};

std::vector<double> parse_schedule(const std::string& text) {
  if (text == "adaptive") return {};
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("schedule must be 'adaptive' or a comma-separated list of t values");
    }
  }
  return out;
}

int run_solve(const SolveOptions& o) {
  ContinuationOptions options;
  options.schedule = parse_schedule(o.schedule);
  if (o.manufactured) {
    const ConvergenceStudy study = convergence_study(o.l, o.sizes, o.delta, options);
    emit(o.output_json, convergence_to_json(study));
    bool ok = true;
    for (const auto& lv : study.levels) ok = ok && lv.report.status == SolveStatus::converged;
    std::cerr << "observed order (min over refinements) = " << num(study.min_order()) << '\n';
    return ok ? 0 : kNumericFailure;
  }
  if (o.problem.empty()) throw ParseError("solve: --problem is required unless --manufactured is given");
  std::optional<std::pair<int, int>> grid;
  if (!o.grid.empty()) grid = parse_grid_size(o.grid);
  ProblemFile file = load_problem(o.problem, grid);
  if (o.eps > 0.0) file.problem.epsilon = o.eps;
  const GridField f0 = initial_field(file);
  const ContinuationReport report = continuation_solve(file.problem, f0, options);
  emit(o.output_json, report_to_json(report));
  if (!o.output_csv.empty()) emit(o.output_csv, field_to_csv(report.final_state().f));
  std::cerr << to_string(report.status) << ": " << report.message << '\n';
  return report.status == SolveStatus::converged ? 0 : kNumericFailure;
}

// ---- verify ---------------------------------------------------------------

int run_verify(const std::vector<std::string>& spaces, bool all, const std::string& output) {
  std::vector<std::string> names = spaces;
  if (all) {
    names = builtin_names();
    for (const char* extra : {"S^5", "CP^3", "HP^2", "OP^2"}) names.emplace_back(extra);
  }
  if (names.empty()) throw ParseError("verify: give --space NAME or --all");
  std::string text;
  bool ok = true;
  for (const auto& name : names) {
    const VerifyReport report = verify_space(load_descriptor(name));
    text += format_report(report) + "\n";
    ok = ok && report.all_pass();
  }
  emit(output, text);
  return ok ? 0 : kNumericFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyweyl: Weyl-invariant potentials, invariant-coordinate residuals and a continuity solver"};
  app.require_subcommand(1);

  Rank1Options r1;
  auto* rank1 = app.add_subcommand("rank1", "Rank-one radial profile on an s-grid (CSV)");
  rank1->add_option("--space", r1.space, "Rank-one built-in name or descriptor file (overrides --n/--d/--c)");
  rank1->add_option("--n", r1.n, "Dimension n");
  rank1->add_option("--d", r1.d, "Doubled-root multiplicity d (0, 1, 3 or 7)");
  rank1->add_option("--c", r1.c, "Curvature c");
  rank1->add_option("--C1", r1.C1, "Integration constant C1");
  rank1->add_option("--C2", r1.C2, "Integration constant C2");
  rank1->add_option("--reading", r1.reading, "inner or outer")->check(CLI::IsMember({"inner", "outer"}));
  rank1->add_option("--grid", r1.grid, "s-grid lo:hi:count");
  rank1->add_option("--completeness", r1.completeness, "Also report the radial length up to this T");
  rank1->add_option("-o,--output", r1.output, "CSV path (default stdout)");

  std::string t_space, t_format = "json", t_output;
  auto* tables = app.add_subcommand("rank2-tables", "Root data, Weyl group and invariant constants of a rank-two space");
  tables->add_option("--space", t_space, "Built-in name or descriptor file")->required();
  tables->add_option("--format", t_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  tables->add_option("-o,--output", t_output, "Output path (default stdout)");

  ResidualOptions ro;
  auto* residual = app.add_subcommand("residual", "Invariant-coordinate residual of a polynomial f on a chamber grid");
  residual->add_option("--space", ro.space, "Built-in name or descriptor file")->required();
  residual->add_option("--f", ro.f, "Polynomial in y1, y2");
  residual->add_option("--grid", ro.grid, "Radii lo:hi:count (rank one: s-values)");
  residual->add_option("--angles", ro.angles, "Number of interior angles per radius (rank two)");
  residual->add_option("--coords", ro.coords, "chamber or image")->check(CLI::IsMember({"chamber", "image"}));
  residual->add_option("-o,--output", ro.output, "CSV path (default stdout)");

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Continuity-method solve of the Monge-Ampere-type problem");
  solve->add_option("--problem", so.problem, "Problem JSON file");
  solve->add_option("--grid", so.grid, "Grid N1xN2 (overrides the file)");
  solve->add_option("--eps", so.eps, "Ellipticity threshold (overrides the file)");
  solve->add_option("--schedule", so.schedule, "'adaptive' or a list t1,t2,...");
  solve->add_option("--json", so.output_json, "Report path (default stdout)");
  solve->add_option("--csv", so.output_csv, "Final field CSV path");
  solve->add_flag("--manufactured", so.manufactured, "Run the built-in manufactured-solution convergence study");
  solve->add_option("--l", so.l, "Dimension of the manufactured problem (1 or 2)");
  solve->add_option("--sizes", so.sizes, "Grid sizes of the convergence study")->delimiter(',');
  solve->add_option("--delta", so.delta, "Perturbation of the manufactured start");

  std::vector<std::string> v_spaces;
  bool v_all = false;
  std::string v_output;
  auto* verify = app.add_subcommand("verify", "Invariant suite; exits 1 if any check fails");
  verify->add_option("--space", v_spaces, "Built-in name or descriptor file (repeatable)");
  verify->add_flag("--all", v_all, "All built-in spaces");
  verify->add_option("-o,--output", v_output, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*rank1) return run_rank1(r1);
    if (*tables) return run_rank2_tables(t_space, t_format, t_output);
    if (*residual) return run_residual(ro);
    if (*solve) return run_solve(so);
    if (*verify) return run_verify(v_spaces, v_all, v_output);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kConfigError;
}
