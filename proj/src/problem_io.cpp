#include "cyweyl/problem_io.hpp"

#include "cyweyl/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace cyweyl {

using nlohmann::json;

namespace {

Polynomial scalar_entry(const json& v, const std::string& where) {
  if (v.is_number()) return Polynomial::constant(v.get<double>());
  if (v.is_string()) return Polynomial::parse(v.get<std::string>());
  throw ParseError("problem: " + where + " must be a number or a polynomial string");
}

using PolyMatrix = std::vector<std::vector<Polynomial>>;

PolyMatrix matrix_entry(const json& v, int l, const std::string& where) {
  if (l == 1 && !v.is_array()) return {{scalar_entry(v, where)}};
  if (!v.is_array() || static_cast<int>(v.size()) != l)
    throw ParseError("problem: " + where + " must have " + std::to_string(l) + " rows");
  PolyMatrix m;
  for (const auto& row : v) {
    if (!row.is_array() || static_cast<int>(row.size()) != l)
      throw ParseError("problem: each row of " + where + " must have " + std::to_string(l) + " entries");
    std::vector<Polynomial> r;
    for (const auto& e : row) r.push_back(scalar_entry(e, where));
    m.push_back(std::move(r));
  }
  return m;
}

MatrixCoefficient as_coefficient(PolyMatrix m) {
  return [m = std::move(m)](const Eigen::Vector2d& y) -> Eigen::MatrixXd {
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m[i][j](y);
    return out;
  };
}

std::vector<double> axis_values(const json& v, int l, const std::string& where) {
  if (l == 1 && v.is_number()) return {v.get<double>()};
  auto out = v.get<std::vector<double>>();
  if (static_cast<int>(out.size()) != l)
    throw ParseError("problem: " + where + " must have " + std::to_string(l) + " entries");
  return out;
}

}  // namespace

ProblemFile problem_from_json(std::string_view json_text, std::optional<std::pair<int, int>> grid_override) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("problem: invalid JSON: ") + e.what());
  }
  try {
    ProblemFile file;
    MAProblem& p = file.problem;
    p.l = doc.value("l", 2);
    const int l = p.l;
    if (l != 1 && l != 2) throw ParseError("problem: l must be 1 or 2");

    const auto lower = axis_values(doc.at("domain").at("lower"), l, "domain.lower");
    const auto upper = axis_values(doc.at("domain").at("upper"), l, "domain.upper");
    std::pair<int, int> size{17, l == 2 ? 17 : 1};
    if (doc.contains("grid")) {
      const auto g = axis_values(doc.at("grid"), l, "grid");
      size = {static_cast<int>(g[0]), l == 2 ? static_cast<int>(g[1]) : 1};
    }
    if (grid_override) size = *grid_override;
    p.grid = Grid(l, Eigen::Vector2d(lower[0], l == 2 ? lower[1] : 0.0),
                  Eigen::Vector2d(upper[0], l == 2 ? upper[1] : 0.0), size.first, l == 2 ? size.second : 1);

    p.A = as_coefficient(matrix_entry(doc.at("A"), l, "A"));
    if (doc.contains("B")) {
      const json& b = doc.at("B");
      if (!b.is_array() || static_cast<int>(b.size()) != l)
        throw ParseError("problem: B must list " + std::to_string(l) + " matrices");
      for (int k = 0; k < l; ++k) p.B.push_back(as_coefficient(matrix_entry(b[k], l, "B[" + std::to_string(k) + "]")));
    } else {
      for (int k = 0; k < l; ++k)
        p.B.push_back([l](const Eigen::Vector2d&) -> Eigen::MatrixXd { return Eigen::MatrixXd::Zero(l, l); });
    }
    const json& s = doc.at("sigma");
    if (l == 1 && !s.is_array()) {
      p.sigma.push_back([q = scalar_entry(s, "sigma")](const Eigen::Vector2d& y) { return q(y); });
    } else {
      if (!s.is_array() || static_cast<int>(s.size()) != l)
        throw ParseError("problem: sigma must have " + std::to_string(l) + " entries");
      for (int k = 0; k < l; ++k)
        p.sigma.push_back([q = scalar_entry(s[k], "sigma")](const Eigen::Vector2d& y) { return q(y); });
    }

    p.epsilon = doc.value("eps", 0.1);
    if (doc.contains("target") && doc.contains("n")) throw ParseError("problem: give either target or n, not both");
    if (doc.contains("target")) {
      const json& t = doc.at("target");
      if (t.is_number()) {
        p.target = t.get<double>();
      } else {
        const Polynomial q = scalar_entry(t, "target");
        p.target_field = GridField::sample(p.grid, [&](const Eigen::Vector2d& y) { return q(y); }).values;
      }
    } else if (doc.contains("n")) {
      p.target = std::ldexp(1.0, doc.at("n").get<int>());
    }
    p.hessian_cap = doc.value("hessian_cap", p.hessian_cap);
    if (doc.contains("f0")) file.f0 = scalar_entry(doc.at("f0"), "f0");
    file.normalize_f0 = doc.value("normalize_f0", false);
    p.validate();
    return file;
  } catch (const json::exception& e) {
    throw ParseError(std::string("problem: ") + e.what());
  }
}

ProblemFile load_problem(const std::string& path, std::optional<std::pair<int, int>> grid_override) {
  std::ifstream in(path);
  if (!in) throw ParseError("problem: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return problem_from_json(buffer.str(), grid_override);
}

GridField initial_field(const ProblemFile& file) {
  if (!file.f0) throw DomainError("problem: no f0 given");
  const Polynomial& q = *file.f0;
  GridField f = GridField::sample(file.problem.grid, [&](const Eigen::Vector2d& y) { return q(y); });
  return file.normalize_f0 ? normalize_into_admissible(file.problem, f) : f;
}

std::pair<int, int> parse_grid_size(std::string_view text) {
  auto number = [&](std::string_view part) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || v <= 0)
      throw ParseError("grid size '" + std::string(text) + "' must look like N1xN2 or N");
    return v;
  };
  const auto x = text.find('x');
  if (x == std::string_view::npos) {
    const int n = number(text);
    return {n, n};
  }
  return {number(text.substr(0, x)), number(text.substr(x + 1))};
}

namespace {

json state_json(const ContinuationState& s) {
  return json{{"t", s.t},
              {"newton_iters", s.newton_iters},
              {"residual_norm", s.residual_norm},
              {"residual_history", s.residual_history},
              {"certificate_min", s.certificate_min},
              {"multiplier", s.multiplier},
              {"hessian_max", s.hessian_max},
              {"hessian_cap_exceeded", s.hessian_cap_exceeded}};
}

json report_json(const ContinuationReport& r) {
  json states = json::array();
  for (const auto& s : r.states) states.push_back(state_json(s));
  json offending = json::array();
  for (int p : r.offending_nodes) {
    const auto [i, j] = r.states.front().f.grid.coords(p);
    offending.push_back({i, j});
  }
  return json{{"status", to_string(r.status)},
              {"message", r.message},
              {"certificate_bound", r.certificate_bound},
              {"f0_integral_gap", r.f0_integral_gap},
              {"rejected_steps", r.rejected_steps},
              {"offending_cells", offending},
              {"states", states}};
}

}  // namespace

std::string report_to_json(const ContinuationReport& report) { return report_json(report).dump(2) + "\n"; }

std::string convergence_to_json(const ConvergenceStudy& study) {
  json levels = json::array();
  for (const auto& lv : study.levels) {
    const auto& last = lv.report.final_state();
    levels.push_back({{"n", lv.n},
                      {"h", lv.h},
                      {"max_error", lv.error},
                      {"status", to_string(lv.report.status)},
                      {"final_t", last.t},
                      {"final_residual_history", last.residual_history}});
  }
  json doc{{"levels", levels}, {"orders", study.orders}};
  if (!study.orders.empty()) doc["min_order"] = study.min_order();
  return doc.dump(2) + "\n";
}

std::string field_to_csv(const GridField& f) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(16);
  out << "y1,y2,f\n";
  for (int p = 0; p < f.grid.size(); ++p) {
    const Eigen::Vector2d y = f.grid.node(p);
    out << y(0) << ',' << y(1) << ',' << f.values(p) << '\n';
  }
  return out.str();
}

}  // namespace cyweyl
