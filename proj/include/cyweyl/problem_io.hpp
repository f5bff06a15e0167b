#pragma once

#include "cyweyl/continuity_solver.hpp"
#include "cyweyl/polynomial.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace cyweyl {

/// Problem file contents.  JSON layout:
///
///   {
///     "l": 2,                                     optional, default 2
///     "domain": {"lower": [a1, a2], "upper": [b1, b2]},
///     "grid": [N1, N2],                           optional, default [17, 17]
///     "A": [["1 + 0.1*y1", 0.2], ["0.1*y2", 1]],  l x l, numbers or polynomials
///     "B": [<l x l>, ...],                        l matrices, default zero
///     "sigma": [1, "0.3"],                        l entries
///     "eps": 0.1,
///     "target": 4  |  "target": "<polynomial>"  |  "n": 2   (target 2^n)
///     "hessian_cap": 1e6,                         optional
///     "f0": "<polynomial>",                       optional
///     "normalize_f0": false                       optional
///   }
///
/// For l = 1 the bounds, grid and matrices have one entry per axis; a scalar
/// is accepted wherever a 1 x 1 matrix is expected.
struct ProblemFile {
  MAProblem problem;
  std::optional<Polynomial> f0;
  bool normalize_f0 = false;
};

ProblemFile problem_from_json(std::string_view json_text,
                              std::optional<std::pair<int, int>> grid_override = std::nullopt);
ProblemFile load_problem(const std::string& path, std::optional<std::pair<int, int>> grid_override = std::nullopt);

/// f0 sampled on the grid, scaled into the admissible set if requested.
/// Throws DomainError when the file has no f0.
GridField initial_field(const ProblemFile& file);

/// "N1xN2" or "N".
std::pair<int, int> parse_grid_size(std::string_view text);

/// Per-state summary of a continuation run.
std::string report_to_json(const ContinuationReport& report);
std::string convergence_to_json(const ConvergenceStudy& study);
/// y1,y2,f rows with 17 significant digits.
std::string field_to_csv(const GridField& f);

}  // namespace cyweyl
