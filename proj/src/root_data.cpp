#include "cyweyl/root_data.hpp"

#include "cyweyl/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <regex>

namespace cyweyl {

std::string to_string(RootType type) {
  switch (type) {
    case RootType::rank1: return "rank1";
    case RootType::a2: return "a2";
    case RootType::b2: return "b2";
    case RootType::bc2: return "bc2";
    case RootType::d2: return "d2";
    case RootType::g2: return "g2";
  }
  return "?";
}

RootType parse_root_type(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "rank1") return RootType::rank1;
  if (t == "a2") return RootType::a2;
  if (t == "b2") return RootType::b2;
  if (t == "bc2") return RootType::bc2;
  if (t == "d2") return RootType::d2;
  if (t == "g2") return RootType::g2;
  throw DomainError("unknown root system type '" + std::string(text) + "'");
}

std::string to_string(MultiplicityConvention convention) {
  return convention == MultiplicityConvention::closed_form ? "closed_form" : "geometric";
}

MultiplicityConvention parse_convention(std::string_view text) {
  if (text == "closed_form") return MultiplicityConvention::closed_form;
  if (text == "geometric") return MultiplicityConvention::geometric;
  throw DomainError("unknown multiplicity convention '" + std::string(text) + "'");
}

int root_line_count(RootType type) {
  switch (type) {
    case RootType::d2: return 2;
    case RootType::a2: return 3;
    case RootType::b2:
    case RootType::bc2: return 4;
    case RootType::g2: return 6;
    case RootType::rank1: break;
  }
  throw DomainError("root_line_count: rank-two type required");
}

RestrictedRootSystem::RestrictedRootSystem(RootType type, int rank, std::vector<RootDatum> roots)
    : type_(type), rank_(rank), roots_(std::move(roots)) {
  if (rank_ != 1 && rank_ != 2) throw DomainError("rank must be 1 or 2");
  if ((type_ == RootType::rank1) != (rank_ == 1)) throw DomainError("type does not match rank");
  if (roots_.empty()) throw DomainError("root system needs at least one root");
  const bool doubles_allowed = type_ == RootType::bc2 || type_ == RootType::rank1;
  for (const auto& r : roots_) {
    if (r.covector.size() != rank_) throw DomainError("covector dimension differs from rank");
    if (r.covector.norm() == 0.0) throw DomainError("root covector must be nonzero");
    if (r.multiplicity <= 0) throw DomainError("root multiplicity must be positive");
    if (r.double_multiplicity < 0) throw DomainError("doubled-root multiplicity must be nonnegative");
    if (r.double_multiplicity > 0 && !doubles_allowed)
      throw DomainError("doubled roots only occur for bc2 and rank one");
  }
}

int RestrictedRootSystem::transversal_dimension() const {
  int total = 0;
  for (const auto& r : roots_) total += r.multiplicity + r.double_multiplicity;
  return total;
}

RestrictedRootSystem build_rank_one(int n, int d, double curvature, MultiplicityConvention convention) {
  if (d != 0 && d != 1 && d != 3 && d != 7) throw DomainError("rank one: d must be one of 0, 1, 3, 7");
  if (n < 2) throw DomainError("rank one: n must be at least 2");
  if (d >= n) throw DomainError("rank one: d must be smaller than n");
  if (!(curvature > 0.0)) throw DomainError("rank one: curvature must be positive");
  RootDatum root;
  root.covector = Eigen::VectorXd::Constant(1, std::sqrt(curvature));
  root.multiplicity = convention == MultiplicityConvention::closed_form ? n - d : n - 1 - d;
  root.double_multiplicity = d;
  if (root.multiplicity <= 0)
    throw DomainError("rank one: degenerate multiplicity m = " + std::to_string(root.multiplicity));
  return RestrictedRootSystem(RootType::rank1, 1, {root});
}

RestrictedRootSystem build_rank_two(RootType type, std::span<const int> multiplicities,
                                    std::span<const int> double_multiplicities,
                                    std::span<const double> scales) {
  if (type == RootType::rank1) throw DomainError("build_rank_two: rank-two type required");
  const int k = root_line_count(type);
  if (static_cast<int>(multiplicities.size()) != k)
    throw DomainError("build_rank_two: expected " + std::to_string(k) + " multiplicities");
  if (!double_multiplicities.empty() && static_cast<int>(double_multiplicities.size()) != k)
    throw DomainError("build_rank_two: expected " + std::to_string(k) + " doubled-root multiplicities");
  if (!scales.empty() && static_cast<int>(scales.size()) != k)
    throw DomainError("build_rank_two: expected " + std::to_string(k) + " root scales");

  std::vector<RootDatum> roots;
  roots.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const double angle = j * std::numbers::pi / k;
    const double scale = scales.empty() ? 1.0 : scales[static_cast<std::size_t>(j)];
    if (!(scale > 0.0)) throw DomainError("build_rank_two: root scales must be positive");
    RootDatum r;
    r.covector = Eigen::Vector2d(-std::sin(angle), std::cos(angle)) * scale;
    r.multiplicity = multiplicities[static_cast<std::size_t>(j)];
    r.double_multiplicity = double_multiplicities.empty() ? 0 : double_multiplicities[static_cast<std::size_t>(j)];
    roots.push_back(std::move(r));
  }
  return RestrictedRootSystem(type, 2, std::move(roots));
}

namespace {

Eigen::Matrix2d reflection_matrix(int k, int j) {
  const double a = 2.0 * j * std::numbers::pi / k;
  Eigen::Matrix2d b;
  b << std::cos(a), std::sin(a), std::sin(a), -std::cos(a);
  return b;
}

std::vector<Eigen::Matrix2d> weyl_group_for_lines(int k) {
  std::vector<Eigen::Matrix2d> group;
  group.reserve(static_cast<std::size_t>(2 * k));
  group.push_back(Eigen::Matrix2d::Identity());
  for (int i = 0; i < k; ++i) group.push_back(reflection_matrix(k, i));
  const Eigen::Matrix2d rotation = reflection_matrix(k, 0) * reflection_matrix(k, 1);
  Eigen::Matrix2d power = Eigen::Matrix2d::Identity();
  for (int j = 1; j < k; ++j) {
    power = power * rotation;
    group.push_back(power);
  }
  return group;
}

}  // namespace

Eigen::Matrix2d weyl_reflection(const RestrictedRootSystem& rrs, int j) {
  if (rrs.rank() != 2) throw DomainError("weyl_reflection: rank-two system required");
  const int k = rrs.line_count();
  if (j < 0 || j >= k) throw DomainError("weyl_reflection: line index out of range");
  return reflection_matrix(k, j);
}


std::vector<Eigen::Matrix2d> weyl_group(const RestrictedRootSystem& rrs) {
  if (rrs.rank() != 2) throw DomainError("weyl_group: rank-two system required");
  return weyl_group_for_lines(rrs.line_count());
}

std::vector<Eigen::Matrix2d> weyl_group(RootType type) {
  return weyl_group_for_lines(root_line_count(type));
}

double chamber_angle(const RestrictedRootSystem& rrs, ChamberKind kind) {
  if (rrs.rank() != 2) throw DomainError("chamber_angle: rank-two system required");
  if (kind == ChamberKind::inversion && rrs.type() == RootType::d2) return std::numbers::pi / 4.0;
  return std::numbers::pi / rrs.line_count();
}

bool chamber_contains(const RestrictedRootSystem& rrs, const Eigen::Vector2d& v, ChamberKind kind) {
  if (v.x() == 0.0 && v.y() == 0.0) return false;
  const double theta = std::atan2(v.y(), v.x());
  return theta > 0.0 && theta < chamber_angle(rrs, kind);
}

namespace {

// Distance (in angle) of v from the closed sector [0, opening].
double sector_violation(const Eigen::Vector2d& v, double opening) {
  const double theta = std::atan2(v.y(), v.x());
  return std::max(0.0, -theta) + std::max(0.0, theta - opening);
}

}  // namespace

Eigen::Vector2d chamber_representative(const RestrictedRootSystem& rrs, const Eigen::Vector2d& v) {
  const double opening = chamber_angle(rrs);
  constexpr double angle_tol = 1e-12;
  if (v.isZero(0.0) || sector_violation(v, opening) <= angle_tol) return v;

  Eigen::Vector2d best = v;
  double best_violation = sector_violation(v, opening);
  double best_theta = std::atan2(v.y(), v.x());
  for (const auto& m : weyl_group(rrs)) {
    const Eigen::Vector2d w = m * v;
    const double violation = sector_violation(w, opening);
    const double theta = std::atan2(w.y(), w.x());
    const bool better = violation < best_violation - angle_tol ||
                        (std::abs(violation - best_violation) <= angle_tol && theta < best_theta);
    if (better) {
      best = w;
      best_violation = violation;
      best_theta = theta;
    }
  }
  return best;
}

RestrictedRootSystem SymmetricSpaceDescriptor::root_system() const {
  if (type == RootType::rank1) return build_rank_one(n, d, curvature, convention);
  return build_rank_two(type, multiplicities, double_multiplicities, root_scales);
}

bool SymmetricSpaceDescriptor::dimension_identity_holds() const {
  const auto rrs = root_system();
  return n == rrs.total_dimension();
}

namespace {

std::string normalize_name(std::string_view name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(name[i]);
    if (std::isspace(c) || c == '*' || c == '.') continue;
    // UTF-8 multiplication sign and middle dot.
    if (c == 0xC3 && i + 1 < name.size() && static_cast<unsigned char>(name[i + 1]) == 0x97) {
      out.push_back('x');
      ++i;
      continue;
    }
    if (c == 0xC2 && i + 1 < name.size() && static_cast<unsigned char>(name[i + 1]) == 0xB7) {
      ++i;
      continue;
    }
    out.push_back(static_cast<char>(c));
  }
  return out;
}

SymmetricSpaceDescriptor rank_two(std::string name, RootType type, int n, std::vector<int> m,
                                  std::vector<int> m2 = {}) {
  SymmetricSpaceDescriptor desc;
  desc.name = std::move(name);
  desc.type = type;
  desc.n = n;
  desc.rank = 2;
  desc.multiplicities = std::move(m);
  desc.double_multiplicities = m2.empty() ? std::vector<int>(desc.multiplicities.size(), 0) : std::move(m2);
  desc.root_scales.assign(desc.multiplicities.size(), 1.0);
  return desc;
}

SymmetricSpaceDescriptor rank_one(std::string name, int n, int d) {
  SymmetricSpaceDescriptor desc;
  desc.name = std::move(name);
  desc.type = RootType::rank1;
  desc.n = n;
  desc.rank = 1;
  desc.d = d;
  return desc;
}

// Line order j = 0..3 for b2/bc2: j even are the short roots, j odd the long ones.
SymmetricSpaceDescriptor complex_grassmannian(const std::string& name, int m) {
  if (m == 2) return rank_two(name, RootType::d2, 8, {3, 3});
  return rank_two(name, RootType::bc2, 4 * m, {2 * (m - 2), 2, 2 * (m - 2), 2}, {1, 0, 1, 0});
}

SymmetricSpaceDescriptor quaternionic_grassmannian(const std::string& name, int m) {
  if (m == 2) return rank_two(name, RootType::d2, 16, {7, 7});
  return rank_two(name, RootType::bc2, 8 * m, {4 * (m - 2), 4, 4 * (m - 2), 4}, {3, 0, 3, 0});
}

SymmetricSpaceDescriptor real_grassmannian(const std::string& name, int m) {
  if (m < 3) throw DomainError("SO(m+2)/(SO(2)xSO(m)) needs m >= 3 for positive short-root multiplicity");
  return rank_two(name, RootType::b2, 2 * m, {m - 2, 1, m - 2, 1});
}

}  // namespace

SymmetricSpaceDescriptor builtin_descriptor(std::string_view raw_name) {
  const std::string name = normalize_name(raw_name);
  const std::string label(raw_name);

  if (name == "SU(3)/SO(3)") return rank_two(label, RootType::a2, 5, {1, 1, 1});
  if (name == "SU(6)/Sp(3)") return rank_two(label, RootType::a2, 14, {4, 4, 4});
  if (name == "E6/F4") return rank_two(label, RootType::a2, 26, {8, 8, 8});
  if (name == "SO(8)/U(4)") return rank_two(label, RootType::d2, 12, {5, 5});
  if (name == "SO(10)/U(5)") return rank_two(label, RootType::bc2, 20, {4, 4, 4, 4}, {1, 0, 1, 0});
  if (name == "Sp(2)/U(2)") return rank_two(label, RootType::d2, 6, {2, 2});
  if (name == "E6/SO(10)U(1)") return rank_two(label, RootType::bc2, 32, {8, 6, 8, 6}, {1, 0, 1, 0});
  if (name == "G2/SO(4)") return rank_two(label, RootType::g2, 8, {1, 1, 1, 1, 1, 1});

  std::smatch match;
  static const std::regex su_family(R"(SU\((\d+)\)/S\(U\(2\)xU\((\d+)\)\))");
  static const std::regex so_family(R"(SO\((\d+)\)/\(?SO\(2\)xSO\((\d+)\)\)?)");
  static const std::regex sp_family(R"(Sp\((\d+)\)/\(?Sp\(2\)xSp\((\d+)\)\)?)");
  static const std::regex sphere(R"(S\^(\d+))");
  static const std::regex cp(R"(CP\^(\d+))");
  static const std::regex hp(R"(HP\^(\d+))");

  auto family_m = [&](const std::smatch& mm) {
    const int total = std::stoi(mm[1]);
    const int m = std::stoi(mm[2]);
    if (m < 2 || total != m + 2) throw DomainError("inconsistent family parameters in '" + label + "'");
    return m;
  };
  if (std::regex_match(name, match, su_family)) return complex_grassmannian(label, family_m(match));
  if (std::regex_match(name, match, so_family)) return real_grassmannian(label, family_m(match));
  if (std::regex_match(name, match, sp_family)) return quaternionic_grassmannian(label, family_m(match));

  if (std::regex_match(name, match, sphere)) return rank_one(label, std::stoi(match[1]), 0);
  if (std::regex_match(name, match, cp)) return rank_one(label, 2 * std::stoi(match[1]), 1);
  if (std::regex_match(name, match, hp)) return rank_one(label, 4 * std::stoi(match[1]), 3);
  if (name == "OP^2") return rank_one(label, 16, 7);

  std::string message = "unknown symmetric space '" + label + "'; known names:";
  for (const auto& p : builtin_name_patterns()) message += "\n  " + p;
  throw DomainError(message);
}

std::vector<std::string> builtin_names() {
  return {"SU(3)/SO(3)",          "SU(6)/Sp(3)",  "SU(4)/S(U(2)xU(2))", "SU(5)/S(U(2)xU(3))",
          "SO(5)/(SO(2)xSO(3))",  "SO(8)/U(4)",   "SO(10)/U(5)",        "Sp(2)/U(2)",
          "Sp(4)/(Sp(2)xSp(2))", "Sp(5)/(Sp(2)xSp(3))", "E6/SO(10)U(1)", "E6/F4",
          "G2/SO(4)"};
}

std::vector<std::string> builtin_name_patterns() {
  return {"SU(3)/SO(3)",
          "SU(6)/Sp(3)",
          "SU(m+2)/S(U(2)xU(m))   m >= 2, e.g. SU(5)/S(U(2)xU(3))",
          "SO(m+2)/(SO(2)xSO(m))  m >= 3, e.g. SO(5)/(SO(2)xSO(3))",
          "SO(8)/U(4)",
          "SO(10)/U(5)",
          "Sp(2)/U(2)",
          "Sp(m+2)/(Sp(2)xSp(m))  m >= 2, e.g. Sp(4)/(Sp(2)xSp(2))",
          "E6/SO(10)U(1)",
          "E6/F4",
          "G2/SO(4)",
          "rank one: S^n, CP^k, HP^k, OP^2"};
}

}  // namespace cyweyl
