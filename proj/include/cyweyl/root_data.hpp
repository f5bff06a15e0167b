#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cyweyl {

/// Type of a restricted root system of rank one or two.
enum class RootType { rank1, a2, b2, bc2, d2, g2 };

/// How the rank-one multiplicities are read off from (n, d).
///
/// `closed_form` uses m = n - d, m2 = d (the exponents of the closed form of the
/// transversal product), `geometric` uses m = n - 1 - d, m2 = d so that
/// dim p = 1 + m + m2.
enum class MultiplicityConvention { closed_form, geometric };

/// Which open sector a chamber query refers to.  `inversion` differs from
/// `weyl` only for d2, where the invariant map is injective on 0 < theta < pi/4.
enum class ChamberKind { weyl, inversion };

std::string to_string(RootType type);
RootType parse_root_type(std::string_view text);
std::string to_string(MultiplicityConvention convention);
MultiplicityConvention parse_convention(std::string_view text);

/// Number of root lines k of a rank-two type (2, 3, 4 or 6).
int root_line_count(RootType type);

/// One positive root: lambda(v) = <covector, v> in orthonormal coordinates.
struct RootDatum {
  Eigen::VectorXd covector;
  int multiplicity = 0;
  int double_multiplicity = 0;

  double operator()(const Eigen::VectorXd& v) const { return covector.dot(v); }
};

/// Immutable restricted root system of rank one or two.
class RestrictedRootSystem {
 public:
  RestrictedRootSystem(RootType type, int rank, std::vector<RootDatum> roots);

  RootType type() const { return type_; }
  int rank() const { return rank_; }
  /// Number of root lines (1 for rank one).
  int line_count() const { return static_cast<int>(roots_.size()); }
  const std::vector<RootDatum>& roots() const { return roots_; }
  const RootDatum& root(int j) const { return roots_.at(static_cast<std::size_t>(j)); }

  /// sum over positive roots of (m + m2): the number of transversal directions.
  int transversal_dimension() const;
  /// rank + transversal_dimension().
  int total_dimension() const { return rank_ + transversal_dimension(); }
  int weyl_order() const { return rank_ == 1 ? 2 : 2 * line_count(); }

 private:
  RootType type_;
  int rank_;
  std::vector<RootDatum> roots_;
};

RestrictedRootSystem build_rank_one(int n, int d, double curvature,
                                    MultiplicityConvention convention = MultiplicityConvention::closed_form);

/// Rank-two system.  Line j spans (cos(j pi/k), sin(j pi/k)); its root covector is
/// scales[j] * (-sin(j pi/k), cos(j pi/k)).  Empty `double_multiplicities` means
/// no doubled roots, empty `scales` means unit scales.
RestrictedRootSystem build_rank_two(RootType type, std::span<const int> multiplicities,
                                    std::span<const int> double_multiplicities = {},
                                    std::span<const double> scales = {});

/// Reflection in root line j.
Eigen::Matrix2d weyl_reflection(const RestrictedRootSystem& rrs, int j);

/// {id} u {B_i} u {(B_0 B_1)^j : j = 1..k-1}; exactly 2k elements.
std::vector<Eigen::Matrix2d> weyl_group(const RestrictedRootSystem& rrs);
/// Same group from the line count alone (it does not depend on root scales).
std::vector<Eigen::Matrix2d> weyl_group(RootType type);

/// Opening angle of the open chamber sector 0 < theta < angle.
double chamber_angle(const RestrictedRootSystem& rrs, ChamberKind kind = ChamberKind::weyl);

bool chamber_contains(const RestrictedRootSystem& rrs, const Eigen::Vector2d& v,
                      ChamberKind kind = ChamberKind::weyl);

/// W-orbit point of v in the closed Weyl chamber.  Points already in the closed
/// chamber are returned unchanged; near-ties go to the smaller angle.
Eigen::Vector2d chamber_representative(const RestrictedRootSystem& rrs, const Eigen::Vector2d& v);

/// Space descriptor: everything needed to build the root system plus n.
struct SymmetricSpaceDescriptor {
  std::string name;
  RootType type = RootType::rank1;
  int n = 0;
  int rank = 1;
  int d = 0;
  double curvature = 1.0;
  MultiplicityConvention convention = MultiplicityConvention::closed_form;
  // Per root line (rank two only).
  std::vector<int> multiplicities;
  std::vector<int> double_multiplicities;
  std::vector<double> root_scales;

  RestrictedRootSystem root_system() const;
  /// n == rank + sum(m + m2).
  bool dimension_identity_holds() const;
};

/// Built-in descriptor by name: the rank-two spaces of the classification table
/// (families take a concrete m, e.g. "SU(5)/S(U(2)xU(3))") and the rank-one
/// spaces "S^n", "CP^k", "HP^k", "OP^2".
SymmetricSpaceDescriptor builtin_descriptor(std::string_view name);

/// Representative built-in names, one or two per family.
std::vector<std::string> builtin_names();

/// Human-readable list of accepted name patterns.
std::vector<std::string> builtin_name_patterns();

}  // namespace cyweyl
