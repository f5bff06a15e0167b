#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace cyweyl {

/// Real polynomial in y1, y2 with exact differentiation.
///
/// Grammar accepted by parse():
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*        divisor must be a constant
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' integer)?             integer >= 0
///   primary := number | 'y1' | 'y2' | '(' expr ')'
///
/// Numbers use the usual decimal / scientific notation.  Whitespace is ignored.
class Polynomial {
 public:
  using Exponents = std::pair<int, int>;

  Polynomial() = default;
  static Polynomial constant(double c);
  static Polynomial variable(int index);  // 1 -> y1, 2 -> y2
  static Polynomial parse(std::string_view text);

  double operator()(double y1, double y2 = 0.0) const;
  double operator()(const Eigen::Vector2d& y) const { return (*this)(y.x(), y.y()); }

  /// d/dy_index, index 1 or 2.
  Polynomial derivative(int index) const;
  Eigen::Vector2d gradient(const Eigen::Vector2d& y) const;
  Eigen::Matrix2d hessian(const Eigen::Vector2d& y) const;

  bool is_constant() const;
  /// Highest power of y_index (1 or 2) that occurs.
  int degree_in(int index) const;
  const std::map<Exponents, double>& terms() const { return terms_; }
  std::string to_string() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;

 private:
  void prune();
  std::map<Exponents, double> terms_;
};

}  // namespace cyweyl
