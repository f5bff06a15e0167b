#include "cyweyl/polynomial.hpp"

#include "cyweyl/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace cyweyl {

Polynomial Polynomial::constant(double c) {
  Polynomial p;
  p.terms_[{0, 0}] = c;
  p.prune();
  return p;
}

Polynomial Polynomial::variable(int index) {
  if (index != 1 && index != 2) throw DomainError("Polynomial::variable: index must be 1 or 2");
  Polynomial p;
  p.terms_[index == 1 ? Exponents{1, 0} : Exponents{0, 1}] = 1.0;
  return p;
}

void Polynomial::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0.0) it = terms_.erase(it);
    else ++it;
  }
}

double Polynomial::operator()(double y1, double y2) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (int i = 0; i < e.first; ++i) t *= y1;
    for (int i = 0; i < e.second; ++i) t *= y2;
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::derivative(int index) const {
  if (index != 1 && index != 2) throw DomainError("Polynomial::derivative: index must be 1 or 2");
  Polynomial p;
  for (const auto& [e, c] : terms_) {
    const int power = index == 1 ? e.first : e.second;
    if (power == 0) continue;
    const Exponents reduced = index == 1 ? Exponents{e.first - 1, e.second} : Exponents{e.first, e.second - 1};
    p.terms_[reduced] += c * power;
  }
  p.prune();
  return p;
}

Eigen::Vector2d Polynomial::gradient(const Eigen::Vector2d& y) const {
  return {derivative(1)(y), derivative(2)(y)};
}

Eigen::Matrix2d Polynomial::hessian(const Eigen::Vector2d& y) const {
  const Polynomial d1 = derivative(1), d2 = derivative(2);
  const double h12 = d1.derivative(2)(y);
  Eigen::Matrix2d h;
  h << d1.derivative(1)(y), h12, h12, d2.derivative(2)(y);
  return h;
}

bool Polynomial::is_constant() const {
  for (const auto& term : terms_)
    if (term.first != Exponents{0, 0}) return false;
  return true;
}

int Polynomial::degree_in(int index) const {
  int deg = 0;
  for (const auto& term : terms_) deg = std::max(deg, index == 1 ? term.first.first : term.first.second);
  return deg;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  out.precision(17);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << c;
    if (e.first) out << "*y1^" << e.first;
    if (e.second) out << "*y2^" << e.second;
  }
  return out.str();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial p = *this;
  for (const auto& [e, c] : o.terms_) p.terms_[e] += c;
  p.prune();
  return p;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& term : p.terms_) term.second = -term.second;
  return p;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial p;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) p.terms_[{e1.first + e2.first, e1.second + e2.second}] += c1 * c2;
  p.prune();
  return p;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial '" + std::string(text_) + "': " + what + " at position " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p = term();
    for (;;) {
      if (accept('+')) p = p + term();
      else if (accept('-')) p = p - term();
      else return p;
    }
  }

  Polynomial term() {
    Polynomial p = unary();
    for (;;) {
      if (accept('*')) {
        p = p * unary();
      } else if (accept('/')) {
        const Polynomial divisor = unary();
        if (!divisor.is_constant()) fail("division by a non-constant");
        const double c = divisor(0.0, 0.0);
        if (c == 0.0) fail("division by zero");
        p = p * Polynomial::constant(1.0 / c);
      } else {
        return p;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    const Polynomial base = primary();
    if (!accept('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    const int exponent = std::atoi(std::string(text_.substr(start, pos_ - start)).c_str());
    if (exponent > 64) fail("exponent too large");
    Polynomial result = Polynomial::constant(1.0);
    for (int i = 0; i < exponent; ++i) result = result * base;
    return result;
  }

  Polynomial primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    const char c = text_[pos_];
    if (c == 'y') {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '1' || text_[pos_] == '2')) {
        const int index = text_[pos_] - '0';
        ++pos_;
        return Polynomial::variable(index);
      }
      fail("expected y1 or y2");
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text_.data() + pos_;
      const char* end = text_.data() + text_.size();
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc()) fail("malformed number");
      pos_ += static_cast<std::size_t>(ptr - begin);
      return Polynomial::constant(value);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text) { return Parser(text).parse(); }

}  // namespace cyweyl
