#pragma once

#include <string>
#include <vector>

#include "quasimle/rational.hpp"

namespace quasimle {

// Univariate polynomial with exact coefficients, ascending degree. Trailing
// zero coefficients are trimmed, so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> ascending);
  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  // c0 + c1 x
  static Polynomial linear(const Rational& c0, const Rational& c1) { return Polynomial({c0, c1}); }

  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  // -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  Rational coefficient(int power) const;
  Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  Polynomial monic() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& s) const;
  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

  // "2*a^3 + 6*a" style, highest degree first.
  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

}  // namespace quasimle
