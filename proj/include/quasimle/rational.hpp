#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace quasimle {

using Rational = boost::multiprecision::mpq_rational;

// Values indexed by the cells of a pattern in canonical (row-major) order.
template <typename Scalar>
using SupportVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalVector = SupportVector<Rational>;

inline std::string to_string(const Rational& q) { return q.str(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Accepts "7", "-3/4" and finite decimals such as "2.50" (converted exactly).
// Throws Error(ParseError) on anything else.
Rational parse_rational(std::string_view text);

inline SupportVector<double> to_double(const RationalVector& v) {
  SupportVector<double> out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) out(k) = to_double(v(k));
  return out;
}

}  // namespace quasimle
