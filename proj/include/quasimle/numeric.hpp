#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quasimle/pattern.hpp"
#include "quasimle/polynomial.hpp"

namespace quasimle {

struct NumericTable {
  Eigen::VectorXd values;  // canonical cell order
  int iterations = 0;
  double max_marginal_gap = 0.0;
  bool converged = false;
  std::vector<std::string> warnings;
};

// Iterative proportional fitting from the uniform table on S: scale rows, then
// columns, until every row and column margin is within `tol` of u/u_{++}.
// A run that exhausts `max_iter` returns the last iterate with converged = false.
NumericTable ipf_mle(const Pattern& s, const CountTable& u, double tol = 1e-12, int max_iter = 100000);

// Throws Error(NoConvergence) unless t.converged.
const NumericTable& require_converged(const NumericTable& t);

// sum u_ij log p_ij; cells with u_ij = 0 contribute nothing.
double loglik(const Pattern& s, const CountTable& u, const Eigen::VectorXd& p);

// prod_i (u_ii + a) - prod_i (u_{i,i+1} - a) on S_k, with u_{k,k+1} read as u_{k1}.
// Throws Error(WrongPattern) unless u lives on cycle_pattern(k).
Polynomial cycle_ml_polynomial(int k, const CountTable& u);

// Coefficients of the two bilinear critical equations of the double square,
//   a b + c1 a + c2 b + c3 = 0,   a b + d1 a + d2 b + d3 = 0,
// where a, b are the offsets of the fitted table from u.
struct DoubleSquareSystem {
  Rational c1, c2, c3;
  Rational d1, d2, d3;
};

// Throws Error(WrongPattern) unless u lives on double_square_pattern().
DoubleSquareSystem double_square_system(const CountTable& u);

// (d2 b + d3)(b + c1) - (c2 b + c3)(b + d1): the equation in b left after
// substituting a = -(c2 b + c3)/(b + c1).
// Throws Error(DegenerateElimination) if the degree drops below 2 or b = -c1 is a root.
Polynomial double_square_critical_poly(const CountTable& u);

struct CriticalPoint {
  double alpha = 0.0;
  double beta = 0.0;
  Eigen::VectorXd table;  // (u + offsets)/u_{++} in canonical cell order
  bool positive = false;
};

struct DoubleSquareCertificate {
  DoubleSquareSystem system;
  Polynomial poly;
  Rational discriminant;
  std::vector<CriticalPoint> points;  // ascending in beta
  std::optional<std::size_t> selected;  // the entrywise-positive point
};

DoubleSquareCertificate double_square_certificate(const CountTable& u);

}  // namespace quasimle
