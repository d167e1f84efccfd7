#include "quasimle/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "quasimle/error.hpp"

namespace quasimle {

NumericTable ipf_mle(const Pattern& s, const CountTable& u, double tol, int max_iter) {
  if (!(u.pattern == s)) throw Error(ErrorKind::InvalidArgument, "count table is on a different pattern");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (max_iter < 1) throw Error(ErrorKind::InvalidArgument, "max_iter must be positive");
  const Rational total = u.total();
  if (total == 0) throw Error(ErrorKind::ZeroDenominatorFactor, "u_{++} = 0");

  NumericTable out;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (u.values(static_cast<Eigen::Index>(k)) <= 0) {
      out.warnings.push_back("nonpositive count at " + to_string(s.cell(k)));
    }

  const auto target = marginals(s, to_double(u.values));
  const Eigen::VectorXd row_target = target.row_sums / target.total;
  const Eigen::VectorXd col_target = target.col_sums / target.total;

  Eigen::VectorXd p = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(s.size()), 1.0 / static_cast<double>(s.size()));
  auto gap = [&]() {
    const auto m = marginals(s, p);
    return std::max((m.row_sums - row_target).cwiseAbs().maxCoeff(), (m.col_sums - col_target).cwiseAbs().maxCoeff());
  };
  auto scale = [&](bool rows) {
    const auto m = marginals(s, p);
    for (std::size_t k = 0; k < s.size(); ++k) {
      const auto& c = s.cell(k);
      const double have = rows ? m.row_sums(c.row - 1) : m.col_sums(c.col - 1);
      const double want = rows ? row_target(c.row - 1) : col_target(c.col - 1);
      const auto idx = static_cast<Eigen::Index>(k);
      p(idx) = have > 0.0 ? p(idx) * want / have : 0.0;
    }
  };

  out.max_marginal_gap = gap();
  while (out.iterations < max_iter && !(out.max_marginal_gap < tol)) {
    scale(true);
    scale(false);
    ++out.iterations;
    out.max_marginal_gap = gap();
  }
  out.converged = out.max_marginal_gap < tol;
  out.values = std::move(p);
  return out;
}

const NumericTable& require_converged(const NumericTable& t) {
  if (!t.converged)
    throw Error(ErrorKind::NoConvergence, "margin gap " + std::to_string(t.max_marginal_gap) + " after " +
                                              std::to_string(t.iterations) + " iterations");
  return t;
}

double loglik(const Pattern& s, const CountTable& u, const Eigen::VectorXd& p) {
  if (!(u.pattern == s) || p.size() != static_cast<Eigen::Index>(s.size()))
    throw Error(ErrorKind::InvalidArgument, "table does not match the pattern");
  double out = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    const double weight = to_double(u.values(k));
    if (weight != 0.0) out += weight * std::log(p(k));
  }
  return out;
}

Polynomial cycle_ml_polynomial(int k, const CountTable& u) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "cycle half-length must be at least 2");
  if (!(u.pattern == cycle_pattern(k)))
    throw Error(ErrorKind::WrongPattern, "counts are not on the " + std::to_string(2 * k) + "-cycle pattern");
  Polynomial diag = Polynomial::constant(1);
  Polynomial off = Polynomial::constant(1);
  for (int i = 1; i <= k; ++i) {
    diag = diag * Polynomial::linear(u(i, i), 1);
    off = off * Polynomial::linear(i < k ? u(i, i + 1) : u(k, 1), -1);
  }
  return diag - off;
}

DoubleSquareSystem double_square_system(const CountTable& u) {
  if (!(u.pattern == double_square_pattern()))
    throw Error(ErrorKind::WrongPattern, "counts are not on the double-square pattern");
  DoubleSquareSystem sys;
  sys.c1 = u(1, 1) + u(1, 2) + u(2, 1) + u(2, 2);
  sys.c2 = u(1, 1);
  sys.c3 = u(1, 1) * u(2, 2) - u(1, 2) * u(2, 1);
  sys.d1 = u(3, 3);
  sys.d2 = u(2, 2) + u(2, 3) + u(3, 2) + u(3, 3);
  sys.d3 = u(2, 2) * u(3, 3) - u(2, 3) * u(3, 2);
  return sys;
}

Polynomial double_square_critical_poly(const CountTable& u) {
  const auto sys = double_square_system(u);
  const Polynomial poly = Polynomial::linear(sys.d3, sys.d2) * Polynomial::linear(sys.c1, 1) -
                          Polynomial::linear(sys.c3, sys.c2) * Polynomial::linear(sys.d1, 1);
  if (poly.degree() < 2)
    throw Error(ErrorKind::DegenerateElimination, "eliminant has degree " + std::to_string(poly.degree()));
  if (poly(Rational(-sys.c1)) == 0)
    throw Error(ErrorKind::DegenerateElimination, "b = -c1 is a root of the eliminant");
  return poly;
}

DoubleSquareCertificate double_square_certificate(const CountTable& u) {
  DoubleSquareCertificate cert;
  cert.system = double_square_system(u);
  cert.poly = double_square_critical_poly(u);
  const Rational a = cert.poly.coefficient(2);
  const Rational b = cert.poly.coefficient(1);
  const Rational c = cert.poly.coefficient(0);
  cert.discriminant = b * b - 4 * a * c;
  if (cert.discriminant < 0) return cert;

  const double da = to_double(a);
  const double db = to_double(b);
  const double sq = std::sqrt(to_double(cert.discriminant));
  // Cancellation-free pair of roots.
  const double q = -0.5 * (db + std::copysign(sq, db));
  std::vector<double> roots = q != 0.0 ? std::vector<double>{q / da, to_double(c) / q} : std::vector<double>{0.0};
  if (cert.discriminant == 0) roots.resize(1);
  std::sort(roots.begin(), roots.end());

  const double total = to_double(u.total());
  const auto& sys = cert.system;
  for (double beta : roots) {
    CriticalPoint pt;
    pt.beta = beta;
    pt.alpha = -(to_double(sys.c2) * beta + to_double(sys.c3)) / (beta + to_double(sys.c1));
    const double al = pt.alpha;
    pt.table.resize(7);
    pt.table << to_double(u(1, 1)) + al, to_double(u(1, 2)) - al, to_double(u(2, 1)) - al,
        to_double(u(2, 2)) + al + beta, to_double(u(2, 3)) - beta, to_double(u(3, 2)) - beta,
        to_double(u(3, 3)) + beta;
    pt.table /= total;
    pt.positive = (pt.table.array() > 0.0).all();
    if (pt.positive && !cert.selected) cert.selected = cert.points.size();
    cert.points.push_back(std::move(pt));
  }
  return cert;
}

}  // namespace quasimle
