#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the code paths under test except Schedule::eval for the raw f, g.

#include <algorithm>
#include <cmath>
#include <vector>
#include <complex>
#include <limits>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

// f and g of the modified schedule written out directly.
inline double modified_f(double sqrt_n, double s) { return 1.0 - s + sqrt_n * s * (1.0 - s); }
inline double modified_g(double sqrt_n, double s) { return s + sqrt_n * s * (1.0 - s); }

// Gap by naive substitution.
inline double gap(double n, double f, double g) {
  return std::sqrt((f - g) * (f - g) + 4.0 * f * g / n);
}

// 2x2 restriction in the (|m>, |m_perp>) basis, assembled from projectors
// <m|psi0> = 1/sqrt(N): H = (f+g) I - f |psi0><psi0| - g |m><m|.
inline Eigen::Matrix2d plane_matrix(double n, double f, double g) {
  const double a = 1.0 / std::sqrt(n);
  const double b = std::sqrt(1.0 - 1.0 / n);
  Eigen::Vector2d psi0(a, b);
  Eigen::Matrix2d h = (f + g) * Eigen::Matrix2d::Identity() - f * psi0 * psi0.transpose();
  h(0, 0) -= g;
  return h;
}

// |<-| dH/ds |+>| = sqrt(N-1)/N |g f' - f g'| / gap, from the rotation angle of
// the traceless part of H.
inline double matrix_element(double n, double f, double g, double df, double dg) {
  return std::sqrt(n - 1.0) / n * std::abs(g * df - f * dg) / gap(n, f, g);
}

// Central finite difference of H(s) sandwiched between Eigen's eigenvectors.
template <class FG>
double matrix_element_fd(double n, FG&& fg, double s, double h) {
  const auto [f0, g0] = fg(s);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(plane_matrix(n, f0, g0));
  const auto [fp, gp] = fg(s + h);
  const auto [fm, gm] = fg(s - h);
  const Eigen::Matrix2d dh = (plane_matrix(n, fp, gp) - plane_matrix(n, fm, gm)) / (2.0 * h);
  return std::abs(eig.eigenvectors().col(0).dot(dh * eig.eigenvectors().col(1)));
}

// (1/eps) int_0^1 M/gap^2 ds by adaptive Gauss-Kronrod on the closed forms.
template <class Sample>
double local_adiabatic_time(double n, Sample&& sample, double eps) {
  auto integrand = [&](double s) {
    const auto [f, g, df, dg] = sample(s);
    const double d = gap(n, f, g);
    return matrix_element(n, f, g, df, dg) / (d * d);
  };
  // Panels graded toward s = 1/2, where the gap is narrowest (width ~ 1/sqrt(N)).
  using boost::math::quadrature::gauss_kronrod;
  std::vector<double> cuts = {0.0, 0.5, 1.0};
  for (double w = 1.0 / std::sqrt(n); w < 0.5; w *= 4.0) {
    cuts.push_back(0.5 - w);
    cuts.push_back(0.5 + w);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += gauss_kronrod<double, 61>::integrate(integrand, cuts[i], cuts[i + 1], 8, 1e-13);
  }
  return total / eps;
}

// exp(-i H dt) v through a dense Hermitian eigendecomposition.
inline Eigen::VectorXcd dense_propagate(const Eigen::MatrixXd& h, double dt,
                                        const Eigen::VectorXcd& v) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::MatrixXcd vecs = eig.eigenvectors().cast<std::complex<double>>();
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    phases(i) = std::polar(1.0, -eig.eigenvalues()(i) * dt);
  }
  return vecs * phases.asDiagonal() * vecs.adjoint() * v;
}

}  // namespace oracle
