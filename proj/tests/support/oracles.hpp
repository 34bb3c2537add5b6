#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the code under test except to build inputs.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hetstab/cycle_model.hpp"
#include "hetstab/transition.hpp"

namespace hetstab::testing {

inline Eigen::MatrixXd naive_multiply(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

using Complex = std::complex<double>;

// Roots of the characteristic polynomial, 2x2.
inline std::vector<Complex> eigenvalues_2x2(const Eigen::MatrixXd& m) {
  const double tr = m(0, 0) + m(1, 1);
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Complex disc = std::sqrt(Complex(tr * tr / 4.0 - det, 0.0));
  return {tr / 2.0 + disc, tr / 2.0 - disc};
}

// Roots of the characteristic polynomial, 3x3, by Cardano with one Newton
// polish per root.
inline std::vector<Complex> eigenvalues_3x3(const Eigen::MatrixXd& m) {
  const double tr = m.trace();
  const double c2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) -
                    m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                     m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                     m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  // x^3 + a x^2 + b x + c
  const double a = -tr, b = c2, c = -det;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const Complex d = std::sqrt(Complex(q * q / 4.0 + p * p * p / 27.0, 0.0));
  Complex u = std::pow(Complex(-q / 2.0, 0.0) + d, 1.0 / 3.0);
  if (std::abs(u) < 1e-300) u = std::pow(Complex(-q / 2.0, 0.0) - d, 1.0 / 3.0);
  const Complex omega(-0.5, std::sqrt(3.0) / 2.0);
  std::vector<Complex> roots;
  for (int k = 0; k < 3; ++k) {
    const Complex uk = u * std::pow(omega, k);
    const Complex t = std::abs(uk) < 1e-300 ? Complex(0.0) : uk - p / (3.0 * uk);
    Complex x = t - a / 3.0;
    const Complex f = ((x + a) * x + b) * x + c;
    const Complex df = (3.0 * x + 2.0 * a) * x + b;
    if (std::abs(df) > 1e-12) x -= f / df;
    roots.push_back(x);
  }
  return roots;
}

// Sorted by (real, imag) so multisets compare elementwise.
inline std::vector<Complex> sorted(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex x, Complex y) {
    if (std::abs(x.real() - y.real()) > 1e-7) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return v;
}

inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  // Greedy matching; fine for the small, well-separated spectra used here.
  double worst = 0.0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](Complex p, Complex q) {
      return std::abs(p - x) < std::abs(q - x);
    });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Random well-formed cycle with m nodes and n_t transverse directions.
inline CycleSpec random_cycle_spec(std::mt19937_64& rng, int m, int nt) {
  std::uniform_real_distribution<double> pos(0.5, 2.0);
  std::uniform_real_distribution<double> trans(-2.0, 2.0);
  CycleSpec spec;
  for (int j = 0; j < m; ++j) {
    NodeSpec node;
    node.contracting = pos(rng);
    node.expanding = pos(rng);
    for (int s = 0; s < nt; ++s) node.transverse.push_back(trans(rng));
    spec.nodes.push_back(node);
    ConnectionSpec conn;
    conn.permutation = random_permutation(rng, nt + 1);
    spec.connections.push_back(conn);
  }
  return spec;
}

// Two-node, N = 2 cycle whose basic matrices have no negative entry (t <= 0).
// Both connections swap the coordinates, so the full-return matrix is
// [[s^2 + c0, s], [s/2, 1/2]] with s = -t. c0 is solved for so that the
// dominant eigenvalue is exactly rho; with t < 0 the product is positive and
// its Perron vector has no zero component.
inline CycleSpec non_negative_cycle(double rho, double t = -0.2) {
  const double s = -t;
  const double c1 = 0.5;
  const double c0 = (rho * rho - (s * s + c1) * rho) / (rho - c1);
  CycleSpec spec;
  for (double c : {c0, c1}) {
    NodeSpec node;
    node.contracting = c;
    node.expanding = 1.0;
    node.transverse = {t};
    spec.nodes.push_back(node);
    ConnectionSpec conn;
    conn.permutation = {1, 0};
    spec.connections.push_back(conn);
  }
  return spec;
}

inline std::vector<std::complex<double>> eigen_multiset(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

}  // namespace hetstab::testing
