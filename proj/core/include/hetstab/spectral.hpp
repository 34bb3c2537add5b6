#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "hetstab/transition.hpp"

namespace hetstab {

/// Eigenvector bases with a 2-norm condition number above this are treated as
/// numerically defective.
inline constexpr double kMaxBasisCondition = 1e12;

enum class DominantStatus {
  Unique,          // lambda_max is well defined
  NoneAdmissible,  // every eigenvalue has modulus within tol of 1
  Tie,             // two distinct eigenvalues (not a conjugate pair) share the top modulus
};

/// The three conditions under which the set of negative vectors driven to
/// -infinity by M has positive measure.
struct PodviginaFlags {
  bool dominant_is_real = false;        // (i)
  bool dominant_exceeds_one = false;    // (ii)
  bool eigenvector_same_sign = false;   // (iii)

  bool all() const noexcept {
    return dominant_is_real && dominant_exceeds_one && eigenvector_same_sign;
  }
};

struct SpectralSummary {
  std::vector<std::complex<double>> eigenvalues;
  Eigen::MatrixXcd basis;          // columns are eigenvectors
  Eigen::MatrixXcd basis_inverse;
  double basis_condition = 1.0;

  DominantStatus dominant_status = DominantStatus::NoneAdmissible;
  std::size_t dominant_index = 0;
  std::complex<double> lambda_max{0.0, 0.0};
  // Real parts of the dominant eigenvector (largest-magnitude component +1)
  // and of the matching row of basis_inverse. Meaningful when lambda_max is real.
  Eigen::VectorXd w_max;
  Eigen::VectorXd v_max;

  PodviginaFlags conditions;
};

/// Full eigen-analysis of a small dense real matrix.
///
/// lambda_max is the largest-modulus eigenvalue whose modulus differs from 1 by
/// more than `tol`; for a complex-conjugate pair the member with positive
/// imaginary part is reported. Throws DefectiveMatrix when the eigenvector basis
/// is numerically singular and DimensionMismatch for non-square input.
SpectralSummary eigen_decompose(const Eigen::MatrixXd& m, double tol = kDefaultTolerance);

/// Flags (i) real dominant eigenvalue, (ii) above one, (iii) same-sign
/// eigenvector. Throws NoAdmissibleDominant on a modulus tie; reports all-false
/// when no eigenvalue has modulus away from 1, since the iterates of a
/// diagonalizable matrix then stay bounded.
PodviginaFlags check_podvigina_conditions(const Eigen::MatrixXd& m,
                                          double tol = kDefaultTolerance);

/// Row of P^{-1} paired with lambda_max, under the w_max normalization. Requires
/// lambda_max real and > 1 (PreconditionViolated otherwise).
Eigen::VectorXd vmax_row(const Eigen::MatrixXd& m, double tol = kDefaultTolerance);

/// max |lambda| over all eigenvalues.
double spectral_radius(const Eigen::MatrixXd& m);

}  // namespace hetstab
