#include "hetstab/spectral.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace hetstab {

namespace {

void check_square(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "eigen-analysis needs a non-empty square matrix");
  }
  if (!m.allFinite()) throw Error(ErrorKind::NonFiniteValue, "matrix has non-finite entries");
}

Eigen::EigenSolver<Eigen::MatrixXd> solve(const Eigen::MatrixXd& m, bool vectors) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, vectors);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::DefectiveMatrix, "eigenvalue iteration did not converge");
  }
  return es;
}

}  // namespace

SpectralSummary eigen_decompose(const Eigen::MatrixXd& m, double tol) {
  check_square(m);
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");

  const auto es = solve(m, true);
  const auto n = m.rows();

  SpectralSummary s;
  s.eigenvalues.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) s.eigenvalues[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  s.basis = es.eigenvectors();

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s.basis);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  s.basis_condition =
      smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
  if (!(s.basis_condition <= kMaxBasisCondition)) {
    throw Error(ErrorKind::DefectiveMatrix,
                "eigenvector basis condition number " + std::to_string(s.basis_condition));
  }
  s.basis_inverse = s.basis.partialPivLu().inverse();

  // Dominant eigenvalue among those with modulus away from 1.
  std::ptrdiff_t top = -1;
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    const double mod = std::abs(s.eigenvalues[i]);
    if (std::abs(mod - 1.0) <= tol) continue;
    if (top < 0 || mod > std::abs(s.eigenvalues[static_cast<std::size_t>(top)])) {
      top = static_cast<std::ptrdiff_t>(i);
    }
  }
  if (top < 0) {
    s.dominant_status = DominantStatus::NoneAdmissible;
    return s;
  }

  const auto lambda = s.eigenvalues[static_cast<std::size_t>(top)];
  const double top_mod = std::abs(lambda);
  const bool is_real = std::abs(lambda.imag()) <= tol * top_mod;
  std::ptrdiff_t partner = -1;
  if (!is_real) {
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      if (static_cast<std::ptrdiff_t>(i) != top &&
          std::abs(s.eigenvalues[i] - std::conj(lambda)) <= tol * top_mod) {
        partner = static_cast<std::ptrdiff_t>(i);
        break;
      }
    }
    if (partner >= 0 && lambda.imag() < 0.0) std::swap(top, partner);
  }
  s.dominant_status = DominantStatus::Unique;
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    const auto idx = static_cast<std::ptrdiff_t>(i);
    if (idx == top || idx == partner) continue;
    if (std::abs(std::abs(s.eigenvalues[i]) - top_mod) <= tol * top_mod) {
      s.dominant_status = DominantStatus::Tie;
    }
  }
  s.dominant_index = static_cast<std::size_t>(top);
  s.lambda_max = s.eigenvalues[s.dominant_index];
  if (s.dominant_status == DominantStatus::Tie) return s;

  Eigen::VectorXcd w = s.basis.col(top);
  Eigen::Index k = 0;
  w.cwiseAbs().maxCoeff(&k);
  const std::complex<double> scale = w(k);
  w /= scale;
  w(k) = 1.0;
  Eigen::RowVectorXcd v = s.basis_inverse.row(top) * scale;
  s.w_max = w.real();
  s.v_max = v.real().transpose();

  s.conditions.dominant_is_real = is_real;
  s.conditions.dominant_exceeds_one = s.lambda_max.real() > 1.0;
  s.conditions.eigenvector_same_sign = is_real && (s.w_max.array() > tol).all();
  return s;
}

PodviginaFlags check_podvigina_conditions(const Eigen::MatrixXd& m, double tol) {
  const auto s = eigen_decompose(m, tol);
  if (s.dominant_status == DominantStatus::Tie) {
    throw Error(ErrorKind::NoAdmissibleDominant, "distinct eigenvalues share the top modulus");
  }
  return s.conditions;
}

Eigen::VectorXd vmax_row(const Eigen::MatrixXd& m, double tol) {
  const auto s = eigen_decompose(m, tol);
  switch (s.dominant_status) {
    case DominantStatus::NoneAdmissible:
      throw Error(ErrorKind::NoAdmissibleDominant, "every eigenvalue has modulus 1");
    case DominantStatus::Tie:
      throw Error(ErrorKind::NoAdmissibleDominant, "distinct eigenvalues share the top modulus");
    case DominantStatus::Unique: break;
  }
  if (!s.conditions.dominant_is_real || !s.conditions.dominant_exceeds_one) {
    throw Error(ErrorKind::PreconditionViolated, "v_max needs a real dominant eigenvalue > 1");
  }
  return s.v_max;
}

double spectral_radius(const Eigen::MatrixXd& m) {
  check_square(m);
  const auto es = solve(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace hetstab
