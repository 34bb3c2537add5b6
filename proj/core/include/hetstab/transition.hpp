#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hetstab/cycle_model.hpp"

namespace hetstab {

inline constexpr double kDefaultTolerance = 1e-9;

enum class MatrixKind { Basic, FullReturn, PartialTurn };

/// Which product a matrix stands for. For Basic and FullReturn only `j` is
/// meaningful; PartialTurn is M_(l,j) = M_l ... M_j taken cyclically.
struct Provenance {
  MatrixKind kind = MatrixKind::Basic;
  std::size_t l = 0;
  std::size_t j = 0;
};

struct TransitionMatrix {
  Eigen::MatrixXd entries;
  Provenance provenance;
};

/// M_j in logarithmic coordinates: the permuted base matrix whose first column
/// is (c/e, -t_1/e, ..., -t_nt/e) and whose other columns are the identity.
TransitionMatrix basic_matrix(const ValidatedCycle& cycle, std::size_t j);

/// F_j: the constant part of g_j in logarithmic coordinates,
/// A_j (ln v0 + ln a_1, ln a_2, ..., ln a_N).
Eigen::VectorXd log_offset(const ValidatedCycle& cycle, std::size_t j);

/// The affine return-map data of a cycle: basic matrices and offsets.
///
/// Built either from a validated eigenvalue description or directly from
/// matrices, for cycles that are only known through their transition matrices.
class MatrixCycle {
 public:
  static MatrixCycle from_cycle(const ValidatedCycle& cycle);
  /// Offsets default to zero. Throws DimensionMismatch / EmptyCycle.
  static MatrixCycle from_matrices(std::vector<Eigen::MatrixXd> basics,
                                   std::vector<Eigen::VectorXd> offsets = {});

  std::size_t node_count() const noexcept { return basics_.size(); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(basics_.front().rows()); }
  const Eigen::MatrixXd& basic(std::size_t j) const;
  const Eigen::VectorXd& offset(std::size_t j) const;

 private:
  MatrixCycle() = default;

  std::vector<Eigen::MatrixXd> basics_;
  std::vector<Eigen::VectorXd> offsets_;
};

/// M^(j) = M_{j-1} ... M_{j+1} M_j, indices mod m.
TransitionMatrix full_return_matrix(const MatrixCycle& cycle, std::size_t j);

/// M_(l,j): the maps from the incoming section at j up to the one at l+1.
/// l == j gives M_j; l == j-1 (mod m) gives M^(j).
TransitionMatrix partial_turn_matrix(const MatrixCycle& cycle, std::size_t l, std::size_t j);

/// Sorted indices j whose basic matrix has a negative entry.
std::vector<std::size_t> negative_entry_indices(const MatrixCycle& cycle);

/// Comma-separated rows with a "# M_..." header line.
std::string to_csv(const TransitionMatrix& matrix);
std::string describe(const Provenance& provenance);

}  // namespace hetstab
