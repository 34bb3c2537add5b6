#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hetstab/extended_real.hpp"
#include "hetstab/findex.hpp"
#include "hetstab/transition.hpp"

namespace hetstab {

enum class Classification {
  AsymptoticallyStable,
  EssentiallyAsymptoticallyStable,
  FragmentarilyAsymptoticallyStable_only,
  NotAttractor,
  Marginal,
};

std::string_view to_string(Classification c);
/// Short verdict: "a.s.", "e.a.s.", "f.a.s. only", "not an attractor", "marginal".
std::string_view verdict(Classification c);

enum class AlphaSourceKind { VMax, PartialTurnRow };

/// Where a half-space normal came from: v^{max,j}, or row `row` of M_(l,j).
struct AlphaSource {
  AlphaSourceKind kind = AlphaSourceKind::VMax;
  std::size_t l = 0;
  std::size_t row = 0;
};

struct SourcedAlpha {
  AlphaVector alpha;
  AlphaSource source;
};

std::string describe(const AlphaSource& source, std::size_t j);

/// v^{max,j} followed by the rows of M_(j_p,j) for every negative-entry index
/// j_p, in ascending j_p order. K = 1 + L*N vectors. Entries within tol of zero,
/// relative to the largest entry of their vector, are set to exactly zero.
std::vector<SourcedAlpha> collect_alpha_vectors(const MatrixCycle& cycle, std::size_t j,
                                                double tol = kDefaultTolerance);

/// Nodes j_p + 1 (mod m) that are not themselves negative-entry indices.
std::vector<std::size_t> checkpoint_indices(const MatrixCycle& cycle);

enum class SigmaRule {
  NonNegativeExpanding,  // all M_j >= 0, spectral radius > 1
  NonNegativeBounded,    // all M_j >= 0, spectral radius <= 1
  ConditionsViolated,    // some M^(j) fails the dominant-eigenvector conditions
  MinimumOverAlphas,     // min of F^index over collected normals
};

std::string_view to_string(SigmaRule rule);

struct SigmaResult {
  ExtendedReal value;
  SigmaRule rule = SigmaRule::MinimumOverAlphas;
  std::optional<SourcedAlpha> minimizer;      // set for MinimumOverAlphas
  std::optional<std::size_t> violating_node;  // set for ConditionsViolated
};

/// Local stability index along the connection entering node j, measured at its
/// incoming section. Spectral failures throw IndeterminateError naming the node.
SigmaResult sigma(const MatrixCycle& cycle, std::size_t j, double tol = kDefaultTolerance);

struct IndexReport {
  std::vector<SigmaResult> sigma;
  Classification classification = Classification::NotAttractor;
  std::vector<std::size_t> negative_indices;
  std::vector<std::size_t> checkpoints;

  std::vector<ExtendedReal> values() const;
};

/// Pure rule mapping a list of indices to a verdict:
/// any -inf -> NotAttractor; any exact 0 -> Marginal; all +inf -> AsymptoticallyStable;
/// all > 0 -> EssentiallyAsymptoticallyStable; otherwise FragmentarilyAsymptoticallyStable_only.
Classification classify_indices(std::span<const ExtendedReal> sigma);

IndexReport classify(const MatrixCycle& cycle, double tol = kDefaultTolerance);
IndexReport classify(const ValidatedCycle& cycle, double tol = kDefaultTolerance);

}  // namespace hetstab
