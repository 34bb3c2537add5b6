#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hetstab/extended_real.hpp"
#include "hetstab/findex.hpp"
#include "hetstab/transition.hpp"

namespace hetstab {

/// Log-coordinates above this overflow exp() in double precision.
inline constexpr double kLogCap = 709.0;

struct EstimatorConfig {
  double delta = 1e-2;
  std::vector<double> epsilon_ladder;  // strictly decreasing, all < delta
  std::size_t samples_per_level = 20000;
  std::size_t max_full_turns = 200;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency, capped by HETSTAB_THREADS

  /// Throws InvalidConfig.
  void validate() const;
};

/// n values spaced evenly in log scale from `first` to `last`, endpoints included.
std::vector<double> log_ladder(double first, double last, std::size_t n);

/// Worker count for `requested` (0 = automatic), capped by HETSTAB_THREADS.
unsigned resolve_threads(unsigned requested);

/// eta -> M eta + f. nullopt (escaped) on a non-finite component or one above kLogCap.
std::optional<Eigen::VectorXd> apply_log_map(const Eigen::MatrixXd& m, const Eigen::VectorXd& eta,
                                             const Eigen::VectorXd& f);

/// x'_i = consts_i * prod_k x_k^{M_ik}. Throws NonPositiveInput unless every
/// x_i and consts_i is positive; nullopt when the image escapes.
std::optional<Eigen::VectorXd> apply_matrix_map(const Eigen::MatrixXd& m, const Eigen::VectorXd& x,
                                                const Eigen::VectorXd& consts);

/// Whether the point with log-coordinates eta on the incoming section of node j
/// stays in the delta-tube for config.max_full_turns returns and its max-norm
/// keeps shrinking geometrically over the last quarter of turns.
bool in_delta_basin_log(const MatrixCycle& cycle, std::size_t j, const Eigen::VectorXd& eta,
                        const EstimatorConfig& config);
/// Same, for a point with positive coordinates x.
bool in_delta_basin(const MatrixCycle& cycle, std::size_t j, const Eigen::VectorXd& x,
                    const EstimatorConfig& config);

struct LevelEstimate {
  double epsilon = 0.0;  // or R for F^+ levels
  std::size_t samples = 0;
  std::size_t hits = 0;
  double fraction = 0.0;
  double std_error = 0.0;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean square
  std::size_t points = 0;
};

/// Ordinary least squares y = slope*x + intercept. Needs two distinct x values.
SlopeFit fit_line(std::span<const double> x, std::span<const double> y);

enum class EstimateStatus {
  Fitted,
  SaturatedInside,   // every level fully in the basin: +inf candidate
  SaturatedOutside,  // every level fully outside: -inf candidate
  InsufficientResolution,
};

std::string_view to_string(EstimateStatus s);

struct BasinEstimate {
  std::vector<LevelEstimate> levels;
  EstimateStatus status = EstimateStatus::InsufficientResolution;
  std::optional<SlopeFit> fit_plus;   // ln(1 - frac) against ln(eps)
  std::optional<SlopeFit> fit_minus;  // ln(frac) against ln(eps)
  std::optional<ExtendedReal> sigma_hat;
};

/// Monte-Carlo local stability index at the incoming section of node j,
/// sampling the positive-orthant eps-cube at every ladder level.
BasinEstimate estimate_sigma_mc(const MatrixCycle& cycle, std::size_t j,
                                const EstimatorConfig& config);

struct FPlusEstimate {
  std::vector<LevelEstimate> levels;  // fraction estimates 1 - Sigma_R; epsilon holds R
  std::vector<double> raw_fraction;   // plain hit-or-miss estimates of the same quantity
  EstimateStatus status = EstimateStatus::InsufficientResolution;
  std::optional<SlopeFit> fit;
  std::optional<ExtendedReal> f_plus_hat;
};

/// Monte-Carlo F^+(alpha): the slope of ln(1 - Sigma_R) against R, where
/// 1 - Sigma_R is the share of the cube (-inf, R]^N (uniform in e^eta) with
/// alpha . eta >= 0. The coordinate with the most negative weight is integrated
/// out exactly, so each sample contributes a probability rather than a 0/1 hit.
FPlusEstimate estimate_fplus_mc(const AlphaVector& alpha, std::span<const double> r_ladder,
                                std::size_t samples, std::uint64_t seed, unsigned threads = 0);

enum class Membership { Diverges, DoesNotDiverge, Indeterminate };

std::string_view to_string(Membership m);

/// Brute-force test of lim M^k y = -inf (componentwise) for strictly negative y,
/// iterating up to k_max times with renormalisation.
Membership matrix_basin_membership(const Eigen::MatrixXd& m, const Eigen::VectorXd& y,
                                   std::size_t k_max);

}  // namespace hetstab
