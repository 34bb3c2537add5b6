#include "hetstab/stability.hpp"

#include <algorithm>
#include <cmath>

#include "hetstab/error.hpp"
#include "hetstab/spectral.hpp"

namespace hetstab {

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::AsymptoticallyStable: return "AsymptoticallyStable";
    case Classification::EssentiallyAsymptoticallyStable: return "EssentiallyAsymptoticallyStable";
    case Classification::FragmentarilyAsymptoticallyStable_only:
      return "FragmentarilyAsymptoticallyStable_only";
    case Classification::NotAttractor: return "NotAttractor";
    case Classification::Marginal: return "Marginal";
  }
  return "?";
}

std::string_view verdict(Classification c) {
  switch (c) {
    case Classification::AsymptoticallyStable: return "a.s.";
    case Classification::EssentiallyAsymptoticallyStable: return "e.a.s.";
    case Classification::FragmentarilyAsymptoticallyStable_only: return "f.a.s. only";
    case Classification::NotAttractor: return "not an attractor";
    case Classification::Marginal: return "marginal";
  }
  return "?";
}

std::string_view to_string(SigmaRule rule) {
  switch (rule) {
    case SigmaRule::NonNegativeExpanding: return "non-negative, expanding";
    case SigmaRule::NonNegativeBounded: return "non-negative, bounded";
    case SigmaRule::ConditionsViolated: return "conditions violated";
    case SigmaRule::MinimumOverAlphas: return "min F^index";
  }
  return "?";
}

std::string describe(const AlphaSource& source, std::size_t j) {
  if (source.kind == AlphaSourceKind::VMax) return "v^max," + std::to_string(j);
  return "row " + std::to_string(source.row) + " of " +
         describe(Provenance{MatrixKind::PartialTurn, source.l, j});
}

namespace {

// Runs a spectral computation for node j, turning its failures into IndeterminateError.
template <typename F>
auto at_node(std::size_t j, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const IndeterminateError&) {
    throw;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DefectiveMatrix || e.kind() == ErrorKind::NoAdmissibleDominant) {
      throw IndeterminateError(j, e.kind(), e.what());
    }
    throw;
  }
}

// First node whose full-return matrix fails the conditions, if any. Every node
// is checked: the checkpoint subset can be empty (e.g. when every index carries
// a negative entry) while the conditions still fail.
std::optional<std::size_t> first_violation(const MatrixCycle& cycle, double tol) {
  for (std::size_t j = 0; j < cycle.node_count(); ++j) {
    const auto flags = at_node(j, [&] {
      const auto s = eigen_decompose(full_return_matrix(cycle, j).entries, tol);
      if (s.dominant_status == DominantStatus::Tie) {
        throw Error(ErrorKind::NoAdmissibleDominant,
                    "distinct eigenvalues of M^(" + std::to_string(j) + ") share the top modulus");
      }
      return s.conditions;
    });
    if (!flags.all()) return j;
  }
  return std::nullopt;
}

SigmaResult non_negative_sigma(const MatrixCycle& cycle, double tol) {
  const double rho = at_node(0, [&] { return spectral_radius(full_return_matrix(cycle, 0).entries); });
  if (rho > 1.0 + tol) return {ExtendedReal::plus_infinity(), SigmaRule::NonNegativeExpanding, {}, {}};
  return {ExtendedReal::minus_infinity(), SigmaRule::NonNegativeBounded, {}, {}};
}

SigmaResult minimum_over_alphas(const MatrixCycle& cycle, std::size_t j, double tol) {
  const auto alphas = collect_alpha_vectors(cycle, j, tol);
  SigmaResult out{ExtendedReal::plus_infinity(), SigmaRule::MinimumOverAlphas, alphas.front(), {}};
  bool first = true;
  for (const auto& a : alphas) {
    const auto v = f_index(a.alpha);
    if (first || v < out.value) {
      out.value = v;
      out.minimizer = a;
      first = false;
    }
    if (out.value.is_minus_infinity()) break;
  }
  return out;
}

// Entries below tol relative to the largest one are rounding residue of exact
// zeros in the products; left in place they flip F^index between +inf and ~1e15.
AlphaVector snapped(const double* data, std::size_t n, double tol) {
  std::vector<double> v(data, data + n);
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  for (auto& x : v) {
    if (std::abs(x) <= tol * scale) x = 0.0;
  }
  return AlphaVector(std::move(v));
}

}  // namespace

std::vector<SourcedAlpha> collect_alpha_vectors(const MatrixCycle& cycle, std::size_t j,
                                                double tol) {
  const auto negatives = negative_entry_indices(cycle);
  if (negatives.empty()) {
    throw Error(ErrorKind::PreconditionViolated, "no transition matrix has a negative entry");
  }
  const Eigen::VectorXd vmax =
      at_node(j, [&] { return vmax_row(full_return_matrix(cycle, j).entries, tol); });

  std::vector<SourcedAlpha> out;
  out.reserve(1 + negatives.size() * cycle.dimension());
  out.push_back({snapped(vmax.data(), static_cast<std::size_t>(vmax.size()), tol),
                 {AlphaSourceKind::VMax, j, 0}});
  for (std::size_t jp : negatives) {
    const Eigen::MatrixXd p = partial_turn_matrix(cycle, jp, j).entries;
    for (Eigen::Index r = 0; r < p.rows(); ++r) {
      const Eigen::VectorXd row = p.row(r).transpose();
      out.push_back({snapped(row.data(), static_cast<std::size_t>(row.size()), tol),
                     {AlphaSourceKind::PartialTurnRow, jp, static_cast<std::size_t>(r)}});
    }
  }
  return out;
}

std::vector<std::size_t> checkpoint_indices(const MatrixCycle& cycle) {
  const auto negatives = negative_entry_indices(cycle);
  const std::size_t m = cycle.node_count();
  std::vector<std::size_t> out;
  for (std::size_t jp : negatives) {
    const std::size_t next = (jp + 1) % m;
    if (!std::binary_search(negatives.begin(), negatives.end(), next)) out.push_back(next);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SigmaResult sigma(const MatrixCycle& cycle, std::size_t j, double tol) {
  if (j >= cycle.node_count()) {
    throw Error(ErrorKind::IndexOutOfRange, "node " + std::to_string(j) + " out of range");
  }
  if (negative_entry_indices(cycle).empty()) return non_negative_sigma(cycle, tol);
  if (const auto bad = first_violation(cycle, tol)) {
    return {ExtendedReal::minus_infinity(), SigmaRule::ConditionsViolated, {}, bad};
  }
  return minimum_over_alphas(cycle, j, tol);
}

std::vector<ExtendedReal> IndexReport::values() const {
  std::vector<ExtendedReal> out;
  out.reserve(sigma.size());
  for (const auto& s : sigma) out.push_back(s.value);
  return out;
}

Classification classify_indices(std::span<const ExtendedReal> sigma) {
  const auto any = [&](auto pred) { return std::any_of(sigma.begin(), sigma.end(), pred); };
  const auto all = [&](auto pred) { return std::all_of(sigma.begin(), sigma.end(), pred); };
  if (any([](ExtendedReal s) { return s.is_minus_infinity(); })) return Classification::NotAttractor;
  if (any([](ExtendedReal s) { return s.value() == 0.0; })) return Classification::Marginal;
  if (all([](ExtendedReal s) { return s.is_plus_infinity(); })) {
    return Classification::AsymptoticallyStable;
  }
  if (all([](ExtendedReal s) { return s.value() > 0.0; })) {
    return Classification::EssentiallyAsymptoticallyStable;
  }
  return Classification::FragmentarilyAsymptoticallyStable_only;
}

IndexReport classify(const MatrixCycle& cycle, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  IndexReport report;
  report.negative_indices = negative_entry_indices(cycle);
  report.checkpoints = checkpoint_indices(cycle);
  const std::size_t m = cycle.node_count();

  if (report.negative_indices.empty()) {
    report.sigma.assign(m, non_negative_sigma(cycle, tol));
  } else if (const auto bad = first_violation(cycle, tol)) {
    report.sigma.assign(m, {ExtendedReal::minus_infinity(), SigmaRule::ConditionsViolated, {}, bad});
  } else {
    for (std::size_t j = 0; j < m; ++j) report.sigma.push_back(minimum_over_alphas(cycle, j, tol));
  }
  const auto vals = report.values();
  report.classification = classify_indices(vals);
  return report;
}

IndexReport classify(const ValidatedCycle& cycle, double tol) {
  return classify(MatrixCycle::from_cycle(cycle), tol);
}

}  // namespace hetstab
