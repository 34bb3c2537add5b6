#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "hetstab/cycle_model.hpp"
#include "hetstab/extended_real.hpp"
#include "hetstab/stability.hpp"
#include "hetstab/transition.hpp"

namespace hetstab {

/// Payoff perturbations of the Rock-Scissors-Paper cycle, each in (-1, 1).
struct RspParams {
  double eps_x = 0.0;
  double eps_y = 0.0;

  /// Throws ParamOutOfRange unless both values lie strictly inside (-1, 1).
  void validate() const;
  bool admissible() const noexcept { return eps_x + eps_y < 0.0; }
};

/// M_0 = [[(1-ey)/2, 1, 0], [-(1+ex)/2, 0, 1], [1, 0, 0]]; M_1 swaps ex and ey.
std::pair<TransitionMatrix, TransitionMatrix> rsp_matrices(const RspParams& p);

MatrixCycle rsp_matrix_cycle(const RspParams& p);

/// An eigenvalue description that reproduces rsp_matrices exactly:
/// c = e = 1, t = (-(1-ey)/2, (1+ex)/2) at node 0, permutation (1, 2, 0).
CycleSpec rsp_cycle_spec(const RspParams& p);

/// sigma_0 = min{(1-ex)/(1+ex), (1-ey)^2/(2(1+ey))}, sigma_1 with ex and ey swapped.
/// Throws NotFAS when ex + ey >= 0.
std::array<ExtendedReal, 2> rsp_closed_form(const RspParams& p);

struct RspComparison {
  RspParams params;
  IndexReport report;
  std::optional<std::array<ExtendedReal, 2>> closed_form;
  std::array<double, 2> abs_error{0.0, 0.0};  // zero when closed_form is empty
  bool agrees = false;
};

/// Runs the full pipeline on the RSP cycle and compares it against the closed
/// forms (or, outside the admissible region, against NotAttractor).
RspComparison rsp_compare(const RspParams& p, double tol = kDefaultTolerance,
                          double agreement_tol = 1e-9);

/// G x G cell midpoints (2k+1-G)/G, row-major in eps_x then eps_y.
std::vector<RspParams> rsp_grid(int g);

}  // namespace hetstab
