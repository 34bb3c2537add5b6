#include "hetstab/rsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hetstab/error.hpp"

namespace hetstab {

namespace {

Eigen::MatrixXd rsp_block(double a, double b) {
  Eigen::MatrixXd m(3, 3);
  m << (1.0 - b) / 2.0, 1.0, 0.0,
       -(1.0 + a) / 2.0, 0.0, 1.0,
       1.0, 0.0, 0.0;
  return m;
}

NodeSpec rsp_node(double a, double b) {
  NodeSpec n;
  n.contracting = 1.0;
  n.expanding = 1.0;
  n.transverse = {-(1.0 - b) / 2.0, (1.0 + a) / 2.0};
  return n;
}

ExtendedReal closed_index(double a, double b) {
  return ExtendedReal(std::min((1.0 - a) / (1.0 + a), (1.0 - b) * (1.0 - b) / (2.0 * (1.0 + b))));
}

}  // namespace

void RspParams::validate() const {
  const auto inside = [](double v) { return v > -1.0 && v < 1.0; };
  if (!inside(eps_x) || !inside(eps_y)) {
    throw Error(ErrorKind::ParamOutOfRange, "eps_x and eps_y must lie in (-1, 1)");
  }
}

std::pair<TransitionMatrix, TransitionMatrix> rsp_matrices(const RspParams& p) {
  p.validate();
  return {TransitionMatrix{rsp_block(p.eps_x, p.eps_y), {MatrixKind::Basic, 0, 0}},
          TransitionMatrix{rsp_block(p.eps_y, p.eps_x), {MatrixKind::Basic, 1, 1}}};
}

MatrixCycle rsp_matrix_cycle(const RspParams& p) {
  auto [m0, m1] = rsp_matrices(p);
  return MatrixCycle::from_matrices({std::move(m0.entries), std::move(m1.entries)});
}

CycleSpec rsp_cycle_spec(const RspParams& p) {
  p.validate();
  CycleSpec spec;
  spec.nodes = {rsp_node(p.eps_x, p.eps_y), rsp_node(p.eps_y, p.eps_x)};
  ConnectionSpec c;
  c.permutation = {1, 2, 0};
  spec.connections = {c, c};
  return spec;
}

std::array<ExtendedReal, 2> rsp_closed_form(const RspParams& p) {
  p.validate();
  if (!p.admissible()) {
    throw Error(ErrorKind::NotFAS, "closed forms need eps_x + eps_y < 0");
  }
  return {closed_index(p.eps_x, p.eps_y), closed_index(p.eps_y, p.eps_x)};
}

RspComparison rsp_compare(const RspParams& p, double tol, double agreement_tol) {
  RspComparison out;
  out.params = p;
  out.report = classify(rsp_matrix_cycle(p), tol);
  if (!p.admissible()) {
    out.agrees = out.report.classification == Classification::NotAttractor;
    return out;
  }
  out.closed_form = rsp_closed_form(p);
  out.agrees = out.report.classification == Classification::EssentiallyAsymptoticallyStable;
  for (std::size_t j = 0; j < 2; ++j) {
    const ExtendedReal got = out.report.sigma[j].value;
    const ExtendedReal want = (*out.closed_form)[j];
    out.abs_error[j] = got.is_finite() ? std::abs(got.value() - want.value())
                                       : std::numeric_limits<double>::infinity();
    out.agrees = out.agrees && out.abs_error[j] <= agreement_tol;
  }
  return out;
}

std::vector<RspParams> rsp_grid(int g) {
  if (g < 1) throw Error(ErrorKind::InvalidArgument, "grid size must be positive");
  std::vector<RspParams> out;
  out.reserve(static_cast<std::size_t>(g) * static_cast<std::size_t>(g));
  // Integer numerator keeps mirrored midpoints exact negatives of each other.
  const auto mid = [g](int k) { return static_cast<double>(2 * k + 1 - g) / g; };
  for (int a = 0; a < g; ++a) {
    for (int b = 0; b < g; ++b) out.push_back({mid(a), mid(b)});
  }
  return out;
}

}  // namespace hetstab
