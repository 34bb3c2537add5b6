#include "hetstab/transition.hpp"

#include <cmath>

#include "hetstab/extended_real.hpp"

namespace hetstab {

namespace {

void check_index(std::size_t j, std::size_t m, const char* what) {
  if (j >= m) {
    throw Error(ErrorKind::IndexOutOfRange,
                std::string(what) + " " + std::to_string(j) + " outside 0.." +
                    std::to_string(m == 0 ? 0 : m - 1));
  }
}

}  // namespace

TransitionMatrix basic_matrix(const ValidatedCycle& cycle, std::size_t j) {
  const NodeSpec& node = cycle.node(j);
  const ConnectionSpec& conn = cycle.connection(j);
  const auto n = static_cast<Eigen::Index>(cycle.dimension());

  Eigen::MatrixXd base = Eigen::MatrixXd::Identity(n, n);
  base(0, 0) = node.contracting / node.expanding;
  for (Eigen::Index s = 1; s < n; ++s) {
    base(s, 0) = -node.transverse[static_cast<std::size_t>(s - 1)] / node.expanding;
  }

  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m.row(i) = base.row(conn.permutation[static_cast<std::size_t>(i)]);
  }
  return {std::move(m), {MatrixKind::Basic, j, j}};
}

Eigen::VectorXd log_offset(const ValidatedCycle& cycle, std::size_t j) {
  const ConnectionSpec& conn = cycle.connection(j);
  const auto n = static_cast<Eigen::Index>(cycle.dimension());
  Eigen::VectorXd unpermuted(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    unpermuted(i) = std::log(cycle.scaling(j, static_cast<std::size_t>(i)));
  }
  unpermuted(0) += std::log(conn.contraction_offset);

  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i) = unpermuted(conn.permutation[static_cast<std::size_t>(i)]);
  }
  return out;
}

MatrixCycle MatrixCycle::from_cycle(const ValidatedCycle& cycle) {
  MatrixCycle out;
  for (std::size_t j = 0; j < cycle.node_count(); ++j) {
    out.basics_.push_back(basic_matrix(cycle, j).entries);
    out.offsets_.push_back(log_offset(cycle, j));
  }
  return out;
}

MatrixCycle MatrixCycle::from_matrices(std::vector<Eigen::MatrixXd> basics,
                                       std::vector<Eigen::VectorXd> offsets) {
  if (basics.empty()) throw Error(ErrorKind::EmptyCycle, "no transition matrices");
  const Eigen::Index n = basics.front().rows();
  if (n < 1) throw Error(ErrorKind::DimensionMismatch, "empty transition matrix");
  for (const auto& b : basics) {
    if (b.rows() != n || b.cols() != n) {
      throw Error(ErrorKind::DimensionMismatch, "transition matrices must share one square size");
    }
    if (!b.allFinite()) throw Error(ErrorKind::NonFiniteValue, "transition matrix entry");
  }
  if (offsets.empty()) {
    offsets.assign(basics.size(), Eigen::VectorXd::Zero(n));
  } else if (offsets.size() != basics.size()) {
    throw Error(ErrorKind::DimensionMismatch, "one offset per transition matrix is required");
  }
  for (const auto& f : offsets) {
    if (f.size() != n) throw Error(ErrorKind::DimensionMismatch, "offset length");
  }
  MatrixCycle out;
  out.basics_ = std::move(basics);
  out.offsets_ = std::move(offsets);
  return out;
}

const Eigen::MatrixXd& MatrixCycle::basic(std::size_t j) const {
  check_index(j, node_count(), "node");
  return basics_[j];
}

const Eigen::VectorXd& MatrixCycle::offset(std::size_t j) const {
  check_index(j, node_count(), "node");
  return offsets_[j];
}

TransitionMatrix partial_turn_matrix(const MatrixCycle& cycle, std::size_t l, std::size_t j) {
  const std::size_t m = cycle.node_count();
  check_index(l, m, "l");
  check_index(j, m, "j");
  Eigen::MatrixXd product = cycle.basic(j);
  for (std::size_t idx = j; idx != l;) {
    idx = (idx + 1) % m;
    product = cycle.basic(idx) * product;
  }
  return {std::move(product), {MatrixKind::PartialTurn, l, j}};
}

TransitionMatrix full_return_matrix(const MatrixCycle& cycle, std::size_t j) {
  const std::size_t m = cycle.node_count();
  check_index(j, m, "j");
  auto out = partial_turn_matrix(cycle, (j + m - 1) % m, j);
  out.provenance = {MatrixKind::FullReturn, j, j};
  return out;
}

std::vector<std::size_t> negative_entry_indices(const MatrixCycle& cycle) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < cycle.node_count(); ++j) {
    if (cycle.basic(j).minCoeff() < 0.0) out.push_back(j);
  }
  return out;
}

std::string describe(const Provenance& p) {
  switch (p.kind) {
    case MatrixKind::Basic: return "M_" + std::to_string(p.j);
    case MatrixKind::FullReturn: return "M^(" + std::to_string(p.j) + ")";
    case MatrixKind::PartialTurn:
      return "M_(" + std::to_string(p.l) + "," + std::to_string(p.j) + ")";
  }
  return "M";
}

std::string to_csv(const TransitionMatrix& matrix) {
  std::string out = "# " + describe(matrix.provenance) + "\n";
  const auto& e = matrix.entries;
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    for (Eigen::Index k = 0; k < e.cols(); ++k) {
      if (k) out += ",";
      out += format_double(e(i, k));
    }
    out += "\n";
  }
  return out;
}

}  // namespace hetstab
