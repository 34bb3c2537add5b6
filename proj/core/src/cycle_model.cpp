#include "hetstab/cycle_model.hpp"

#include <cmath>
#include <string>

namespace hetstab {

namespace {

std::string at_node(std::size_t j) { return "node " + std::to_string(j); }
std::string at_connection(std::size_t j) { return "connection " + std::to_string(j); }

}  // namespace

std::vector<Violation> find_violations(const CycleSpec& spec) {
  std::vector<Violation> out;
  const std::size_t m = spec.nodes.size();
  if (m == 0) {
    out.push_back({ErrorKind::EmptyCycle, "cycle has no nodes"});
    return out;
  }
  if (spec.connections.size() != m) {
    out.push_back({ErrorKind::MismatchedConnectionCount,
                   std::to_string(spec.connections.size()) + " connections for " +
                       std::to_string(m) + " nodes"});
  }

  const std::size_t n_t = spec.nodes.front().transverse.size();
  if (n_t == 0) {
    out.push_back({ErrorKind::NoTransverseDirections, "node 0 has no transverse eigenvalues"});
  }
  for (std::size_t j = 0; j < m; ++j) {
    const NodeSpec& node = spec.nodes[j];
    if (!std::isfinite(node.contracting) || !std::isfinite(node.expanding)) {
      out.push_back({ErrorKind::NonFiniteValue, at_node(j) + " has a non-finite eigenvalue"});
    } else {
      if (node.contracting <= 0.0) {
        out.push_back({ErrorKind::NonPositiveEigenvalue, at_node(j) + " contracting <= 0"});
      }
      if (node.expanding <= 0.0) {
        out.push_back({ErrorKind::NonPositiveEigenvalue, at_node(j) + " expanding <= 0"});
      }
    }
    if (node.transverse.size() != n_t) {
      out.push_back({ErrorKind::MismatchedTransverseCount,
                     at_node(j) + " has " + std::to_string(node.transverse.size()) +
                         " transverse eigenvalues, node 0 has " + std::to_string(n_t)});
    }
    for (double t : node.transverse) {
      if (!std::isfinite(t)) {
        out.push_back({ErrorKind::NonFiniteValue, at_node(j) + " transverse eigenvalue"});
        break;
      }
    }
    for (double r : node.radial) {
      if (!(r > 0.0) || !std::isfinite(r)) {
        out.push_back({ErrorKind::NonPositiveEigenvalue, at_node(j) + " radial eigenvalue"});
        break;
      }
    }
  }

  const std::size_t n = n_t + 1;
  for (std::size_t j = 0; j < spec.connections.size(); ++j) {
    const ConnectionSpec& c = spec.connections[j];
    if (c.permutation.size() != n) {
      out.push_back({ErrorKind::InvalidPermutation,
                     at_connection(j) + " permutation has length " +
                         std::to_string(c.permutation.size()) + ", expected " +
                         std::to_string(n)});
    } else {
      std::vector<bool> seen(n, false);
      for (int p : c.permutation) {
        if (p < 0 || static_cast<std::size_t>(p) >= n || seen[static_cast<std::size_t>(p)]) {
          out.push_back({ErrorKind::InvalidPermutation,
                         at_connection(j) + " permutation is not a bijection on 0.." +
                             std::to_string(n - 1)});
          break;
        }
        seen[static_cast<std::size_t>(p)] = true;
      }
    }
    if (!c.scalings.empty() && c.scalings.size() != n) {
      out.push_back({ErrorKind::NonPositiveScaling,
                     at_connection(j) + " has " + std::to_string(c.scalings.size()) +
                         " scalings, expected " + std::to_string(n)});
    }
    for (double a : c.scalings) {
      if (!(a > 0.0) || !std::isfinite(a)) {
        out.push_back({ErrorKind::NonPositiveScaling, at_connection(j) + " scaling <= 0"});
        break;
      }
    }
    if (!(c.contraction_offset > 0.0) || !std::isfinite(c.contraction_offset)) {
      out.push_back({ErrorKind::NonPositiveScaling, at_connection(j) + " v0 <= 0"});
    }
  }
  return out;
}

ValidatedCycle validate_cycle(CycleSpec spec) {
  auto violations = find_violations(spec);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return ValidatedCycle(std::move(spec));
}

const NodeSpec& ValidatedCycle::node(std::size_t j) const {
  if (j >= node_count()) throw Error(ErrorKind::IndexOutOfRange, "node " + std::to_string(j));
  return spec_.nodes[j];
}

const ConnectionSpec& ValidatedCycle::connection(std::size_t j) const {
  if (j >= node_count()) {
    throw Error(ErrorKind::IndexOutOfRange, "connection " + std::to_string(j));
  }
  return spec_.connections[j];
}

double ValidatedCycle::scaling(std::size_t j, std::size_t i) const {
  const auto& c = connection(j);
  if (i >= dimension()) throw Error(ErrorKind::IndexOutOfRange, "scaling " + std::to_string(i));
  return c.scalings.empty() ? 1.0 : c.scalings[i];
}

bool operator==(const NodeSpec& a, const NodeSpec& b) {
  return a.contracting == b.contracting && a.expanding == b.expanding &&
         a.transverse == b.transverse && a.radial == b.radial;
}

bool operator==(const ConnectionSpec& a, const ConnectionSpec& b) {
  return a.permutation == b.permutation && a.scalings == b.scalings &&
         a.contraction_offset == b.contraction_offset;
}

bool operator==(const CycleSpec& a, const CycleSpec& b) {
  return a.nodes == b.nodes && a.connections == b.connections;
}

}  // namespace hetstab
