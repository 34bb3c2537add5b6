#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hetstab/error.hpp"

namespace hetstab {

/// Eigenvalue data at one equilibrium of the cycle. Magnitudes: the contracting
/// eigenvalue is -contracting, the expanding one is +expanding.
struct NodeSpec {
  double contracting = 1.0;
  double expanding = 1.0;
  std::vector<double> transverse;
  // Carried for completeness; radial eigenvalues never enter the transition maps.
  std::vector<double> radial;
};

/// Global map leaving a node: a rescaled permutation of the local axes.
///
/// Row i of the basic transition matrix is row permutation[i] of the
/// unpermuted base matrix. Empty scalings mean all ones.
struct ConnectionSpec {
  std::vector<int> permutation;
  std::vector<double> scalings;
  double contraction_offset = 1.0;
};

/// connections[j] leaves nodes[j] and enters nodes[(j + 1) % m].
struct CycleSpec {
  std::vector<NodeSpec> nodes;
  std::vector<ConnectionSpec> connections;
};

bool operator==(const NodeSpec&, const NodeSpec&);
bool operator==(const ConnectionSpec&, const ConnectionSpec&);
bool operator==(const CycleSpec&, const CycleSpec&);

/// Returns every violation in `spec`; empty when the cycle is well formed.
std::vector<Violation> find_violations(const CycleSpec& spec);

class ValidatedCycle;

/// Throws ValidationError listing all violations.
ValidatedCycle validate_cycle(CycleSpec spec);

/// A cycle description that passed validation. Immutable.
class ValidatedCycle {
 public:
  std::size_t node_count() const noexcept { return spec_.nodes.size(); }
  std::size_t transverse_count() const noexcept { return spec_.nodes.front().transverse.size(); }
  std::size_t dimension() const noexcept { return transverse_count() + 1; }

  const NodeSpec& node(std::size_t j) const;
  const ConnectionSpec& connection(std::size_t j) const;
  /// a_{j,i}, defaulting to 1.
  double scaling(std::size_t j, std::size_t i) const;
  const CycleSpec& spec() const noexcept { return spec_; }

  friend bool operator==(const ValidatedCycle&, const ValidatedCycle&) = default;

 private:
  explicit ValidatedCycle(CycleSpec spec) : spec_(std::move(spec)) {}
  friend ValidatedCycle validate_cycle(CycleSpec spec);

  CycleSpec spec_;
};

}  // namespace hetstab
