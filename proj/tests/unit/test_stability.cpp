#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <optional>
#include <random>

#include "hetstab/error.hpp"
#include "hetstab/rsp.hpp"
#include "hetstab/spectral.hpp"
#include "hetstab/stability.hpp"
#include "oracles.hpp"

using namespace hetstab;
using Catch::Approx;

namespace {

const auto kPlusInf = ExtendedReal::plus_infinity();
const auto kMinusInf = ExtendedReal::minus_infinity();

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

// Negative entry, real dominant eigenvalue ~2.887 with a positive eigenvector.
Eigen::MatrixXd signed_block() { return mat2(2, 1, -0.1, 3); }

bool same_vector(const AlphaVector& a, const Eigen::VectorXd& b) {
  if (a.size() != static_cast<std::size_t>(b.size())) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b(static_cast<Eigen::Index>(i))) > 1e-12) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("collect: RSP node 0 gives v^max, rows of M_0, rows of M^(0)") {
  const auto cycle = rsp_matrix_cycle({-0.5, 0.2});
  const auto alphas = collect_alpha_vectors(cycle, 0);
  REQUIRE(alphas.size() == 7);
  CHECK(alphas[0].source.kind == AlphaSourceKind::VMax);
  CHECK(same_vector(alphas[0].alpha, vmax_row(full_return_matrix(cycle, 0).entries)));
  const auto m0 = cycle.basic(0);
  const auto full = full_return_matrix(cycle, 0).entries;
  for (Eigen::Index r = 0; r < 3; ++r) {
    const auto& a = alphas[1 + static_cast<std::size_t>(r)];
    CHECK(a.source.kind == AlphaSourceKind::PartialTurnRow);
    CHECK(a.source.l == 0);
    CHECK(same_vector(a.alpha, m0.row(r).transpose()));
    const auto& b = alphas[4 + static_cast<std::size_t>(r)];
    CHECK(b.source.l == 1);
    CHECK(same_vector(b.alpha, full.row(r).transpose()));
  }
  CHECK(describe(alphas[5].source, 0) == "row 1 of M_(1,0)");
}

TEST_CASE("collect: single node gives v^max plus rows of M_j") {
  const auto cycle = MatrixCycle::from_matrices({signed_block()});
  const auto alphas = collect_alpha_vectors(cycle, 0);
  REQUIRE(alphas.size() == 3);
  CHECK(same_vector(alphas[1].alpha, signed_block().row(0).transpose()));
  CHECK(same_vector(alphas[2].alpha, signed_block().row(1).transpose()));
}

TEST_CASE("collect: one signed matrix in a 3-cycle uses the partial turn up to it") {
  const Eigen::MatrixXd pos = mat2(1.5, 0.5, 0.2, 1.0);
  const auto cycle = MatrixCycle::from_matrices({pos, signed_block(), pos});
  CHECK(negative_entry_indices(cycle) == std::vector<std::size_t>{1});
  CHECK(checkpoint_indices(cycle) == std::vector<std::size_t>{2});

  const auto a0 = collect_alpha_vectors(cycle, 0);
  REQUIRE(a0.size() == 3);
  const Eigen::MatrixXd m10 = testing::naive_multiply(signed_block(), pos);
  CHECK(same_vector(a0[1].alpha, m10.row(0).transpose()));
  CHECK(same_vector(a0[2].alpha, m10.row(1).transpose()));

  // From node 2 the turn wraps: M_(1,2) = M_1 M_0 M_2.
  const auto a2 = collect_alpha_vectors(cycle, 2);
  const Eigen::MatrixXd m12 = testing::naive_multiply(m10, pos);
  CHECK(same_vector(a2[1].alpha, m12.row(0).transpose()));
}

TEST_CASE("collect needs a negative entry") {
  const auto cycle = MatrixCycle::from_cycle(validate_cycle(testing::non_negative_cycle(2.0)));
  CHECK_THROWS_AS(collect_alpha_vectors(cycle, 0), Error);
}

TEST_CASE("non-negative cycles: +inf when expanding, -inf otherwise, for every j") {
  for (double t : {0.0, -0.2}) {
    const auto grow = classify(validate_cycle(testing::non_negative_cycle(2.0, t)));
    CHECK(grow.classification == Classification::AsymptoticallyStable);
    for (const auto& s : grow.sigma) {
      CHECK(s.value == kPlusInf);
      CHECK(s.rule == SigmaRule::NonNegativeExpanding);
    }
    const auto shrink = classify(validate_cycle(testing::non_negative_cycle(0.8, t)));
    CHECK(shrink.classification == Classification::NotAttractor);
    for (const auto& s : shrink.sigma) CHECK(s.value == kMinusInf);
  }
  const auto cycle = MatrixCycle::from_cycle(validate_cycle(testing::non_negative_cycle(2.0)));
  CHECK(sigma(cycle, 1).value == kPlusInf);
}

TEST_CASE("RSP index values and verdicts") {
  const auto cycle = rsp_matrix_cycle({-0.5, 0.2});
  const auto s0 = sigma(cycle, 0);
  CHECK(s0.value.value() == Approx(0.64 / 2.4).epsilon(1e-12));
  REQUIRE(s0.minimizer);
  CHECK(s0.minimizer->source.kind == AlphaSourceKind::PartialTurnRow);

  CHECK(classify(rsp_matrix_cycle({-0.3, -0.2})).classification ==
        Classification::EssentiallyAsymptoticallyStable);
  const auto bad = classify(rsp_matrix_cycle({0.3, -0.1}));
  CHECK(bad.classification == Classification::NotAttractor);
  CHECK(bad.sigma[0].rule == SigmaRule::ConditionsViolated);
  CHECK(bad.sigma[0].violating_node.has_value());
}

TEST_CASE("RSP: U^-inf(M^(j)) is the whole negative orthant, so F^index(v^max) = +inf") {
  for (const auto& p : rsp_grid(9)) {
    if (!(p.eps_x + p.eps_y < 0.0)) continue;
    const auto cycle = rsp_matrix_cycle(p);
    for (std::size_t j = 0; j < 2; ++j) {
      const auto alphas = collect_alpha_vectors(cycle, j);
      CHECK(f_index(alphas.front().alpha) == kPlusInf);
    }
  }
}

TEST_CASE("classification rules") {
  using V = std::vector<ExtendedReal>;
  CHECK(classify_indices(V{kPlusInf, kPlusInf}) == Classification::AsymptoticallyStable);
  CHECK(classify_indices(V{kPlusInf, ExtendedReal(0.5)}) ==
        Classification::EssentiallyAsymptoticallyStable);
  CHECK(classify_indices(V{ExtendedReal(-0.5), ExtendedReal(0.5)}) ==
        Classification::FragmentarilyAsymptoticallyStable_only);
  CHECK(classify_indices(V{ExtendedReal(-0.5), kMinusInf}) == Classification::NotAttractor);
  CHECK(classify_indices(V{ExtendedReal(0.0), kPlusInf}) == Classification::Marginal);
  CHECK(classify_indices(V{ExtendedReal(0.0), kMinusInf}) == Classification::NotAttractor);
  CHECK(verdict(Classification::EssentiallyAsymptoticallyStable) == "e.a.s.");
  CHECK(to_string(Classification::FragmentarilyAsymptoticallyStable_only) ==
        "FragmentarilyAsymptoticallyStable_only");
}

TEST_CASE("spectral failures surface as IndeterminateError with the node") {
  const auto tie = MatrixCycle::from_matrices({mat2(2, 0, 0, -2)});
  try {
    classify(tie);
    FAIL("tie accepted");
  } catch (const IndeterminateError& e) {
    CHECK(e.node() == 0);
    CHECK(e.cause() == ErrorKind::NoAdmissibleDominant);
  }
  const auto defective = MatrixCycle::from_matrices({mat2(2, -1, 0, 2)});
  try {
    sigma(defective, 0);
    FAIL("defective accepted");
  } catch (const IndeterminateError& e) {
    CHECK(e.cause() == ErrorKind::DefectiveMatrix);
  }
}

TEST_CASE("no admissible dominant eigenvalue means the conditions fail") {
  // Rotation by 90 degrees with a negative entry: every |lambda| = 1.
  const auto cycle = MatrixCycle::from_matrices({mat2(0, -1, 1, 0)});
  const auto r = classify(cycle);
  CHECK(r.classification == Classification::NotAttractor);
  CHECK(r.sigma[0].rule == SigmaRule::ConditionsViolated);
}

TEST_CASE("property: uniform rescaling of one node's eigenvalues leaves sigma unchanged") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> kappa(0.1, 10.0);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto spec = testing::random_cycle_spec(rng, 1 + trial % 4, 1 + trial % 3);
    IndexReport before;
    try {
      before = classify(validate_cycle(spec));
    } catch (const IndeterminateError&) {
      continue;
    }
    const double k = kappa(rng);
    auto& node = spec.nodes[static_cast<std::size_t>(trial) % spec.nodes.size()];
    node.contracting *= k;
    node.expanding *= k;
    for (auto& t : node.transverse) t *= k;
    const auto after = classify(validate_cycle(spec));
    REQUIRE(after.sigma.size() == before.sigma.size());
    for (std::size_t j = 0; j < after.sigma.size(); ++j) {
      const auto a = before.sigma[j].value;
      const auto b = after.sigma[j].value;
      if (a.is_finite()) {
        CHECK(b.value() == Approx(a.value()).epsilon(1e-9).margin(1e-9));
      } else {
        CHECK(a == b);
      }
    }
    ++compared;
  }
  CHECK(compared > 100);
}

TEST_CASE("property: non-negative cycles give the same sigma at every node") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> pos(0.3, 2.0);
  std::uniform_real_distribution<double> neg(-2.0, 0.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto spec = testing::random_cycle_spec(rng, 1 + trial % 5, 1 + trial % 3);
    for (auto& n : spec.nodes) {
      n.contracting = pos(rng);
      for (auto& t : n.transverse) t = neg(rng);
    }
    const auto r = classify(validate_cycle(spec));
    CHECK(r.negative_indices.empty());
    for (const auto& s : r.sigma) CHECK(s.value == r.sigma.front().value);
  }
}

static bool adjacent_negatives(const MatrixCycle& cycle) {
  const auto neg = negative_entry_indices(cycle);
  for (std::size_t jp : neg) {
    if (std::binary_search(neg.begin(), neg.end(), (jp + 1) % cycle.node_count())) return true;
  }
  return false;
}

TEST_CASE("property: without adjacent negative indices the checkpoints decide the conditions") {
  std::mt19937_64 rng(47);
  int compared = 0;
  for (int trial = 0; trial < 2000 && compared < 150; ++trial) {
    const auto cycle = MatrixCycle::from_cycle(
        validate_cycle(testing::random_cycle_spec(rng, 2 + trial % 4, 1 + trial % 3)));
    const auto checkpoints = checkpoint_indices(cycle);
    if (checkpoints.empty() || adjacent_negatives(cycle)) continue;
    bool at_checkpoints = true;
    bool everywhere = true;
    try {
      for (std::size_t j : checkpoints) {
        at_checkpoints = at_checkpoints && check_podvigina_conditions(full_return_matrix(cycle, j).entries).all();
      }
      for (std::size_t j = 0; j < cycle.node_count(); ++j) {
        everywhere = everywhere && check_podvigina_conditions(full_return_matrix(cycle, j).entries).all();
      }
    } catch (const Error&) {
      continue;
    }
    CHECK(at_checkpoints == everywhere);
    ++compared;
  }
  CHECK(compared >= 100);
}

TEST_CASE("adjacent negative indices: a node outside the checkpoints can fail alone") {
  // M_1, M_2, M_3 have negative entries; the only checkpoint is node 0.
  // Node 2 is reached from node 0 through the signed M_1, and its dominant
  // eigenvector has mixed signs even though nodes 0, 1 and 3 are fine.
  Eigen::MatrixXd m0(4, 4), m1(4, 4), m2(4, 4), m3(4, 4);
  m0 << 1.0392, 0, 1, 0, 0.933558, 1, 0, 0, 0.889972, 0, 0, 1, 1.04308, 0, 0, 0;
  m1 << 1.01213, 0, 0, 0, 0.424338, 0, 0, 1, -0.815911, 1, 0, 0, 0.438288, 0, 1, 0;
  m2 << 1.00158, 0, 1, 0, 0.152147, 1, 0, 0, 0.922041, 0, 0, 0, -0.390479, 0, 0, 1;
  m3 << 1.78, 0, 0, 0, 1.63802, 0, 0, 1, 1.94206, 1, 0, 0, -0.43953, 0, 1, 0;
  const auto cycle = MatrixCycle::from_matrices({m0, m1, m2, m3});
  REQUIRE(checkpoint_indices(cycle) == std::vector<std::size_t>{0});
  CHECK(check_podvigina_conditions(full_return_matrix(cycle, 0).entries).all());
  CHECK(check_podvigina_conditions(full_return_matrix(cycle, 1).entries).all());
  CHECK(check_podvigina_conditions(full_return_matrix(cycle, 3).entries).all());
  const auto f2 = check_podvigina_conditions(full_return_matrix(cycle, 2).entries);
  CHECK(f2.dominant_is_real);
  CHECK(f2.dominant_exceeds_one);
  CHECK_FALSE(f2.eigenvector_same_sign);

  const auto r = classify(cycle);
  CHECK(r.classification == Classification::NotAttractor);
  for (const auto& s : r.sigma) {
    CHECK(s.rule == SigmaRule::ConditionsViolated);
    CHECK(s.violating_node == std::optional<std::size_t>{2});
  }
}

TEST_CASE("rounding residue in product rows is treated as an exact zero") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto cycle = MatrixCycle::from_cycle(
        validate_cycle(testing::random_cycle_spec(rng, 1 + trial % 4, 1 + trial % 3)));
    if (negative_entry_indices(cycle).empty()) continue;
    try {
      for (std::size_t j = 0; j < cycle.node_count(); ++j) {
        for (const auto& a : collect_alpha_vectors(cycle, j)) {
          double scale = 0.0;
          for (double x : a.alpha.components()) scale = std::max(scale, std::abs(x));
          for (double x : a.alpha.components()) CHECK((x == 0.0 || std::abs(x) > 1e-9 * scale));
        }
      }
    } catch (const Error&) {
    }
  }
}
