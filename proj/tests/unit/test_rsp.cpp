#include <catch2/catch_amalgamated.hpp>

#include "hetstab/error.hpp"
#include "hetstab/rsp.hpp"

using namespace hetstab;
using Catch::Approx;

TEST_CASE("displayed matrices") {
  const auto [m0, m1] = rsp_matrices({0.0, 0.0});
  Eigen::MatrixXd want(3, 3);
  want << 0.5, 1, 0, -0.5, 0, 1, 1, 0, 0;
  CHECK(m0.entries == want);
  CHECK(m1.entries == want);

  const auto [a0, a1] = rsp_matrices({-0.5, 0.2});
  CHECK(a0.entries(0, 0) == Approx(0.4));
  CHECK(a0.entries(0, 1) == 1.0);
  CHECK(a0.entries(0, 2) == 0.0);
  CHECK(a0.entries(1, 0) == -0.25);
}

TEST_CASE("swapping the parameters swaps the matrices") {
  for (const auto& p : rsp_grid(6)) {
    const auto [a0, a1] = rsp_matrices(p);
    const auto [b0, b1] = rsp_matrices({p.eps_y, p.eps_x});
    CHECK(a0.entries == b1.entries);
    CHECK(a1.entries == b0.entries);
  }
}

TEST_CASE("parameter range") {
  CHECK_THROWS_AS(rsp_matrices({1.0, 0.0}), Error);
  CHECK_THROWS_AS(rsp_matrices({0.0, -1.0}), Error);
  try {
    RspParams{0.0, 1.5}.validate();
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParamOutOfRange);
  }
}

TEST_CASE("closed forms") {
  const auto a = rsp_closed_form({-0.5, 0.2});
  CHECK(a[0].value() == Approx(0.64 / 2.4));
  CHECK(a[1].value() == Approx(2.0 / 3.0));
  const auto b = rsp_closed_form({-0.2, -0.2});
  CHECK(b[0].value() == Approx(0.9));
  try {
    rsp_closed_form({0.3, 0.3});
    FAIL("closed form outside the admissible region");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotFAS);
  }
  CHECK_THROWS_AS(rsp_closed_form({0.2, -0.2}), Error);
}

TEST_CASE("closed forms: symmetry and positivity") {
  for (const auto& p : rsp_grid(21)) {
    if (!p.admissible()) continue;
    const auto s = rsp_closed_form(p);
    const auto t = rsp_closed_form({p.eps_y, p.eps_x});
    CHECK(s[0] == t[1]);
    CHECK(s[1] == t[0]);
    CHECK(s[0].value() > 0.0);
    CHECK(s[1].value() > 0.0);
  }
}

TEST_CASE("pipeline agrees with the closed forms") {
  const auto c = rsp_compare({-0.5, 0.2});
  CHECK(c.agrees);
  CHECK(c.abs_error[0] < 1e-9);
  CHECK(c.abs_error[1] < 1e-9);

  const auto n = rsp_compare({0.1, 0.05});
  CHECK(n.agrees);
  CHECK(n.report.classification == Classification::NotAttractor);
  CHECK_FALSE(n.closed_form);

  int admissible = 0;
  for (const auto& p : rsp_grid(3)) {
    const auto r = rsp_compare(p);
    CHECK(r.agrees);
    admissible += p.admissible();
  }
  CHECK(admissible == 3);
  for (const auto& p : rsp_grid(15)) CHECK(rsp_compare(p).agrees);
}

TEST_CASE("pipeline index symmetry is exact") {
  for (const auto& p : rsp_grid(11)) {
    if (!p.admissible()) continue;
    const auto a = rsp_compare(p).report;
    const auto b = rsp_compare({p.eps_y, p.eps_x}).report;
    CHECK(a.sigma[0].value == b.sigma[1].value);
  }
}

TEST_CASE("grid layout") {
  const auto g = rsp_grid(5);
  REQUIRE(g.size() == 25);
  CHECK(g.front().eps_x == -0.8);
  CHECK(g.front().eps_y == -0.8);
  CHECK(g[1].eps_y == -0.4);
  CHECK(g.back().eps_x == 0.8);
  CHECK(g[12].eps_x == 0.0);
  CHECK_THROWS_AS(rsp_grid(0), Error);
}
