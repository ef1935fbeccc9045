#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wzwsle/invariant_space.hpp"

using namespace wzwsle;

namespace {

Eigen::Matrix2d quad_to_matrix(const QuadMat2& m)
{
  Eigen::Matrix2d out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out(r, c) = m(r, c).value();
  return out;
}

double match_closed_form(const InvariantSpace& s)
{
  const auto cf = closed_form_couplings(s.invariant_case(), s.n());
  double r = 0;
  r = std::max(r, (s.coupling_matrix(0, 1) - quad_to_matrix(cf.t01)).cwiseAbs().maxCoeff());
  r = std::max(r, (s.coupling_matrix(0, 2) - quad_to_matrix(cf.t02)).cwiseAbs().maxCoeff());
  r = std::max(r, (s.coupling_matrix(1, 2) - quad_to_matrix(cf.t12)).cwiseAbs().maxCoeff());
  return r;
}

} // namespace

TEST_CASE("closed forms for the fundamental/antifundamental case")
{
  // n = 2 entries
  const auto cf2 = closed_form_couplings(InvariantCase::FundAntifund, 2);
  Eigen::Matrix2d t01, t12;
  const double s3 = std::sqrt(3.0);
  t01 << 0, -s3 / 2, -s3 / 2, -1;
  t12 << -1.5, 0, 0, 0.5;
  CHECK((quad_to_matrix(cf2.t01) - t01).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((quad_to_matrix(cf2.t12) - t12).cwiseAbs().maxCoeff() < 1e-15);

  const auto cf3 = closed_form_couplings(InvariantCase::FundAntifund, 3);
  Eigen::Matrix2d t12_3;
  t12_3 << -8.0 / 3.0, 0, 0, 1.0 / 3.0;
  CHECK((quad_to_matrix(cf3.t12) - t12_3).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("null-space construction matches closed forms (fund/antifund, n = 2..5)")
{
  for (int n = 2; n <= 5; ++n) {
    CAPTURE(n);
    const InvariantSpace s(InvariantCase::FundAntifund, n);
    CHECK(match_closed_form(s) < 1e-12);
  }
}

TEST_CASE("null-space construction matches closed forms (self-adjoint, n = 2, 4)")
{
  for (int n : {2, 4}) {
    CAPTURE(n);
    const InvariantSpace s(InvariantCase::SelfAdjointFund, n);
    CHECK(match_closed_form(s) < 1e-12);
    // off-diagonal carries sqrt(n+1)/2, forced by the channel Casimirs
    CHECK(s.coupling_matrix(0, 1)(0, 1) == doctest::Approx(-std::sqrt(n + 1.0) / 2).epsilon(1e-12));
  }
}

TEST_CASE("self-adjoint case at n = 2 coincides with the fund/antifund case")
{
  const InvariantSpace a(InvariantCase::FundAntifund, 2);
  const InvariantSpace b(InvariantCase::SelfAdjointFund, 2);
  for (int i = 0; i < 3; ++i) {
    const int legs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    CHECK((a.coupling_matrix(legs[i][0], legs[i][1]) - b.coupling_matrix(legs[i][0], legs[i][1]))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("sum rule T01 + T02 + T12 + (2 h/nu) I = 0 on the invariant basis")
{
  for (int n = 2; n <= 5; ++n) CHECK(InvariantSpace(InvariantCase::FundAntifund, n).tfn1_residual() < 1e-12);
  for (int n : {2, 4}) CHECK(InvariantSpace(InvariantCase::SelfAdjointFund, n).tfn1_residual() < 1e-12);
}

TEST_CASE("basis is orthonormal and v1 is the singlet product")
{
  const InvariantSpace s(InvariantCase::FundAntifund, 3);
  CHECK(std::abs(s.v1().norm() - 1) < 1e-12);
  CHECK(std::abs(s.v2().norm() - 1) < 1e-12);
  CHECK(std::abs(s.v1().dot(s.v2())) < 1e-12);
  // v1 entries: delta_{i1 i2} delta_{i0 i3} / n
  const auto& v = s.v1();
  const int n = 3;
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int i3 = 0; i3 < n; ++i3) {
          const auto val = v(((i0 * n + i1) * n + i2) * n + i3);
          const double expect = (i0 == i3 && i1 == i2) ? 1.0 / n : 0.0;
          CHECK(std::abs(val - expect) < 1e-12);
        }
}

TEST_CASE("sign convention: off-diagonal of T02 positive")
{
  for (int n = 2; n <= 5; ++n)
    CHECK(InvariantSpace(InvariantCase::FundAntifund, n).coupling_matrix(0, 2)(0, 1) > 0);
  for (int n : {2, 4})
    CHECK(InvariantSpace(InvariantCase::SelfAdjointFund, n).coupling_matrix(0, 2)(0, 1) > 0);
}

TEST_CASE("coupling matrices are symmetric in the leg pair")
{
  const InvariantSpace s(InvariantCase::FundAntifund, 3);
  CHECK((s.coupling_matrix(1, 0) - s.coupling_matrix(0, 1)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((s.coupling_matrix(2, 1) - s.coupling_matrix(1, 2)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(s.coupling_matrix(1, 1), std::invalid_argument);
}

TEST_CASE("eigenvalue spectra match the Casimir-difference predictions")
{
  for (int n = 2; n <= 5; ++n) {
    CAPTURE(n);
    const auto rep = eigen_spectrum_check(InvariantSpace(InvariantCase::FundAntifund, n));
    CHECK(rep.max_residual < 1e-12);
    // spot-check the predicted values
    for (const auto& p : rep.predictions) {
      if (p.leg_i == 0 && p.leg_j == 2) {
        CHECK(p.eigenvalues[0] == Rational(-(n + 1), n));
        CHECK(p.eigenvalues[1] == Rational(n - 1, n));
      }
      if (p.leg_i == 1 && p.leg_j == 2) {
        CHECK(p.eigenvalues[0] == Rational(1 - n * n, n));
        CHECK(p.eigenvalues[1] == Rational(1, n));
      }
    }
  }
  for (int n : {2, 4}) {
    CAPTURE(n);
    const auto rep = eigen_spectrum_check(InvariantSpace(InvariantCase::SelfAdjointFund, n));
    CHECK(rep.max_residual < 1e-12);
    for (const auto& p : rep.predictions) {
      if (p.leg_i == 0 && p.leg_j == 1) {
        CHECK(p.eigenvalues[0] == Rational(-(n + 1), 2));
        CHECK(p.eigenvalues[1] == Rational(1, 2));
      }
    }
  }
}

TEST_CASE("restriction of T03 is diagonal with the pair-channel eigenvalues")
{
  const int n = 3;
  const InvariantSpace s(InvariantCase::FundAntifund, n);
  const Eigen::Matrix2d t03 = s.coupling_matrix(0, 3);
  Eigen::Matrix2d expect;
  expect << (1.0 - n * n) / n, 0, 0, 1.0 / n;
  CHECK((t03 - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("su(2) operator identities on the full tensor space")
{
  // (T_0i)^2 = h_i/nu - T_0i and T_0i T_0j + T_0j T_0i = T_ij for a
  // fundamental boundary leg; h_i/nu = C_i/2 = 3/4
  const InvariantSpace s(InvariantCase::FundAntifund, 2);
  const auto& sys = s.system();
  const auto eye = Eigen::MatrixXcd::Identity(sys.dim(), sys.dim());
  for (int i : {1, 2, 3}) {
    const Eigen::MatrixXcd& t = sys.coupling(0, i);
    CHECK((t * t - (0.75 * eye - t)).cwiseAbs().maxCoeff() < 1e-12);
  }
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      const Eigen::MatrixXcd& ti = sys.coupling(0, i);
      const Eigen::MatrixXcd& tj = sys.coupling(0, j);
      CHECK((ti * tj + tj * ti - sys.coupling(i, j)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("invalid cases are rejected")
{
  CHECK_THROWS_AS(InvariantSpace(InvariantCase::SelfAdjointFund, 3), std::invalid_argument);
  CHECK_THROWS_AS(invariant_case_legs(InvariantCase::FundAntifund, 1), std::invalid_argument);
}
