#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wzwsle/blocks.hpp"

#include <random>

using namespace wzwsle;

namespace {

QuadPoly poly(std::vector<QuadExt> c) { return QuadPoly(std::move(c)); }

bool poly_mat_equal(const QuadPolyMat2& a, const QuadPolyMat2& b)
{
  for (int i = 0; i < 4; ++i)
    if (!(a.e[i] - b.e[i]).is_zero()) return false;
  return true;
}

std::vector<Complex> unit_circle_samples(int count, unsigned seed)
{
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> th(0.05, 2 * M_PI - 0.05);
  std::vector<double> angles(count);
  for (auto& a : angles) a = th(rng);
  std::sort(angles.begin(), angles.end());
  std::vector<Complex> xs;
  for (double a : angles) xs.push_back(std::polar(1.0, a));
  return xs;
}

/// Walks the tracked branch from the anchor in (0,1) to each sample in turn.
struct ArcWalker {
  XBranch br = XBranch::principal(0.5);
  void to(Complex target, int substeps = 64)
  {
    const Complex from = br.x;
    for (int s = 1; s <= substeps; ++s)
      br.move_to(from + (target - from) * (static_cast<double>(s) / substeps));
  }
};

} // namespace

TEST_CASE("prefactor exponents")
{
  const auto su2 = make_one_point_block(BlockCase::Su2Level1, 2);
  CHECK(su2.alpha == Rational(-1, 2));
  CHECK(su2.alpha == -2 * su2.h_lambda);
  const auto f5 = make_one_point_block(BlockCase::SunFundLevel1, 5);
  CHECK(f5.alpha == Rational(-4, 5));
  CHECK(f5.alpha == -2 * f5.h_lambda);
  CHECK(f5.beta == f5.alpha);
  const auto s4 = make_one_point_block(BlockCase::SunSelfAdjLevel1, 4);
  CHECK(s4.alpha == Rational(-1, 2));
  CHECK(s4.beta == -2 * s4.h_lambda);
  CHECK(s4.h_boundary == Rational(1, 2)); // n/8 at n = 4
}

TEST_CASE("block null vectors at specific points")
{
  const auto su2 = make_one_point_block(BlockCase::Su2Level1, 2);
  const Eigen::Vector2cd a = block_f0(su2, 1.0);
  CHECK(std::abs(a(0) - 2.0) < 1e-15);
  CHECK(std::abs(a(1)) < 1e-15);

  const auto f3 = make_one_point_block(BlockCase::SunFundLevel1, 3);
  const Eigen::Vector2cd b = block_f0(f3, 0.0);
  CHECK(std::abs(b(0) - 1.0) < 1e-15);
  CHECK(std::abs(b(1) - std::sqrt(8.0)) < 1e-14);

  const auto s4 = make_one_point_block(BlockCase::SunSelfAdjLevel1, 4);
  const Eigen::Vector2cd c = block_f0(s4, -1.0);
  CHECK(std::abs(c(0)) < 1e-15);
  CHECK(std::abs(c(1) - 2.0 * std::sqrt(5.0)) < 1e-14);
}

TEST_CASE("branch-tracked evaluation")
{
  const auto su2 = make_one_point_block(BlockCase::Su2Level1, 2);
  // real x in (0,1): principal branch, real output
  const XBranch real_branch = XBranch::principal(0.3);
  const Eigen::Vector2cd v = block_eval(su2, real_branch);
  CHECK(std::abs(v(0).imag()) < 1e-14);
  CHECK(std::abs(v(1).imag()) < 1e-14);

  // modulus of the prefactor is branch independent
  ArcWalker walk;
  walk.to(std::polar(1.0, 2.9)); // near -1, approached from the upper side
  const Complex p = block_prefactor(su2, walk.br);
  const Complex x = walk.br.x;
  CHECK(std::abs(std::abs(p) - std::pow(std::abs(x * (1.0 - x)), -0.5)) < 1e-12);
  // upper-side continuation carries arg(log x) = +pi at x = -1
  CHECK(walk.br.log_x.imag() > 0);
}

TEST_CASE("branch continuation value at x = -1 from the upper side")
{
  const auto su2 = make_one_point_block(BlockCase::Su2Level1, 2);
  ArcWalker walk;
  walk.to(Complex(-1.0, 0.0), 256);
  // prefactor = exp(-(i pi + log 2)/2) = -i/sqrt(2)
  const Complex expect = Complex(0, -1) / std::sqrt(2.0);
  CHECK(std::abs(block_prefactor(su2, walk.br) - expect) < 1e-10);
}

TEST_CASE("KZ residual vanishes for all three closed forms")
{
  const auto su2 = make_one_point_block(BlockCase::Su2Level1, 2);
  CHECK(kz_residual(su2, XBranch::principal(0.5)).cwiseAbs().maxCoeff() < 1e-12);

  for (int n : {3, 4, 5}) {
    const auto blk = make_one_point_block(BlockCase::SunFundLevel1, n);
    ArcWalker walk;
    double worst = 0, worst3c = 0;
    for (const Complex x : unit_circle_samples(100, 11)) {
      walk.to(x);
      worst = std::max(worst, kz_residual(blk, walk.br).cwiseAbs().maxCoeff());
      worst3c = std::max(worst3c, kz3c_residual(blk, walk.br).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-10);
    CHECK(worst3c < 1e-10);
  }
  for (int n : {2, 4, 6}) {
    const auto blk = make_one_point_block(BlockCase::SunSelfAdjLevel1, n);
    ArcWalker walk;
    double worst = 0;
    for (const Complex x : unit_circle_samples(50, 13)) {
      walk.to(x);
      worst = std::max(worst, kz_residual(blk, walk.br).cwiseAbs().maxCoeff());
      worst = std::max(worst, kz3c_residual(blk, walk.br).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("one-point martingale matrix: su(2) level 1")
{
  const auto su2 = make_one_point_block(BlockCase::Su2Level1, 2);
  // tau fixed by kappa + 2 tau = 4
  CHECK(martingale_matrix_1pt(su2, 3, Rational(1, 2)).is_zero());

  for (const Rational kappa : {Rational(2), Rational(7, 2), Rational(1, 2)}) {
    const Rational tau = (4 - kappa) / 2;
    const QuadPolyMat2 m = martingale_matrix_1pt(su2, kappa, tau);
    const QuadExt f(3 - kappa);
    const QuadExt two_over_sqrt3(0, Rational(2, 3), 3);
    QuadPolyMat2 expect;
    expect(0, 0) = f * QuadExt(2) * poly({QuadExt(1), QuadExt(-2), QuadExt(1)});
    expect(0, 1) = f * two_over_sqrt3 * poly({QuadExt(-1), QuadExt(0), QuadExt(1)});
    expect(1, 0) = expect(0, 1);
    expect(1, 1) = f * QuadExt(Rational(2, 3)) * poly({QuadExt(1), QuadExt(2), QuadExt(1)});
    CHECK(poly_mat_equal(m, expect));
  }
}

TEST_CASE("one-point martingale matrix: su(n) fundamental")
{
  for (int n : {3, 4, 5}) {
    const auto blk = make_one_point_block(BlockCase::SunFundLevel1, n);
    const QuadPolyMat2 m = martingale_matrix_1pt(blk, 2, Rational(2, n));
    const QuadExt c(Rational(2 * (n * n + n - 2), static_cast<long long>(n) * n));
    const QuadExt inv_s(0, Rational(1, n * n - 1), n * n - 1); // 1/sqrt(n^2-1)
    QuadPolyMat2 expect;
    expect(0, 0) = c * poly({QuadExt(1), QuadExt(-2), QuadExt(1)});
    expect(0, 1) = c * inv_s * poly({QuadExt(-1), QuadExt(2 - n), QuadExt(n - 1)});
    expect(1, 0) = expect(0, 1);
    expect(1, 1) = c * QuadExt(Rational(1, n * n - 1)) *
                   poly({QuadExt(1), QuadExt(2 * (n - 1)), QuadExt((n - 1) * (n - 1))});
    CHECK(poly_mat_equal(m, expect));
  }
}

TEST_CASE("one-point martingale matrix: self-adjoint boundary weight")
{
  for (int n : {4, 6}) {
    const auto blk = make_one_point_block(BlockCase::SunSelfAdjLevel1, n);
    const QuadPolyMat2 m =
        martingale_matrix_1pt(blk, Rational(8, n + 2), Rational(4, n + 2));
    const QuadExt c(Rational(2 * n * n, n + 2));
    const QuadExt inv_s(0, Rational(1, n + 1), n + 1); // 1/sqrt(n+1)
    QuadPolyMat2 expect;
    expect(0, 0) = c * poly({QuadExt(1), QuadExt(-2), QuadExt(1)});
    expect(0, 1) = c * inv_s * poly({QuadExt(-1), QuadExt(0), QuadExt(1)});
    expect(1, 0) = expect(0, 1);
    expect(1, 1) = c * QuadExt(Rational(1, n + 1)) * poly({QuadExt(1), QuadExt(2), QuadExt(1)});
    CHECK(poly_mat_equal(m, expect));
  }
}

TEST_CASE("exact kernel identities")
{
  const auto su2 = make_one_point_block(BlockCase::Su2Level1, 2);
  for (const Rational kappa : {Rational(1, 2), Rational(2), Rational(3), Rational(7, 2)})
    CHECK(kernel_check_1pt(su2, kappa, (4 - kappa) / 2));
  // breaking the kappa + tau h = 4 relation breaks the kernel
  CHECK(!kernel_check_1pt(su2, 2, Rational(6, 5)));

  for (int n : {3, 4, 5, 6}) {
    const auto blk = make_one_point_block(BlockCase::SunFundLevel1, n);
    CHECK(kernel_check_1pt(blk, 2, Rational(2, n)));
    CHECK(!kernel_check_1pt(blk, Rational(5, 2), Rational(2, n)));
    CHECK(!kernel_check_1pt(blk, 2 + Rational(1, 7), Rational(2, n) - Rational(1, 7) * Rational(1, n)));
  }
  for (int n : {2, 4, 6}) {
    const auto blk = make_one_point_block(BlockCase::SunSelfAdjLevel1, n);
    CHECK(kernel_check_1pt(blk, Rational(8, n + 2), Rational(4, n + 2)));
    if (n > 2) CHECK(!kernel_check_1pt(blk, Rational(8, n + 2) + Rational(1, 9), Rational(4, n + 2)));
  }
}

TEST_CASE("kernel violation is visible numerically")
{
  const auto blk = make_one_point_block(BlockCase::SunFundLevel1, 5);
  const QuadPolyMat2 m = martingale_matrix_1pt(blk, Rational(5, 2), Rational(2, 5));
  const Eigen::Vector2cd r = martingale_matrix_eval(m, 0.5) * block_f0(blk, 0.5);
  CHECK(r.cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("rank of the one-point matrix is one at generic x")
{
  struct Case {
    BlockCase c;
    int n;
    Rational kappa, tau;
  };
  const std::vector<Case> cases = {
      {BlockCase::Su2Level1, 2, 2, 1},
      {BlockCase::SunFundLevel1, 3, 2, Rational(2, 3)},
      {BlockCase::SunSelfAdjLevel1, 4, Rational(4, 3), Rational(2, 3)},
  };
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> re(-2, 2);
  for (const auto& cs : cases) {
    const auto blk = make_one_point_block(cs.c, cs.n);
    const QuadPolyMat2 m = martingale_matrix_1pt(blk, cs.kappa, cs.tau);
    for (int trial = 0; trial < 20; ++trial) {
      const Complex x(re(rng), re(rng));
      const Eigen::Matrix2cd mx = martingale_matrix_eval(m, x);
      Eigen::JacobiSVD<Eigen::Matrix2cd> svd(mx);
      CHECK(svd.singularValues()(0) > 1e-6);
      CHECK(svd.singularValues()(1) < 1e-12 * svd.singularValues()(0));
    }
  }
  // su(2) at kappa = 3: the matrix vanishes identically instead
  const auto su2 = make_one_point_block(BlockCase::Su2Level1, 2);
  CHECK(martingale_matrix_eval(martingale_matrix_1pt(su2, 3, Rational(1, 2)), 0.7)
            .cwiseAbs()
            .maxCoeff() < 1e-15);
}

TEST_CASE("su(2) coefficient matrices vanish at the distinguished parameters")
{
  // all legs fundamental; A_i and B_ij are zero as full matrices for any k
  for (int legs : {4, 6}) {
    std::vector<GeneratorSet> g;
    for (int i = 0; i < legs; ++i) g.push_back(build_generators(2, fundamental_weight(2)));
    const TensorSystem sys(std::move(g));
    for (int k = 2; k <= 6; ++k) {
      const AlgebraContext ctx = make_context(2, k);
      const Rational kappa = Rational(4 * (k + 2), k + 3);
      const Rational tau = Rational(2, k + 3);
      const Rational h = conformal_weight(ctx, fundamental_weight(2));
      for (int leg = 1; leg < legs - 1; ++leg)
        CHECK(martingale_a(sys, leg, kappa, tau, ctx.nu, h).cwiseAbs().maxCoeff() < 1e-12);
      for (int i = 1; i < legs - 1; ++i)
        for (int j = i + 1; j < legs - 1; ++j)
          CHECK(martingale_b(sys, i, j, kappa, tau, ctx.nu).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("one-point reduction of the full generator")
{
  const InvariantSpace space(InvariantCase::FundAntifund, 3);
  const auto blk = make_one_point_block(BlockCase::SunFundLevel1, 3);
  const Rational kappa = 2, tau = Rational(2, 3);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 10; ++trial) {
    const Complex w1(u(rng), u(rng) + 2.0), w2(u(rng), u(rng) - 2.0);
    const Eigen::MatrixXcd full = martingale_generator(space.system(), {w1, w2}, kappa, tau,
                                                       blk.nu, {blk.h_lambda, blk.h_lambda});
    const Eigen::Matrix2cd restricted = space.restrict(full);
    const Eigen::Matrix2cd direct = martingale_generator_restricted(blk, w1, w2, kappa, tau);
    CHECK((restricted - direct).cwiseAbs().maxCoeff() < 1e-10);
  }
  // the full matrix itself does not vanish
  const Eigen::MatrixXcd full = martingale_generator(
      space.system(), {Complex(0, 1), Complex(0, -1)}, kappa, tau, blk.nu,
      {blk.h_lambda, blk.h_lambda});
  CHECK(full.cwiseAbs().maxCoeff() > 0.1);
  // but it annihilates the block: M(x) F0(x) = 0 on the invariant basis
  const Eigen::Matrix2cd r = martingale_generator_restricted(blk, Complex(0, 1), Complex(0, -1),
                                                             kappa, tau);
  CHECK((r * block_f0(blk, -1.0)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("generator with the boundary target at finite y")
{
  // su(2) fundamental with the distinguished parameters: identically zero
  std::vector<GeneratorSet> g;
  for (int i = 0; i < 4; ++i) g.push_back(build_generators(2, fundamental_weight(2)));
  const TensorSystem sys(std::move(g));
  for (int k = 2; k <= 6; ++k) {
    const AlgebraContext ctx = make_context(2, k);
    const Rational kappa = Rational(4 * (k + 2), k + 3);
    const Rational tau = Rational(2, k + 3);
    const Rational h = conformal_weight(ctx, fundamental_weight(2));
    const Eigen::MatrixXcd m = martingale_generator_rho(sys, {Complex(0, 1), Complex(0, -1)},
                                                        1.0, kappa, tau, ctx.nu, {h, h}, h);
    CHECK(m.cwiseAbs().maxCoeff() < 1e-12);
  }

  // su(3) fundamental: nonzero
  const InvariantSpace space(InvariantCase::FundAntifund, 3);
  const auto blk = make_one_point_block(BlockCase::SunFundLevel1, 3);
  const Eigen::MatrixXcd m =
      martingale_generator_rho(space.system(), {Complex(0, 1), Complex(0, -1)}, 1.0, 2,
                               Rational(2, 3), blk.nu, {blk.h_lambda, blk.h_lambda},
                               blk.h_boundary);
  CHECK(m.cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("invariance sum rules on the restricted basis")
{
  for (int n : {2, 3}) {
    const InvariantSpace space(InvariantCase::FundAntifund, n);
    const double c_lam = to_double(casimir_value(fundamental_weight(n)));
    // (T_0i + T_i3 + sum_j T_ij)^g = 0 with T_ii = C_i
    for (int i : {1, 2}) {
      Eigen::Matrix2d sum = space.coupling_matrix(0, i) + space.coupling_matrix(i, 3) +
                            c_lam * Eigen::Matrix2d::Identity();
      for (int j : {1, 2})
        if (j != i) sum += space.coupling_matrix(i, j);
      CHECK(sum.cwiseAbs().maxCoeff() < 1e-12);
    }
    // sum_{i<j} T_ij + (1/nu) sum h_i - (2/nu) h_Lambda - T_03 = 0
    const AlgebraContext ctx = make_context(n, 1);
    const double h_over_nu = to_double(conformal_weight(ctx, fundamental_weight(n)) / ctx.nu);
    const Eigen::Matrix2d sum2 = space.coupling_matrix(1, 2) +
                                 2 * h_over_nu * Eigen::Matrix2d::Identity() -
                                 2 * h_over_nu * Eigen::Matrix2d::Identity() -
                                 space.coupling_matrix(0, 3);
    CHECK(sum2.cwiseAbs().maxCoeff() < 1e-12);
  }
  // self-adjoint case: distinct boundary weight
  const InvariantSpace space(InvariantCase::SelfAdjointFund, 4);
  const AlgebraContext ctx = make_context(4, 1);
  const double hl = to_double(conformal_weight(ctx, fundamental_weight(4)) / ctx.nu);
  const double hb = to_double(conformal_weight(ctx, omega_weight(4, 2)) / ctx.nu);
  const Eigen::Matrix2d sum2 = space.coupling_matrix(1, 2) +
                               2 * hl * Eigen::Matrix2d::Identity() -
                               2 * hb * Eigen::Matrix2d::Identity() -
                               space.coupling_matrix(0, 3);
  CHECK(sum2.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("finite-difference generator agrees with the algebraic reduction")
{
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(0.4, 0.75);
  for (const auto [bc, n] : {std::pair{BlockCase::Su2Level1, 2},
                             std::pair{BlockCase::SunFundLevel1, 3}}) {
    const auto blk = make_one_point_block(bc, n);
    for (int trial = 0; trial < 10; ++trial) {
      const Complex x(u(rng), 0.3 * u(rng));
      const Complex w2(1.1 - 0.4 * u(rng), -0.3 * u(rng));
      const Complex w1 = x * w2;
      // generic parameters: both sides are nonzero and must agree
      const Rational kappa(5, 3), tau(1, 2);
      const Eigen::Vector2cd theta = theta_apply_fd(blk, w1, w2, kappa, tau, 3e-5);
      const XBranch br = XBranch::principal(x);
      const Eigen::Vector2cd v =
          std::exp(-2.0 * to_double(blk.h_lambda) * std::log(w2)) * block_eval(blk, br);
      const Eigen::Vector2cd alg = 0.5 * to_double(blk.nu) *
                                   (martingale_generator_restricted(blk, w1, w2, kappa, tau) * v);
      CHECK((theta - alg).cwiseAbs().maxCoeff() < 1e-5 * std::max(1.0, alg.cwiseAbs().maxCoeff()));
      CHECK(alg.cwiseAbs().maxCoeff() > 1e-3);
    }
    // at the distinguished parameters the generator annihilates the block
    const Rational kappa = (bc == BlockCase::Su2Level1) ? Rational(2) : Rational(2);
    const Rational tau = (bc == BlockCase::Su2Level1) ? Rational(1) : Rational(2, n);
    const Eigen::Vector2cd theta =
        theta_apply_fd(blk, Complex(0.4, 0.2), Complex(0.9, -0.3), kappa, tau, 3e-5);
    CHECK(theta.cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("vanishing of A_i on the invariant basis would force a different spectrum")
{
  // With kappa = 2, tau = 2/n the scalar equation A(t) = 0 has the exact
  // roots (1-n^2)/n and -(n+1)/n, so A_i^g = 0 would force T_0i^g to carry
  // that spectrum. The actual legs have {(1-n^2)/n, 1/n} and
  // {(n-1)/n, -(n+1)/n}, hence A_i^g != 0 and the generator cannot vanish.
  for (int n : {3, 4}) {
    const auto blk = make_one_point_block(BlockCase::SunFundLevel1, n);
    const Rational kappa = 2, tau(2, n);
    const Rational kn = kappa * blk.nu;
    const Rational lin = (4 - kappa) / kn;
    const Rational con = blk.h_lambda / blk.nu * (2 * tau / blk.nu - 4) / kn;
    const Rational r1(1 - n * n, n), r2(-(n + 1), n);
    CHECK(lin == -(r1 + r2));
    CHECK(con == r1 * r2);

    // matrix form: A^g = kappa nu (T01 - r1)(T01 - r2), nonzero because the
    // actual spectrum is {(1-n^2)/n, 1/n}
    const InvariantSpace space(InvariantCase::FundAntifund, n);
    const Eigen::Matrix2d t01 = space.coupling_matrix(0, 1);
    const Eigen::Matrix2d expect =
        to_double(kn) * (t01 - to_double(r1) * Eigen::Matrix2d::Identity()) *
        (t01 - to_double(r2) * Eigen::Matrix2d::Identity());
    const Eigen::MatrixXcd a_full =
        martingale_a(space.system(), 1, kappa, tau, blk.nu, blk.h_lambda);
    const Eigen::Matrix2cd a_restricted = space.restrict(a_full);
    CHECK((a_restricted - expect.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(a_restricted.cwiseAbs().maxCoeff() > 0.1);
  }
}

TEST_CASE("renormalized weights")
{
  CHECK(renormalized_weight(Rational(1, 4), Rational(1, 2), Rational(1, 3)) ==
        Rational(1, 4) * (1 - Rational(3, 4)));
  CHECK(renormalized_weight(Rational(3, 8), 0, Rational(1, 5)) == Rational(3, 8));
}

TEST_CASE("correlator with the boundary target satisfies the three-position KZ system")
{
  const auto blk = make_one_point_block(BlockCase::Su2Level1, 2);
  const InvariantSpace space(InvariantCase::FundAntifund, 2);
  const Complex w1(0.3, 0.5), w2(0.4, -0.6);
  const double y = 2.0;
  const double d = 1e-5;
  const double nu = to_double(blk.nu);

  const Eigen::Vector2cd u0 = rho_correlator(blk, w1, w2, y);
  const Eigen::Vector2cd du1 =
      (rho_correlator(blk, w1 + d, w2, y) - rho_correlator(blk, w1 - d, w2, y)) / (2 * d);
  const Eigen::Matrix2cd rhs_op =
      space.coupling_matrix(0, 1).cast<Complex>() / w1 +
      space.coupling_matrix(1, 2).cast<Complex>() / (w1 - w2) +
      space.coupling_matrix(1, 3).cast<Complex>() / (w1 - y);
  const Eigen::Vector2cd rhs = nu * (rhs_op * u0);
  CHECK((du1 - rhs).cwiseAbs().maxCoeff() < 1e-7 * u0.cwiseAbs().maxCoeff());
}

TEST_CASE("kernel membership of the finite-y correlator (su(2) level 1)")
{
  const auto blk = make_one_point_block(BlockCase::Su2Level1, 2);
  const InvariantSpace space(InvariantCase::FundAntifund, 2);
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0.2, 0.6);
  for (const Rational kappa : {Rational(2), Rational(3)}) {
    const Rational tau = (4 - kappa) / 2;
    for (int trial = 0; trial < 6; ++trial) {
      const Complex w1(u(rng), u(rng));
      const Complex w2(u(rng) + 0.2, -u(rng));
      const double y = 1.5 + u(rng);
      const Eigen::Vector2cd uvec = rho_correlator(blk, w1, w2, y);
      const Eigen::Matrix2cd m =
          martingale_generator_rho_restricted(blk, space, w1, w2, y, kappa, tau);
      CHECK((m * uvec).cwiseAbs().maxCoeff() < 1e-9 * uvec.cwiseAbs().maxCoeff());
    }
  }
  // a generic kappa with the linear relation broken leaves the kernel
  const Eigen::Vector2cd uvec = rho_correlator(blk, Complex(0.3, 0.4), Complex(0.5, -0.4), 2.0);
  const Eigen::Matrix2cd m = martingale_generator_rho_restricted(blk, space, Complex(0.3, 0.4),
                                                                 Complex(0.5, -0.4), 2.0, 2,
                                                                 Rational(3, 2));
  CHECK((m * uvec).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("finite-y generator annihilates the correlator (finite differences)")
{
  const auto blk = make_one_point_block(BlockCase::Su2Level1, 2);
  const InvariantSpace space(InvariantCase::FundAntifund, 2);
  const Rational kappa = 2, tau = 1, rho = -4;
  const Eigen::Vector2cd theta = theta_rho_apply_fd(blk, space, Complex(0.35, 0.45),
                                                    Complex(0.55, -0.4), 2.2, kappa, tau, rho,
                                                    1e-4);
  const Eigen::Vector2cd u0 = rho_correlator(blk, Complex(0.35, 0.45), Complex(0.55, -0.4), 2.2);
  CHECK(theta.cwiseAbs().maxCoeff() < 2e-5 * u0.cwiseAbs().maxCoeff());
}
