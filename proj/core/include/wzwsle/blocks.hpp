#ifndef WZWSLE_BLOCKS_HPP
#define WZWSLE_BLOCKS_HPP

#include "wzwsle/invariant_space.hpp"
#include "wzwsle/quadratic_field.hpp"

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace wzwsle {

using Complex = std::complex<double>;

enum class BlockCase {
  Su2Level1,        // su(2), boundary and bulk fundamental
  SunFundLevel1,    // su(n), boundary fundamental, bulk (anti)fundamental
  SunSelfAdjLevel1, // su(n) even, boundary omega_{n/2}, bulk fundamental
};

InvariantCase block_invariant_case(BlockCase c);

/// Level-1 one-point data: exact prefactor exponents, the polynomial part of
/// the block, and the closed-form restricted couplings.
struct OnePointBlock {
  BlockCase block_case{};
  int n = 0;
  AlgebraContext ctx; // level 1
  Rational h_lambda;  // bulk weight
  Rational h_boundary;
  Rational nu;
  Rational alpha, beta; // prefactor x^alpha (1-x)^beta
  long radicand = 0;
  std::array<QuadPoly, 2> f0;
  ClosedFormCouplings t;
  Eigen::Matrix2d t01, t02, t12;
};

OnePointBlock make_one_point_block(BlockCase c, int n);

/// Continuously tracked branch of log x and log(1-x) along a path of
/// evaluation points.
struct XBranch {
  Complex x;
  Complex log_x;
  Complex log_1mx;

  /// Principal determination; the anchor must avoid the cuts (-inf, 0] and
  /// [1, inf).
  static XBranch principal(Complex x0);
  /// Moves to a nearby point, accumulating the phase continuously. Steps must
  /// keep the ratios x_new/x and (1-x_new)/(1-x) off the negative real axis.
  void move_to(Complex x_new);
};

Eigen::Vector2cd block_f0(const OnePointBlock& b, Complex x);
Complex block_prefactor(const OnePointBlock& b, const XBranch& br);
Eigen::Vector2cd block_eval(const OnePointBlock& b, const XBranch& br);

/// (1/nu) dF/dx - (T01/x + T12/(x-1)) F with the derivative taken
/// analytically on the closed form; identically zero.
Eigen::Vector2cd kz_residual(const OnePointBlock& b, const XBranch& br);
/// Residual of the equivalent first-order form
/// ((1/nu) x d/dx + 2 h_lambda/nu + T02 - T12/(x-1)) F.
Eigen::Vector2cd kz3c_residual(const OnePointBlock& b, const XBranch& br);

/// Exact one-point martingale matrix M(x) = A1 + x^2 A2 + x B12 restricted to
/// the invariant subspace, as polynomials over Q(sqrt(d)).
QuadPolyMat2 martingale_matrix_1pt(const OnePointBlock& b, const Rational& kappa,
                                   const Rational& tau);
Eigen::Matrix2cd martingale_matrix_eval(const QuadPolyMat2& m, Complex x);

/// Exact polynomial identity M(x) F0(x) = 0.
bool kernel_check_1pt(const OnePointBlock& b, const Rational& kappa, const Rational& tau);

/// H_i = h_i (1 - tau/(2 nu)), exposed for diagnostics.
Rational renormalized_weight(const Rational& h, const Rational& tau, const Rational& nu);

/// A_i = (4-kappa) T0i + kappa nu T0i^2 + (h_i/nu)(2 tau/nu - 4) on the full
/// tensor space. Leg 0 is the boundary field at the origin.
Eigen::MatrixXcd martingale_a(const TensorSystem& sys, int leg, const Rational& kappa,
                              const Rational& tau, const Rational& nu, const Rational& h_leg);
/// B_ij = (2 tau/nu - 4) T_ij + kappa nu (T0i T0j + T0j T0i).
Eigen::MatrixXcd martingale_b(const TensorSystem& sys, int i, int j, const Rational& kappa,
                              const Rational& tau, const Rational& nu);

/// M({w_i}) = sum_i A_i/w_i^2 + sum_{i<j} B_ij/(w_i w_j) over the moving legs
/// 1..2N; the last leg sits at infinity and does not contribute.
Eigen::MatrixXcd martingale_generator(const TensorSystem& sys,
                                      const std::vector<Complex>& positions,
                                      const Rational& kappa, const Rational& tau,
                                      const Rational& nu, const std::vector<Rational>& h_bulk);

/// Variant with the second boundary field at finite y: the sums include the
/// last leg at position y with weight h_boundary.
Eigen::MatrixXcd martingale_generator_rho(const TensorSystem& sys,
                                          const std::vector<Complex>& positions, double y,
                                          const Rational& kappa, const Rational& tau,
                                          const Rational& nu,
                                          const std::vector<Rational>& h_bulk,
                                          const Rational& h_boundary);

/// W^g-restricted generator at (w1, w2); equals eval(M(x))/w1^2 with
/// x = w1/w2.
Eigen::Matrix2cd martingale_generator_restricted(const OnePointBlock& b, Complex w1, Complex w2,
                                                 const Rational& kappa, const Rational& tau);

/// One-point correlator with the second boundary field at y > 0, obtained by
/// pulling the closed form back through the Moebius map fixing the origin and
/// sending infinity to y. Principal branches; evaluation points must keep the
/// logs off their cuts.
Eigen::Vector2cd rho_correlator(const OnePointBlock& b, Complex w1, Complex w2, double y);

/// Finite-difference application of the full martingale generator to the
/// closed-form correlator, in W^g coordinates. Central differences, step
/// relative to the position scale.
Eigen::Vector2cd theta_apply_fd(const OnePointBlock& b, Complex w1, Complex w2,
                                const Rational& kappa, const Rational& tau, double step = 1e-6);

/// Same for the finite-y variant (the sums gain the leg at y).
Eigen::Vector2cd theta_rho_apply_fd(const OnePointBlock& b, const InvariantSpace& space,
                                    Complex w1, Complex w2, double y, const Rational& kappa,
                                    const Rational& tau, const Rational& rho,
                                    double step = 1e-6);

/// W^g restriction of the finite-y generator matrix at (w1, w2, y).
Eigen::Matrix2cd martingale_generator_rho_restricted(const OnePointBlock& b,
                                                     const InvariantSpace& space, Complex w1,
                                                     Complex w2, double y, const Rational& kappa,
                                                     const Rational& tau);

} // namespace wzwsle

#endif
