#include "wzwsle/blocks.hpp"

#include <stdexcept>

namespace wzwsle {

namespace {

QuadMat2 to_quad_identity(const Rational& s)
{
  QuadMat2 m;
  m(0, 0) = QuadExt(s);
  m(1, 1) = QuadExt(s);
  return m;
}

QuadMat2 martingale_a_restricted(const QuadMat2& t0i, const Rational& kappa, const Rational& tau,
                                 const Rational& nu, const Rational& h)
{
  return QuadExt(4 - kappa) * t0i + QuadExt(kappa * nu) * (t0i * t0i) +
         to_quad_identity(h / nu * (2 * tau / nu - 4));
}

Eigen::Matrix2d quad_to_matrix(const QuadMat2& m)
{
  Eigen::Matrix2d out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out(r, c) = m(r, c).value();
  return out;
}

Complex clog(Complex z) { return std::log(z); }

} // namespace

InvariantCase block_invariant_case(BlockCase c)
{
  return c == BlockCase::SunSelfAdjLevel1 ? InvariantCase::SelfAdjointFund
                                          : InvariantCase::FundAntifund;
}

OnePointBlock make_one_point_block(BlockCase c, int n)
{
  OnePointBlock b;
  b.block_case = c;
  b.n = n;
  if (c == BlockCase::Su2Level1 && n != 2)
    throw std::invalid_argument("make_one_point_block: the su(2) case has n = 2");
  if (c == BlockCase::SunSelfAdjLevel1 && n % 2 != 0)
    throw std::invalid_argument("make_one_point_block: self-adjoint case needs even n");
  b.ctx = make_context(n, 1);
  const auto legs = invariant_case_legs(block_invariant_case(c), n);
  b.h_lambda = conformal_weight(b.ctx, legs[1]);
  b.h_boundary = conformal_weight(b.ctx, legs[0]);
  b.nu = b.ctx.nu;
  b.t = closed_form_couplings(block_invariant_case(c), n);
  b.radicand = b.t.radicand;
  b.t01 = quad_to_matrix(b.t.t01);
  b.t02 = quad_to_matrix(b.t.t02);
  b.t12 = quad_to_matrix(b.t.t12);

  const QuadExt s = QuadExt::sqrt_of(b.radicand);
  switch (c) {
    case BlockCase::Su2Level1:
      b.alpha = Rational(-1, 2);
      b.beta = Rational(-1, 2);
      b.f0 = {QuadPoly::linear(QuadExt(1), QuadExt(1)), QuadPoly::linear(s, -s)};
      break;
    case BlockCase::SunFundLevel1:
      b.alpha = Rational(1 - n, n);
      b.beta = Rational(1 - n, n);
      b.f0 = {QuadPoly::linear(QuadExt(1), QuadExt(n - 1)), QuadPoly::linear(s, -s)};
      break;
    case BlockCase::SunSelfAdjLevel1:
      b.alpha = Rational(-1, 2);
      b.beta = Rational(1 - n, n);
      b.f0 = {QuadPoly::linear(QuadExt(1), QuadExt(1)), QuadPoly::linear(s, -s)};
      break;
  }
  return b;
}

XBranch XBranch::principal(Complex x0)
{
  XBranch br;
  br.x = x0;
  br.log_x = clog(x0);
  br.log_1mx = clog(1.0 - x0);
  return br;
}

void XBranch::move_to(Complex x_new)
{
  log_x += clog(x_new / x);
  log_1mx += clog((1.0 - x_new) / (1.0 - x));
  x = x_new;
}

Eigen::Vector2cd block_f0(const OnePointBlock& b, Complex x)
{
  return {b.f0[0].eval(x), b.f0[1].eval(x)};
}

Complex block_prefactor(const OnePointBlock& b, const XBranch& br)
{
  return std::exp(to_double(b.alpha) * br.log_x + to_double(b.beta) * br.log_1mx);
}

Eigen::Vector2cd block_eval(const OnePointBlock& b, const XBranch& br)
{
  return block_prefactor(b, br) * block_f0(b, br.x);
}

Eigen::Vector2cd kz_residual(const OnePointBlock& b, const XBranch& br)
{
  const Complex x = br.x;
  const Complex dlog = to_double(b.alpha) / x - to_double(b.beta) / (1.0 - x);
  const Eigen::Vector2cd f0 = block_f0(b, x);
  const Eigen::Vector2cd df0{b.f0[0].coeff(1).value(), b.f0[1].coeff(1).value()};
  const double inv_nu = 1.0 / to_double(b.nu);
  const Eigen::Vector2cd lhs = inv_nu * (dlog * f0 + df0);
  const Eigen::Vector2cd rhs =
      (b.t01.cast<Complex>() / x + b.t12.cast<Complex>() / (x - 1.0)) * f0;
  return block_prefactor(b, br) * (lhs - rhs);
}

Eigen::Vector2cd kz3c_residual(const OnePointBlock& b, const XBranch& br)
{
  const Complex x = br.x;
  const Complex dlog = to_double(b.alpha) / x - to_double(b.beta) / (1.0 - x);
  const Eigen::Vector2cd f0 = block_f0(b, x);
  const Eigen::Vector2cd df0{b.f0[0].coeff(1).value(), b.f0[1].coeff(1).value()};
  const double inv_nu = 1.0 / to_double(b.nu);
  Eigen::Vector2cd r = inv_nu * x * (dlog * f0 + df0);
  r += 2.0 * to_double(b.h_lambda) * inv_nu * f0;
  r += b.t02.cast<Complex>() * f0;
  r -= b.t12.cast<Complex>() * f0 / (x - 1.0);
  return block_prefactor(b, br) * r;
}

QuadPolyMat2 martingale_matrix_1pt(const OnePointBlock& b, const Rational& kappa,
                                   const Rational& tau)
{
  const QuadMat2 a1 = martingale_a_restricted(b.t.t01, kappa, tau, b.nu, b.h_lambda);
  const QuadMat2 a2 = martingale_a_restricted(b.t.t02, kappa, tau, b.nu, b.h_lambda);
  const QuadMat2 b12 = QuadExt(2 * tau / b.nu - 4) * b.t.t12 +
                       QuadExt(kappa * b.nu) * (b.t.t01 * b.t.t02 + b.t.t02 * b.t.t01);
  QuadPolyMat2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = QuadPoly({a1(r, c), b12(r, c), a2(r, c)});
  return m;
}

Eigen::Matrix2cd martingale_matrix_eval(const QuadPolyMat2& m, Complex x)
{
  Eigen::Matrix2cd out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out(r, c) = m(r, c).eval(x);
  return out;
}

bool kernel_check_1pt(const OnePointBlock& b, const Rational& kappa, const Rational& tau)
{
  const QuadPolyMat2 m = martingale_matrix_1pt(b, kappa, tau);
  const auto prod = m.apply(b.f0);
  return prod[0].is_zero() && prod[1].is_zero();
}

Rational renormalized_weight(const Rational& h, const Rational& tau, const Rational& nu)
{
  return h * (1 - tau / (2 * nu));
}

Eigen::MatrixXcd martingale_a(const TensorSystem& sys, int leg, const Rational& kappa,
                              const Rational& tau, const Rational& nu, const Rational& h_leg)
{
  const Eigen::MatrixXcd& t0i = sys.coupling(0, leg);
  Eigen::MatrixXcd a = to_double(4 - kappa) * t0i + to_double(kappa * nu) * (t0i * t0i);
  a.diagonal().array() += to_double(h_leg / nu * (2 * tau / nu - 4));
  return a;
}

Eigen::MatrixXcd martingale_b(const TensorSystem& sys, int i, int j, const Rational& kappa,
                              const Rational& tau, const Rational& nu)
{
  const Eigen::MatrixXcd& t0i = sys.coupling(0, i);
  const Eigen::MatrixXcd& t0j = sys.coupling(0, j);
  return to_double(2 * tau / nu - 4) * sys.coupling(i, j) +
         to_double(kappa * nu) * (t0i * t0j + t0j * t0i);
}

namespace {

Eigen::MatrixXcd assemble_generator(const TensorSystem& sys, const std::vector<Complex>& w,
                                    const std::vector<Rational>& h, int moving_legs,
                                    const Rational& kappa, const Rational& tau,
                                    const Rational& nu)
{
  for (const Complex& wi : w)
    if (wi == 0.0) throw std::invalid_argument("martingale generator: zero position");
  for (int i = 0; i < moving_legs; ++i)
    for (int j = i + 1; j < moving_legs; ++j)
      if (w[i] == w[j]) throw std::invalid_argument("martingale generator: coincident positions");

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(sys.dim(), sys.dim());
  for (int i = 0; i < moving_legs; ++i)
    m += martingale_a(sys, i + 1, kappa, tau, nu, h[i]) / (w[i] * w[i]);
  for (int i = 0; i < moving_legs; ++i)
    for (int j = i + 1; j < moving_legs; ++j)
      m += martingale_b(sys, i + 1, j + 1, kappa, tau, nu) / (w[i] * w[j]);
  return m;
}

} // namespace

Eigen::MatrixXcd martingale_generator(const TensorSystem& sys,
                                      const std::vector<Complex>& positions,
                                      const Rational& kappa, const Rational& tau,
                                      const Rational& nu, const std::vector<Rational>& h_bulk)
{
  const int moving = sys.leg_count() - 2;
  if (static_cast<int>(positions.size()) != moving || h_bulk.size() != positions.size())
    throw std::invalid_argument("martingale_generator: need one position/weight per bulk leg");
  return assemble_generator(sys, positions, h_bulk, moving, kappa, tau, nu);
}

Eigen::MatrixXcd martingale_generator_rho(const TensorSystem& sys,
                                          const std::vector<Complex>& positions, double y,
                                          const Rational& kappa, const Rational& tau,
                                          const Rational& nu,
                                          const std::vector<Rational>& h_bulk,
                                          const Rational& h_boundary)
{
  const int bulk = sys.leg_count() - 2;
  if (static_cast<int>(positions.size()) != bulk || h_bulk.size() != positions.size())
    throw std::invalid_argument("martingale_generator_rho: need one position/weight per bulk leg");
  if (y == 0.0) throw std::invalid_argument("martingale_generator_rho: y must be nonzero");
  std::vector<Complex> w = positions;
  w.push_back(y);
  std::vector<Rational> h = h_bulk;
  h.push_back(h_boundary);
  return assemble_generator(sys, w, h, bulk + 1, kappa, tau, nu);
}

Eigen::Matrix2cd martingale_generator_restricted(const OnePointBlock& b, Complex w1, Complex w2,
                                                 const Rational& kappa, const Rational& tau)
{
  const QuadPolyMat2 m = martingale_matrix_1pt(b, kappa, tau);
  return martingale_matrix_eval(m, w1 / w2) / (w1 * w1);
}

Eigen::Vector2cd rho_correlator(const OnePointBlock& b, Complex w1, Complex w2, double y)
{
  const double h = to_double(b.h_lambda);
  const double hb = to_double(b.h_boundary);
  const Complex ly = std::log(Complex(y));
  const Complex lyw1 = clog(y - w1), lyw2 = clog(y - w2);
  const Complex wh1 = w1 * y / (y - w1), wh2 = w2 * y / (y - w2);
  const XBranch br = XBranch::principal(wh1 / wh2);
  const Complex scale =
      std::exp(2.0 * h * (ly - lyw1) + 2.0 * h * (ly - lyw2) - 2.0 * hb * ly - 2.0 * h * clog(wh2));
  return scale * block_eval(b, br);
}

namespace {

Eigen::Vector2cd closed_correlator(const OnePointBlock& b, Complex w1, Complex w2)
{
  const double h = to_double(b.h_lambda);
  const XBranch br = XBranch::principal(w1 / w2);
  return std::exp(-2.0 * h * clog(w2)) * block_eval(b, br);
}

} // namespace

Eigen::Vector2cd theta_apply_fd(const OnePointBlock& b, Complex w1, Complex w2,
                                const Rational& kappa, const Rational& tau, double step)
{
  const auto f = [&](Complex a, Complex c) { return closed_correlator(b, a, c); };
  const double d = step;
  const Eigen::Vector2cd v = f(w1, w2);
  const Eigen::Vector2cd d1 = (f(w1 + d, w2) - f(w1 - d, w2)) / (2 * d);
  const Eigen::Vector2cd d2 = (f(w1, w2 + d) - f(w1, w2 - d)) / (2 * d);
  const Eigen::Vector2cd d11 = (f(w1 + d, w2) - 2 * v + f(w1 - d, w2)) / (d * d);
  const Eigen::Vector2cd d22 = (f(w1, w2 + d) - 2 * v + f(w1, w2 - d)) / (d * d);
  const Eigen::Vector2cd d12 =
      (f(w1 + d, w2 + d) - f(w1 + d, w2 - d) - f(w1 - d, w2 + d) + f(w1 - d, w2 - d)) /
      (4 * d * d);

  const double h = to_double(b.h_lambda);
  const double kap = to_double(kappa), ta = to_double(tau);
  const double c_lam = to_double(2 * b.h_lambda / b.nu);

  Eigen::Vector2cd out = 2.0 / w1 * d1 + 2.0 / w2 * d2;
  out -= 2.0 * h * (1.0 / (w1 * w1) + 1.0 / (w2 * w2)) * v;
  out += 0.5 * kap * (d11 + d22 + 2.0 * d12);
  out += 0.5 * ta *
         (c_lam * (1.0 / (w1 * w1) + 1.0 / (w2 * w2)) * v +
          2.0 / (w1 * w2) * (b.t12.cast<Complex>() * v));
  return out;
}

Eigen::Matrix2cd martingale_generator_rho_restricted(const OnePointBlock& b,
                                                     const InvariantSpace& space, Complex w1,
                                                     Complex w2, double y, const Rational& kappa,
                                                     const Rational& tau)
{
  const std::array<Complex, 3> w{w1, w2, Complex(y)};
  const std::array<Rational, 3> h{b.h_lambda, b.h_lambda, b.h_boundary};
  std::array<Eigen::Matrix2cd, 3> t0;
  for (int i = 0; i < 3; ++i) t0[i] = space.coupling_matrix(0, i + 1).cast<Complex>();
  auto t = [&](int i, int j) { return space.coupling_matrix(i + 1, j + 1).cast<Complex>(); };

  const double kap = to_double(kappa), ta = to_double(tau), nu = to_double(b.nu);
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 3; ++i) {
    Eigen::Matrix2cd a = (4.0 - kap) * t0[i] + kap * nu * (t0[i] * t0[i]);
    a += to_double(h[i]) / nu * (2.0 * ta / nu - 4.0) * Eigen::Matrix2cd::Identity();
    m += a / (w[i] * w[i]);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const Eigen::Matrix2cd bij =
          (2.0 * ta / nu - 4.0) * t(i, j) + kap * nu * (t0[i] * t0[j] + t0[j] * t0[i]);
      m += bij / (w[i] * w[j]);
    }
  return m;
}

Eigen::Vector2cd theta_rho_apply_fd(const OnePointBlock& b, const InvariantSpace& space,
                                    Complex w1, Complex w2, double y, const Rational& kappa,
                                    const Rational& tau, const Rational& rho, double step)
{
  const auto f = [&](Complex a, Complex c, Complex yy) {
    // analytic continuation in y through complex steps
    const double h = to_double(b.h_lambda);
    const double hb = to_double(b.h_boundary);
    const Complex ly = clog(yy);
    const Complex wh1 = a * yy / (yy - a), wh2 = c * yy / (yy - c);
    const XBranch br = XBranch::principal(wh1 / wh2);
    const Complex scale = std::exp(2.0 * h * (ly - clog(yy - a)) + 2.0 * h * (ly - clog(yy - c)) -
                                   2.0 * hb * ly - 2.0 * h * clog(wh2));
    return (scale * block_eval(b, br)).eval();
  };
  const double d = step;
  const Complex yc(y);
  const Eigen::Vector2cd v = f(w1, w2, yc);
  const std::array<Complex, 3> w{w1, w2, yc};
  std::array<Eigen::Vector2cd, 3> d1;
  std::array<std::array<Eigen::Vector2cd, 3>, 3> d2;
  auto shift = [&](int i, double eps) {
    std::array<Complex, 3> s = w;
    s[i] += eps;
    return f(s[0], s[1], s[2]);
  };
  for (int i = 0; i < 3; ++i) d1[i] = (shift(i, d) - shift(i, -d)) / (2 * d);
  for (int i = 0; i < 3; ++i) d2[i][i] = (shift(i, d) - 2 * v + shift(i, -d)) / (d * d);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      auto shift2 = [&](double e1, double e2) {
        std::array<Complex, 3> s = w;
        s[i] += e1;
        s[j] += e2;
        return f(s[0], s[1], s[2]);
      };
      d2[i][j] = d2[j][i] =
          (shift2(d, d) - shift2(d, -d) - shift2(-d, d) + shift2(-d, -d)) / (4 * d * d);
    }

  const double kap = to_double(kappa), ta = to_double(tau), ro = to_double(rho);
  const double h = to_double(b.h_lambda), hb = to_double(b.h_boundary);
  const std::array<double, 3> hh{h, h, hb};

  Eigen::Vector2cd out = hb / (y * y) * (6.0 + 2.0 * ro + kap * (2.0 * hb - 1.0)) * v;
  for (int i = 0; i < 3; ++i) {
    out += 2.0 / w[i] * d1[i];
    out -= 2.0 * hh[i] / (w[i] * w[i]) * v;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out += 0.5 * kap * d2[i][j];
  for (int i = 0; i < 3; ++i) out += (ro + 2.0 * kap * hb) / y * d1[i];

  const double c_lam = to_double(2 * b.h_lambda / b.nu);
  const double c_bnd = to_double(2 * b.h_boundary / b.nu);
  const std::array<Complex, 3> coeff{1.0 / w1 - 1.0 / yc, 1.0 / w2 - 1.0 / yc, Complex(0)};
  const std::array<double, 3> cas{c_lam, c_lam, c_bnd};
  for (int i = 0; i < 3; ++i) out += 0.5 * ta * coeff[i] * coeff[i] * cas[i] * v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const Eigen::Matrix2cd tij = space.coupling_matrix(i + 1, j + 1).cast<Complex>();
      out += 0.5 * ta * coeff[i] * coeff[j] * (tij * v);
    }
  return out;
}

} // namespace wzwsle
