#include "wzwsle/invariant_space.hpp"

#include <stdexcept>

namespace wzwsle {

namespace {

constexpr double kNullSpaceThreshold = 1e-9;

// Normalized singlet of V_A (x) V_B (B conjugate to A) as the zero-eigenvector
// of the pair Casimir, phase fixed so the first nonzero component is positive.
Eigen::VectorXcd singlet_vector(const GeneratorSet& a, const GeneratorSet& b)
{
  const int da = a.rep_dim(), db = b.rep_dim();
  const int dg = a.algebra_dim();
  Eigen::MatrixXcd cas = Eigen::MatrixXcd::Zero(da * db, da * db);
  const Eigen::MatrixXcd ia = Eigen::MatrixXcd::Identity(da, da);
  const Eigen::MatrixXcd ib = Eigen::MatrixXcd::Identity(db, db);
  for (int g = 0; g < dg; ++g) {
    const Eigen::MatrixXcd t = kron(a.matrices[g], ib) + kron(ia, b.matrices[g]);
    cas += t * t;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(cas);
  if (es.eigenvalues()(0) > kNullSpaceThreshold)
    throw std::runtime_error("singlet_vector: pair has no invariant vector");
  if (da * db > 1 && es.eigenvalues()(1) < kNullSpaceThreshold)
    throw std::runtime_error("singlet_vector: invariant subspace not one-dimensional");
  Eigen::VectorXcd v = es.eigenvectors().col(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-8) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return v;
}

} // namespace

std::array<Weight, 4> invariant_case_legs(InvariantCase c, int n)
{
  if (c == InvariantCase::FundAntifund) {
    if (n < 2) throw std::invalid_argument("invariant_case_legs: need n >= 2");
    return {fundamental_weight(n), antifundamental_weight(n), fundamental_weight(n),
            antifundamental_weight(n)};
  }
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("invariant_case_legs: self-adjoint case needs even n >= 2");
  return {omega_weight(n, n / 2), fundamental_weight(n), antifundamental_weight(n),
          omega_weight(n, n / 2)};
}

InvariantSpace::InvariantSpace(InvariantCase c, int n) : m_case(c), m_n(n)
{
  const auto legs = invariant_case_legs(c, n);
  std::vector<GeneratorSet> gens;
  gens.reserve(4);
  for (const auto& w : legs) gens.push_back(build_generators(n, w));
  m_system = std::make_shared<TensorSystem>(std::move(gens));

  // v1 = eps_{12} (x) eps'_{03}
  const Eigen::VectorXcd eps12 = singlet_vector(m_system->leg(1), m_system->leg(2));
  const Eigen::VectorXcd eps03 = singlet_vector(m_system->leg(0), m_system->leg(3));
  const auto& dims = m_system->leg_dims();
  Eigen::VectorXcd v1 = Eigen::VectorXcd::Zero(m_system->dim());
  for (int i0 = 0; i0 < dims[0]; ++i0)
    for (int i1 = 0; i1 < dims[1]; ++i1)
      for (int i2 = 0; i2 < dims[2]; ++i2)
        for (int i3 = 0; i3 < dims[3]; ++i3) {
          const std::complex<double> val = eps03(i0 * dims[3] + i3) * eps12(i1 * dims[2] + i2);
          if (val == 0.0) continue;
          const long idx = ((static_cast<long>(i0) * dims[1] + i1) * dims[2] + i2) * dims[3] + i3;
          v1(idx) = val;
        }

  // Null space of the total Casimir; realness of the couplings lets us work
  // with the real part of the operator.
  const Eigen::MatrixXcd hc = m_system->total_casimir();
  if (hc.imag().cwiseAbs().maxCoeff() > 1e-10)
    throw std::runtime_error("InvariantSpace: total Casimir unexpectedly complex");
  const Eigen::MatrixXd h = hc.real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  int null_dim = 0;
  while (null_dim < h.rows() && es.eigenvalues()(null_dim) < kNullSpaceThreshold) ++null_dim;
  if (null_dim != 2)
    throw std::runtime_error("InvariantSpace: invariant subspace has dimension " +
                             std::to_string(null_dim) + ", expected 2");

  if ((hc * v1).norm() > 1e-9 * v1.norm())
    throw std::runtime_error("InvariantSpace: eps-product vector is not invariant");
  v1.normalize();

  // v2: orthonormal completion inside the null space.
  const Eigen::MatrixXd null_basis = es.eigenvectors().leftCols(2);
  Eigen::VectorXcd v2 = Eigen::VectorXcd::Zero(m_system->dim());
  double best = -1;
  for (int c2 = 0; c2 < 2; ++c2) {
    Eigen::VectorXcd u = null_basis.col(c2).cast<std::complex<double>>();
    u -= v1.dot(u) * v1;
    if (u.norm() > best) {
      best = u.norm();
      v2 = u;
    }
  }
  if (best < 0.1)
    throw std::runtime_error("InvariantSpace: failed to complete the basis");
  v2.normalize();

  m_v1 = std::move(v1);
  m_v2 = std::move(v2);

  // fix the phase of v2: off-diagonal of T02 real positive
  const std::complex<double> c02 = m_v1.dot(m_system->coupling(0, 2) * m_v2);
  if (std::abs(c02) < 1e-10)
    throw std::runtime_error("InvariantSpace: sign convention undefined (T02 off-diagonal ~ 0)");
  m_v2 *= std::conj(c02) / std::abs(c02);
}

Eigen::Matrix2cd InvariantSpace::restrict(const Eigen::MatrixXcd& op) const
{
  Eigen::Matrix2cd m;
  const Eigen::VectorXcd o1 = op * m_v1, o2 = op * m_v2;
  m(0, 0) = m_v1.dot(o1);
  m(0, 1) = m_v1.dot(o2);
  m(1, 0) = m_v2.dot(o1);
  m(1, 1) = m_v2.dot(o2);
  return m;
}

Eigen::Matrix2d InvariantSpace::coupling_matrix(int i, int j) const
{
  if (i == j) throw std::invalid_argument("coupling_matrix: use the Casimir for i == j");
  const Eigen::Matrix2cd m = restrict(m_system->coupling(i, j));
  if (m.imag().cwiseAbs().maxCoeff() > 1e-10)
    throw std::runtime_error("coupling_matrix: restriction unexpectedly complex");
  return m.real();
}

double InvariantSpace::tfn1_residual() const
{
  const auto legs = invariant_case_legs(m_case, m_n);
  const AlgebraContext ctx = make_context(m_n, 1);
  const Rational h_lam = conformal_weight(ctx, legs[1]);
  const double shift = to_double(2 * h_lam / ctx.nu);
  const Eigen::Matrix2d sum = coupling_matrix(0, 1) + coupling_matrix(0, 2) +
                              coupling_matrix(1, 2) + shift * Eigen::Matrix2d::Identity();
  return sum.cwiseAbs().maxCoeff();
}

SpectrumReport eigen_spectrum_check(const InvariantSpace& space)
{
  const int n = space.n();
  SpectrumReport report;

  auto casimir_channels = [&](const Weight& a, const Weight& b,
                              const std::array<Weight, 2>& channels) {
    const Rational ca = casimir_value(a), cb = casimir_value(b);
    std::array<Rational, 2> ev{(casimir_value(channels[0]) - ca - cb) / 2,
                               (casimir_value(channels[1]) - ca - cb) / 2};
    if (ev[1] < ev[0]) std::swap(ev[0], ev[1]);
    return ev;
  };

  const auto legs = invariant_case_legs(space.invariant_case(), n);
  auto zero = [&] {
    Weight w;
    w.n = n;
    w.labels.assign(n - 1, 0);
    return w;
  }();
  auto adjoint = [&] {
    Weight w = zero;
    if (n == 2) {
      w.labels[0] = 2;
    } else {
      w.labels.front() = 1;
      w.labels.back() = 1;
    }
    return w;
  }();

  std::vector<SpectrumPrediction> preds;
  if (space.invariant_case() == InvariantCase::FundAntifund) {
    auto sym2 = zero, asym2 = zero;
    sym2.labels[0] = 2;
    if (n == 2)
      asym2 = zero; // antisymmetric square of the su(2) doublet is the singlet
    else
      asym2.labels[1] = 1;
    preds.push_back({0, 1, casimir_channels(legs[0], legs[1], {zero, adjoint})});
    preds.push_back({0, 2, casimir_channels(legs[0], legs[2], {sym2, asym2})});
    preds.push_back({1, 2, casimir_channels(legs[1], legs[2], {zero, adjoint})});
  } else {
    const int m = n / 2;
    auto upper = zero, mixed = zero;
    if (m + 1 <= n - 1) upper.labels[m] = 1; // omega_{m+1}
    mixed.labels[0] = 1;
    mixed.labels[m - 1] += 1; // omega_1 + omega_m
    auto lower = zero, mixed2 = zero;
    if (m - 1 >= 1) lower.labels[m - 2] = 1; // omega_{m-1}
    mixed2.labels[m - 1] += 1;
    mixed2.labels[n - 2] += 1; // omega_m + omega_{n-1}
    preds.push_back({0, 1, casimir_channels(legs[0], legs[1], {upper, mixed})});
    preds.push_back({0, 2, casimir_channels(legs[0], legs[2], {lower, mixed2})});
    preds.push_back({1, 2, casimir_channels(legs[1], legs[2], {zero, adjoint})});
  }

  for (const auto& p : preds) {
    const Eigen::Matrix2d t = space.coupling_matrix(p.leg_i, p.leg_j);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(t);
    const double r = std::max(std::abs(es.eigenvalues()(0) - to_double(p.eigenvalues[0])),
                              std::abs(es.eigenvalues()(1) - to_double(p.eigenvalues[1])));
    report.predictions.push_back(p);
    report.residuals.push_back(r);
    report.max_residual = std::max(report.max_residual, r);
  }
  return report;
}

ClosedFormCouplings closed_form_couplings(InvariantCase c, int n)
{
  ClosedFormCouplings out;
  if (c == InvariantCase::FundAntifund) {
    out.radicand = static_cast<long>(n) * n - 1;
    const QuadExt s = QuadExt::sqrt_of(out.radicand);
    const Rational inv_n(1, n);
    out.t01(0, 1) = out.t01(1, 0) = QuadExt(-inv_n) * s;
    out.t01(1, 1) = QuadExt(-Rational(static_cast<long>(n) * n - 2, n));
    out.t02(0, 1) = out.t02(1, 0) = QuadExt(inv_n) * s;
    out.t02(1, 1) = QuadExt(-Rational(2, n));
  } else {
    if (n % 2 != 0) throw std::invalid_argument("closed_form_couplings: even n required");
    out.radicand = n + 1;
    const QuadExt s = QuadExt::sqrt_of(out.radicand);
    const Rational half(1, 2);
    out.t01(0, 1) = out.t01(1, 0) = QuadExt(-half) * s;
    out.t01(1, 1) = QuadExt(-Rational(n, 2));
    out.t02(0, 1) = out.t02(1, 0) = QuadExt(half) * s;
    out.t02(1, 1) = QuadExt(-Rational(n, 2));
  }
  out.t12(0, 0) = QuadExt(Rational(1 - static_cast<long>(n) * n, n));
  out.t12(1, 1) = QuadExt(Rational(1, n));
  return out;
}

} // namespace wzwsle
