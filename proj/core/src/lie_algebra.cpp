#include "wzwsle/lie_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wzwsle {

namespace {

const std::complex<double> kI(0.0, 1.0);

// (omega_i, omega_j) = min(i,j) - i*j/n in the highest-root-length-2 normalization.
Rational weight_inner(int n, int i, int j)
{
  return Rational(std::min(i, j)) - Rational(static_cast<long long>(i) * j, n);
}

// Basis subsets of {0..n-1} of size m in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int m)
{
  std::vector<std::vector<int>> out;
  std::vector<int> c(m);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.push_back(c);
    int i = m - 1;
    while (i >= 0 && c[i] == n - m + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

// Generators acting on the m-particle antisymmetric subspace: t acts as the
// fermionic bilinear sum_{jp} t_{jp} c^dag_j c_p on wedge basis states.
Eigen::MatrixXcd wedge_lift(const Eigen::MatrixXcd& t, const std::vector<std::vector<int>>& basis,
                            const std::vector<int>& index_of_mask)
{
  const int d = static_cast<int>(basis.size());
  const int m = static_cast<int>(basis[0].size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (int s = 0; s < d; ++s) {
    const auto& S = basis[s];
    int mask = 0;
    for (int v : S) mask |= 1 << v;
    for (int pos = 0; pos < m; ++pos) {
      const int p = S[pos];
      for (int j = 0; j < t.rows(); ++j) {
        const std::complex<double> amp = t(j, p);
        if (amp == 0.0) continue;
        if (j != p && (mask & (1 << j))) continue; // Pauli exclusion
        // remove p (sign from its position), insert j at its sorted position
        int sign = (pos % 2 == 0) ? 1 : -1;
        const int mask2 = (mask & ~(1 << p)) | (1 << j);
        int below = 0;
        for (int v = 0; v < j; ++v)
          if (mask2 & (1 << v)) ++below;
        if (below % 2 == 1) sign = -sign;
        out(index_of_mask[mask2], s) += static_cast<double>(sign) * amp;
      }
    }
  }
  return out;
}

} // namespace

AlgebraContext make_context(int n, int k)
{
  if (n < 2) throw std::invalid_argument("make_context: need n >= 2");
  if (k < 1) throw std::invalid_argument("make_context: need k >= 1");
  AlgebraContext ctx;
  ctx.n = n;
  ctx.k = k;
  ctx.h_dual = n;
  ctx.dim_g = n * n - 1;
  ctx.nu = Rational(1, k + n);
  ctx.central_charge = Rational(static_cast<long long>(k) * ctx.dim_g, k + n);
  return ctx;
}

int Weight::label_sum() const { return std::accumulate(labels.begin(), labels.end(), 0); }

Weight Weight::conjugate() const
{
  Weight w = *this;
  std::reverse(w.labels.begin(), w.labels.end());
  return w;
}

bool Weight::is_zero() const
{
  return std::all_of(labels.begin(), labels.end(), [](int l) { return l == 0; });
}

std::string Weight::str() const
{
  std::string s = "(";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(labels[i]);
  }
  return s + ")";
}

Weight fundamental_weight(int n) { return omega_weight(n, 1); }
Weight antifundamental_weight(int n) { return omega_weight(n, n - 1); }

Weight omega_weight(int n, int m)
{
  if (n < 2 || m < 1 || m > n - 1) throw std::invalid_argument("omega_weight: bad (n, m)");
  Weight w;
  w.n = n;
  w.labels.assign(n - 1, 0);
  w.labels[m - 1] = 1;
  return w;
}

Weight su2_spin(int twice_j)
{
  if (twice_j < 0) throw std::invalid_argument("su2_spin: negative spin");
  Weight w;
  w.n = 2;
  w.labels = {twice_j};
  return w;
}

Rational casimir_value(int n, const std::vector<int>& labels)
{
  if (static_cast<int>(labels.size()) != n - 1)
    throw std::invalid_argument("casimir_value: label vector must have length n-1");
  // (Lambda, Lambda + 2 rho) with rho = sum_j omega_j
  Rational c = 0;
  for (int i = 1; i <= n - 1; ++i) {
    if (labels[i - 1] == 0) continue;
    for (int j = 1; j <= n - 1; ++j)
      c += Rational(labels[i - 1]) * Rational(labels[j - 1] + 2) * weight_inner(n, i, j);
  }
  return c;
}

Rational conformal_weight(const AlgebraContext& ctx, const Weight& w)
{
  if (w.n != ctx.n) throw std::invalid_argument("conformal_weight: weight/context mismatch");
  return casimir_value(w) * ctx.nu / 2;
}

GeneratorSet build_generators(int n, const Weight& w)
{
  if (w.n != n) throw std::invalid_argument("build_generators: weight/rank mismatch");
  if (static_cast<int>(w.labels.size()) != n - 1)
    throw std::invalid_argument("build_generators: bad label vector");

  int m = 0;
  for (int i = 0; i < n - 1; ++i) {
    if (w.labels[i] == 0) continue;
    if (w.labels[i] != 1 || m != 0)
      throw std::invalid_argument("build_generators: only fundamental weights omega_m supported");
    m = i + 1;
  }
  if (m == 0) throw std::invalid_argument("build_generators: zero weight has no generators");

  // Defining rep: generalized Gell-Mann basis scaled to tr(t_a t_b) = delta_ab.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<Eigen::MatrixXcd> fund;
  fund.reserve(n * n - 1);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
      x(j, k) = inv_sqrt2;
      x(k, j) = inv_sqrt2;
      fund.push_back(x);
      Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
      y(j, k) = -kI * inv_sqrt2;
      y(k, j) = kI * inv_sqrt2;
      fund.push_back(y);
    }
  }
  for (int l = 1; l < n; ++l) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int j = 0; j < l; ++j) h(j, j) = norm;
    h(l, l) = -static_cast<double>(l) * norm;
    fund.push_back(h);
  }

  GeneratorSet out;
  out.weight = w;
  if (m == 1) {
    out.matrices = std::move(fund);
  } else if (m == n - 1) {
    out.matrices.reserve(fund.size());
    for (const auto& t : fund) out.matrices.push_back((-t.transpose()).eval());
  } else {
    const auto basis = combinations(n, m);
    std::vector<int> index_of_mask(1 << n, -1);
    for (int s = 0; s < static_cast<int>(basis.size()); ++s) {
      int mask = 0;
      for (int v : basis[s]) mask |= 1 << v;
      index_of_mask[mask] = s;
    }
    out.matrices.reserve(fund.size());
    for (const auto& t : fund) out.matrices.push_back(wedge_lift(t, basis, index_of_mask));
  }
  return out;
}

std::vector<Eigen::MatrixXd> structure_constants(int n)
{
  const auto gen = build_generators(n, fundamental_weight(n));
  const int dg = gen.algebra_dim();
  std::vector<Eigen::MatrixXd> f(dg, Eigen::MatrixXd::Zero(dg, dg));
  for (int a = 0; a < dg; ++a) {
    for (int b = a + 1; b < dg; ++b) {
      const Eigen::MatrixXcd comm = gen.matrices[a] * gen.matrices[b] - gen.matrices[b] * gen.matrices[a];
      for (int c = 0; c < dg; ++c) {
        const std::complex<double> tr = (comm * gen.matrices[c]).trace();
        const double fabc = (-kI * tr).real();
        if (std::abs(fabc) < 1e-14) continue;
        f[a](b, c) = fabc;
        f[b](a, c) = -fabc;
      }
    }
  }
  return f;
}

} // namespace wzwsle
