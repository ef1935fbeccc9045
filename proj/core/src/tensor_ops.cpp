#include "wzwsle/tensor_ops.hpp"

#include <stdexcept>

namespace wzwsle {

namespace {

std::vector<long> make_strides(const std::vector<int>& dims)
{
  // row-major multi-index: leg 0 slowest
  std::vector<long> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) s[i] = s[i + 1] * dims[i + 1];
  return s;
}

} // namespace

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b)
{
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd embed_pair(const std::vector<int>& dims, int i, int j, const Eigen::MatrixXcd& op)
{
  if (i == j) throw std::invalid_argument("embed_pair: legs must differ");
  const auto strides = make_strides(dims);
  long total = 1;
  for (int d : dims) total *= d;
  const int di = dims[i], dj = dims[j];
  if (op.rows() != di * dj) throw std::invalid_argument("embed_pair: operator size mismatch");

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(total, total);
  // enumerate full indices by (rest, leg_i, leg_j); rest = index with legs i, j zeroed
  std::vector<int> idx(dims.size(), 0);
  for (long base = 0; base < total; ++base) {
    // decode
    long rem = base;
    for (std::size_t l = 0; l < dims.size(); ++l) {
      idx[l] = static_cast<int>(rem / strides[l]);
      rem %= strides[l];
    }
    if (idx[i] != 0 || idx[j] != 0) continue;
    for (int ri = 0; ri < di; ++ri)
      for (int rj = 0; rj < dj; ++rj) {
        const long row = base + ri * strides[i] + rj * strides[j];
        for (int ci = 0; ci < di; ++ci) {
          for (int cj = 0; cj < dj; ++cj) {
            const std::complex<double> v = op(ri * dj + rj, ci * dj + cj);
            if (v == 0.0) continue;
            out(row, base + ci * strides[i] + cj * strides[j]) = v;
          }
        }
      }
  }
  return out;
}

Eigen::MatrixXcd embed_leg(const std::vector<int>& dims, int leg, const Eigen::MatrixXcd& op)
{
  const auto strides = make_strides(dims);
  long total = 1;
  for (int d : dims) total *= d;
  const int dl = dims[leg];
  if (op.rows() != dl) throw std::invalid_argument("embed_leg: operator size mismatch");

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(total, total);
  std::vector<int> idx(dims.size(), 0);
  for (long base = 0; base < total; ++base) {
    long rem = base;
    for (std::size_t l = 0; l < dims.size(); ++l) {
      idx[l] = static_cast<int>(rem / strides[l]);
      rem %= strides[l];
    }
    if (idx[leg] != 0) continue;
    for (int r = 0; r < dl; ++r)
      for (int c = 0; c < dl; ++c) {
        if (op(r, c) == 0.0) continue;
        out(base + r * strides[leg], base + c * strides[leg]) = op(r, c);
      }
  }
  return out;
}

TensorSystem::TensorSystem(std::vector<GeneratorSet> legs) : m_legs(std::move(legs))
{
  if (m_legs.empty()) throw std::invalid_argument("TensorSystem: no legs");
  const int dg = m_legs[0].algebra_dim();
  m_dim = 1;
  for (const auto& g : m_legs) {
    if (g.algebra_dim() != dg) throw std::invalid_argument("TensorSystem: mixed algebras");
    m_dims.push_back(g.rep_dim());
    m_dim *= g.rep_dim();
  }
  m_strides = make_strides(m_dims);

  const int nl = leg_count();
  m_pair.resize(nl * (nl - 1) / 2);
  for (int i = 0; i < nl; ++i) {
    for (int j = i + 1; j < nl; ++j) {
      const int di = m_dims[i], dj = m_dims[j];
      Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(di * dj, di * dj);
      for (int a = 0; a < dg; ++a)
        k += kron(m_legs[i].matrices[a], m_legs[j].matrices[a]);
      m_pair[pair_index(i, j)] = embed_pair(m_dims, i, j, k);
    }
  }
}

int TensorSystem::pair_index(int i, int j) const
{
  if (i == j || i < 0 || j < 0 || i >= leg_count() || j >= leg_count())
    throw std::invalid_argument("TensorSystem: bad leg pair");
  if (i > j) std::swap(i, j);
  // offset of row i in the strictly-upper triangle
  return i * leg_count() - i * (i + 1) / 2 + (j - i - 1);
}

const Eigen::MatrixXcd& TensorSystem::coupling(int i, int j) const
{
  return m_pair[pair_index(i, j)];
}

Eigen::MatrixXcd TensorSystem::leg_operator(int leg, int a) const
{
  return embed_leg(m_dims, leg, m_legs.at(leg).matrices.at(a));
}

Eigen::MatrixXcd TensorSystem::total_casimir() const
{
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m_dim, m_dim);
  for (int l = 0; l < leg_count(); ++l) {
    const auto& g = m_legs[l];
    Eigen::MatrixXcd sq = Eigen::MatrixXcd::Zero(g.rep_dim(), g.rep_dim());
    for (const auto& t : g.matrices) sq += t * t;
    h += embed_leg(m_dims, l, sq);
  }
  for (int i = 0; i < leg_count(); ++i)
    for (int j = i + 1; j < leg_count(); ++j) h += 2.0 * coupling(i, j);
  return h;
}

} // namespace wzwsle
