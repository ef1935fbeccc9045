#ifndef WZWSLE_TENSOR_OPS_HPP
#define WZWSLE_TENSOR_OPS_HPP

#include "wzwsle/lie_algebra.hpp"

#include <Eigen/Dense>
#include <vector>

namespace wzwsle {

/// Multi-leg tensor product workspace: one representation per leg, with the
/// pair couplings T_ij = sum_a t_a^(i) t_a^(j) materialized on the full space.
class TensorSystem {
public:
  explicit TensorSystem(std::vector<GeneratorSet> legs);

  int leg_count() const { return static_cast<int>(m_legs.size()); }
  int dim() const { return m_dim; }
  const std::vector<int>& leg_dims() const { return m_dims; }
  const GeneratorSet& leg(int i) const { return m_legs.at(i); }

  /// t_a acting on leg i, embedded in the full space.
  Eigen::MatrixXcd leg_operator(int leg, int a) const;

  /// T_ij = T_ji (precomputed); i == j rejected.
  const Eigen::MatrixXcd& coupling(int i, int j) const;

  /// sum_a (sum_i t_a^(i))^2 assembled from Casimirs and pair couplings.
  Eigen::MatrixXcd total_casimir() const;

private:
  std::vector<GeneratorSet> m_legs;
  std::vector<int> m_dims;
  std::vector<long> m_strides;
  int m_dim = 0;
  std::vector<Eigen::MatrixXcd> m_pair; // upper-triangular pair index
  int pair_index(int i, int j) const;
};

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Embeds an operator acting on legs (i, j) (given on the d_i*d_j product
/// space, leg-i index major) into the full tensor space.
Eigen::MatrixXcd embed_pair(const std::vector<int>& dims, int i, int j,
                            const Eigen::MatrixXcd& op);

/// Embeds a single-leg operator into the full tensor space.
Eigen::MatrixXcd embed_leg(const std::vector<int>& dims, int leg, const Eigen::MatrixXcd& op);

} // namespace wzwsle

#endif
