#ifndef WZWSLE_LIE_ALGEBRA_HPP
#define WZWSLE_LIE_ALGEBRA_HPP

#include "wzwsle/rational.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace wzwsle {

/// su(n) level-k data with all derived quantities kept exact.
struct AlgebraContext {
  int n = 0;
  int k = 0;
  int h_dual = 0;
  int dim_g = 0;
  Rational nu;             // 1/(k + h_dual)
  Rational central_charge; // k * dim_g / (k + h_dual)
};

/// Builds the context for su(n) at level k. Rejects n < 2 or k < 1.
AlgebraContext make_context(int n, int k);

/// Dominant integral weight of su(n) given by Dynkin labels.
struct Weight {
  int n = 0;
  std::vector<int> labels;

  int label_sum() const;
  Weight conjugate() const; // reversed labels
  bool is_zero() const;
  std::string str() const;
};

Weight fundamental_weight(int n);               // omega_1
Weight antifundamental_weight(int n);           // omega_{n-1}
Weight omega_weight(int n, int m);              // m-th fundamental weight
Weight su2_spin(int twice_j);                   // labels [2j]

/// Quadratic Casimir (Lambda, Lambda + 2 rho) in the normalization where the
/// highest root has squared length 2.
Rational casimir_value(int n, const std::vector<int>& labels);
inline Rational casimir_value(const Weight& w) { return casimir_value(w.n, w.labels); }

/// h_Lambda = C_Lambda / (2 (k + h_dual)).
Rational conformal_weight(const AlgebraContext& ctx, const Weight& w);

/// Hermitian traceless generators of one irreducible representation,
/// trace-orthonormal in the defining representation.
struct GeneratorSet {
  std::vector<Eigen::MatrixXcd> matrices;
  std::string normalization = "defining-trace-orthonormal";
  Weight weight;

  int algebra_dim() const { return static_cast<int>(matrices.size()); }
  int rep_dim() const { return matrices.empty() ? 0 : static_cast<int>(matrices[0].rows()); }
};

/// Supported weights: omega_1, omega_{n-1} (as minus-transpose of the
/// defining rep), and omega_m realized on the antisymmetric subspace of the
/// m-th tensor power of the defining rep.
GeneratorSet build_generators(int n, const Weight& w);

/// Structure constants f_{abc} of su(n), extracted from the defining rep:
/// [t_a, t_b] = i f_{abc} t_c. Returned as f[a](b, c).
std::vector<Eigen::MatrixXd> structure_constants(int n);

} // namespace wzwsle

#endif
