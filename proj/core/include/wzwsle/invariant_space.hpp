#ifndef WZWSLE_INVARIANT_SPACE_HPP
#define WZWSLE_INVARIANT_SPACE_HPP

#include "wzwsle/quadratic_field.hpp"
#include "wzwsle/tensor_ops.hpp"

#include <Eigen/Dense>
#include <memory>

namespace wzwsle {

enum class InvariantCase {
  FundAntifund,    // legs (omega_1, omega_{n-1}, omega_1, omega_{n-1})
  SelfAdjointFund, // legs (omega_{n/2}, omega_1, omega_{n-1}, omega_{n/2}), n even
};

/// Two-dimensional singlet subspace of the four-leg tensor product, with the
/// pair couplings restricted to the orthonormal basis (v1, v2).
/// v1 = eps_{12} eps'_{03}; the sign of v2 makes the off-diagonal of T02
/// positive.
class InvariantSpace {
public:
  InvariantSpace(InvariantCase c, int n);

  InvariantCase invariant_case() const { return m_case; }
  int n() const { return m_n; }
  int dim() const { return m_system->dim(); }
  const TensorSystem& system() const { return *m_system; }

  const Eigen::VectorXcd& v1() const { return m_v1; }
  const Eigen::VectorXcd& v2() const { return m_v2; }

  /// T_ij restricted to the (v1, v2) basis, i != j in 0..3.
  Eigen::Matrix2d coupling_matrix(int i, int j) const;

  /// Restriction of an arbitrary full-space operator to the (v1, v2) basis.
  Eigen::Matrix2cd restrict(const Eigen::MatrixXcd& op) const;

  /// Max residual of T01 + T02 + T12 + (2 h_lambda / nu) I on the basis,
  /// with nu at level 1.
  double tfn1_residual() const;

private:
  InvariantCase m_case;
  int m_n;
  std::shared_ptr<TensorSystem> m_system;
  Eigen::VectorXcd m_v1, m_v2;
};

/// Eigenvalues every restricted coupling must have, derived from the Casimir
/// difference T_ij = (C_ij - C_i - C_j)/2 over the two channels of the
/// corresponding pair decomposition.
struct SpectrumPrediction {
  int leg_i = 0, leg_j = 0;
  std::array<Rational, 2> eigenvalues; // ascending
};

struct SpectrumReport {
  std::vector<SpectrumPrediction> predictions;
  std::vector<double> residuals; // per matrix: max |computed - predicted| over the sorted pair
  double max_residual = 0;
};

/// Compares eigenvalues of the computed T01/T02/T12 against the
/// Casimir-difference predictions.
SpectrumReport eigen_spectrum_check(const InvariantSpace& space);

/// Closed-form restricted couplings (exact, in Q(sqrt(d))).
struct ClosedFormCouplings {
  QuadMat2 t01, t02, t12;
  long radicand = 0;
};
ClosedFormCouplings closed_form_couplings(InvariantCase c, int n);

/// Leg weights of the four-point configuration for a case.
std::array<Weight, 4> invariant_case_legs(InvariantCase c, int n);

} // namespace wzwsle

#endif
