#ifndef WZWSLE_CONDITIONS_HPP
#define WZWSLE_CONDITIONS_HPP

#include "wzwsle/lie_algebra.hpp"
#include "wzwsle/rational.hpp"

#include <optional>
#include <vector>

namespace wzwsle {

/// Exact (kappa, tau) pair solving the depth-two null-vector conditions,
/// together with the residuals of all three level-two relations. In the
/// degenerate branch kappa is a free parameter and `kappa` holds the
/// continuation representative; tau is stored as the affine form
/// tau0 + tau_slope * kappa so the kappa-dependence survives.
struct NullVectorSolution {
  Rational kappa;
  bool kappa_free = false;
  Rational tau0;
  Rational tau_slope; // 0 in the generic branch
  bool degenerate = false;
  bool unphysical = false; // kappa <= 0 or tau < 0, emitted with a warning

  Rational residual_taukap; // kappa + tau h - 4
  Rational residual_jp3;    // 2 kappa h_Lambda + tau k - 2
  Rational residual_jp4;    // 3 kappa h_Lambda + tau c (k+h)/2 - 8 h_Lambda - c

  Rational tau() const { return tau0 + tau_slope * kappa; }
  Rational tau_at(const Rational& kap) const { return tau0 + tau_slope * kap; }
  Rational rho() const { return kappa - 6; }
  bool all_residuals_zero() const
  {
    return residual_taukap == 0 && residual_jp3 == 0 && residual_jp4 == 0;
  }
};

/// Solves the two linear level-two conditions for (kappa, tau). Returns
/// nothing when the degenerate branch k = 2 h_Lambda h_dual admits no
/// solution. Solutions with kappa <= 0 or tau < 0 carry the `unphysical`
/// flag instead of being dropped.
std::optional<NullVectorSolution> solve_kappa_tau(const AlgebraContext& ctx, const Weight& w);

struct CasimirConditionResult {
  bool holds = false;
  Rational residual;
};

/// Evaluates the quadratic-in-k compatibility polynomial of the three
/// level-two conditions; `holds` iff the residual is exactly zero.
CasimirConditionResult check_casimir_condition(const AlgebraContext& ctx, const Weight& w);

/// Left-hand side of the identical-vanishing conditions: the compatibility
/// polynomial is zero for every k iff both hold.
bool casimir_polynomial_vanishes_identically(int n, const Weight& w);

struct AdmissibleTriple {
  int n = 0;
  int k = 0;
  Weight weight;
  NullVectorSolution solution;
};

/// All (n, k, Lambda) with n <= n_max, k <= k_max, 1 <= sum(labels) <=
/// label_sum_max that satisfy the integrability bound sum(labels) <= k and
/// all three level-two conditions exactly. Lexicographic in (n, k, labels).
std::vector<AdmissibleTriple> enumerate_solutions(int n_max, int k_max, int label_sum_max);

/// rho = kappa - 6, after verifying 2 kappa h_Lambda + kappa + tau/nu = 6
/// exactly. Throws on violation (impossible for emitted solutions).
Rational solve_rho(const NullVectorSolution& sol, const AlgebraContext& ctx, const Weight& w);

} // namespace wzwsle

#endif
