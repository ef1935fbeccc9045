#include "wzwsle/conditions.hpp"

#include <functional>
#include <stdexcept>

namespace wzwsle {

namespace {

struct Residuals {
  Rational taukap, jp3, jp4;
};

Residuals residuals_at(const AlgebraContext& ctx, const Rational& h, const Rational& kappa,
                       const Rational& tau)
{
  Residuals r;
  r.taukap = kappa + tau * ctx.h_dual - 4;
  r.jp3 = 2 * kappa * h + tau * ctx.k - 2;
  r.jp4 = 3 * kappa * h + tau * ctx.central_charge * (ctx.k + ctx.h_dual) / 2 - 8 * h -
          ctx.central_charge;
  return r;
}

// Enumerates label vectors of length len with sum in [1, sum_max], lexicographic.
void for_each_label_vector(int len, int sum_max, std::vector<int>& labels, int pos,
                           const std::function<void(const std::vector<int>&)>& fn)
{
  if (pos == len) {
    bool nonzero = false;
    for (int l : labels)
      if (l) nonzero = true;
    if (nonzero) fn(labels);
    return;
  }
  int used = 0;
  for (int i = 0; i < pos; ++i) used += labels[i];
  for (int v = 0; v <= sum_max - used; ++v) {
    labels[pos] = v;
    for_each_label_vector(len, sum_max, labels, pos + 1, fn);
  }
  labels[pos] = 0;
}

} // namespace

std::optional<NullVectorSolution> solve_kappa_tau(const AlgebraContext& ctx, const Weight& w)
{
  if (w.is_zero()) throw std::invalid_argument("solve_kappa_tau: weight must be nonzero");
  const Rational h = conformal_weight(ctx, w);
  const Rational c_lam = casimir_value(w);
  const Rational denom = 2 * h * ctx.h_dual - ctx.k;

  NullVectorSolution sol;
  if (denom == 0) {
    // Degenerate branch: the two linear conditions coincide; a solution
    // exists only at k = h_dual/2, h_Lambda = 1/4, C_Lambda = 3 h_dual / 4.
    if (2 * Rational(ctx.k) != Rational(ctx.h_dual) || h != Rational(1, 4) ||
        c_lam != Rational(3 * ctx.h_dual, 4))
      return std::nullopt;
    sol.degenerate = true;
    sol.tau0 = Rational(4, ctx.h_dual);
    sol.tau_slope = Rational(-1, ctx.h_dual);
    if (ctx.dim_g == 3) {
      // kappa unconstrained; report the continuation value 4(k+h)/(k+h+1).
      sol.kappa_free = true;
      sol.kappa = Rational(4 * (ctx.k + ctx.h_dual), ctx.k + ctx.h_dual + 1);
    } else {
      sol.kappa = Rational(8, 3);
    }
  } else {
    sol.kappa = 2 * (Rational(ctx.h_dual) - 2 * ctx.k) / denom;
    sol.tau0 = (8 * h - 2) / denom;
  }

  const Rational tau = sol.tau();
  const Residuals r = residuals_at(ctx, h, sol.kappa, tau);
  sol.residual_taukap = r.taukap;
  sol.residual_jp3 = r.jp3;
  sol.residual_jp4 = r.jp4;
  sol.unphysical = (sol.kappa <= 0 || tau < 0);
  return sol;
}

CasimirConditionResult check_casimir_condition(const AlgebraContext& ctx, const Weight& w)
{
  const Rational c = casimir_value(w);
  const Rational hd = ctx.h_dual;
  const Rational dg = ctx.dim_g;
  const Rational k = ctx.k;
  CasimirConditionResult out;
  out.residual = (hd * dg + 2 * c * (1 - dg)) * k * k + (hd * dg - c * (1 + dg)) * hd * k +
                 4 * c * c * hd - 3 * c * hd * hd;
  out.holds = (out.residual == 0);
  return out;
}

bool casimir_polynomial_vanishes_identically(int n, const Weight& w)
{
  const int dim_g = n * n - 1;
  const Rational c = casimir_value(w);
  return dim_g == 3 && 2 * c * (dim_g - 1) == Rational(n) * dim_g;
}

std::vector<AdmissibleTriple> enumerate_solutions(int n_max, int k_max, int label_sum_max)
{
  if (n_max < 2 || k_max < 1 || label_sum_max < 1)
    throw std::invalid_argument("enumerate_solutions: bounds must be >= (2, 1, 1)");
  std::vector<AdmissibleTriple> out;
  for (int n = 2; n <= n_max; ++n) {
    for (int k = 1; k <= k_max; ++k) {
      const AlgebraContext ctx = make_context(n, k);
      std::vector<int> labels(n - 1, 0);
      for_each_label_vector(n - 1, label_sum_max, labels, 0, [&](const std::vector<int>& ls) {
        Weight w{n, ls};
        if (w.label_sum() > k) return; // integrability
        auto sol = solve_kappa_tau(ctx, w);
        if (!sol || !sol->all_residuals_zero()) return;
        out.push_back({n, k, std::move(w), std::move(*sol)});
      });
    }
  }
  return out;
}

Rational solve_rho(const NullVectorSolution& sol, const AlgebraContext& ctx, const Weight& w)
{
  const Rational h = conformal_weight(ctx, w);
  const Rational constraint = 2 * sol.kappa * h + sol.kappa + sol.tau() / ctx.nu - 6;
  if (constraint != 0)
    throw std::runtime_error("solve_rho: constraint 2 kappa h + kappa + tau/nu = 6 violated");
  return sol.kappa - 6;
}

} // namespace wzwsle
