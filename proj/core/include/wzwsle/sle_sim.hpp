#ifndef WZWSLE_SLE_SIM_HPP
#define WZWSLE_SLE_SIM_HPP

#include "wzwsle/blocks.hpp"

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace wzwsle {

/// Precomputed data for the one-bulk-point Monte Carlo: invariant basis,
/// bulk-leg generators, and the projection of the gauge factor back onto
/// the invariant basis.
class OnePointSystem {
public:
  OnePointSystem(BlockCase c, int n);

  const OnePointBlock& block() const { return m_block; }
  const InvariantSpace& space() const { return *m_space; }
  int n() const { return m_block.n; }
  int bulk_dim() const { return m_bulk_dim; } // n^2
  int algebra_dim() const { return m_block.ctx.dim_g; }

  const std::vector<Eigen::MatrixXcd>& gen_lambda() const { return m_gen1; }
  const std::vector<Eigen::MatrixXcd>& gen_lambda_conj() const { return m_gen2; }
  const Eigen::MatrixXcd& bulk_coupling() const { return m_bulk_coupling; }
  double bulk_casimir() const { return m_bulk_casimir; }

  /// Boundary-index slices of v_b as an (n^2) x R matrix, R = d_Lambda^2.
  const Eigen::MatrixXcd& slice(int b) const { return b == 0 ? m_s1 : m_s2; }

  /// Components of the gauge-rotated block in the invariant basis:
  /// < v_c, (I x phi x I)(f_1 v_1 + f_2 v_2) >.
  Eigen::Vector2cd project(const Eigen::MatrixXcd& phi, const Eigen::Vector2cd& f) const;

private:
  OnePointBlock m_block;
  std::shared_ptr<InvariantSpace> m_space;
  int m_bulk_dim = 0;
  std::vector<Eigen::MatrixXcd> m_gen1, m_gen2;
  Eigen::MatrixXcd m_bulk_coupling;
  double m_bulk_casimir = 0;
  Eigen::MatrixXcd m_s1, m_s2;
};

/// Scalar part of a path: tracked positions, derivative factors and the
/// continuously tracked logarithms every fractional power is built from.
struct ScalarPathState {
  double t = 0;
  Complex w1, w2;
  double y = 0;
  Complex log_w1, log_w2, log_w21; // log w1, log w2, log(w2 - w1)
  double log_y = 0;
  Complex log_yw1, log_yw2; // log(y - w_i)
  Complex l1 = 0, l2 = 0;   // log of dw_i/dz_i
  bool rho_variant = false;
  bool alive = true;
};

struct PathState {
  ScalarPathState s;
  Eigen::MatrixXcd phi; // gauge factor on the bulk pair
};

PathState make_initial_state(const OnePointSystem& sys, Complex z0, bool rho_variant = false,
                             double y0 = 1.0);

/// Euler-Maruyama update dw = (2/w) dt - sqrt(kappa) dxi of both tracked
/// points and of the derivative factors; marks the path discarded when a
/// point enters |w| < cutoff.
void step_sle(PathState& st, double dt, double dxi, double kappa, double cutoff);

/// Target-at-y variant: dw = (2/w + rho/y) dt - sqrt(kappa) dxi, and y moves
/// by dy = (2 + rho)/y dt - sqrt(kappa) dxi. Crossing y <= cutoff discards.
void step_sle_rho(PathState& st, double dt, double dxi, double kappa, double rho, double cutoff);

/// Right-composes the one-step group increment
/// I + sqrt(tau) sum_a dtheta_a G_a + (tau/2) sum_a G_a^2 dt
/// built from the current positions (G_a = sum_i c_i t_a^(i), with
/// c_i = 1/w_i for the plain flow and 1/w_i - 1/y for the target variant).
void step_gauge(const OnePointSystem& sys, PathState& st, double dt, const double* dtheta,
                double tau);

/// The martingale observable in the invariant basis at the current state.
Eigen::Vector2cd observable(const OnePointSystem& sys, const PathState& st);

/// Closed-form observable of the drift-only (kappa = tau = 0) flow at time t.
Eigen::Vector2cd drift_only_observable(const OnePointSystem& sys, Complex z0, double t);

struct SimConfig {
  BlockCase block_case = BlockCase::Su2Level1;
  int n = 2;
  double kappa = 2.0;
  double tau = 1.0;
  bool rho_variant = false;
  double rho = 0.0;
  double y0 = 1.0;
  Complex z0{0.0, 1.0};
  double horizon = 0.05;
  double dt = 1e-4;
  long paths = 100000;
  std::uint64_t seed = 1;
  int threads = 0; // 0 = hardware concurrency
  int checkpoints = 1;
  double cutoff_factor = 10.0; // discard when |w| < cutoff_factor * sqrt(dt)
};

struct ComponentStats {
  Complex m0;
  Complex mean;
  double se_re = 0, se_im = 0;
  double z_re = 0, z_im = 0;
};

struct McReport {
  std::array<ComponentStats, 2> components{};
  long paths_total = 0;
  long paths_used = 0;
  /// Paths stopped at the singular cutoff before the horizon; their
  /// observables are frozen at the stopping time and still enter the
  /// statistics.
  long discarded = 0;
  double dt = 0, horizon = 0;
  std::uint64_t seed = 0;
  double max_z = 0;
  bool pass = false;     // all componentwise z < 3
  bool reliable = false; // discard fraction <= 5%
  std::vector<double> checkpoint_times;
  std::vector<std::array<Complex, 2>> checkpoint_means;
  std::vector<std::array<double, 2>> checkpoint_se; // max of re/im se per component
  std::vector<long> checkpoint_counts;
};

McReport mc_martingale_test(const SimConfig& cfg);

struct ControlReport {
  std::vector<double> times;
  std::vector<double> deviations; // relative max-norm sim-vs-closed-form
  double max_deviation = 0;
};

/// Deterministic kappa = tau = 0 run compared against the closed-form flow.
ControlReport deterministic_control(BlockCase c, int n, Complex z0, double horizon, double dt,
                                    int checkpoints);

/// Stream seed for path p, independent of scheduling.
std::uint64_t path_stream_seed(std::uint64_t seed, long path);

} // namespace wzwsle

#endif
