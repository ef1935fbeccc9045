#include "wzwsle/sle_sim.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace wzwsle {

namespace {

ScalarPathState make_scalar_state(Complex z0, bool rho_variant, double y0)
{
  if (z0.imag() <= 0) throw std::invalid_argument("initial bulk point must lie in the upper half-plane");
  ScalarPathState s;
  s.w1 = z0;
  s.w2 = std::conj(z0);
  s.log_w1 = std::log(s.w1);
  s.log_w2 = std::log(s.w2);
  s.log_w21 = std::log(s.w2 - s.w1);
  s.rho_variant = rho_variant;
  if (rho_variant) {
    if (y0 <= 0) throw std::invalid_argument("boundary target y0 must be positive");
    s.y = y0;
    s.log_y = std::log(y0);
    s.log_yw1 = std::log(y0 - s.w1);
    s.log_yw2 = std::log(y0 - s.w2);
  }
  return s;
}

void scalar_step(ScalarPathState& s, double dt, double dxi, double kappa, double rho,
                 double cutoff)
{
  if (!s.alive) return;
  const Complex w1 = s.w1, w2 = s.w2;
  const double shift = s.rho_variant ? rho / s.y : 0.0;
  const double sq = std::sqrt(kappa);
  const Complex nw1 = w1 + (2.0 / w1 + shift) * dt - sq * dxi;
  const Complex nw2 = w2 + (2.0 / w2 + shift) * dt - sq * dxi;
  double ny = s.y;
  if (s.rho_variant) ny = s.y + (2.0 + rho) / s.y * dt - sq * dxi;
  if (std::abs(nw1) < cutoff || std::abs(nw2) < cutoff || (s.rho_variant && ny < cutoff)) {
    s.alive = false;
    return;
  }
  s.l1 += std::log(1.0 - 2.0 * dt / (w1 * w1));
  s.l2 += std::log(1.0 - 2.0 * dt / (w2 * w2));
  s.log_w1 += std::log(nw1 / w1);
  s.log_w2 += std::log(nw2 / w2);
  s.log_w21 += std::log((nw2 - nw1) / (w2 - w1));
  if (s.rho_variant) {
    s.log_yw1 += std::log((ny - nw1) / (s.y - w1));
    s.log_yw2 += std::log((ny - nw2) / (s.y - w2));
    s.log_y = std::log(ny);
    s.y = ny;
  }
  s.w1 = nw1;
  s.w2 = nw2;
  s.t += dt;
}

/// Scalar factor times F0, i.e. the block with all fractional powers taken on
/// the tracked branch; with phi = I this is the observable itself.
Eigen::Vector2cd scalar_block_components(const OnePointBlock& b, const ScalarPathState& s)
{
  const double h = to_double(b.h_lambda);
  Complex log_x, log_1mx, scale, x;
  if (!s.rho_variant) {
    log_x = s.log_w1 - s.log_w2;
    log_1mx = s.log_w21 - s.log_w2;
    x = s.w1 / s.w2;
    scale = std::exp(h * (s.l1 + s.l2) - 2.0 * h * s.log_w2);
  } else {
    log_x = s.log_w1 - s.log_w2 - s.log_yw1 + s.log_yw2;
    log_1mx = Complex(s.log_y) + s.log_w21 - s.log_yw1 - s.log_w2;
    x = (s.w1 * (s.y - s.w2)) / (s.w2 * (s.y - s.w1));
    scale = std::exp(h * (s.l1 + s.l2) + 2.0 * h * (Complex(s.log_y) - s.log_yw1 - s.log_w2));
  }
  const Complex pref = std::exp(to_double(b.alpha) * log_x + to_double(b.beta) * log_1mx);
  return (scale * pref) * block_f0(b, x);
}

template <class SmallMat, class BigMat>
void gauge_step_impl(BigMat& phi, const std::vector<SmallMat>& t1, const std::vector<SmallMat>& t2,
                     const BigMat& tbulk, double casimir, Complex c1, Complex c2, double tau,
                     double dt, const double* dtheta)
{
  const int n = static_cast<int>(t1[0].rows());
  const int dg = static_cast<int>(t1.size());
  SmallMat a = SmallMat::Zero(n, n), b = SmallMat::Zero(n, n);
  for (int g = 0; g < dg; ++g) {
    a += dtheta[g] * t1[g];
    b += dtheta[g] * t2[g];
  }
  const double half_tau_dt = 0.5 * tau * dt;
  BigMat u = (2.0 * half_tau_dt * c1 * c2) * tbulk;
  u.diagonal().array() += 1.0 + half_tau_dt * casimir * (c1 * c1 + c2 * c2);
  const double sq = std::sqrt(tau);
  const Complex f1 = sq * c1, f2 = sq * c2;
  for (int p = 0; p < n; ++p)
    for (int pp = 0; pp < n; ++pp) {
      const Complex v = f1 * a(p, pp);
      if (v == 0.0) continue;
      for (int q = 0; q < n; ++q) u(p * n + q, pp * n + q) += v;
    }
  for (int q = 0; q < n; ++q)
    for (int qq = 0; qq < n; ++qq) {
      const Complex v = f2 * b(q, qq);
      if (v == 0.0) continue;
      for (int p = 0; p < n; ++p) u(p * n + q, p * n + qq) += v;
    }
  phi = (phi * u).eval();
}

template <class BigMat, class SliceMat>
Eigen::Vector2cd project_impl(const BigMat& phi, const SliceMat& s1, const SliceMat& s2,
                              const Eigen::Vector2cd& f)
{
  const auto y = (f(0) * s1 + f(1) * s2).eval();
  const auto x = (phi * y).eval();
  return {(s1.conjugate().cwiseProduct(x)).sum(), (s2.conjugate().cwiseProduct(x)).sum()};
}

std::uint64_t splitmix64(std::uint64_t z)
{
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

} // namespace

std::uint64_t path_stream_seed(std::uint64_t seed, long path)
{
  return splitmix64(splitmix64(seed) ^ (static_cast<std::uint64_t>(path) * 0xD1342543DE82EF95ull + 1));
}

OnePointSystem::OnePointSystem(BlockCase c, int n)
    : m_block(make_one_point_block(c, n)),
      m_space(std::make_shared<InvariantSpace>(block_invariant_case(c), n))
{
  m_bulk_dim = n * n;
  m_gen1 = m_space->system().leg(1).matrices;
  m_gen2 = m_space->system().leg(2).matrices;
  m_bulk_coupling = Eigen::MatrixXcd::Zero(m_bulk_dim, m_bulk_dim);
  for (std::size_t a = 0; a < m_gen1.size(); ++a) m_bulk_coupling += kron(m_gen1[a], m_gen2[a]);
  m_bulk_casimir = to_double(casimir_value(fundamental_weight(n)));

  const auto& dims = m_space->system().leg_dims();
  const int d0 = dims[0], d3 = dims[3];
  m_s1.resize(m_bulk_dim, d0 * d3);
  m_s2.resize(m_bulk_dim, d0 * d3);
  const auto fill = [&](const Eigen::VectorXcd& v, Eigen::MatrixXcd& s) {
    for (int i0 = 0; i0 < d0; ++i0)
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
          for (int i3 = 0; i3 < d3; ++i3)
            s(i1 * n + i2, i0 * d3 + i3) =
                v(((static_cast<long>(i0) * n + i1) * n + i2) * d3 + i3);
  };
  fill(m_space->v1(), m_s1);
  fill(m_space->v2(), m_s2);
}

Eigen::Vector2cd OnePointSystem::project(const Eigen::MatrixXcd& phi,
                                         const Eigen::Vector2cd& f) const
{
  return project_impl(phi, m_s1, m_s2, f);
}

PathState make_initial_state(const OnePointSystem& sys, Complex z0, bool rho_variant, double y0)
{
  PathState st;
  st.s = make_scalar_state(z0, rho_variant, y0);
  st.phi = Eigen::MatrixXcd::Identity(sys.bulk_dim(), sys.bulk_dim());
  return st;
}

void step_sle(PathState& st, double dt, double dxi, double kappa, double cutoff)
{
  if (st.s.rho_variant)
    throw std::invalid_argument("step_sle: state tracks a boundary target, use step_sle_rho");
  scalar_step(st.s, dt, dxi, kappa, 0.0, cutoff);
}

void step_sle_rho(PathState& st, double dt, double dxi, double kappa, double rho, double cutoff)
{
  if (!st.s.rho_variant)
    throw std::invalid_argument("step_sle_rho: state does not track a boundary target");
  scalar_step(st.s, dt, dxi, kappa, rho, cutoff);
}

void step_gauge(const OnePointSystem& sys, PathState& st, double dt, const double* dtheta,
                double tau)
{
  if (!st.s.alive) return;
  if (tau == 0.0) return;
  const Complex inv_y = st.s.rho_variant ? Complex(1.0 / st.s.y) : Complex(0.0);
  gauge_step_impl(st.phi, sys.gen_lambda(), sys.gen_lambda_conj(), sys.bulk_coupling(),
                  sys.bulk_casimir(), 1.0 / st.s.w1 - inv_y, 1.0 / st.s.w2 - inv_y, tau, dt,
                  dtheta);
}

Eigen::Vector2cd observable(const OnePointSystem& sys, const PathState& st)
{
  if (!st.s.alive) throw std::runtime_error("observable: path was discarded");
  return sys.project(st.phi, scalar_block_components(sys.block(), st.s));
}

Eigen::Vector2cd drift_only_observable(const OnePointSystem& sys, Complex z0, double t)
{
  Complex w = std::sqrt(z0 * z0 + 4.0 * t);
  if (w.imag() < 0) w = -w;
  if (w.imag() <= 0) throw std::invalid_argument("drift_only_observable: point swallowed");
  ScalarPathState s;
  s.t = t;
  s.w1 = w;
  s.w2 = std::conj(w);
  s.log_w1 = std::log(w);
  s.log_w2 = std::log(s.w2);
  s.log_w21 = Complex(std::log(2.0 * w.imag()), -M_PI / 2.0);
  s.l1 = std::log(z0) - std::log(w);
  s.l2 = std::conj(s.l1);
  return scalar_block_components(sys.block(), s);
}

namespace {

struct ChunkAccum {
  std::vector<std::array<double, 2>> sum_re, sum_im, sum_re2, sum_im2; // per checkpoint
  std::vector<long> count;
  long discarded = 0;

  explicit ChunkAccum(std::size_t ncp)
      : sum_re(ncp, {0, 0}), sum_im(ncp, {0, 0}), sum_re2(ncp, {0, 0}), sum_im2(ncp, {0, 0}),
        count(ncp, 0)
  {
  }
  void merge(const ChunkAccum& o)
  {
    for (std::size_t i = 0; i < count.size(); ++i) {
      for (int c = 0; c < 2; ++c) {
        sum_re[i][c] += o.sum_re[i][c];
        sum_im[i][c] += o.sum_im[i][c];
        sum_re2[i][c] += o.sum_re2[i][c];
        sum_im2[i][c] += o.sum_im2[i][c];
      }
      count[i] += o.count[i];
    }
    discarded += o.discarded;
  }
};

template <class SmallMat, class BigMat, class SliceMat>
struct EngineData {
  std::vector<SmallMat> t1, t2;
  BigMat tbulk;
  SliceMat s1, s2;
  double casimir = 0;
  int dim_g = 0;

  explicit EngineData(const OnePointSystem& sys)
  {
    const int n = sys.n(), n2 = sys.bulk_dim();
    for (const auto& m : sys.gen_lambda()) t1.push_back(SmallMat(m));
    for (const auto& m : sys.gen_lambda_conj()) t2.push_back(SmallMat(m));
    tbulk = BigMat(sys.bulk_coupling());
    s1 = SliceMat(sys.slice(0));
    s2 = SliceMat(sys.slice(1));
    casimir = sys.bulk_casimir();
    dim_g = sys.algebra_dim();
    (void)n;
    (void)n2;
  }
};

template <class SmallMat, class BigMat, class SliceMat>
void run_chunk(const OnePointSystem& sys, const SimConfig& cfg,
               const EngineData<SmallMat, BigMat, SliceMat>& eng, long first, long last,
               int nsteps, const std::vector<int>& obs_steps, ChunkAccum& acc)
{
  const double sqdt = std::sqrt(cfg.dt);
  const double cutoff = cfg.cutoff_factor * sqdt;
  const std::size_t ncp = obs_steps.size();
  std::vector<double> theta(eng.dim_g);
  std::vector<Eigen::Vector2cd> obs(ncp);
  const bool with_gauge = cfg.tau != 0.0;
  const BigMat identity = BigMat::Identity(eng.tbulk.rows(), eng.tbulk.cols());

  for (long p = first; p < last; ++p) {
    std::mt19937_64 rng(path_stream_seed(cfg.seed, p));
    std::normal_distribution<double> normal;
    ScalarPathState s = make_scalar_state(cfg.z0, cfg.rho_variant, cfg.y0);
    BigMat phi = identity;
    std::size_t next_obs = 0;
    bool stopped = false;
    for (int step = 0; step < nsteps; ++step) {
      const double dxi = sqdt * normal(rng);
      if (with_gauge)
        for (int g = 0; g < eng.dim_g; ++g) theta[g] = sqdt * normal(rng);
      ScalarPathState trial = s;
      scalar_step(trial, cfg.dt, dxi, cfg.kappa, cfg.rho, cutoff);
      if (!trial.alive) {
        // stopped at the singular cutoff; the observable freezes at the
        // stopping time
        stopped = true;
        break;
      }
      if (with_gauge) {
        const Complex inv_y = s.rho_variant ? Complex(1.0 / s.y) : Complex(0.0);
        gauge_step_impl(phi, eng.t1, eng.t2, eng.tbulk, eng.casimir, 1.0 / s.w1 - inv_y,
                        1.0 / s.w2 - inv_y, cfg.tau, cfg.dt, theta.data());
      }
      s = trial;
      while (next_obs < ncp && step + 1 == obs_steps[next_obs]) {
        obs[next_obs] = project_impl(phi, eng.s1, eng.s2, scalar_block_components(sys.block(), s));
        ++next_obs;
      }
    }
    if (stopped) {
      const Eigen::Vector2cd frozen =
          project_impl(phi, eng.s1, eng.s2, scalar_block_components(sys.block(), s));
      for (std::size_t i = next_obs; i < ncp; ++i) obs[i] = frozen;
      ++acc.discarded;
    }
    for (std::size_t i = 0; i < ncp; ++i) {
      for (int c = 0; c < 2; ++c) {
        const double re = obs[i](c).real(), im = obs[i](c).imag();
        acc.sum_re[i][c] += re;
        acc.sum_im[i][c] += im;
        acc.sum_re2[i][c] += re * re;
        acc.sum_im2[i][c] += im * im;
      }
      ++acc.count[i];
    }
  }
}

template <class SmallMat, class BigMat, class SliceMat>
McReport run_mc(const OnePointSystem& sys, const SimConfig& cfg)
{
  const EngineData<SmallMat, BigMat, SliceMat> eng(sys);
  const int nsteps = static_cast<int>(std::llround(cfg.horizon / cfg.dt));
  if (nsteps <= 0) throw std::invalid_argument("mc_martingale_test: horizon shorter than dt");

  const int ncp = std::max(1, cfg.checkpoints);
  std::vector<int> obs_steps;
  for (int i = 1; i <= ncp; ++i) {
    const int s = static_cast<int>(std::llround(static_cast<double>(nsteps) * i / ncp));
    if (obs_steps.empty() || s > obs_steps.back()) obs_steps.push_back(std::max(1, s));
  }
  if (obs_steps.back() != nsteps) obs_steps.push_back(nsteps);

  const long chunk_size = 512;
  const long nchunks = (cfg.paths + chunk_size - 1) / chunk_size;
  std::vector<ChunkAccum> chunks(nchunks, ChunkAccum(obs_steps.size()));

  int nthreads = cfg.threads > 0 ? cfg.threads
                                 : static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  std::atomic<long> next{0};
  auto worker = [&] {
    while (true) {
      const long c = next.fetch_add(1);
      if (c >= nchunks) break;
      const long first = c * chunk_size;
      const long last = std::min(cfg.paths, first + chunk_size);
      run_chunk(sys, cfg, eng, first, last, nsteps, obs_steps, chunks[c]);
    }
  };
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ChunkAccum total(obs_steps.size());
  for (const auto& c : chunks) total.merge(c);

  const Eigen::Vector2cd m0 =
      scalar_block_components(sys.block(), make_scalar_state(cfg.z0, cfg.rho_variant, cfg.y0));

  McReport rep;
  rep.paths_total = cfg.paths;
  rep.discarded = total.discarded;
  rep.paths_used = total.count.back();
  rep.dt = cfg.dt;
  rep.horizon = cfg.horizon;
  rep.seed = cfg.seed;
  const std::size_t fin = obs_steps.size() - 1;
  for (int c = 0; c < 2; ++c) {
    ComponentStats cs;
    cs.m0 = m0(c);
    const long nn = total.count[fin];
    if (nn < 2) throw std::runtime_error("mc_martingale_test: all paths discarded");
    const double mre = total.sum_re[fin][c] / nn, mim = total.sum_im[fin][c] / nn;
    cs.mean = Complex(mre, mim);
    const double vre = std::max(0.0, (total.sum_re2[fin][c] - nn * mre * mre) / (nn - 1));
    const double vim = std::max(0.0, (total.sum_im2[fin][c] - nn * mim * mim) / (nn - 1));
    cs.se_re = std::sqrt(vre / nn);
    cs.se_im = std::sqrt(vim / nn);
    auto zscore = [](double diff, double se) {
      if (se > 0) return std::abs(diff) / se;
      return std::abs(diff) < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
    };
    cs.z_re = zscore(mre - m0(c).real(), cs.se_re);
    cs.z_im = zscore(mim - m0(c).imag(), cs.se_im);
    rep.components[c] = cs;
    rep.max_z = std::max({rep.max_z, cs.z_re, cs.z_im});
  }
  rep.pass = rep.max_z < 3.0;
  rep.reliable =
      static_cast<double>(rep.discarded) <= 0.05 * static_cast<double>(rep.paths_total);

  for (std::size_t i = 0; i < obs_steps.size(); ++i) {
    rep.checkpoint_times.push_back(obs_steps[i] * cfg.dt);
    const long nn = std::max<long>(1, total.count[i]);
    std::array<Complex, 2> mean;
    std::array<double, 2> se;
    for (int c = 0; c < 2; ++c) {
      const double mre = total.sum_re[i][c] / nn, mim = total.sum_im[i][c] / nn;
      mean[c] = Complex(mre, mim);
      const double vre = std::max(0.0, (total.sum_re2[i][c] - nn * mre * mre) / std::max<long>(1, nn - 1));
      const double vim = std::max(0.0, (total.sum_im2[i][c] - nn * mim * mim) / std::max<long>(1, nn - 1));
      se[c] = std::sqrt(std::max(vre, vim) / nn);
    }
    rep.checkpoint_means.push_back(mean);
    rep.checkpoint_se.push_back(se);
    rep.checkpoint_counts.push_back(total.count[i]);
  }
  return rep;
}

} // namespace

McReport mc_martingale_test(const SimConfig& cfg)
{
  const OnePointSystem sys(cfg.block_case, cfg.n);
  using Eigen::Dynamic;
  switch (cfg.n) {
    case 2:
      return run_mc<Eigen::Matrix<Complex, 2, 2>, Eigen::Matrix<Complex, 4, 4>,
                    Eigen::Matrix<Complex, 4, Dynamic>>(sys, cfg);
    case 3:
      return run_mc<Eigen::Matrix<Complex, 3, 3>, Eigen::Matrix<Complex, 9, 9>,
                    Eigen::Matrix<Complex, 9, Dynamic>>(sys, cfg);
    case 4:
      return run_mc<Eigen::Matrix<Complex, 4, 4>, Eigen::Matrix<Complex, 16, 16>,
                    Eigen::Matrix<Complex, 16, Dynamic>>(sys, cfg);
    default:
      return run_mc<Eigen::MatrixXcd, Eigen::MatrixXcd, Eigen::MatrixXcd>(sys, cfg);
  }
}

ControlReport deterministic_control(BlockCase c, int n, Complex z0, double horizon, double dt,
                                    int checkpoints)
{
  const OnePointSystem sys(c, n);
  const long nsteps = std::llround(horizon / dt);
  const long stride = std::max<long>(1, nsteps / std::max(1, checkpoints));
  PathState st = make_initial_state(sys, z0);
  ControlReport rep;
  for (long step = 0; step < nsteps; ++step) {
    step_sle(st, dt, 0.0, 0.0, 0.0);
    if (!st.s.alive) throw std::runtime_error("deterministic_control: path discarded");
    if ((step + 1) % stride == 0 || step + 1 == nsteps) {
      const double t = (step + 1) * dt;
      const Eigen::Vector2cd sim = observable(sys, st);
      const Eigen::Vector2cd exact = drift_only_observable(sys, z0, t);
      const double dev = (sim - exact).cwiseAbs().maxCoeff() / exact.cwiseAbs().maxCoeff();
      rep.times.push_back(t);
      rep.deviations.push_back(dev);
      rep.max_deviation = std::max(rep.max_deviation, dev);
    }
  }
  return rep;
}

} // namespace wzwsle
