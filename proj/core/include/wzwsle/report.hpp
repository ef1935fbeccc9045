#ifndef WZWSLE_REPORT_HPP
#define WZWSLE_REPORT_HPP

#include "wzwsle/conditions.hpp"
#include "wzwsle/sle_sim.hpp"

#include <string>
#include <vector>

namespace wzwsle {

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// CSV of admissible triples, one row per solution:
/// n,k,labels,kappa_num,kappa_den,tau_num,tau_den,rho_num,rho_den,degenerate
std::string conditions_csv(const std::vector<AdmissibleTriple>& rows);

struct BlockResidualRow {
  Complex x;
  double kz_residual = 0;
  double kz3c_residual = 0;
  double kernel_residual = 0;
};

/// CSV of block residuals sampled on the unit circle:
/// re_x,im_x,kz_residual,kz3c_residual,kernel_residual
std::string blocks_csv(const std::vector<BlockResidualRow>& rows, std::uint64_t seed);

/// CSV of the Monte Carlo report: header comments with the full
/// configuration (seed included), then one row per component and part.
std::string mc_report_csv(const McReport& rep, const SimConfig& cfg);

/// Drift-vs-time SVG: per-component |mean(M_t) - M_0| with a 3 SE band.
std::string drift_svg(const McReport& rep);

} // namespace wzwsle

#endif
