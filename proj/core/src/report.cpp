#include "wzwsle/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace wzwsle {

std::string format_double(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string labels_str(const Weight& w)
{
  std::string s;
  for (std::size_t i = 0; i < w.labels.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(w.labels[i]);
  }
  return s;
}

} // namespace

std::string conditions_csv(const std::vector<AdmissibleTriple>& rows)
{
  std::ostringstream out;
  out << "n,k,labels,kappa_num,kappa_den,tau_num,tau_den,rho_num,rho_den,degenerate\n";
  for (const auto& r : rows) {
    const Rational tau = r.solution.tau();
    const Rational rho = r.solution.rho();
    out << r.n << ',' << r.k << ',' << labels_str(r.weight) << ','
        << rat_num(r.solution.kappa).str() << ',' << rat_den(r.solution.kappa).str() << ','
        << rat_num(tau).str() << ',' << rat_den(tau).str() << ',' << rat_num(rho).str() << ','
        << rat_den(rho).str() << ',' << (r.solution.degenerate ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string blocks_csv(const std::vector<BlockResidualRow>& rows, std::uint64_t seed)
{
  std::ostringstream out;
  out << "# seed = " << seed << "\n";
  out << "re_x,im_x,kz_residual,kz3c_residual,kernel_residual\n";
  for (const auto& r : rows)
    out << format_double(r.x.real()) << ',' << format_double(r.x.imag()) << ','
        << format_double(r.kz_residual) << ',' << format_double(r.kz3c_residual) << ','
        << format_double(r.kernel_residual) << '\n';
  return out.str();
}

std::string mc_report_csv(const McReport& rep, const SimConfig& cfg)
{
  std::ostringstream out;
  out << "# seed = " << rep.seed << "\n";
  out << "# paths = " << rep.paths_total << ", used = " << rep.paths_used
      << ", discarded = " << rep.discarded << "\n";
  out << "# kappa = " << format_double(cfg.kappa) << ", tau = " << format_double(cfg.tau);
  if (cfg.rho_variant) out << ", rho = " << format_double(cfg.rho) << ", y0 = " << format_double(cfg.y0);
  out << "\n";
  out << "# T = " << format_double(rep.horizon) << ", dt = " << format_double(rep.dt) << "\n";
  out << "# verdict = " << (!rep.reliable ? "UNRELIABLE" : (rep.pass ? "PASS" : "FAIL")) << "\n";
  out << "component,part,m0,mean,se,z\n";
  for (int c = 0; c < 2; ++c) {
    const auto& s = rep.components[c];
    out << (c + 1) << ",re," << format_double(s.m0.real()) << ',' << format_double(s.mean.real())
        << ',' << format_double(s.se_re) << ',' << format_double(s.z_re) << '\n';
    out << (c + 1) << ",im," << format_double(s.m0.imag()) << ',' << format_double(s.mean.imag())
        << ',' << format_double(s.se_im) << ',' << format_double(s.z_im) << '\n';
  }
  return out.str();
}

std::string drift_svg(const McReport& rep)
{
  const double width = 640, height = 400, ml = 60, mr = 20, mt = 20, mb = 40;
  const double pw = width - ml - mr, ph = height - mt - mb;
  const double tmax = rep.checkpoint_times.empty() ? 1.0 : rep.checkpoint_times.back();

  double ymax = 1e-12;
  std::vector<std::array<double, 2>> drift(rep.checkpoint_times.size());
  for (std::size_t i = 0; i < rep.checkpoint_times.size(); ++i)
    for (int c = 0; c < 2; ++c) {
      drift[i][c] = std::abs(rep.checkpoint_means[i][c] - rep.components[c].m0);
      ymax = std::max({ymax, drift[i][c], 3.0 * rep.checkpoint_se[i][c]});
    }
  ymax *= 1.15;

  auto px = [&](double t) { return ml + pw * t / tmax; };
  auto py = [&](double v) { return mt + ph * (1.0 - v / ymax); };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<line x1='" << ml << "' y1='" << mt + ph << "' x2='" << ml + pw << "' y2='" << mt + ph
      << "' stroke='black'/>\n";
  svg << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << mt + ph
      << "' stroke='black'/>\n";
  svg << "<text x='" << ml + pw / 2 << "' y='" << height - 8
      << "' font-size='12' text-anchor='middle'>t</text>\n";
  svg << "<text x='14' y='" << mt + ph / 2
      << "' font-size='12' text-anchor='middle' transform='rotate(-90 14 " << mt + ph / 2
      << ")'>|mean(M_t) - M_0|</text>\n";
  svg << "<text x='" << ml - 6 << "' y='" << mt + 4
      << "' font-size='10' text-anchor='end'>" << format_double(ymax) << "</text>\n";
  svg << "<text x='" << ml + pw << "' y='" << mt + ph + 14
      << "' font-size='10' text-anchor='middle'>" << format_double(tmax) << "</text>\n";

  const char* colors[2] = {"#1f77b4", "#d62728"};
  for (int c = 0; c < 2; ++c) {
    svg << "<polyline fill='none' stroke='" << colors[c] << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < rep.checkpoint_times.size(); ++i)
      svg << px(rep.checkpoint_times[i]) << ',' << py(drift[i][c]) << ' ';
    svg << "'/>\n";
    svg << "<polyline fill='none' stroke='" << colors[c]
        << "' stroke-width='1' stroke-dasharray='4 3' points='";
    for (std::size_t i = 0; i < rep.checkpoint_times.size(); ++i)
      svg << px(rep.checkpoint_times[i]) << ',' << py(3.0 * rep.checkpoint_se[i][c]) << ' ';
    svg << "'/>\n";
  }
  svg << "<text x='" << ml + 8 << "' y='" << mt + 14
      << "' font-size='11' fill='#1f77b4'>component 1 (dashed: 3 SE)</text>\n";
  svg << "<text x='" << ml + 8 << "' y='" << mt + 28
      << "' font-size='11' fill='#d62728'>component 2 (dashed: 3 SE)</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

} // namespace wzwsle
