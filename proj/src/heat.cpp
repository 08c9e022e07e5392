#include "besselorbit/heat.hpp"

#include <cmath>
#include <sstream>

namespace besselorbit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace

SpectralMeasureSpec heat_measure(const HeatMeasureParams& params) {
  if (!(params.delta > 0)) {
    throw MeasureError("heat_measure: delta must be positive");
  }
  // Density of 2*Leb(sqrt(-log(.)/delta)) on [e^{-delta/4}, 1]; blows up
  // like (1 - t)^{-1/2} at the right endpoint.
  std::ostringstream density;
  density.precision(17);
  density << "1/(t*sqrt(" << params.delta << ")*sqrt(-log(t)))";
  IntervalDensityComponent comp;
  comp.lower = std::exp(-params.delta / 4.0);
  comp.upper = 1.0;
  comp.density = DensityExpr::parse(density.str(), {"t"});
  comp.singular_upper = true;
  return SpectralMeasureSpec{{comp}};
}

double heat_tail(double delta, double eps) {
  if (!(delta > 0)) {
    throw MeasureError("heat_tail: delta must be positive");
  }
  if (!(eps > 0.0) || eps > 1.0 - std::exp(-delta / 4.0)) {
    throw MeasureError("heat_tail: eps must lie in (0, 1 - e^{-delta/4}]");
  }
  return 2.0 / std::sqrt(delta) * std::sqrt(std::log1p(eps / (1.0 - eps)));
}

double heat_moment(double delta, unsigned k) {
  if (!(delta > 0)) {
    throw MeasureError("heat_moment: delta must be positive");
  }
  if (k == 0) return 1.0;
  const double a = static_cast<double>(k) * delta;
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-14;
  auto integrand = [&](double xi) { return std::exp(-a * xi * xi); };
  return 2.0 * integrate(integrand, 0.0, 0.5, cfg);
}

double heat_moment_closed(double delta, unsigned k) {
  if (k == 0) return 1.0;
  const double a = static_cast<double>(k) * delta;
  return std::sqrt(kPi / a) * std::erf(0.5 * std::sqrt(a));
}

CriterionReport non_bessel_witness(double delta, const CriteriaConfig& cfg) {
  const SpectralMeasureSpec spec = heat_measure({delta});
  CriteriaConfig tight = cfg;
  // The tail values shrink like sqrt(eps); drive the quadrature by the
  // relative tolerance so the closed-form cross-check stays meaningful.
  tight.quad.abs_tol = std::min(cfg.quad.abs_tol, 1e-16);
  CriterionReport report = tail_ratio_sup(spec, tight);
  const double eps_max = 1.0 - std::exp(-delta / 4.0);
  for (auto& sample : report.grid) {
    if (sample.param <= eps_max) {
      sample.aux = heat_tail(delta, sample.param) / sample.param;
    }
  }
  report.note = "heat-semigroup measure, delta = " + std::to_string(delta) +
                "; aux column holds the closed-form tail ratio";
  return report;
}

}  // namespace besselorbit
