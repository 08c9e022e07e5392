#include "besselorbit/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "besselorbit/gram.hpp"

namespace besselorbit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();

const char* citation(const std::string& id) {
  if (id == "support_radius") {
    return "necessary: supp(mu) must lie in the closed unit disc";
  }
  if (id == "lipschitz_constant_circle") {
    return "unitary criterion: mu Lipschitz w.r.t. normalized arc; the "
           "constant is ess-sup of the circle density";
  }
  if (id == "tail_ratio_sup") {
    return "selfadjoint criterion: mu(|t| > 1-eps) = O(eps)";
  }
  if (id == "moment_decay_sup") {
    return "selfadjoint criterion: <A^k x, x> = O(1/k)";
  }
  if (id == "carleson_constant") {
    return "Carleson criterion: mu(closed disc cap B_r(z)) <= C r for "
           "circle-centered balls";
  }
  if (id == "carleson_embedding_sup") {
    return "Carleson embedding: sup_z int (1-|z|^2)/|1-conj(z)w|^2 dmu(w) "
           "finite";
  }
  if (id == "resolvent_growth_sup") {
    return "resolvent criterion: ||(A-lambda)^{-1}x||^2 = O(1/||lambda|^2-1|)";
  }
  if (id == "sufficient_integral_bound") {
    return "sufficient: (1-|z|^2)^{-1} in L^1(mu); the integral is a Bessel "
           "bound";
  }
  if (id == "compact_support_bound") {
    return "sufficient: support radius nu < 1 gives the bound "
           "||x||^2/(1-nu^2)";
  }
  if (id == "gram_profile") {
    return "finite Gram sections; ||G_n|| is a lower bound for the Bessel "
           "bound";
  }
  return "";
}

CriterionReport make_report(std::string id) {
  CriterionReport report;
  report.citation = citation(id);
  report.id = std::move(id);
  return report;
}

std::vector<double> atom_angles(const SpectralMeasureSpec& spec) {
  std::vector<double> angles;
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        if (a.mass > 0 && std::abs(a.location) > 0) {
          angles.push_back(std::arg(a.location));
        }
      }
    }
  }
  return angles;
}

struct AngularSup {
  double max = -kInf;
  double min = kInf;       // over the equispaced coarse grid only
  double argmax = 0.0;
};

// Maximize fn over circle angles: equispaced coarse grid (plus seeds), then
// local bisection refinement of the top candidates down to target_spacing.
template <class Fn>
AngularSup angular_sup(Fn&& fn, double target_spacing,
                       const std::vector<double>& seeds,
                       const CriteriaConfig& cfg) {
  AngularSup result;
  const std::size_t wanted = static_cast<std::size_t>(
      std::ceil(kTwoPi / std::max(target_spacing, 1e-9)));
  const std::size_t coarse = std::min(wanted, cfg.coarse_centers);
  const double spacing = kTwoPi / static_cast<double>(coarse);
  std::vector<std::pair<double, double>> samples;  // (value, angle)
  samples.reserve(coarse + seeds.size());
  for (std::size_t i = 0; i < coarse; ++i) {
    const double theta = spacing * static_cast<double>(i);
    const double value = fn(theta);
    samples.emplace_back(value, theta);
    result.min = std::min(result.min, value);
    if (value > result.max) {
      result.max = value;
      result.argmax = theta;
    }
  }
  for (double theta : seeds) {
    const double value = fn(theta);
    samples.emplace_back(value, theta);
    if (value > result.max) {
      result.max = value;
      result.argmax = theta;
    }
  }
  if (spacing <= target_spacing) {
    return result;
  }
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  const int top = std::min<int>(cfg.refine_top, static_cast<int>(samples.size()));
  for (int c = 0; c < top; ++c) {
    double center = samples[static_cast<std::size_t>(c)].second;
    double best = samples[static_cast<std::size_t>(c)].first;
    for (double step = 0.5 * spacing; step > 0.5 * target_spacing;
         step *= 0.5) {
      for (double offset : {-step, step}) {
        const double theta = center + offset;
        const double value = fn(theta);
        if (value > best) {
          best = value;
          center = theta;
        }
      }
    }
    if (best > result.max) {
      result.max = best;
      result.argmax = center;
    }
  }
  return result;
}

bool has_circle_density(const SpectralMeasureSpec& spec) {
  for (const auto& comp : spec.components) {
    if (std::holds_alternative<CircleDensityComponent>(comp)) return true;
  }
  return false;
}

bool has_disk_component(const SpectralMeasureSpec& spec) {
  for (const auto& comp : spec.components) {
    if (std::holds_alternative<DiskDensityComponent>(comp)) return true;
  }
  return false;
}

double circle_density_total(const SpectralMeasureSpec& spec, double theta) {
  double sum = 0.0;
  for (const auto& comp : spec.components) {
    if (const auto* c = std::get_if<CircleDensityComponent>(&comp)) {
      double t = std::fmod(theta, kTwoPi);
      if (t < 0) t += kTwoPi;
      sum += c->density.eval(std::span<const double>(&t, 1));
    }
  }
  return sum;
}

// Octave-tail convergence test for int f(t)/(1-t^2) dt near an endpoint at
// +-1: sums octave slices 2^-j-away from the endpoint and demands geometric
// decay; otherwise the integral is declared divergent.
struct TailSumResult {
  bool finite = false;
  double value = 0.0;
};

template <class SliceIntegral>
TailSumResult octave_tail_sum(SliceIntegral&& slice) {
  // slice(a, b) integrates over distances [a, b] from the endpoint.
  TailSumResult result;
  double sum = 0.0;
  double prev = -1.0;
  double piece = 0.0;
  double last_ratio = 1.0;
  int decaying = 0;
  for (int j = 4; j <= 48; ++j) {
    const double hi = std::pow(2.0, -j);
    const double lo = 0.5 * hi;
    piece = slice(lo, hi);
    sum += piece;
    if (prev > 0.0) {
      last_ratio = piece / prev;
      decaying = last_ratio <= 0.85 ? decaying + 1 : 0;
    }
    prev = piece;
  }
  if (decaying >= 4) {
    // Geometric decay established; bound the remaining slices by the
    // geometric series with the last observed ratio.
    const double ratio = std::min(last_ratio, 0.85);
    result.finite = true;
    result.value = sum + piece * ratio / (1.0 - ratio);
  }
  return result;
}

std::vector<double> level_values(const std::vector<GridSample>& grid) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (const auto& sample : grid) values.push_back(sample.value);
  return values;
}

}  // namespace

bool detect_divergence(const std::vector<double>& level_maxima, int window,
                       double step_growth) {
  if (static_cast<int>(level_maxima.size()) < window + 1) return false;
  const std::size_t n = level_maxima.size();
  const std::size_t start = n - 1 - static_cast<std::size_t>(window);
  if (!(level_maxima[start] > 0.0)) return false;
  for (std::size_t i = start; i + 1 < n; ++i) {
    if (level_maxima[i + 1] < level_maxima[i] * (1.0 - 1e-9)) return false;
  }
  const double total = level_maxima[n - 1] / level_maxima[start];
  return total > std::pow(step_growth, window);
}

OperatorClassification classify_operator(const SpectralMeasureSpec& spec) {
  OperatorClassification result;
  result.support_radius = support_radius(spec);
  result.support_violation = result.support_radius > 1.0 + kCircleTol;
  if (supported_on_circle(spec)) {
    result.cls = OperatorClass::kUnitary;
  } else if (supported_on_real_line(spec)) {
    result.cls = OperatorClass::kSelfadjoint;
  } else {
    result.cls = OperatorClass::kNormal;
  }
  return result;
}

CriterionReport lipschitz_constant_circle(const SpectralMeasureSpec& spec,
                                          const CriteriaConfig& cfg) {
  CriterionReport report = make_report("lipschitz_constant_circle");
  if (has_atom_on_circle(spec)) {
    report.constant = kInf;
    report.divergent = true;
    report.certified = true;
    report.note = "an atom on the unit circle is not Lipschitz w.r.t. arc";
    return report;
  }
  if (!has_circle_density(spec)) {
    report.constant = 0.0;
    report.certified = true;
    report.note = "no circle part";
    return report;
  }
  bool all_declared = true;
  double declared_sum = 0.0;
  for (const auto& comp : spec.components) {
    if (const auto* c = std::get_if<CircleDensityComponent>(&comp)) {
      if (c->declared_sup) {
        declared_sum += *c->declared_sup;
      } else {
        all_declared = false;
      }
    }
  }
  if (all_declared) {
    report.constant = declared_sum;
    report.certified = true;
    report.note = "declared essential supremum";
    return report;
  }
  // Grid maximum with one refinement round; an estimate, not a certificate.
  const int n = cfg.lipschitz_grid;
  double best = -kInf;
  double arg_best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double theta = kTwoPi * i / n;
    const double value = circle_density_total(spec, theta);
    if (value > best) {
      best = value;
      arg_best = theta;
    }
  }
  const double coarse_step = kTwoPi / n;
  for (int i = -8; i <= 8; ++i) {
    const double theta = arg_best + coarse_step * i / 8.0;
    best = std::max(best, circle_density_total(spec, theta));
  }
  report.constant = best;
  report.certified = false;
  report.note = "grid estimate of ess-sup (" + std::to_string(n) +
                " points, one refinement round)";
  report.grid.push_back({arg_best, best, 0.0});
  return report;
}

CriterionReport tail_ratio_sup(const SpectralMeasureSpec& spec,
                               const CriteriaConfig& cfg) {
  CriterionReport report = make_report("tail_ratio_sup");
  double sup = 0.0;
  for (int m = 1; m <= cfg.tail_levels; ++m) {
    const double eps = std::pow(2.0, -m);
    const double ratio = tail_mass(spec, eps, cfg.quad) / eps;
    report.grid.push_back({eps, ratio, 0.0});
    sup = std::max(sup, ratio);
  }
  report.constant = sup;
  report.divergent = detect_divergence(level_values(report.grid),
                                       cfg.divergence_window,
                                       cfg.divergence_step_growth);
  return report;
}

CriterionReport moment_decay_sup(const SpectralMeasureSpec& spec,
                                 const CriteriaConfig& cfg) {
  if (!supported_on_real_line(spec)) {
    throw MeasureError("moment_decay_sup: measure must be real-supported");
  }
  CriterionReport report = make_report("moment_decay_sup");
  const unsigned max_k = std::max(64u, cfg.moment_max_k);
  double sup = 0.0;
  double w_last = 0.0, w_decade = 0.0, w_max = 0.0;
  for (unsigned k = 1; k <= max_k; ++k) {
    const double q = moment(spec, k, 0, cfg.quad).real();
    const double w = k * std::fabs(q);
    sup = std::max(sup, w);
    w_max = std::max(w_max, w);
    if (k == std::max(1u, max_k / 10)) w_decade = w;
    if (k == max_k) w_last = w;
    if ((k & (k - 1)) == 0 || k == max_k) {
      report.grid.push_back({static_cast<double>(k), w, q});
    }
  }
  report.constant = sup;
  // Still growing across the last decade of k.
  report.divergent = w_last >= 0.999 * w_max &&
                     w_decade > 0.0 &&
                     w_last > (1.0 + 10.0 * (cfg.divergence_step_growth - 1.0)) *
                                  w_decade;
  return report;
}

CriterionReport carleson_constant(const SpectralMeasureSpec& spec,
                                  const CriteriaConfig& cfg) {
  if (support_radius(spec) > 1.0 + kCircleTol) {
    throw MeasureError("carleson_constant: support must lie in the closed disc");
  }
  CriterionReport report = make_report("carleson_constant");
  const std::vector<double> seeds = atom_angles(spec);
  double sup = 0.0;
  for (int m = 1; m <= cfg.carleson_levels; ++m) {
    const double r = std::pow(2.0, -m);
    auto ratio_at = [&](double theta) {
      return ball_mass(spec, std::polar(1.0, theta), r, cfg.quad) / r;
    };
    const AngularSup level = angular_sup(ratio_at, 0.5 * r, seeds, cfg);
    report.grid.push_back({r, level.max, level.argmax});
    sup = std::max(sup, level.max);
  }
  report.constant = sup;
  report.divergent = detect_divergence(level_values(report.grid),
                                       cfg.divergence_window,
                                       cfg.divergence_step_growth);
  return report;
}

namespace {

// Kernel integral of the embedding criterion over the open-disc part of mu.
double embedding_integral(const SpectralMeasureSpec& spec, Complex z,
                          const QuadratureConfig& quad) {
  const double weight = 1.0 - std::norm(z);
  double sum = 0.0;
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        if (std::abs(a.location) < 1.0 - kCircleTol) {
          sum += a.mass * weight / std::norm(1.0 - std::conj(z) * a.location);
        }
      }
    } else if (const auto* iv = std::get_if<IntervalDensityComponent>(&comp)) {
      const double lo = std::max(iv->lower, -1.0);
      const double hi = std::min(iv->upper, 1.0);
      if (lo < hi) {
        auto integrand = [&](double t) {
          const double vals[1] = {t};
          return iv->density.eval(std::span<const double>(vals, 1)) * weight /
                 std::norm(1.0 - std::conj(z) * t);
        };
        sum += graded_quad<double>(integrand, lo, hi,
                                   iv->singular_lower && lo == iv->lower,
                                   iv->singular_upper && hi == iv->upper, quad);
      }
    } else if (const auto* d = std::get_if<DiskDensityComponent>(&comp)) {
      QuadratureConfig inner = quad;
      inner.abs_tol = quad.abs_tol / 16.0;
      auto outer = [&](double theta) {
        auto radial = [&](double rho) {
          const double vals[2] = {rho, theta};
          return d->density.eval(std::span<const double>(vals, 2)) * rho *
                 weight / std::norm(1.0 - std::conj(z) * std::polar(rho, theta));
        };
        return adaptive_quad<double>(radial, 0.0, 1.0, inner);
      };
      sum += adaptive_quad<double>(outer, 0.0, kTwoPi, quad);
    }
  }
  return sum;
}

}  // namespace

CriterionReport carleson_embedding_sup(const SpectralMeasureSpec& spec,
                                       const CriteriaConfig& cfg) {
  CriterionReport report = make_report("carleson_embedding_sup");
  const std::vector<double> seeds = atom_angles(spec);
  double sup = embedding_integral(spec, Complex(0.0, 0.0), cfg.quad);
  report.grid.push_back({1.0, sup, 0.0});  // param = 1 - |z| at z = 0
  for (int m = 1; m <= cfg.embedding_levels; ++m) {
    const double radius = 1.0 - std::pow(2.0, -m);
    auto value_at = [&](double theta) {
      return embedding_integral(spec, std::polar(radius, theta), cfg.quad);
    };
    const AngularSup level =
        angular_sup(value_at, std::pow(2.0, -m), seeds, cfg);
    report.grid.push_back({std::pow(2.0, -m), level.max, level.argmax});
    sup = std::max(sup, level.max);
  }
  report.constant = sup;
  std::vector<double> maxima = level_values(report.grid);
  maxima.erase(maxima.begin());  // drop the z = 0 sample
  report.divergent = detect_divergence(maxima, cfg.divergence_window,
                                       cfg.divergence_step_growth);
  return report;
}

namespace {

// Repeated-evaluation form of |1-|lambda|^2| * resolvent_norm_sq. Atoms are
// summed directly; circle densities are expanded once into Fourier
// coefficients, turning each evaluation into a Poisson series
//   (1-r^2) * int f(theta)/|e^{i theta}-lambda|^2 dtheta/2pi
//     = c_0 + 2 sum_{d>=1} rho^d Re(conj(c_d) e^{i d phi}),  rho = min(r, 1/r),
// which is exact and cheap even for lambda within 2^-20 of the circle.
// Anything else falls back to quadrature per evaluation.
class ScaledResolvent {
 public:
  ScaledResolvent(const SpectralMeasureSpec& spec, const QuadratureConfig& quad)
      : quad_(quad) {
    for (const auto& comp : spec.components) {
      if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
        for (const auto& a : atoms->atoms) {
          if (a.mass > 0) atoms_.push_back(a);
        }
      } else if (const auto* c = std::get_if<CircleDensityComponent>(&comp)) {
        try {
          auto coeffs = circle_fourier_coeffs(*c, 2048, quad);
          while (coeffs.size() > 1 &&
                 std::abs(coeffs.back()) < 1e-15) {
            coeffs.pop_back();
          }
          series_.push_back(std::move(coeffs));
        } catch (const QuadratureError&) {
          rest_.components.push_back(comp);  // rough density: quadrature path
        }
      } else {
        rest_.components.push_back(comp);
      }
    }
  }

  double operator()(Complex lambda) const {
    const double r = std::abs(lambda);
    const double phi = std::arg(lambda);
    const double scale = std::fabs(1.0 - r * r);
    double sum = 0.0;
    for (const auto& a : atoms_) {
      sum += scale * a.mass / std::norm(a.location - lambda);
    }
    if (!series_.empty()) {
      const double rho = r < 1.0 ? r : 1.0 / r;
      const Complex rotation = std::polar(1.0, phi);
      for (const auto& coeffs : series_) {
        double s = coeffs[0].real();
        Complex phase = rotation;
        double power = rho;
        for (std::size_t d = 1; d < coeffs.size(); ++d) {
          s += 2.0 * power * (std::conj(coeffs[d]) * phase).real();
          phase *= rotation;
          power *= rho;
        }
        sum += s;
      }
    }
    if (!rest_.components.empty()) {
      sum += scale * resolvent_norm_sq(rest_, lambda, quad_);
    }
    return sum;
  }

 private:
  QuadratureConfig quad_;
  std::vector<Atom> atoms_;
  std::vector<std::vector<Complex>> series_;
  SpectralMeasureSpec rest_;
};

}  // namespace

CriterionReport resolvent_growth_sup(const SpectralMeasureSpec& spec,
                                     const CriteriaConfig& cfg) {
  if (support_radius(spec) > 1.0 + kCircleTol) {
    throw MeasureError(
        "resolvent_growth_sup: support must lie in the closed disc");
  }
  CriterionReport report = make_report("resolvent_growth_sup");
  CriteriaConfig tight = cfg;
  tight.quad.rel_tol = std::min(cfg.quad.rel_tol, 1e-11);
  const ScaledResolvent scaled(spec, tight.quad);
  const std::vector<double> seeds = atom_angles(spec);
  const bool unitary = supported_on_circle(spec);
  double sup = 0.0;
  std::vector<double> outer_maxima;
  for (int m = 1; m <= cfg.resolvent_levels; ++m) {
    const double offset = std::pow(2.0, -m);
    auto value_at = [&](double modulus) {
      return [&, modulus](double theta) {
        return scaled(std::polar(modulus, theta));
      };
    };
    const AngularSup outer =
        angular_sup(value_at(1.0 + offset), offset, seeds, tight);
    report.grid.push_back({offset, outer.max, outer.min});
    outer_maxima.push_back(outer.max);
    sup = std::max(sup, outer.max);
    if (unitary) {
      const AngularSup inner =
          angular_sup(value_at(1.0 - offset), offset, seeds, tight);
      report.grid.push_back({-offset, inner.max, inner.min});
      sup = std::max(sup, inner.max);
    }
  }
  report.constant = sup;
  report.divergent = detect_divergence(outer_maxima, cfg.divergence_window,
                                       cfg.divergence_step_growth);
  return report;
}

CriterionReport sufficient_integral_bound(const SpectralMeasureSpec& spec,
                                          const CriteriaConfig& cfg) {
  CriterionReport report = make_report("sufficient_integral_bound");
  report.certified = true;
  double sum = 0.0;
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        if (a.mass <= 0) continue;
        const double r = std::abs(a.location);
        if (r >= 1.0 - kCircleTol) {
          report.constant = kInf;
          report.divergent = true;
          report.note = "atom with |z| >= 1";
          return report;
        }
        sum += a.mass / (1.0 - r * r);
      }
    } else if (const auto* c = std::get_if<CircleDensityComponent>(&comp)) {
      const double mass =
          total_mass(SpectralMeasureSpec{{MeasureComponent(*c)}}, cfg.quad);
      if (mass > 0) {
        report.constant = kInf;
        report.divergent = true;
        report.note = "circle mass: (1-|z|^2)^{-1} is infinite on the circle";
        return report;
      }
    } else if (const auto* iv = std::get_if<IntervalDensityComponent>(&comp)) {
      auto weighted = [&](double a, double b, bool sing_lo, bool sing_hi) {
        auto integrand = [&](double t) {
          const double vals[1] = {t};
          return iv->density.eval(std::span<const double>(vals, 1)) /
                 (1.0 - t * t);
        };
        return graded_quad<double>(integrand, a, b, sing_lo, sing_hi, cfg.quad);
      };
      double lo = iv->lower;
      double hi = iv->upper;
      if (lo < -1.0 || hi > 1.0) {
        report.constant = kInf;
        report.divergent = true;
        report.note = "interval support leaves the closed disc";
        return report;
      }
      const bool touches_hi = hi >= 1.0 - kCircleTol;
      const bool touches_lo = lo <= -1.0 + kCircleTol;
      double inner_lo = touches_lo ? lo + 0.0625 : lo;
      double inner_hi = touches_hi ? hi - 0.0625 : hi;
      if (touches_hi) {
        const auto tail = octave_tail_sum([&](double a, double b) {
          return weighted(hi - b, hi - a, false, false);
        });
        if (!tail.finite) {
          report.constant = kInf;
          report.divergent = true;
          report.note = "integral diverges toward t = 1";
          return report;
        }
        sum += tail.value;  // slices cover (hi - 2^-4, hi)
      }
      if (touches_lo) {
        const auto tail = octave_tail_sum([&](double a, double b) {
          return weighted(lo + a, lo + b, false, false);
        });
        if (!tail.finite) {
          report.constant = kInf;
          report.divergent = true;
          report.note = "integral diverges toward t = -1";
          return report;
        }
        sum += tail.value;
      }
      if (inner_lo < inner_hi) {
        sum += weighted(inner_lo, inner_hi, iv->singular_lower && !touches_lo,
                        iv->singular_upper && !touches_hi);
      }
    } else if (const auto* d = std::get_if<DiskDensityComponent>(&comp)) {
      QuadratureConfig inner = cfg.quad;
      inner.abs_tol = cfg.quad.abs_tol / 16.0;
      auto annulus = [&](double rho_lo, double rho_hi) {
        auto outer = [&](double theta) {
          auto radial = [&](double rho) {
            const double vals[2] = {rho, theta};
            return d->density.eval(std::span<const double>(vals, 2)) * rho /
                   (1.0 - rho * rho);
          };
          return adaptive_quad<double>(radial, rho_lo, rho_hi, inner);
        };
        return adaptive_quad<double>(outer, 0.0, kTwoPi, cfg.quad);
      };
      const auto tail = octave_tail_sum([&](double a, double b) {
        return annulus(1.0 - b, 1.0 - a);
      });
      if (!tail.finite) {
        report.constant = kInf;
        report.divergent = true;
        report.note = "integral diverges toward |z| = 1";
        return report;
      }
      sum += tail.value + annulus(0.0, 1.0 - 0.0625);
    }
  }
  report.constant = sum;
  return report;
}

CriterionReport compact_support_bound(const SpectralMeasureSpec& spec,
                                      const CriteriaConfig& cfg) {
  CriterionReport report = make_report("compact_support_bound");
  report.certified = true;
  const double nu = support_radius(spec);
  if (nu >= 1.0) {
    report.constant = kInf;
    report.divergent = true;
    report.note = "support touches the unit circle";
    return report;
  }
  report.constant = total_mass(spec, cfg.quad) / (1.0 - nu * nu);
  report.grid.push_back({nu, report.constant, 0.0});
  return report;
}

namespace {

void run_report(std::vector<CriterionReport>& reports, const std::string& id,
                const std::function<CriterionReport()>& fn) {
  try {
    reports.push_back(fn());
  } catch (const std::exception& e) {
    CriterionReport failed = make_report(id);
    failed.note = std::string("evaluation failed: ") + e.what();
    reports.push_back(failed);
  }
}

const CriterionReport* find_report(const std::vector<CriterionReport>& reports,
                                   const std::string& id) {
  for (const auto& report : reports) {
    if (report.id == id && report.note.rfind("evaluation failed", 0) != 0) {
      return &report;
    }
  }
  return nullptr;
}

}  // namespace

BesselVerdict verdict(const SpectralMeasureSpec& spec,
                      const CriteriaConfig& cfg) {
  validate(spec);
  BesselVerdict result;
  const OperatorClassification cls = classify_operator(spec);
  result.operator_class = cls.cls;

  CriterionReport radius_report = make_report("support_radius");
  radius_report.constant = cls.support_radius;
  radius_report.certified = true;
  result.reports.push_back(radius_report);

  // Step 1: support outside the closed disc is an immediate refutation;
  // most criteria are not even well defined then.
  if (cls.support_violation) {
    result.status = BesselStatus::kNotBessel;
    result.witness = "support_radius";
    return result;
  }

  auto& reports = result.reports;
  run_report(reports, "lipschitz_constant_circle",
             [&] { return lipschitz_constant_circle(spec, cfg); });
  run_report(reports, "sufficient_integral_bound",
             [&] { return sufficient_integral_bound(spec, cfg); });
  run_report(reports, "compact_support_bound",
             [&] { return compact_support_bound(spec, cfg); });
  if (cls.cls == OperatorClass::kSelfadjoint) {
    run_report(reports, "tail_ratio_sup",
               [&] { return tail_ratio_sup(spec, cfg); });
    run_report(reports, "moment_decay_sup",
               [&] { return moment_decay_sup(spec, cfg); });
  }
  if (cls.cls == OperatorClass::kUnitary ||
      cls.cls == OperatorClass::kNormal) {
    run_report(reports, "resolvent_growth_sup",
               [&] { return resolvent_growth_sup(spec, cfg); });
  }
  if (cls.cls == OperatorClass::kNormal) {
    run_report(reports, "carleson_constant",
               [&] { return carleson_constant(spec, cfg); });
    if (has_disk_component(spec)) {
      run_report(reports, "carleson_embedding_sup",
                 [&] { return carleson_embedding_sup(spec, cfg); });
    }
  }

  // Gram profile: evidence, not a criterion.
  const bool structured =
      supported_on_circle(spec) || supported_on_real_line(spec);
  const auto& sizes = structured ? cfg.gram_sizes : cfg.dense_gram_sizes;
  CriterionReport gram_report = make_report("gram_profile");
  try {
    result.gram_profile =
        bessel_bound_profile(spec, sizes, cfg.norm_tol, cfg.quad);
    for (const auto& [n, norm] : result.gram_profile) {
      gram_report.grid.push_back({static_cast<double>(n), norm, 0.0});
      gram_report.constant = std::max(gram_report.constant, norm);
    }
  } catch (const std::exception& e) {
    gram_report.note = std::string("evaluation failed: ") + e.what();
  }
  reports.push_back(gram_report);

  // Step 2: refutations by a necessary criterion.
  if (has_atom_on_circle(spec)) {
    result.status = BesselStatus::kNotBessel;
    result.witness = "lipschitz_constant_circle";
    return result;
  }
  for (const char* id :
       {"tail_ratio_sup", "carleson_constant", "resolvent_growth_sup"}) {
    if (const auto* report = find_report(reports, id); report && report->divergent) {
      result.status = BesselStatus::kNotBessel;
      result.witness = id;
      return result;
    }
  }

  // Step 3: certified sufficient bounds; report the smallest.
  {
    const CriterionReport* best = nullptr;
    for (const char* id : {"sufficient_integral_bound", "compact_support_bound"}) {
      const auto* report = find_report(reports, id);
      if (report && std::isfinite(report->constant) &&
          (!best || report->constant < best->constant)) {
        best = report;
      }
    }
    if (best) {
      result.status = BesselStatus::kBessel;
      result.bound = best->constant;
      result.bound_is_estimate = false;
      result.witness = best->id;
      return result;
    }
  }

  const double gram_max = gram_report.constant;

  // Steps 4-6: class-specific grid-estimate certificates.
  if (cls.cls == OperatorClass::kUnitary) {
    const auto* lip = find_report(reports, "lipschitz_constant_circle");
    if (lip && std::isfinite(lip->constant)) {
      result.status = BesselStatus::kBessel;
      result.bound = lip->constant;
      result.bound_is_estimate = !lip->certified;
      result.witness = "lipschitz_constant_circle";
      return result;
    }
  }
  if (cls.cls == OperatorClass::kSelfadjoint) {
    const auto* tail = find_report(reports, "tail_ratio_sup");
    if (tail && !tail->divergent && std::isfinite(tail->constant)) {
      result.status = BesselStatus::kBessel;
      result.bound = gram_max;
      result.bound_is_estimate = true;
      result.witness = "tail_ratio_sup";
      return result;
    }
  }
  if (cls.cls == OperatorClass::kNormal) {
    const auto* lip = find_report(reports, "lipschitz_constant_circle");
    const auto* carleson = find_report(reports, "carleson_constant");
    if (lip && std::isfinite(lip->constant) && carleson &&
        !carleson->divergent) {
      result.status = BesselStatus::kBessel;
      result.bound = gram_max;
      result.bound_is_estimate = true;
      result.witness = "carleson_constant";
      return result;
    }
  }
  result.status = BesselStatus::kInconclusive;
  return result;
}

const char* to_string(OperatorClass cls) {
  switch (cls) {
    case OperatorClass::kUnitary:
      return "unitary";
    case OperatorClass::kSelfadjoint:
      return "selfadjoint";
    case OperatorClass::kNormal:
      return "normal";
  }
  return "unknown";
}

const char* to_string(BesselStatus status) {
  switch (status) {
    case BesselStatus::kBessel:
      return "BESSEL";
    case BesselStatus::kNotBessel:
      return "NOT_BESSEL";
    case BesselStatus::kInconclusive:
      return "INCONCLUSIVE";
  }
  return "unknown";
}

}  // namespace besselorbit
