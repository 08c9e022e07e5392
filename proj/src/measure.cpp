#include "besselorbit/measure.hpp"

#include <algorithm>
#include <cmath>

namespace besselorbit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// Closeness threshold for resolvent evaluation points: the integrand
// |z - lambda|^{-2} must stay integrable at the configured budget.
constexpr double kResolventMargin = 1e-13;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

Complex cpow_uint(Complex base, unsigned n) {
  Complex result(1.0, 0.0);
  while (n != 0) {
    if (n & 1u) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

double eval_circle(const CircleDensityComponent& c, double theta) {
  const double t = wrap_angle(theta);
  return c.density.eval(std::span<const double>(&t, 1));
}

double eval_interval(const IntervalDensityComponent& c, double t) {
  return c.density.eval(std::span<const double>(&t, 1));
}

double eval_disk(const DiskDensityComponent& c, double rho, double theta) {
  const double vals[2] = {rho, wrap_angle(theta)};
  return c.density.eval(std::span<const double>(vals, 2));
}

// Integral of weight(theta) * f(theta) dtheta/(2*pi) over [a, b].
template <class Weight>
auto circle_integral(const CircleDensityComponent& c, double a, double b,
                     const QuadratureConfig& cfg, Weight&& weight) {
  using T = decltype(weight(0.0));
  auto integrand = [&](double theta) {
    return T(eval_circle(c, theta)) * weight(theta);
  };
  return T(1.0 / kTwoPi) * adaptive_quad<T>(integrand, a, b, cfg);
}

// Full-circle integral of weight(theta) * f(theta) dtheta/(2*pi) when the
// weight has a sharp peak of width ~dist at angle phi0 (kernels with a pole
// just off the circle). Dyadic pieces shrink toward phi0 so the adaptive rule
// sees a smooth integrand on every piece.
template <class Weight>
auto circle_integral_peaked(const CircleDensityComponent& c,
                            const QuadratureConfig& cfg, double phi0,
                            double dist, Weight&& weight) {
  using T = decltype(weight(0.0));
  auto integrand = [&](double theta) {
    return T(eval_circle(c, theta)) * weight(theta);
  };
  std::vector<double> offsets;
  double s = kPi;
  offsets.push_back(s);
  while (s > dist) {
    s *= 0.5;
    offsets.push_back(s);
  }
  QuadratureConfig piece_cfg = cfg;
  piece_cfg.abs_tol = cfg.abs_tol / (2.0 * static_cast<double>(offsets.size()));
  besselorbit::detail::EvalBudget budget{cfg.max_evals};
  T sum = besselorbit::detail::adapt<T>(integrand, phi0 - offsets.back(),
                                        phi0 + offsets.back(),
                                        piece_cfg.abs_tol, piece_cfg, 0, budget);
  for (std::size_t i = 0; i + 1 < offsets.size(); ++i) {
    sum += besselorbit::detail::adapt<T>(integrand, phi0 - offsets[i],
                                         phi0 - offsets[i + 1],
                                         piece_cfg.abs_tol, piece_cfg, 0, budget);
    sum += besselorbit::detail::adapt<T>(integrand, phi0 + offsets[i + 1],
                                         phi0 + offsets[i], piece_cfg.abs_tol,
                                         piece_cfg, 0, budget);
  }
  return T(1.0 / kTwoPi) * sum;
}

// Integral of weight(t) * f(t) dt over [a, b] clipped to the component
// domain; graded mesh kicks in when a clipped endpoint is a flagged one.
template <class Weight>
double interval_integral(const IntervalDensityComponent& c, double a, double b,
                         const QuadratureConfig& cfg, Weight&& weight) {
  const double lo = std::max(a, c.lower);
  const double hi = std::min(b, c.upper);
  if (!(lo < hi)) return 0.0;
  const bool sing_lo = c.singular_lower && lo == c.lower;
  const bool sing_hi = c.singular_upper && hi == c.upper;
  auto integrand = [&](double t) { return eval_interval(c, t) * weight(t); };
  return graded_quad<double>(integrand, lo, hi, sing_lo, sing_hi, cfg);
}

// Nested integral over the disc: outer in theta over [theta_lo, theta_hi],
// inner in rho over the range returned by rho_range(theta) (clipped to
// [0, 1)), of weight(rho, theta) * g(rho, theta) * rho.
template <class RhoRange, class Weight>
auto disk_integral(const DiskDensityComponent& c, double theta_lo,
                   double theta_hi, const QuadratureConfig& cfg,
                   RhoRange&& rho_range, Weight&& weight) {
  using T = decltype(weight(0.0, 0.0));
  QuadratureConfig inner = cfg;
  inner.abs_tol = cfg.abs_tol / 16.0;
  inner.rel_tol = std::max(cfg.rel_tol / 16.0, 1e-13);
  auto outer = [&](double theta) -> T {
    auto [rlo, rhi] = rho_range(theta);
    rlo = std::max(rlo, 0.0);
    rhi = std::min(rhi, 1.0);
    if (!(rlo < rhi)) return T{};
    auto inner_fn = [&](double rho) {
      return T(eval_disk(c, rho, theta) * rho) * weight(rho, theta);
    };
    return adaptive_quad<T>(inner_fn, rlo, rhi, inner);
  };
  return adaptive_quad<T>(outer, theta_lo, theta_hi, cfg);
}

struct FullDisk {
  std::pair<double, double> operator()(double) const { return {0.0, 1.0}; }
};

double poisson_kernel(Complex w, Complex z) {
  const double denom = std::norm(z - w);
  return (1.0 - std::norm(w)) / denom;
}

bool atom_on_circle(const Atom& a) {
  return std::fabs(std::abs(a.location) - 1.0) <= kCircleTol;
}

void require_circle_supported(const SpectralMeasureSpec& spec,
                              const char* op) {
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        if (a.mass > 0 && !atom_on_circle(a)) {
          throw MeasureError(std::string(op) +
                             ": measure has an atom off the unit circle");
        }
      }
    } else if (!std::holds_alternative<CircleDensityComponent>(comp)) {
      throw MeasureError(std::string(op) +
                         ": measure has a component not supported on the "
                         "unit circle");
    }
  }
}

}  // namespace

void validate(const SpectralMeasureSpec& spec) {
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    const auto& comp = spec.components[i];
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (std::size_t k = 0; k < atoms->atoms.size(); ++k) {
        if (atoms->atoms[k].mass < 0) {
          throw MeasureError("component " + std::to_string(i) +
                             ": negative atom mass");
        }
        for (std::size_t l = 0; l < k; ++l) {
          if (atoms->atoms[k].location == atoms->atoms[l].location) {
            throw MeasureError("component " + std::to_string(i) +
                               ": duplicate atom location");
          }
        }
      }
    } else if (const auto* iv = std::get_if<IntervalDensityComponent>(&comp)) {
      if (!(iv->lower < iv->upper)) {
        throw MeasureError("component " + std::to_string(i) +
                           ": interval requires lower < upper");
      }
    }
  }
}

double total_mass(const SpectralMeasureSpec& spec,
                  const QuadratureConfig& cfg) {
  double sum = 0.0;
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) sum += a.mass;
    } else if (const auto* c = std::get_if<CircleDensityComponent>(&comp)) {
      sum += circle_integral(*c, 0.0, kTwoPi, cfg,
                             [](double) { return 1.0; });
    } else if (const auto* iv = std::get_if<IntervalDensityComponent>(&comp)) {
      sum += interval_integral(*iv, iv->lower, iv->upper, cfg,
                               [](double) { return 1.0; });
    } else if (const auto* d = std::get_if<DiskDensityComponent>(&comp)) {
      sum += disk_integral(*d, 0.0, kTwoPi, cfg, FullDisk{},
                           [](double, double) { return 1.0; });
    }
  }
  return sum;
}

Complex moment(const SpectralMeasureSpec& spec, unsigned k, unsigned j,
               const QuadratureConfig& cfg) {
  Complex sum(0.0, 0.0);
  const double d = static_cast<double>(k) - static_cast<double>(j);
  const unsigned s = k + j;
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        sum += a.mass * cpow_uint(a.location, k) *
               cpow_uint(std::conj(a.location), j);
      }
    } else if (const auto* c = std::get_if<CircleDensityComponent>(&comp)) {
      // On the circle z^k conj(z)^j = e^{i(k-j)theta}.
      sum += circle_integral(*c, 0.0, kTwoPi, cfg, [&](double theta) {
        return std::polar(1.0, d * theta);
      });
    } else if (const auto* iv = std::get_if<IntervalDensityComponent>(&comp)) {
      sum += interval_integral(*iv, iv->lower, iv->upper, cfg, [&](double t) {
        return std::pow(t, static_cast<double>(s));
      });
    } else if (const auto* dc = std::get_if<DiskDensityComponent>(&comp)) {
      sum += disk_integral(*dc, 0.0, kTwoPi, cfg, FullDisk{},
                           [&](double rho, double theta) {
                             return std::pow(rho, static_cast<double>(s)) *
                                    std::polar(1.0, d * theta);
                           });
    }
  }
  return sum;
}

double tail_mass(const SpectralMeasureSpec& spec, double eps,
                 const QuadratureConfig& cfg) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw MeasureError("tail_mass: eps must lie in (0, 1)");
  }
  const double cut = 1.0 - eps;
  double sum = 0.0;
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        if (std::abs(a.location) > cut) sum += a.mass;
      }
    } else if (const auto* c = std::get_if<CircleDensityComponent>(&comp)) {
      sum += circle_integral(*c, 0.0, kTwoPi, cfg,
                             [](double) { return 1.0; });
    } else if (const auto* iv = std::get_if<IntervalDensityComponent>(&comp)) {
      sum += interval_integral(*iv, cut, iv->upper, cfg,
                               [](double) { return 1.0; });
      sum += interval_integral(*iv, iv->lower, -cut, cfg,
                               [](double) { return 1.0; });
    } else if (const auto* d = std::get_if<DiskDensityComponent>(&comp)) {
      sum += disk_integral(
          *d, 0.0, kTwoPi, cfg,
          [&](double) { return std::pair<double, double>(cut, 1.0); },
          [](double, double) { return 1.0; });
    }
  }
  return sum;
}

double ball_mass(const SpectralMeasureSpec& spec, Complex z0, double r,
                 const QuadratureConfig& cfg) {
  if (std::fabs(std::abs(z0) - 1.0) > kCircleTol) {
    throw MeasureError("ball_mass: center must lie on the unit circle");
  }
  if (!(r > 0.0)) {
    throw MeasureError("ball_mass: radius must be positive");
  }
  const double theta0 = std::arg(z0);
  double sum = 0.0;
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        if (std::abs(a.location) <= 1.0 + kCircleTol &&
            std::abs(a.location - z0) < r) {
          sum += a.mass;
        }
      }
    } else if (const auto* c = std::get_if<CircleDensityComponent>(&comp)) {
      // |e^{i theta} - z0| = 2|sin((theta - theta0)/2)|.
      const double half =
          r >= 2.0 ? kPi : 2.0 * std::asin(0.5 * r);
      sum += circle_integral(*c, theta0 - half, theta0 + half, cfg,
                             [](double) { return 1.0; });
    } else if (const auto* iv = std::get_if<IntervalDensityComponent>(&comp)) {
      const double x0 = z0.real();
      const double y0 = z0.imag();
      if (r * r > y0 * y0) {
        const double s = std::sqrt(r * r - y0 * y0);
        const double lo = std::max(x0 - s, -1.0);
        const double hi = std::min(x0 + s, 1.0);
        sum += interval_integral(*iv, lo, hi, cfg, [](double) { return 1.0; });
      }
    } else if (const auto* d = std::get_if<DiskDensityComponent>(&comp)) {
      const double half = r >= 1.0 ? kPi : std::asin(r);
      sum += disk_integral(
          *d, theta0 - half, theta0 + half, cfg,
          [&](double theta) -> std::pair<double, double> {
            const double cd = std::cos(theta - theta0);
            const double sd = std::sin(theta - theta0);
            const double disc = r * r - sd * sd;
            if (disc <= 0.0) return {1.0, 0.0};
            const double root = std::sqrt(disc);
            return {cd - root, cd + root};
          },
          [](double, double) { return 1.0; });
    }
  }
  return sum;
}

double support_radius(const SpectralMeasureSpec& spec) {
  double radius = 0.0;
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        if (a.mass > 0) radius = std::max(radius, std::abs(a.location));
      }
    } else if (std::holds_alternative<CircleDensityComponent>(comp) ||
               std::holds_alternative<DiskDensityComponent>(comp)) {
      radius = std::max(radius, 1.0);
    } else if (const auto* iv = std::get_if<IntervalDensityComponent>(&comp)) {
      radius = std::max(radius,
                        std::max(std::fabs(iv->lower), std::fabs(iv->upper)));
    }
  }
  return radius;
}

double resolvent_norm_sq(const SpectralMeasureSpec& spec, Complex lambda,
                         const QuadratureConfig& cfg) {
  // Structural distance-to-support check before any quadrature.
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        if (a.mass > 0 && std::abs(a.location - lambda) <= kResolventMargin) {
          throw SingularIntegrandError(
              "resolvent_norm_sq: lambda coincides with an atom");
        }
      }
    } else if (std::holds_alternative<CircleDensityComponent>(comp)) {
      if (std::fabs(std::abs(lambda) - 1.0) <= kResolventMargin) {
        throw SingularIntegrandError(
            "resolvent_norm_sq: |lambda| = 1 meets the circle support");
      }
    } else if (const auto* iv = std::get_if<IntervalDensityComponent>(&comp)) {
      const double x = std::clamp(lambda.real(), iv->lower, iv->upper);
      if (std::abs(lambda - Complex(x, 0.0)) <= kResolventMargin) {
        throw SingularIntegrandError(
            "resolvent_norm_sq: lambda meets the interval support");
      }
    } else if (std::holds_alternative<DiskDensityComponent>(comp)) {
      if (std::abs(lambda) <= 1.0 + kResolventMargin) {
        throw SingularIntegrandError(
            "resolvent_norm_sq: lambda meets the disc support");
      }
    }
  }
  double sum = 0.0;
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        sum += a.mass / std::norm(a.location - lambda);
      }
    } else if (const auto* c = std::get_if<CircleDensityComponent>(&comp)) {
      auto kernel = [&](double theta) {
        return 1.0 / std::norm(std::polar(1.0, theta) - lambda);
      };
      const double dist = std::fabs(std::abs(lambda) - 1.0);
      if (dist < 0.1) {
        sum += circle_integral_peaked(*c, cfg, std::arg(lambda), dist, kernel);
      } else {
        sum += circle_integral(*c, 0.0, kTwoPi, cfg, kernel);
      }
    } else if (const auto* iv = std::get_if<IntervalDensityComponent>(&comp)) {
      sum += interval_integral(*iv, iv->lower, iv->upper, cfg, [&](double t) {
        return 1.0 / std::norm(Complex(t, 0.0) - lambda);
      });
    } else if (const auto* d = std::get_if<DiskDensityComponent>(&comp)) {
      sum += disk_integral(*d, 0.0, kTwoPi, cfg, FullDisk{},
                           [&](double rho, double theta) {
                             return 1.0 /
                                    std::norm(std::polar(rho, theta) - lambda);
                           });
    }
  }
  return sum;
}

double poisson_integral(const SpectralMeasureSpec& spec, Complex w,
                        const QuadratureConfig& cfg) {
  require_circle_supported(spec, "poisson_integral");
  if (std::fabs(std::abs(w) - 1.0) <= kResolventMargin) {
    throw SingularIntegrandError("poisson_integral: |w| = 1");
  }
  double sum = 0.0;
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        sum += a.mass * poisson_kernel(w, a.location);
      }
    } else if (const auto* c = std::get_if<CircleDensityComponent>(&comp)) {
      auto kernel = [&](double theta) {
        return poisson_kernel(w, std::polar(1.0, theta));
      };
      const double dist = std::fabs(std::abs(w) - 1.0);
      if (dist < 0.1) {
        sum += circle_integral_peaked(*c, cfg, std::arg(w), dist, kernel);
      } else {
        sum += circle_integral(*c, 0.0, kTwoPi, cfg, kernel);
      }
    }
  }
  return sum;
}

std::vector<double> stieltjes_inversion(const SpectralMeasureSpec& spec,
                                        double alpha, double beta,
                                        const std::vector<double>& radii,
                                        const QuadratureConfig& cfg) {
  require_circle_supported(spec, "stieltjes_inversion");
  if (!(beta > alpha) || beta - alpha >= kTwoPi) {
    throw MeasureError("stieltjes_inversion: need a nondegenerate open arc");
  }
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) {
      throw MeasureError("stieltjes_inversion: radii must lie in (0, 1)");
    }
  }
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) {
    auto integrand = [&](double phi) {
      return poisson_integral(spec, std::polar(r, phi), cfg);
    };
    out.push_back(adaptive_quad<double>(integrand, alpha, beta, cfg) / kTwoPi);
  }
  return out;
}

double arc_mass(const SpectralMeasureSpec& spec, double alpha, double beta,
                const QuadratureConfig& cfg) {
  require_circle_supported(spec, "arc_mass");
  if (!(beta > alpha) || beta - alpha >= kTwoPi) {
    throw MeasureError("arc_mass: need a nondegenerate open arc");
  }
  double sum = 0.0;
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        double ang = std::arg(a.location);
        while (ang <= alpha) ang += kTwoPi;
        if (ang < beta) sum += a.mass;
      }
    } else if (const auto* c = std::get_if<CircleDensityComponent>(&comp)) {
      sum += circle_integral(*c, alpha, beta, cfg, [](double) { return 1.0; });
    }
  }
  return sum;
}

double polynomial_mass(const SpectralMeasureSpec& spec,
                       const std::vector<Complex>& coeffs,
                       const QuadratureConfig& cfg) {
  auto p_abs_sq = [&](Complex z) {
    Complex acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      acc = acc * z + *it;
    }
    return std::norm(acc);
  };
  double sum = 0.0;
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        sum += a.mass * p_abs_sq(a.location);
      }
    } else if (const auto* c = std::get_if<CircleDensityComponent>(&comp)) {
      sum += circle_integral(*c, 0.0, kTwoPi, cfg, [&](double theta) {
        return p_abs_sq(std::polar(1.0, theta));
      });
    } else if (const auto* iv = std::get_if<IntervalDensityComponent>(&comp)) {
      sum += interval_integral(*iv, iv->lower, iv->upper, cfg, [&](double t) {
        return p_abs_sq(Complex(t, 0.0));
      });
    } else if (const auto* d = std::get_if<DiskDensityComponent>(&comp)) {
      sum += disk_integral(*d, 0.0, kTwoPi, cfg, FullDisk{},
                           [&](double rho, double theta) {
                             return p_abs_sq(std::polar(rho, theta));
                           });
    }
  }
  return sum;
}

bool supported_on_circle(const SpectralMeasureSpec& spec) {
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        if (a.mass > 0 && !atom_on_circle(a)) return false;
      }
    } else if (!std::holds_alternative<CircleDensityComponent>(comp)) {
      return false;
    }
  }
  return true;
}

bool supported_on_real_line(const SpectralMeasureSpec& spec) {
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        if (a.mass > 0 && std::fabs(a.location.imag()) > 1e-14) return false;
      }
    } else if (!std::holds_alternative<IntervalDensityComponent>(comp)) {
      return false;
    }
  }
  return true;
}

bool has_atom_on_circle(const SpectralMeasureSpec& spec) {
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        if (a.mass > 0 && atom_on_circle(a)) return true;
      }
    }
  }
  return false;
}

}  // namespace besselorbit
