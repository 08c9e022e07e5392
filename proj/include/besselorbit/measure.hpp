#ifndef BESSELORBIT_MEASURE_HPP_
#define BESSELORBIT_MEASURE_HPP_

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "besselorbit/densexpr.hpp"
#include "besselorbit/quadrature.hpp"

namespace besselorbit {

using Complex = std::complex<double>;

// Distance from the unit circle below which a point counts as lying on it.
inline constexpr double kCircleTol = 1e-12;

class MeasureError : public std::runtime_error {
 public:
  explicit MeasureError(const std::string& what) : std::runtime_error(what) {}
};

class SingularIntegrandError : public MeasureError {
 public:
  explicit SingularIntegrandError(const std::string& what)
      : MeasureError(what) {}
};

struct Atom {
  Complex location;
  double mass = 0.0;
};

struct AtomicComponent {
  std::vector<Atom> atoms;
};

// Density f(theta) with respect to the normalized arc measure dtheta/(2*pi);
// the total arc measure of the circle is 1. An optionally declared essential
// supremum makes the Lipschitz/Bessel bound certified instead of a grid
// estimate.
struct CircleDensityComponent {
  DensityExpr density;  // variable: theta in [0, 2*pi)
  std::optional<double> declared_sup;
};

// Density f(t) with respect to Lebesgue measure on [lower, upper].
struct IntervalDensityComponent {
  double lower = 0.0;
  double upper = 0.0;
  DensityExpr density;  // variable: t
  bool singular_lower = false;
  bool singular_upper = false;
};

// Density g(r, theta) with respect to r*dr*dtheta on the open unit disc.
struct DiskDensityComponent {
  DensityExpr density;  // variables: r in [0,1), theta in [0, 2*pi)
};

using MeasureComponent = std::variant<AtomicComponent, CircleDensityComponent,
                                      IntervalDensityComponent,
                                      DiskDensityComponent>;

// A finite positive Borel measure on C, given as a sum of components.
// Stands for the spectral measure mu_x = ||E(.)x||^2 of a bounded normal
// operator A at a vector x; its total mass is ||x||^2.
struct SpectralMeasureSpec {
  std::vector<MeasureComponent> components;
};

void validate(const SpectralMeasureSpec& spec);

double total_mass(const SpectralMeasureSpec& spec,
                  const QuadratureConfig& cfg = {});

// moment(k, j) = integral of z^k * conj(z)^j dmu(z) = <A^k x, A^j x>.
Complex moment(const SpectralMeasureSpec& spec, unsigned k, unsigned j,
               const QuadratureConfig& cfg = {});

// mu({ |z| > 1 - eps }) for eps in (0, 1).
double tail_mass(const SpectralMeasureSpec& spec, double eps,
                 const QuadratureConfig& cfg = {});

// mu(closed unit disc intersected with the open ball B_r(z0)), |z0| = 1.
double ball_mass(const SpectralMeasureSpec& spec, Complex z0, double r,
                 const QuadratureConfig& cfg = {});

// sup { |z| : z in supp mu }, from the declared component domains.
double support_radius(const SpectralMeasureSpec& spec);

// integral of |z - lambda|^{-2} dmu(z) = ||(A - lambda)^{-1} x||^2.
double resolvent_norm_sq(const SpectralMeasureSpec& spec, Complex lambda,
                         const QuadratureConfig& cfg = {});

// Poisson integral of a circle-supported measure: integral of
// P(w, z) = (1 - |w|^2)/|z - w|^2 over the circle part of mu.
double poisson_integral(const SpectralMeasureSpec& spec, Complex w,
                        const QuadratureConfig& cfg = {});

// Stieltjes inversion along the arc { e^{i*phi} : alpha < phi < beta }:
// returns integral over the arc of P[mu](r * z) d|z| for each r; the sequence
// converges to mu(arc) + mu({endpoints})/2 as r -> 1.
std::vector<double> stieltjes_inversion(const SpectralMeasureSpec& spec,
                                        double alpha, double beta,
                                        const std::vector<double>& radii,
                                        const QuadratureConfig& cfg = {});

// mu of the open arc (alpha, beta) for circle-supported parts of mu.
double arc_mass(const SpectralMeasureSpec& spec, double alpha, double beta,
                const QuadratureConfig& cfg = {});

// integral of |p(z)|^2 dmu for p(z) = sum_k coeffs[k] * z^k, by direct
// quadrature. Independent cross-check for Gram sections.
double polynomial_mass(const SpectralMeasureSpec& spec,
                       const std::vector<Complex>& coeffs,
                       const QuadratureConfig& cfg = {});

// True when every component puts its mass on the unit circle / real line.
bool supported_on_circle(const SpectralMeasureSpec& spec);
bool supported_on_real_line(const SpectralMeasureSpec& spec);
bool has_atom_on_circle(const SpectralMeasureSpec& spec);

}  // namespace besselorbit

#endif  // BESSELORBIT_MEASURE_HPP_
