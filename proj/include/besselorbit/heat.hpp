#ifndef BESSELORBIT_HEAT_HPP_
#define BESSELORBIT_HEAT_HPP_

#include "besselorbit/criteria.hpp"
#include "besselorbit/measure.hpp"

namespace besselorbit {

// Spectral measure of one sensor orbit for the heat-semigroup operator
// A = e^{delta*B} on the Paley-Wiener space of band limit 1/2: the orbit
// measure is supported on [e^{-delta/4}, 1] with density
// h(t) = 1/(t*sqrt(delta)*sqrt(-log t)) and total mass 1, independent of the
// sensor index.
struct HeatMeasureParams {
  double delta = 1.0;
};

SpectralMeasureSpec heat_measure(const HeatMeasureParams& params);

// Closed-form tail mu(|t| > 1-eps) = (2/sqrt(delta)) * sqrt(log(1/(1-eps)))
// for eps in (0, 1 - e^{-delta/4}].
double heat_tail(double delta, double eps);

// q_k = <A^k e_i, e_i> = int_{-1/2}^{1/2} e^{-k*delta*xi^2} dxi, by
// quadrature on the Fourier side. Equals sqrt(pi/(k*delta))*erf(sqrt(k*delta)/2)
// for k >= 1 (see heat_moment_closed).
double heat_moment(double delta, unsigned k);
double heat_moment_closed(double delta, unsigned k);

// Tail-ratio report for the heat measure with the closed-form ratio carried
// in the aux column; the divergence of the ratio is the non-Bessel witness.
CriterionReport non_bessel_witness(double delta, const CriteriaConfig& cfg = {});

}  // namespace besselorbit

#endif  // BESSELORBIT_HEAT_HPP_
