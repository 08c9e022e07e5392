#ifndef BESSELORBIT_CRITERIA_HPP_
#define BESSELORBIT_CRITERIA_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "besselorbit/measure.hpp"

namespace besselorbit {

// One evaluated grid point of a criterion. The meaning of the fields is
// criterion-specific and documented with each function; value is the
// quantity whose supremum the criterion bounds.
struct GridSample {
  double param = 0.0;
  double value = 0.0;
  double aux = 0.0;
};

struct CriterionReport {
  std::string id;
  // Supremum over the evaluation grid; +infinity when structurally infinite.
  double constant = 0.0;
  // Heuristic: the grid maxima keep growing under refinement.
  bool divergent = false;
  // Certified constants come from closed forms or sufficient criteria;
  // everything else is a grid estimate.
  bool certified = false;
  std::string citation;
  std::vector<GridSample> grid;
  std::string note;
};

enum class OperatorClass { kUnitary, kSelfadjoint, kNormal };

struct OperatorClassification {
  OperatorClass cls = OperatorClass::kNormal;
  double support_radius = 0.0;
  bool support_violation = false;  // support sticks out of the closed disc
};

enum class BesselStatus { kBessel, kNotBessel, kInconclusive };

struct BesselVerdict {
  BesselStatus status = BesselStatus::kInconclusive;
  double bound = 0.0;  // meaningful iff status == kBessel
  bool bound_is_estimate = false;
  std::string witness;
  OperatorClass operator_class = OperatorClass::kNormal;
  std::vector<CriterionReport> reports;
  std::vector<std::pair<std::size_t, double>> gram_profile;
};

struct CriteriaConfig {
  QuadratureConfig quad;
  int tail_levels = 40;       // eps = 2^-1 .. 2^-tail_levels
  int carleson_levels = 20;   // r = 2^-1 .. 2^-carleson_levels
  int resolvent_levels = 20;  // |lambda| = 1 +- 2^-m
  int embedding_levels = 20;  // |z| = 1 - 2^-m
  unsigned moment_max_k = 1024;
  std::size_t coarse_centers = 128;  // angular grid cap before refinement
  int refine_top = 6;                // candidates refined to full resolution
  int lipschitz_grid = 4096;
  std::vector<std::size_t> gram_sizes = {16, 64, 256};
  std::vector<std::size_t> dense_gram_sizes = {8, 16, 32};
  double norm_tol = 1e-9;
  int divergence_window = 10;
  double divergence_step_growth = 1.05;
};

// Divergence heuristic shared by the sup-type criteria: the last `window`
// refinement steps are nondecreasing and compound to more than
// step_growth^window total growth.
bool detect_divergence(const std::vector<double>& level_maxima, int window,
                       double step_growth);

OperatorClassification classify_operator(const SpectralMeasureSpec& spec);

// ess-sup of the circle density w.r.t. the normalized arc measure.
// +infinity when an atom sits on the circle, 0 without a circle part.
// Grid: (theta, density).
CriterionReport lipschitz_constant_circle(const SpectralMeasureSpec& spec,
                                          const CriteriaConfig& cfg = {});

// sup over eps = 2^-m of tail_mass(eps)/eps. Grid: (eps, ratio).
CriterionReport tail_ratio_sup(const SpectralMeasureSpec& spec,
                               const CriteriaConfig& cfg = {});

// sup over k <= K of k*|q_k|, q_k = int t^k dmu; real-supported measures
// only. Grid: (k, k*|q_k|) at powers of two.
CriterionReport moment_decay_sup(const SpectralMeasureSpec& spec,
                                 const CriteriaConfig& cfg = {});

// sup over dyadic r and circle-centered balls of ball_mass(z, r)/r.
// Grid: (r, level max, angle of the level argmax).
CriterionReport carleson_constant(const SpectralMeasureSpec& spec,
                                  const CriteriaConfig& cfg = {});

// sup over z in the disc grid of int (1-|z|^2)/|1-conj(z)w|^2 dmu|D(w).
// Grid: (1-|z|, level max, angle of the level argmax).
CriterionReport carleson_embedding_sup(const SpectralMeasureSpec& spec,
                                       const CriteriaConfig& cfg = {});

// sup over the lambda grid of |1-|lambda|^2| * resolvent_norm_sq.
// Grid: (|lambda|-1 signed, level max, level min).
CriterionReport resolvent_growth_sup(const SpectralMeasureSpec& spec,
                                     const CriteriaConfig& cfg = {});

// int (1-|z|^2)^{-1} dmu; a certified Bessel bound when finite.
CriterionReport sufficient_integral_bound(const SpectralMeasureSpec& spec,
                                          const CriteriaConfig& cfg = {});

// total_mass/(1-nu^2) when the support radius nu is < 1.
CriterionReport compact_support_bound(const SpectralMeasureSpec& spec,
                                      const CriteriaConfig& cfg = {});

BesselVerdict verdict(const SpectralMeasureSpec& spec,
                      const CriteriaConfig& cfg = {});

const char* to_string(OperatorClass cls);
const char* to_string(BesselStatus status);

}  // namespace besselorbit

#endif  // BESSELORBIT_CRITERIA_HPP_
