#ifndef BESSELORBIT_QUADRATURE_HPP_
#define BESSELORBIT_QUADRATURE_HPP_

#include <cmath>
#include <complex>
#include <limits>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace besselorbit {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_depth = 100;
  std::int64_t max_evals = 200'000'000;
};

class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// 15-point Gauss-Legendre on [-1, 1].
inline constexpr int kGlOrder = 15;
inline constexpr double kGlNodes[kGlOrder] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
inline constexpr double kGlWeights[kGlOrder] = {
    0.03075324199611727, 0.07036604748810812, 0.10715922046717194,
    0.13957067792615432, 0.16626920581699392, 0.18616100001556221,
    0.19843148532711158, 0.20257824192556127, 0.19843148532711158,
    0.18616100001556221, 0.16626920581699392, 0.13957067792615432,
    0.10715922046717194, 0.07036604748810812, 0.03075324199611727};

inline double quad_norm(double v) { return std::fabs(v); }
inline double quad_norm(const std::complex<double>& v) { return std::abs(v); }

struct EvalBudget {
  std::int64_t remaining;
};

template <class T, class F>
T gauss15(F& f, double a, double b, EvalBudget& budget) {
  if ((budget.remaining -= kGlOrder) < 0) {
    throw QuadratureError("quadrature evaluation budget exhausted on [" +
                          std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T sum{};
  for (int i = 0; i < kGlOrder; ++i) {
    sum += T(kGlWeights[i]) * f(mid + half * kGlNodes[i]);
  }
  return T(half) * sum;
}

template <class T, class F>
T adapt(F& f, double a, double b, double abs_tol, const QuadratureConfig& cfg,
        int depth, EvalBudget& budget) {
  const T whole = gauss15<T>(f, a, b, budget);
  const double mid = 0.5 * (a + b);
  const T left = gauss15<T>(f, a, mid, budget);
  const T right = gauss15<T>(f, mid, b, budget);
  const T refined = left + right;
  const double err = quad_norm(whole - refined);
  if (err <= abs_tol || err <= cfg.rel_tol * quad_norm(refined) ||
      b - a <= 16.0 * std::numeric_limits<double>::epsilon() *
                   (std::fabs(a) + std::fabs(b))) {
    return refined;
  }
  if (depth >= cfg.max_depth) {
    throw QuadratureError(
        "adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
        std::to_string(b) + "] (error " + std::to_string(err) + ")");
  }
  return adapt<T>(f, a, mid, 0.5 * abs_tol, cfg, depth + 1, budget) +
         adapt<T>(f, mid, b, 0.5 * abs_tol, cfg, depth + 1, budget);
}

}  // namespace detail

// Adaptive Gauss-Legendre quadrature of f over [a, b].
template <class T, class F>
T adaptive_quad(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  if (!(a < b)) {
    return T{};
  }
  detail::EvalBudget budget{cfg.max_evals};
  return detail::adapt<T>(f, a, b, cfg.abs_tol, cfg, 0, budget);
}

template <class F>
double integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  return adaptive_quad<double>(std::forward<F>(f), a, b, cfg);
}

template <class F>
std::complex<double> integrate_complex(F&& f, double a, double b,
                                       const QuadratureConfig& cfg = {}) {
  return adaptive_quad<std::complex<double>>(std::forward<F>(f), a, b, cfg);
}

namespace detail {

// Octave pieces marching toward a singular endpoint, plus a geometric-series
// estimate for the unresolved sliver next to it. Exact for power-law
// singularities (b - t)^{-p}, p < 1; a terminal piece ratio >= 1 means the
// singularity does not look integrable.
template <class T, class F>
T singular_endpoint_sum(F& f, double endpoint, double scale, bool below,
                        const QuadratureConfig& piece_cfg, EvalBudget& budget) {
  constexpr int kOctaves = 40;
  T total{};
  T prev{};
  T last{};
  double ratio = 0.0;
  double s = scale;
  // March only while quadrature nodes stay representably distinct from the
  // endpoint; the geometric estimate covers whatever is left.
  const double min_s = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::max(std::fabs(endpoint), 1e-300);
  for (int j = 0; j < kOctaves && s > min_s; ++j) {
    const double lo = below ? endpoint - s : endpoint + 0.5 * s;
    const double hi = below ? endpoint - 0.5 * s : endpoint + s;
    const T piece = adapt<T>(f, lo, hi, piece_cfg.abs_tol, piece_cfg, 0, budget);
    total += piece;
    if (j > 0 && quad_norm(prev) > 0.0) {
      ratio = quad_norm(piece) / quad_norm(prev);
    }
    prev = piece;
    last = piece;
    s *= 0.5;
  }
  if (quad_norm(last) > 0.0) {
    if (ratio >= 0.999) {
      throw QuadratureError(
          "endpoint singularity at " + std::to_string(endpoint) +
          " does not appear integrable (octave ratio " + std::to_string(ratio) +
          ")");
    }
    total += last * T(ratio / (1.0 - ratio));
  }
  return total;
}

}  // namespace detail

// Quadrature with a geometrically graded mesh toward flagged endpoints.
// Handles integrable endpoint singularities such as (b - t)^{-1/2}.
template <class T, class F>
T graded_quad(F&& f, double a, double b, bool singular_lower,
              bool singular_upper, const QuadratureConfig& cfg = {}) {
  if (!(a < b)) {
    return T{};
  }
  if (!singular_lower && !singular_upper) {
    return adaptive_quad<T>(std::forward<F>(f), a, b, cfg);
  }
  const double width = b - a;
  QuadratureConfig piece_cfg = cfg;
  piece_cfg.abs_tol = cfg.abs_tol / 100.0;
  detail::EvalBudget budget{cfg.max_evals};
  const double core_lo = singular_lower ? a + 0.25 * width : a;
  const double core_hi = singular_upper ? b - 0.25 * width : b;
  T sum = detail::adapt<T>(f, core_lo, core_hi, piece_cfg.abs_tol, piece_cfg, 0,
                           budget);
  if (singular_lower) {
    sum += detail::singular_endpoint_sum<T>(f, a, 0.25 * width, false,
                                            piece_cfg, budget);
  }
  if (singular_upper) {
    sum += detail::singular_endpoint_sum<T>(f, b, 0.25 * width, true, piece_cfg,
                                            budget);
  }
  return sum;
}

}  // namespace besselorbit

#endif  // BESSELORBIT_QUADRATURE_HPP_
