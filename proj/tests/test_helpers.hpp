#ifndef BESSELORBIT_TESTS_TEST_HELPERS_HPP_
#define BESSELORBIT_TESTS_TEST_HELPERS_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "besselorbit/measure.hpp"

namespace testutil {

inline besselorbit::SpectralMeasureSpec atoms(
    std::vector<besselorbit::Atom> list) {
  besselorbit::SpectralMeasureSpec spec;
  spec.components.push_back(besselorbit::AtomicComponent{std::move(list)});
  return spec;
}

inline besselorbit::MeasureComponent circle_component(
    const std::string& density, std::optional<double> sup = std::nullopt) {
  return besselorbit::CircleDensityComponent{
      besselorbit::DensityExpr::parse(density, {"theta"}), sup};
}

inline besselorbit::SpectralMeasureSpec circle(
    const std::string& density, std::optional<double> sup = std::nullopt) {
  besselorbit::SpectralMeasureSpec spec;
  spec.components.push_back(circle_component(density, sup));
  return spec;
}

inline besselorbit::MeasureComponent interval_component(
    double lower, double upper, const std::string& density,
    bool singular_lower = false, bool singular_upper = false) {
  return besselorbit::IntervalDensityComponent{
      lower, upper, besselorbit::DensityExpr::parse(density, {"t"}),
      singular_lower, singular_upper};
}

inline besselorbit::SpectralMeasureSpec interval(
    double lower, double upper, const std::string& density,
    bool singular_lower = false, bool singular_upper = false) {
  besselorbit::SpectralMeasureSpec spec;
  spec.components.push_back(interval_component(lower, upper, density,
                                               singular_lower, singular_upper));
  return spec;
}

inline besselorbit::SpectralMeasureSpec disk(const std::string& density) {
  besselorbit::SpectralMeasureSpec spec;
  spec.components.push_back(besselorbit::DiskDensityComponent{
      besselorbit::DensityExpr::parse(density, {"r", "theta"})});
  return spec;
}

// Geometric atoms at 1 - 1/n with masses 4^-n; every Carleson-type criterion
// stays finite and the sufficient integral has the closed partial-sum form
// sum 4^-n * n^2/(2n - 1).
inline besselorbit::SpectralMeasureSpec geometric_atoms(int n_max) {
  std::vector<besselorbit::Atom> list;
  double mass = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    mass *= 0.25;
    list.push_back({besselorbit::Complex(1.0 - 1.0 / n, 0.0), mass});
  }
  return atoms(std::move(list));
}

// Atoms at 1 - 2^-n with masses n * 2^-n; total mass 2, Carleson condition
// fails.
inline besselorbit::SpectralMeasureSpec non_carleson_atoms(int n_max) {
  std::vector<besselorbit::Atom> list;
  double pow2 = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    pow2 *= 0.5;
    list.push_back({besselorbit::Complex(1.0 - pow2, 0.0), n * pow2});
  }
  return atoms(std::move(list));
}

}  // namespace testutil

#endif  // BESSELORBIT_TESTS_TEST_HELPERS_HPP_
