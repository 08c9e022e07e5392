#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "besselorbit/gram.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using besselorbit::Complex;
using besselorbit::GramSection;
using besselorbit::GramStructure;
using besselorbit::SpectralMeasureSpec;

namespace {

constexpr double kPi = std::numbers::pi;

double max_rel_diff(const std::vector<Complex>& a,
                    const std::vector<Complex>& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den > 0.0 ? num / den : num;
}

std::vector<Complex> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<Complex> v(n);
  for (auto& x : v) {
    x = Complex(coef(rng), coef(rng));
  }
  return v;
}

}  // namespace

TEST_CASE("reference sections") {
  // Normalized arc measure: the orbit is orthonormal, G = I (Toeplitz).
  const auto identity = besselorbit::build_section(testutil::circle("1"), 8);
  CHECK(identity.structure == GramStructure::kToeplitz);
  for (std::size_t j = 0; j < 8; ++j) {
    for (std::size_t k = 0; k < 8; ++k) {
      CHECK(std::abs(identity.entry(j, k) - (j == k ? 1.0 : 0.0)) < 1e-10);
    }
  }

  // Unit atom at 1: the all-ones matrix.
  const auto ones =
      besselorbit::build_section(testutil::atoms({{Complex(1.0), 1.0}}), 6);
  for (std::size_t j = 0; j < 6; ++j) {
    for (std::size_t k = 0; k < 6; ++k) {
      CHECK(std::abs(ones.entry(j, k) - 1.0) < 1e-14);
    }
  }

  // Lebesgue on [-1,1]: Hankel with q_d = 2/(d+1) for even d.
  const auto hilbertish =
      besselorbit::build_section(testutil::interval(-1.0, 1.0, "1"), 4);
  CHECK(hilbertish.structure == GramStructure::kHankel);
  REQUIRE(hilbertish.hankel.size() == 7);
  for (std::size_t d = 0; d < 7; ++d) {
    const double expected = (d % 2 == 0) ? 2.0 / static_cast<double>(d + 1) : 0.0;
    CHECK(hilbertish.hankel[d] == doctest::Approx(expected).epsilon(1e-10));
  }

  // A measure not confined to the circle or the line is dense.
  const auto dense = besselorbit::build_section(
      testutil::atoms({{Complex(0.3, 0.4), 1.0}}), 4);
  CHECK(dense.structure == GramStructure::kDense);
}

TEST_CASE("entries equal moments for every structure") {
  std::mt19937_64 rng(21);
  const std::vector<SpectralMeasureSpec> specs = {
      testutil::circle("1 + 0.5*cos(theta)"),
      testutil::interval(-0.8, 0.9, "0.5 + t^2"),
      testutil::atoms({{Complex(0.3, 0.4), 1.0}, {Complex(-0.2, 0.1), 0.5}}),
  };
  for (const auto& spec : specs) {
    const auto section = besselorbit::build_section(spec, 6);
    for (std::size_t j = 0; j < 6; ++j) {
      for (std::size_t k = 0; k < 6; ++k) {
        const Complex expected = besselorbit::moment(
            spec, static_cast<unsigned>(k), static_cast<unsigned>(j));
        CHECK(std::abs(section.entry(j, k) - expected) < 1e-9);
      }
    }
  }
}

TEST_CASE("fft matvec matches the dense oracle") {
  std::mt19937_64 rng(22);

  // Toeplitz section from a smooth circle density.
  const auto toeplitz = besselorbit::build_section(
      testutil::circle("1 + 0.5*cos(theta) + 0.25*sin(2*theta)"), 256);
  REQUIRE(toeplitz.structure == GramStructure::kToeplitz);
  const auto v = random_vector(256, rng);
  CHECK(max_rel_diff(besselorbit::structured_matvec(toeplitz, v),
                     besselorbit::dense_matvec(toeplitz, v)) < 1e-11);

  // Hankel section from the Lebesgue measure.
  const auto hankel =
      besselorbit::build_section(testutil::interval(-1.0, 1.0, "1"), 200);
  REQUIRE(hankel.structure == GramStructure::kHankel);
  const auto w = random_vector(200, rng);
  CHECK(max_rel_diff(besselorbit::structured_matvec(hankel, w),
                     besselorbit::dense_matvec(hankel, w)) < 1e-11);

  // Identity passthrough.
  const auto identity = besselorbit::build_section(testutil::circle("1"), 64);
  const auto u = random_vector(64, rng);
  const auto iu = besselorbit::structured_matvec(identity, u);
  CHECK(max_rel_diff(iu, u) < 1e-9);
}

TEST_CASE("reusable multiplier agrees with one-shot matvec") {
  std::mt19937_64 rng(23);
  const auto section = besselorbit::build_section(
      testutil::circle("1 + 0.5*cos(theta)"), 128);
  const besselorbit::StructuredMultiplier mult(section);
  CHECK(mult.size() == 128);
  for (int rep = 0; rep < 3; ++rep) {
    const auto v = random_vector(128, rng);
    std::vector<Complex> out(128);
    mult.apply(v, out);
    CHECK(max_rel_diff(out, besselorbit::dense_matvec(section, v)) < 1e-11);
  }
}

TEST_CASE("operator norm on matrices with known spectra") {
  const auto identity = besselorbit::build_section(testutil::circle("1"), 32);
  CHECK(besselorbit::operator_norm(identity) ==
        doctest::Approx(1.0).epsilon(1e-9));

  // All-ones n x n has norm n.
  const auto ones =
      besselorbit::build_section(testutil::atoms({{Complex(1.0), 1.0}}), 50);
  CHECK(besselorbit::operator_norm(ones) == doctest::Approx(50.0).epsilon(1e-9));

  // Atom of mass m at rho: rank one with norm m * sum rho^{2k}.
  const double rho = 0.8;
  const double mass = 1.5;
  const std::size_t n = 16;
  const auto rank1 =
      besselorbit::build_section(testutil::atoms({{Complex(rho), mass}}), n);
  double expected = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    expected += mass * std::pow(rho, 2.0 * static_cast<double>(k));
  }
  CHECK(besselorbit::operator_norm(rank1) ==
        doctest::Approx(expected).epsilon(1e-9));

  // Toeplitz symbol 1 + cos(theta): largest eigenvalue of the n-section is
  // 1 + cos(pi/(n+1)) exactly (tridiagonal with 1/2 off the diagonal).
  const std::size_t m = 40;
  const auto tri = besselorbit::build_section(
      testutil::circle("1 + cos(theta)"), m);
  const double lam = 1.0 + std::cos(kPi / static_cast<double>(m + 1));
  CHECK(besselorbit::operator_norm(tri) == doctest::Approx(lam).epsilon(1e-9));
}

TEST_CASE("section norms are nondecreasing in the size") {
  std::mt19937_64 rng(24);
  const std::vector<std::size_t> sizes = {4, 8, 16, 32, 64};
  const auto profile = besselorbit::bessel_bound_profile(
      testutil::circle("1 + 0.7*cos(theta)"), sizes);
  REQUIRE(profile.size() == sizes.size());
  for (std::size_t i = 1; i < profile.size(); ++i) {
    CHECK(profile[i].second >= profile[i - 1].second - 1e-9);
  }
  // Bounded above by the density sup 1.7.
  CHECK(profile.back().second <= 1.7 + 1e-8);
}

TEST_CASE("adjoint sections transpose the conjugation pattern") {
  std::mt19937_64 rng(25);
  const auto spec =
      testutil::atoms({{Complex(0.3, 0.4), 1.0}, {Complex(-0.5, 0.2), 0.7}});
  const auto plain = besselorbit::build_section(spec, 12);
  const auto adj = besselorbit::build_section(spec, 12, true);
  for (std::size_t j = 0; j < 12; ++j) {
    for (std::size_t k = 0; k < 12; ++k) {
      CHECK(std::abs(adj.entry(j, k) - std::conj(plain.entry(j, k))) < 1e-12);
    }
  }
  CHECK(besselorbit::operator_norm(adj) ==
        doctest::Approx(besselorbit::operator_norm(plain)).epsilon(1e-9));
}

TEST_CASE("mixed measures produce dense sections summing the parts") {
  SpectralMeasureSpec mixed;
  mixed.components.push_back(testutil::circle_component("1"));
  mixed.components.push_back(
      besselorbit::AtomicComponent{{{Complex(0.5), 0.25}}});
  const auto section = besselorbit::build_section(mixed, 5);
  CHECK(section.structure == GramStructure::kDense);
  for (std::size_t j = 0; j < 5; ++j) {
    for (std::size_t k = 0; k < 5; ++k) {
      const double expected =
          (j == k ? 1.0 : 0.0) +
          0.25 * std::pow(0.5, static_cast<double>(j + k));
      CHECK(std::abs(section.entry(j, k) - expected) < 1e-9);
    }
  }
}
