#ifndef BESSELORBIT_GRAM_HPP_
#define BESSELORBIT_GRAM_HPP_

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "besselorbit/measure.hpp"

namespace besselorbit {

class NormEstimationError : public std::runtime_error {
 public:
  explicit NormEstimationError(const std::string& what)
      : std::runtime_error(what) {}
};

enum class GramStructure { kToeplitz, kHankel, kDense };

// Finite section of the infinite Gram matrix G[j][k] = <A^k x, A^j x> of the
// orbit. Circle-supported measures give a Toeplitz section (entry depends on
// k - j), real-supported ones a Hankel section (k + j); structured sections
// store only the defining coefficient sequence.
struct GramSection {
  std::size_t n = 0;
  GramStructure structure = GramStructure::kDense;
  // Toeplitz: 2n-1 coefficients c_d, d = -(n-1)..n-1, stored at d + n - 1.
  std::vector<Complex> toeplitz;
  // Hankel: 2n-1 real coefficients q_0..q_{2n-2}.
  std::vector<double> hankel;
  // Dense: row-major n x n.
  std::vector<Complex> dense;

  Complex entry(std::size_t j, std::size_t k) const;
};

// Fourier coefficients c_d = int e^{i d theta} f(theta) dtheta/(2 pi),
// d = 0..count-1, by FFT of periodic samples with grid doubling until the
// coefficients stabilize. Shared by the Toeplitz builder and the criteria
// that expand circle densities in a Poisson series.
std::vector<Complex> circle_fourier_coeffs(const CircleDensityComponent& comp,
                                           std::size_t count,
                                           const QuadratureConfig& cfg);

// adjoint = true builds the section with the swapped conjugation pattern
// (entries moment(j, k)), the Gram matrix of the adjoint orbit ((A*)^k x).
GramSection build_section(const SpectralMeasureSpec& spec, std::size_t n,
                          bool adjoint = false, const QuadratureConfig& cfg = {});

// G*v via circulant embedding and FFT for structured sections (O(n log n));
// dense sections multiply directly.
std::vector<Complex> structured_matvec(const GramSection& section,
                                       std::span<const Complex> v);

// Plain O(n^2) multiplication; the oracle for the FFT path.
std::vector<Complex> dense_matvec(const GramSection& section,
                                  std::span<const Complex> v);

// Largest eigenvalue of the Hermitian PSD section (its operator norm) by
// Lanczos iteration with a fixed deterministic start vector. A lower bound
// for the Bessel bound of the orbit.
double operator_norm(const GramSection& section, double tol = 1e-10,
                     int max_iter = 400);

// (n, ||G_n||) over increasing section sizes; the evidence trail consumed by
// the verdict logic. Renders no Bessel judgment itself.
std::vector<std::pair<std::size_t, double>> bessel_bound_profile(
    const SpectralMeasureSpec& spec, const std::vector<std::size_t>& sizes,
    double tol = 1e-10, const QuadratureConfig& cfg = {});

// Reusable multiplier holding FFT plans for repeated matvecs with one section.
class StructuredMultiplier {
 public:
  explicit StructuredMultiplier(const GramSection& section);
  ~StructuredMultiplier();
  StructuredMultiplier(const StructuredMultiplier&) = delete;
  StructuredMultiplier& operator=(const StructuredMultiplier&) = delete;

  std::size_t size() const;
  void apply(std::span<const Complex> in, std::span<Complex> out) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace besselorbit

#endif  // BESSELORBIT_GRAM_HPP_
