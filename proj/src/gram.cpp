#include "besselorbit/gram.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace besselorbit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

class Fft {
 public:
  explicit Fft(std::size_t length) : length_(length) {
    in_ = fftw_alloc_complex(length);
    out_ = fftw_alloc_complex(length);
    fwd_ = fftw_plan_dft_1d(static_cast<int>(length), in_, out_, FFTW_FORWARD,
                            FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(static_cast<int>(length), in_, out_, FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  ~Fft() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(in_);
    fftw_free(out_);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t length() const { return length_; }

  void forward(const Complex* src, Complex* dst) { run(fwd_, src, dst); }
  // Unnormalized inverse transform.
  void backward(const Complex* src, Complex* dst) { run(bwd_, src, dst); }

 private:
  void run(fftw_plan plan, const Complex* src, Complex* dst) {
    for (std::size_t i = 0; i < length_; ++i) {
      in_[i][0] = src[i].real();
      in_[i][1] = src[i].imag();
    }
    fftw_execute(plan);
    for (std::size_t i = 0; i < length_; ++i) {
      dst[i] = Complex(out_[i][0], out_[i][1]);
    }
  }

  std::size_t length_;
  fftw_complex* in_;
  fftw_complex* out_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

Complex cpow_uint(Complex base, unsigned n) {
  Complex result(1.0, 0.0);
  while (n != 0) {
    if (n & 1u) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

}  // namespace

// Fourier coefficients c_d = int e^{i d theta} f(theta) dtheta/(2 pi) for
// d = 0..count-1, by trapezoidal sampling and FFT. The periodic trapezoid
// rule is spectrally accurate for smooth densities; the grid is doubled
// until successive passes agree.
std::vector<Complex> circle_fourier_coeffs(const CircleDensityComponent& comp,
                                           std::size_t count,
                                           const QuadratureConfig& cfg) {
  std::size_t m = next_pow2(std::max<std::size_t>(8 * count, 1024));
  const std::size_t m_cap = std::size_t{1} << 22;
  std::vector<Complex> prev;
  for (;; m *= 2) {
    std::vector<Complex> samples(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
      samples[i] = Complex(comp.density.eval(std::span<const double>(&theta, 1)), 0.0);
    }
    Fft fft(m);
    std::vector<Complex> spectrum(m);
    fft.forward(samples.data(), spectrum.data());
    std::vector<Complex> coeffs(count);
    for (std::size_t d = 0; d < count; ++d) {
      coeffs[d] = std::conj(spectrum[d]) / static_cast<double>(m);
    }
    if (!prev.empty()) {
      double diff = 0.0;
      for (std::size_t d = 0; d < count; ++d) {
        diff = std::max(diff, std::abs(coeffs[d] - prev[d]));
      }
      if (diff <= std::max(cfg.abs_tol, 1e-12) || m >= m_cap) {
        if (diff > 1e-7) {
          throw QuadratureError(
              "circle Fourier coefficients did not stabilize (density too "
              "rough)");
        }
        return coeffs;
      }
    }
    prev = std::move(coeffs);
  }
}

namespace {

double interval_power_moment(const IntervalDensityComponent& comp, unsigned m,
                             const QuadratureConfig& cfg) {
  auto integrand = [&](double t) {
    return comp.density.eval(std::span<const double>(&t, 1)) *
           std::pow(t, static_cast<double>(m));
  };
  return graded_quad<double>(integrand, comp.lower, comp.upper,
                             comp.singular_lower, comp.singular_upper, cfg);
}

// Disc-component moment cache keyed by (k + j, k - j).
class DiskMomentTable {
 public:
  DiskMomentTable(const DiskDensityComponent& comp, const QuadratureConfig& cfg)
      : comp_(comp), cfg_(cfg) {}

  Complex get(unsigned s, int d) {
    const auto key = std::make_pair(s, d);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    QuadratureConfig inner = cfg_;
    inner.abs_tol = cfg_.abs_tol / 16.0;
    auto value = adaptive_quad<Complex>(
        [&](double theta) -> Complex {
          auto radial = [&](double rho) {
            const double vals[2] = {rho, theta};
            return comp_.density.eval(std::span<const double>(vals, 2)) *
                   std::pow(rho, static_cast<double>(s) + 1.0);
          };
          return std::polar(1.0, d * theta) *
                 adaptive_quad<double>(radial, 0.0, 1.0, inner);
        },
        0.0, kTwoPi, cfg_);
    cache_.emplace(key, value);
    return value;
  }

 private:
  const DiskDensityComponent& comp_;
  QuadratureConfig cfg_;
  std::map<std::pair<unsigned, int>, Complex> cache_;
};

double tridiag_largest_eigenvalue(const std::vector<double>& alpha,
                                  const std::vector<double>& beta) {
  const std::size_t m = alpha.size();
  double lo = alpha[0], hi = alpha[0];
  for (std::size_t i = 0; i < m; ++i) {
    const double off = (i > 0 ? std::fabs(beta[i - 1]) : 0.0) +
                       (i + 1 < m ? std::fabs(beta[i]) : 0.0);
    lo = std::min(lo, alpha[i] - off);
    hi = std::max(hi, alpha[i] + off);
  }
  auto count_less = [&](double x) {
    std::size_t count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double off = i > 0 ? beta[i - 1] * beta[i - 1] / d : 0.0;
      d = alpha[i] - x - off;
      if (d == 0.0) d = -1e-300;
      if (d < 0.0) ++count;
    }
    return count;
  };
  const double scale = std::max({1.0, std::fabs(lo), std::fabs(hi)});
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * scale; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (count_less(mid) == m) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

Complex GramSection::entry(std::size_t j, std::size_t k) const {
  switch (structure) {
    case GramStructure::kToeplitz:
      return toeplitz[k - j + n - 1];
    case GramStructure::kHankel:
      return Complex(hankel[j + k], 0.0);
    case GramStructure::kDense:
      return dense[j * n + k];
  }
  return {};
}

GramSection build_section(const SpectralMeasureSpec& spec, std::size_t n,
                          bool adjoint, const QuadratureConfig& cfg) {
  if (n == 0) {
    throw MeasureError("build_section: n must be positive");
  }
  GramSection section;
  section.n = n;
  if (supported_on_circle(spec)) {
    section.structure = GramStructure::kToeplitz;
    std::vector<Complex> c(n, Complex(0.0, 0.0));
    for (const auto& comp : spec.components) {
      if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
        for (const auto& a : atoms->atoms) {
          Complex power(1.0, 0.0);
          for (std::size_t d = 0; d < n; ++d) {
            c[d] += a.mass * power;
            power *= a.location;
          }
        }
      } else if (const auto* cd = std::get_if<CircleDensityComponent>(&comp)) {
        const auto coeffs = circle_fourier_coeffs(*cd, n, cfg);
        for (std::size_t d = 0; d < n; ++d) c[d] += coeffs[d];
      }
    }
    section.toeplitz.assign(2 * n - 1, Complex(0.0, 0.0));
    for (std::size_t d = 0; d < n; ++d) {
      const Complex cd = adjoint ? std::conj(c[d]) : c[d];
      section.toeplitz[n - 1 + d] = cd;
      section.toeplitz[n - 1 - d] = std::conj(cd);
    }
    return section;
  }
  if (supported_on_real_line(spec)) {
    // Real-supported measures have real moments; the adjoint swap is a no-op.
    section.structure = GramStructure::kHankel;
    section.hankel.assign(2 * n - 1, 0.0);
    for (const auto& comp : spec.components) {
      if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
        for (const auto& a : atoms->atoms) {
          double power = 1.0;
          for (std::size_t m = 0; m < 2 * n - 1; ++m) {
            section.hankel[m] += a.mass * power;
            power *= a.location.real();
          }
        }
      } else if (const auto* iv = std::get_if<IntervalDensityComponent>(&comp)) {
        for (std::size_t m = 0; m < 2 * n - 1; ++m) {
          section.hankel[m] +=
              interval_power_moment(*iv, static_cast<unsigned>(m), cfg);
        }
      }
    }
    return section;
  }
  section.structure = GramStructure::kDense;
  section.dense.assign(n * n, Complex(0.0, 0.0));
  for (const auto& comp : spec.components) {
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      for (const auto& a : atoms->atoms) {
        std::vector<Complex> powers(n);
        powers[0] = Complex(1.0, 0.0);
        for (std::size_t k = 1; k < n; ++k) powers[k] = powers[k - 1] * a.location;
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t k = 0; k < n; ++k) {
            section.dense[j * n + k] +=
                a.mass * powers[k] * std::conj(powers[j]);
          }
        }
      }
    } else if (const auto* cd = std::get_if<CircleDensityComponent>(&comp)) {
      const auto coeffs = circle_fourier_coeffs(*cd, n, cfg);
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          const std::size_t d = k >= j ? k - j : j - k;
          section.dense[j * n + k] +=
              k >= j ? coeffs[d] : std::conj(coeffs[d]);
        }
      }
    } else if (const auto* iv = std::get_if<IntervalDensityComponent>(&comp)) {
      std::vector<double> q(2 * n - 1);
      for (std::size_t m = 0; m < 2 * n - 1; ++m) {
        q[m] = interval_power_moment(*iv, static_cast<unsigned>(m), cfg);
      }
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          section.dense[j * n + k] += q[j + k];
        }
      }
    } else if (const auto* dc = std::get_if<DiskDensityComponent>(&comp)) {
      DiskMomentTable table(*dc, cfg);
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          section.dense[j * n + k] += table.get(
              static_cast<unsigned>(j + k),
              static_cast<int>(k) - static_cast<int>(j));
        }
      }
    }
  }
  if (adjoint) {
    for (auto& v : section.dense) v = std::conj(v);
  }
  return section;
}

struct StructuredMultiplier::Impl {
  std::size_t n = 0;
  GramStructure structure = GramStructure::kDense;
  bool reverse_input = false;  // Hankel acts as Toeplitz on the reversed vector
  std::vector<Complex> dense;
  std::size_t length = 0;
  std::unique_ptr<Fft> fft;
  std::vector<Complex> spectrum;
  mutable std::vector<Complex> work;
  mutable std::vector<Complex> transformed;
};

StructuredMultiplier::StructuredMultiplier(const GramSection& section)
    : impl_(std::make_unique<Impl>()) {
  impl_->n = section.n;
  impl_->structure = section.structure;
  if (section.structure == GramStructure::kDense) {
    impl_->dense = section.dense;
    return;
  }
  const std::size_t n = section.n;
  const std::size_t length = next_pow2(2 * n);
  impl_->length = length;
  impl_->fft = std::make_unique<Fft>(length);
  impl_->work.assign(length, Complex(0.0, 0.0));
  impl_->transformed.assign(length, Complex(0.0, 0.0));
  // First column of the embedding circulant: entry i holds the Toeplitz
  // coefficient c_{-i} so that (Cv)[j] = sum_k c_{k-j} v[k] on the leading
  // n coordinates.
  std::vector<Complex> column(length, Complex(0.0, 0.0));
  auto toeplitz_coeff = [&](std::ptrdiff_t d) -> Complex {
    if (section.structure == GramStructure::kToeplitz) {
      return section.toeplitz[static_cast<std::size_t>(d + static_cast<std::ptrdiff_t>(n) - 1)];
    }
    // Hankel: (Hv)[j] = sum q_{j+k} v[k] = (Tw)[j] with w the reversed
    // vector and T the Toeplitz matrix with c_d = q_{n-1-d}.
    return Complex(section.hankel[static_cast<std::size_t>(
                       static_cast<std::ptrdiff_t>(n) - 1 - d)],
                   0.0);
  };
  impl_->reverse_input = section.structure == GramStructure::kHankel;
  for (std::size_t i = 0; i < n; ++i) {
    column[i] = toeplitz_coeff(-static_cast<std::ptrdiff_t>(i));
  }
  for (std::size_t i = 1; i < n; ++i) {
    column[length - i] = toeplitz_coeff(static_cast<std::ptrdiff_t>(i));
  }
  impl_->spectrum.assign(length, Complex(0.0, 0.0));
  impl_->fft->forward(column.data(), impl_->spectrum.data());
}

StructuredMultiplier::~StructuredMultiplier() = default;

std::size_t StructuredMultiplier::size() const { return impl_->n; }

void StructuredMultiplier::apply(std::span<const Complex> in,
                                 std::span<Complex> out) const {
  const std::size_t n = impl_->n;
  if (in.size() != n || out.size() != n) {
    throw MeasureError("structured_matvec: dimension mismatch");
  }
  if (impl_->structure == GramStructure::kDense) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex sum(0.0, 0.0);
      const Complex* row = impl_->dense.data() + j * n;
      for (std::size_t k = 0; k < n; ++k) sum += row[k] * in[k];
      out[j] = sum;
    }
    return;
  }
  const std::size_t length = impl_->length;
  std::fill(impl_->work.begin(), impl_->work.end(), Complex(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    impl_->work[k] = impl_->reverse_input ? in[n - 1 - k] : in[k];
  }
  impl_->fft->forward(impl_->work.data(), impl_->transformed.data());
  for (std::size_t i = 0; i < length; ++i) {
    impl_->transformed[i] *= impl_->spectrum[i];
  }
  impl_->fft->backward(impl_->transformed.data(), impl_->work.data());
  const double scale = 1.0 / static_cast<double>(length);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = impl_->work[j] * scale;
  }
}

std::vector<Complex> structured_matvec(const GramSection& section,
                                       std::span<const Complex> v) {
  StructuredMultiplier multiplier(section);
  std::vector<Complex> out(section.n);
  multiplier.apply(v, out);
  return out;
}

std::vector<Complex> dense_matvec(const GramSection& section,
                                  std::span<const Complex> v) {
  const std::size_t n = section.n;
  if (v.size() != n) {
    throw MeasureError("dense_matvec: dimension mismatch");
  }
  std::vector<Complex> out(n, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    Complex sum(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      sum += section.entry(j, k) * v[k];
    }
    out[j] = sum;
  }
  return out;
}

double operator_norm(const GramSection& section, double tol, int max_iter) {
  if (!(tol > 0.0)) {
    throw NormEstimationError("operator_norm: tol must be positive");
  }
  const std::size_t n = section.n;
  StructuredMultiplier multiplier(section);

  // Deterministic start vector: fixed-seed generator, reproducible reports.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<Complex> q(n);
  double norm_sq = 0.0;
  for (auto& entry : q) {
    entry = Complex(uniform(rng), uniform(rng));
    norm_sq += std::norm(entry);
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& entry : q) entry *= inv;

  std::vector<std::vector<Complex>> basis;
  std::vector<double> alphas, betas;
  std::vector<Complex> w(n), q_prev(n, Complex(0.0, 0.0));
  double beta_prev = 0.0;
  double lambda_prev = 0.0;
  int stable = 0;
  for (int iter = 0; iter < max_iter; ++iter) {
    basis.push_back(q);
    multiplier.apply(q, w);
    double alpha = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      alpha += (std::conj(q[i]) * w[i]).real();
    }
    for (std::size_t i = 0; i < n; ++i) {
      w[i] -= alpha * q[i] + beta_prev * q_prev[i];
    }
    // Full reorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        Complex proj(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(b[i]) * w[i];
        for (std::size_t i = 0; i < n; ++i) w[i] -= proj * b[i];
      }
    }
    alphas.push_back(alpha);
    const double lambda = tridiag_largest_eigenvalue(alphas, betas);
    double beta_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) beta_sq += std::norm(w[i]);
    const double beta = std::sqrt(beta_sq);
    double scale = std::fabs(lambda);
    for (double a : alphas) scale = std::max(scale, std::fabs(a));
    if (beta <= 1e-13 * std::max(scale, 1.0) || basis.size() == n) {
      return lambda;  // invariant subspace exhausted
    }
    if (iter > 0 && std::fabs(lambda - lambda_prev) <=
                        tol * std::max(std::fabs(lambda), 1e-30)) {
      if (++stable >= 2) return lambda;
    } else {
      stable = 0;
    }
    lambda_prev = lambda;
    betas.push_back(beta);
    q_prev = q;
    const double binv = 1.0 / beta;
    for (std::size_t i = 0; i < n; ++i) q[i] = w[i] * binv;
  }
  throw NormEstimationError(
      "operator_norm: no convergence after " + std::to_string(max_iter) +
      " iterations (last estimate " + std::to_string(lambda_prev) + ")");
}

std::vector<std::pair<std::size_t, double>> bessel_bound_profile(
    const SpectralMeasureSpec& spec, const std::vector<std::size_t>& sizes,
    double tol, const QuadratureConfig& cfg) {
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) {
      throw MeasureError("bessel_bound_profile: sizes must be increasing");
    }
  }
  std::vector<std::pair<std::size_t, double>> profile;
  profile.reserve(sizes.size());
  for (std::size_t n : sizes) {
    const GramSection section = build_section(spec, n, false, cfg);
    profile.emplace_back(n, operator_norm(section, tol));
  }
  return profile;
}

}  // namespace besselorbit
