// Command-line front end: load a measure spec, run the criteria / Gram /
// heat pipelines, and emit reports.
//
// Exit codes for `analyze`: 0 BESSEL, 1 NOT_BESSEL, 2 INCONCLUSIVE,
// 3 input error, 4 internal error.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "besselorbit/criteria.hpp"
#include "besselorbit/gram.hpp"
#include "besselorbit/heat.hpp"
#include "besselorbit/measure.hpp"
#include "besselorbit/report.hpp"
#include "besselorbit/spec_json.hpp"

namespace {

using namespace besselorbit;

struct RunConfig {
  std::string input;
  std::string output;
  std::string format = "text";
  double tol = 1e-9;
  std::size_t max_size = 256;
  double eps_min = 0.0;  // 0: keep the default grid
  double delta = 1.0;
};

void emit(const RunConfig& run, const std::string& payload) {
  if (run.output.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(run.output);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + run.output);
  }
  out << payload;
}

CriteriaConfig criteria_config(const RunConfig& run) {
  CriteriaConfig cfg;
  cfg.norm_tol = run.tol;
  if (run.eps_min > 0.0 && run.eps_min < 1.0) {
    cfg.tail_levels = static_cast<int>(std::ceil(-std::log2(run.eps_min)));
  }
  std::vector<std::size_t> sizes;
  for (std::size_t n = 16; n <= run.max_size; n *= 4) sizes.push_back(n);
  if (sizes.empty()) sizes.push_back(run.max_size);
  cfg.gram_sizes = sizes;
  return cfg;
}

int run_analyze(const RunConfig& run) {
  const SpectralMeasureSpec spec = parse_spec_file(run.input);
  const BesselVerdict result = verdict(spec, criteria_config(run));
  if (run.format == "json") {
    emit(run, verdict_to_json(result));
  } else if (run.format == "csv") {
    emit(run, verdict_to_csv(result));
  } else {
    emit(run, verdict_to_text(result));
  }
  switch (result.status) {
    case BesselStatus::kBessel:
      return 0;
    case BesselStatus::kNotBessel:
      return 1;
    case BesselStatus::kInconclusive:
      return 2;
  }
  return 4;
}

int run_gram_profile(const RunConfig& run) {
  const SpectralMeasureSpec spec = parse_spec_file(run.input);
  std::vector<std::size_t> sizes;
  for (std::size_t n = 16; n <= run.max_size; n *= 2) sizes.push_back(n);
  if (sizes.empty()) sizes.push_back(run.max_size);
  const auto profile = bessel_bound_profile(spec, sizes, run.tol);
  std::ostringstream out;
  out.precision(17);
  if (run.format == "json") {
    out << "[";
    for (std::size_t i = 0; i < profile.size(); ++i) {
      out << (i ? "," : "") << "{\"n\":" << profile[i].first
          << ",\"norm\":" << profile[i].second << "}";
    }
    out << "]\n";
  } else {
    out << "n,norm\n";
    for (const auto& [n, norm] : profile) {
      out << n << ',' << norm << '\n';
    }
  }
  emit(run, out.str());
  return 0;
}

int run_heat(const RunConfig& run) {
  std::ostringstream out;
  out.precision(17);
  out << "table,param,value,aux\n";
  for (unsigned k = 1; k <= 1u << 20; k *= 2) {
    const double q = heat_moment(run.delta, k);
    out << "moment," << k << ',' << q << ',' << k * q << '\n';
  }
  CriteriaConfig cfg = criteria_config(run);
  const CriterionReport tails = non_bessel_witness(run.delta, cfg);
  for (const auto& sample : tails.grid) {
    out << "tail," << sample.param << ',' << sample.value * sample.param << ','
        << sample.value << '\n';
  }
  emit(run, out.str());
  return 0;
}

int run_criteria(const RunConfig& run) {
  const SpectralMeasureSpec spec = parse_spec_file(run.input);
  const BesselVerdict result = verdict(spec, criteria_config(run));
  if (run.format == "csv") {
    emit(run, verdict_to_csv(result));
  } else {
    std::string payload;
    for (const auto& report : result.reports) {
      payload += report_to_json(report);
    }
    emit(run, payload);
  }
  return 0;
}

// Cross-criterion identity suite; one PASS/FAIL line per identity.
int run_verify(const RunConfig& run) {
  const SpectralMeasureSpec spec = parse_spec_file(run.input);
  std::ostringstream out;
  out.precision(12);
  bool all_pass = true;
  auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "PASS" : "FAIL") << "  " << name;
    if (!detail.empty()) out << "  (" << detail << ")";
    out << '\n';
    all_pass = all_pass && ok;
  };

  const bool circle = supported_on_circle(spec);
  const OperatorClassification cls = classify_operator(spec);

  // Synthesis-operator identity: int |p|^2 dmu == c^H G c.
  {
    const std::size_t n = 8;
    const GramSection section = build_section(spec, n);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<Complex> c(n);
      for (auto& v : c) v = Complex(uniform(rng), uniform(rng));
      const double direct = polynomial_mass(spec, c);
      Complex quadratic(0.0, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          quadratic += std::conj(c[j]) * section.entry(j, k) * c[k];
        }
      }
      worst = std::max(worst, std::abs(Complex(direct) - quadratic) /
                                  std::max(1.0, direct));
    }
    check("synthesis identity (quadrature vs Gram form)", worst < 1e-8,
          "max relative deviation " + std::to_string(worst));
  }

  if (circle) {
    // Poisson/resolvent link on the circle part.
    double worst = 0.0;
    for (const Complex w : {Complex(0.3, 0.1), Complex(-0.5, 0.4),
                            Complex(0.0, 0.0), Complex(0.1, -0.7)}) {
      const double lhs = poisson_integral(spec, w);
      const double rhs = (1.0 - std::norm(w)) * resolvent_norm_sq(spec, w);
      worst = std::max(worst,
                       std::fabs(lhs - rhs) / std::max(1.0, std::fabs(lhs)));
    }
    check("Poisson/resolvent link", worst < 1e-9,
          "max relative deviation " + std::to_string(worst));

    // Stieltjes inversion toward an arc mass.
    const double alpha = -1.0, beta = 1.0;
    std::vector<double> radii;
    for (int m = 2; m <= 10; ++m) radii.push_back(1.0 - std::pow(2.0, -m));
    const auto values = stieltjes_inversion(spec, alpha, beta, radii);
    double target = arc_mass(spec, alpha, beta);
    for (const auto& comp : spec.components) {
      if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
        for (const auto& a : atoms->atoms) {
          const double ang = std::arg(a.location);
          if (std::fabs(ang - alpha) < 1e-12 || std::fabs(ang - beta) < 1e-12) {
            target += 0.5 * a.mass;
          }
        }
      }
    }
    const double err = std::fabs(values.back() - target);
    check("Stieltjes inversion converges to the arc mass", err < 0.02,
          "deviation " + std::to_string(err) + " at r = " +
              std::to_string(radii.back()));

    // Toeplitz symbol: the Gram norm stays below the density sup estimate.
    const CriterionReport lip = lipschitz_constant_circle(spec);
    if (std::isfinite(lip.constant)) {
      // Smooth circle densities give Toeplitz sections whose top eigenvalues
      // cluster near the symbol maximum, so a tight Lanczos tolerance stalls.
      const double norm = operator_norm(build_section(spec, 512), 1e-7, 2000);
      check("Gram norm below circle-density sup",
            norm <= lip.constant * (1.0 + 1e-6) + run.tol,
            "||G_512|| = " + std::to_string(norm) + ", sup = " +
                std::to_string(lip.constant));
    }
  }

  if (cls.cls == OperatorClass::kNormal && !cls.support_violation) {
    const CriterionReport carleson = carleson_constant(spec);
    const CriterionReport resolvent = resolvent_growth_sup(spec);
    check("Carleson and resolvent divergence flags agree",
          carleson.divergent == resolvent.divergent,
          std::string("carleson ") + (carleson.divergent ? "divergent" : "finite") +
              ", resolvent " + (resolvent.divergent ? "divergent" : "finite"));
  }

  if (cls.cls == OperatorClass::kSelfadjoint) {
    const CriterionReport tail = tail_ratio_sup(spec);
    const CriterionReport decay = moment_decay_sup(spec);
    check("tail and moment-decay divergence flags agree",
          tail.divergent == decay.divergent,
          std::string("tail ") + (tail.divergent ? "divergent" : "finite") +
              ", moments " + (decay.divergent ? "divergent" : "finite"));
  }

  // Adjoint-orbit symmetry: swapped conjugation gives the same norm.
  {
    const std::size_t n = 32;
    const double norm = operator_norm(build_section(spec, n), 1e-10);
    const double adjoint_norm =
        operator_norm(build_section(spec, n, true), 1e-10);
    check("adjoint-orbit Gram norm symmetry",
          std::fabs(norm - adjoint_norm) <= 1e-9 * std::max(1.0, norm),
          "||G|| = " + std::to_string(norm) + ", ||G^T|| = " +
              std::to_string(adjoint_norm));
  }

  emit(run, out.str());
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bessel-sequence analysis of normal-operator orbits"};
  app.require_subcommand(1);

  RunConfig run;

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    if (needs_input) {
      cmd->add_option("-i,--input", run.input, "measure-spec JSON file")
          ->required();
    }
    cmd->add_option("-o,--output", run.output, "output file (default stdout)");
    cmd->add_option("--format", run.format, "output format: text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--tol", run.tol, "norm estimation tolerance");
    cmd->add_option("--max-size", run.max_size, "largest Gram section size");
    cmd->add_option("--eps-min", run.eps_min, "finest tail epsilon");
  };

  auto* analyze = app.add_subcommand("analyze", "full Bessel verdict");
  add_common(analyze, true);
  auto* criteria = app.add_subcommand("criteria", "criterion reports only");
  add_common(criteria, true);
  auto* gram = app.add_subcommand("gram-profile", "Gram section norm profile");
  add_common(gram, true);
  auto* verify = app.add_subcommand("verify", "cross-criterion identity suite");
  add_common(verify, true);
  auto* heat = app.add_subcommand("heat", "heat-semigroup example tables");
  add_common(heat, false);
  heat->add_option("--delta", run.delta, "time step delta")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return run_analyze(run);
    if (criteria->parsed()) return run_criteria(run);
    if (gram->parsed()) return run_gram_profile(run);
    if (verify->parsed()) return run_verify(run);
    if (heat->parsed()) return run_heat(run);
  } catch (const SpecParseError& e) {
    std::cerr << "spec error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 4;
}
