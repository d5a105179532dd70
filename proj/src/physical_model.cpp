#include "rydqr/physical_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rydqr/error.hpp"

namespace rydqr {

using constants::twoPi;

PhysicalConfig strontium_reference_config() {
  PhysicalConfig cfg;
  cfg.Gamma12 = twoPi * 16e6;
  cfg.Gamma23 = twoPi * 16.7e3;
  cfg.Delta2 = -twoPi * 160e6;
  cfg.Delta3 = 0.0;
  cfg.OmegaC = twoPi * 16e6;
  cfg.C6 = twoPi * 81.6e9 * 1e-36;  // 2pi x 81.6 GHz um^6
  cfg.Na = 3e10 * 1e6;              // 3e10 cm^-3
  cfg.kappaDefect = 1.0e6;
  cfg.xg = 0.0;
  cfg.lambdaP = 461e-9;
  cfg.R0 = 6e-6;
  return cfg;
}

double coherence_decay_21(const PhysicalConfig& cfg) {
  return cfg.gamma21.value_or(0.5 * cfg.Gamma12);
}

double coherence_decay_31(const PhysicalConfig& cfg) {
  return cfg.gamma31.value_or(0.5 * cfg.Gamma23);
}

double probe_angular_frequency(const PhysicalConfig& cfg) {
  return twoPi * constants::c / cfg.lambdaP;
}

double transition_dipole(const PhysicalConfig& cfg) {
  if (cfg.dipoleMoment) return *cfg.dipoleMoment;
  // Radiative decay rate of |2> fixes |p21|^2 = 3 pi eps0 hbar c^3 Gamma12 / omega^3.
  const double omega = probe_angular_frequency(cfg);
  const double c3 = constants::c * constants::c * constants::c;
  const double p2 = 3.0 * constants::pi * constants::epsilon0 * constants::hbar * c3 *
                    cfg.Gamma12 / (omega * omega * omega);
  return std::sqrt(p2);
}

double susceptibility_prefactor(const PhysicalConfig& cfg) {
  if (cfg.dipolePrefactor) return *cfg.dipolePrefactor;
  const double p = transition_dipole(cfg);
  return cfg.Na * p * p / (constants::epsilon0 * constants::hbar);
}

std::vector<std::string> validation_problems(const PhysicalConfig& cfg) {
  std::vector<std::string> problems;
  auto positive = [&](const char* name, double v) {
    if (!(std::isfinite(v) && v > 0.0))
      problems.push_back(std::string(name) + ": must be finite and > 0 (got " +
                         std::to_string(v) + ")");
  };
  auto finite = [&](const char* name, double v) {
    if (!std::isfinite(v)) problems.push_back(std::string(name) + ": must be finite");
  };
  positive("Gamma12", cfg.Gamma12);
  positive("Gamma23", cfg.Gamma23);
  positive("OmegaC", cfg.OmegaC);
  positive("Na", cfg.Na);
  positive("R0", cfg.R0);
  positive("lambdaP", cfg.lambdaP);
  positive("gamma21", coherence_decay_21(cfg));
  positive("gamma31", coherence_decay_31(cfg));
  finite("Delta2", cfg.Delta2);
  finite("Delta3", cfg.Delta3);
  finite("C6", cfg.C6);
  finite("xg", cfg.xg);
  if (!(std::isfinite(cfg.kappaDefect) && cfg.kappaDefect >= 0.0))
    problems.push_back("kappaDefect: must be finite and >= 0");
  if (cfg.dipolePrefactor && !(std::isfinite(*cfg.dipolePrefactor) && *cfg.dipolePrefactor >= 0.0))
    problems.push_back("dipolePrefactor: must be finite and >= 0");
  if (cfg.dipoleMoment) positive("dipoleMoment", *cfg.dipoleMoment);
  return problems;
}

void require_valid(const PhysicalConfig& cfg) {
  auto problems = validation_problems(cfg);
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

complex complex_detuning(int alpha, int beta, const PhysicalConfig& cfg) {
  if (beta == 1 && alpha == 2) return {cfg.Delta2, coherence_decay_21(cfg)};
  if (beta == 1 && alpha == 3) return {cfg.Delta3, coherence_decay_31(cfg)};
  throw std::invalid_argument("complex_detuning: unsupported level pair (" +
                              std::to_string(alpha) + "," + std::to_string(beta) +
                              "); only (2,1) and (3,1) are defined");
}

double blockade_radius(const PhysicalConfig& cfg) {
  if (cfg.OmegaC == 0.0) throw std::invalid_argument("blockade_radius: OmegaC must be nonzero");
  const double d21 = std::abs(complex_detuning(2, 1, cfg));
  return std::pow(std::abs(cfg.C6 * d21) / (2.0 * cfg.OmegaC * cfg.OmegaC), 1.0 / 6.0);
}

double defect_detuning(double x, const PhysicalConfig& cfg, double minDistance) {
  double r = std::abs(x - cfg.xg);
  if (r < minDistance) r = minDistance;
  if (r == 0.0)
    throw std::invalid_argument("defect_detuning: x coincides with the defect centre xg");
  const double r2 = r * r;
  return -cfg.kappaDefect * cfg.C6 / (r2 * r2);
}

namespace {

complex chi_from_detuning(double defectDetuning, const PhysicalConfig& cfg, double poleEpsilon,
                          double x) {
  const complex d21 = complex_detuning(2, 1, cfg);
  const complex d31 = complex_detuning(3, 1, cfg);
  const double omega2 = cfg.OmegaC * cfg.OmegaC;
  const complex shifted = d31 - defectDetuning;
  const complex denominator = omega2 - d21 * shifted;
  // Inside the blockade sphere |d21 * shifted| dwarfs omega2; compare against both.
  const double scale = std::max(omega2, std::abs(d21 * shifted));
  if (std::abs(denominator) < poleEpsilon * scale)
    throw ResonantPoleError(x, std::abs(denominator));
  return susceptibility_prefactor(cfg) * shifted / denominator;
}

}  // namespace

complex susceptibility_at_detuning(double defectDetuning, const PhysicalConfig& cfg,
                                   double poleEpsilon) {
  return chi_from_detuning(defectDetuning, cfg, poleEpsilon,
                           std::numeric_limits<double>::quiet_NaN());
}

complex susceptibility(double x, const PhysicalConfig& cfg, const SusceptibilityOptions& options) {
  return chi_from_detuning(defect_detuning(x, cfg, options.minDistance), cfg,
                           options.poleEpsilon, x);
}

complex defect_susceptibility(double x, const PhysicalConfig& cfg,
                              const SusceptibilityOptions& options) {
  const double detuning = defect_detuning(x, cfg, options.minDistance);
  const complex d21 = complex_detuning(2, 1, cfg);
  const complex d31 = complex_detuning(3, 1, cfg);
  const double omega2 = cfg.OmegaC * cfg.OmegaC;
  const complex near = omega2 - d21 * (d31 - detuning);
  const complex far = omega2 - d21 * d31;
  const double nearScale = std::max(omega2, std::abs(d21 * (d31 - detuning)));
  if (std::abs(near) < options.poleEpsilon * nearScale) throw ResonantPoleError(x, std::abs(near));
  if (std::abs(far) < options.poleEpsilon * omega2) throw ResonantPoleError(x, std::abs(far));
  // f(w) - f(u) with f(w) = w / (omega2 - d21 w), w - u = -detuning.
  return -susceptibility_prefactor(cfg) * omega2 * detuning / (near * far);
}

CharacteristicScales characteristic_scales(const PhysicalConfig& cfg) {
  if (!(cfg.lambdaP > 0.0) || !(cfg.R0 > 0.0))
    throw std::invalid_argument("characteristic_scales: lambdaP and R0 must be > 0");
  CharacteristicScales s;
  s.kp = twoPi / cfg.lambdaP;
  s.mp = constants::hbar * s.kp / constants::c;
  const double inertia = 2.0 * s.mp * cfg.R0 * cfg.R0;
  s.V0 = constants::hbar * constants::hbar / inertia;
  s.tau0 = constants::hbar / inertia;
  s.rb = blockade_radius(cfg);
  return s;
}

DispersionReport dispersion_diagnostics(const PhysicalConfig& cfg, double threshold) {
  const double inf = std::numeric_limits<double>::infinity();
  const double g21 = coherence_decay_21(cfg);
  const double g31 = coherence_decay_31(cfg);
  DispersionReport r;
  r.threshold = threshold;
  const double lossProduct = g21 * g31;
  r.controlRatio = lossProduct > 0.0 ? cfg.OmegaC * cfg.OmegaC / lossProduct : inf;
  r.detuningRatio = g21 > 0.0 ? std::abs(cfg.Delta2) / g21 : inf;
  r.satisfied = r.controlRatio >= threshold && r.detuningRatio >= threshold;
  return r;
}

DefectPotential DefectPotential::from_samples(std::vector<double> grid,
                                              std::vector<complex> values, double xiG,
                                              double imagRatioThreshold) {
  if (grid.size() != values.size() || grid.empty())
    throw std::invalid_argument("DefectPotential: grid and values must be nonempty and equal size");
  DefectPotential p;
  p.grid = std::move(grid);
  p.values = std::move(values);
  p.xiG = xiG;

  std::size_t argmin = 0;
  double maxRe = 0.0;
  double maxIm = 0.0;
  for (std::size_t j = 0; j < p.values.size(); ++j) {
    if (p.values[j].real() < p.values[argmin].real()) argmin = j;
    maxRe = std::max(maxRe, std::abs(p.values[j].real()));
    maxIm = std::max(maxIm, std::abs(p.values[j].imag()));
  }
  p.depth = -p.values[argmin].real();

  auto ratio = [](double num, double den) {
    if (den > 0.0) return num / den;
    return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  };
  p.imagRatio = ratio(std::abs(p.values[argmin].imag()), std::abs(p.values[argmin].real()));
  p.maxImagOverMaxReal = ratio(maxIm, maxRe);
  p.dispersive = p.imagRatio < imagRatioThreshold;
  return p;
}

complex potential_value(double xi, const PhysicalConfig& cfg, const CharacteristicScales& scales,
                        const PotentialOptions& options, double minDistanceXi) {
  SusceptibilityOptions chiOptions;
  chiOptions.poleEpsilon = options.poleEpsilon;
  chiOptions.minDistance = minDistanceXi * cfg.R0;
  const double energyPerChi = -0.5 * constants::hbar * probe_angular_frequency(cfg) / scales.V0;
  return energyPerChi * defect_susceptibility(cfg.R0 * xi, cfg, chiOptions);
}

DefectPotential build_potential(std::span<const double> grid, const PhysicalConfig& cfg,
                                const CharacteristicScales& scales,
                                const PotentialOptions& options) {
  require_valid(cfg);
  if (grid.size() < 2) throw std::invalid_argument("build_potential: grid needs >= 2 samples");
  double minSpacing = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < grid.size(); ++j) {
    const double h = grid[j] - grid[j - 1];
    if (!(h > 0.0)) throw std::invalid_argument("build_potential: grid must be strictly increasing");
    minSpacing = std::min(minSpacing, h);
  }

  // Half a spacing keeps the centre sample strictly below its neighbours.
  std::vector<complex> values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    values[j] = potential_value(grid[j], cfg, scales, options, 0.5 * minSpacing);
  return DefectPotential::from_samples({grid.begin(), grid.end()}, std::move(values),
                                       cfg.xg / cfg.R0, options.imagRatioThreshold);
}

}  // namespace rydqr
