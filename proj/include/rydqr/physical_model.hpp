#pragma once

// Laboratory-frame Rydberg-EIT parameters and the complex defect potential
// they induce for the probe photon.
//
// All rates are angular (rad/s), lengths in metres, C6 in rad/s * m^6.

#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rydqr {

using complex = std::complex<double>;

namespace constants {
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double c = 299792458.0;             // m/s
inline constexpr double epsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double pi = std::numbers::pi;
inline constexpr double twoPi = 2.0 * std::numbers::pi;
}  // namespace constants

struct PhysicalConfig {
  double Gamma12 = 0.0;  // spontaneous decay |2> -> |1>
  double Gamma23 = 0.0;  // spontaneous decay |3> -> |2>
  double Delta2 = 0.0;   // one-photon detuning (signed)
  double Delta3 = 0.0;   // two-photon detuning
  double OmegaC = 0.0;   // control half Rabi frequency
  double C6 = 0.0;       // vdW coefficient
  double Na = 0.0;       // atomic density, m^-3
  // Lumps pi * N_g / (2 N_x) of the gate-atom array. Carries units of m^-2
  // so that kappaDefect * C6 / |x - xg|^4 is a rate.
  double kappaDefect = 1.0e6;
  double xg = 0.0;            // defect centre
  double lambdaP = 461e-9;    // probe wavelength
  double R0 = 6e-6;           // transverse beam size
  std::optional<double> gamma21;  // default Gamma12 / 2
  std::optional<double> gamma31;  // default Gamma23 / 2
  // Replaces Na |e_p . p21|^2 / (eps0 hbar) (units s^-1) when present.
  std::optional<double> dipolePrefactor;
  // |e_p . p21| in C m. Defaults to the radiative value implied by Gamma12.
  std::optional<double> dipoleMoment;
};

// 88Sr, n = 60, Delta2 = -2pi x 160 MHz (the middle member of the profile family).
PhysicalConfig strontium_reference_config();

double coherence_decay_21(const PhysicalConfig& cfg);
double coherence_decay_31(const PhysicalConfig& cfg);
double probe_angular_frequency(const PhysicalConfig& cfg);
double transition_dipole(const PhysicalConfig& cfg);
double susceptibility_prefactor(const PhysicalConfig& cfg);

// Empty when valid; otherwise one message per offending field, each starting
// with the field name.
std::vector<std::string> validation_problems(const PhysicalConfig& cfg);
void require_valid(const PhysicalConfig& cfg);

struct CharacteristicScales {
  double mp = 0.0;    // effective photon mass, kg
  double V0 = 0.0;    // energy scale, J
  // hbar / (2 mp R0^2) as written; dimensionally this is V0 / hbar (s^-1).
  // The time unit of the dimensionless equation is its inverse.
  double tau0 = 0.0;
  double kp = 0.0;    // probe wavenumber, 1/m
  double rb = 0.0;    // blockade radius, m
};

// d_{alpha beta} = Delta_alpha - Delta_beta + i gamma_{alpha beta}, Delta_1 = 0.
// Only (2,1) and (3,1) enter the probe response.
complex complex_detuning(int alpha, int beta, const PhysicalConfig& cfg);

double blockade_radius(const PhysicalConfig& cfg);

// -kappaDefect * C6 / |x - xg|^4. Distances below minDistance are raised to
// minDistance; a zero distance with minDistance == 0 is rejected.
double defect_detuning(double x, const PhysicalConfig& cfg, double minDistance = 0.0);

struct SusceptibilityOptions {
  // Relative to |OmegaC|^2.
  double poleEpsilon = 1e-9;
  double minDistance = 0.0;
};

// Full linear probe susceptibility for a given defect detuning.
complex susceptibility_at_detuning(double defectDetuning, const PhysicalConfig& cfg,
                                   double poleEpsilon = 1e-9);
complex susceptibility(double x, const PhysicalConfig& cfg,
                       const SusceptibilityOptions& options = {});

// chi(x) - chi(|x - xg| -> inf): the part produced by the defect alone. Uses
// the closed-form difference so that the far wings carry no cancellation error.
complex defect_susceptibility(double x, const PhysicalConfig& cfg,
                              const SusceptibilityOptions& options = {});

CharacteristicScales characteristic_scales(const PhysicalConfig& cfg);

struct DispersionReport {
  double controlRatio = 0.0;   // |OmegaC|^2 / (gamma21 gamma31)
  double detuningRatio = 0.0;  // |Delta2| / gamma21
  double threshold = 10.0;
  bool satisfied = false;
};

DispersionReport dispersion_diagnostics(const PhysicalConfig& cfg, double threshold = 10.0);

struct PotentialOptions {
  double poleEpsilon = 1e-9;
  double imagRatioThreshold = 0.1;
};

// Dimensionless complex potential sampled on xi.
struct DefectPotential {
  std::vector<double> grid;
  std::vector<complex> values;
  double depth = 0.0;  // -min Re V
  double xiG = 0.0;
  double imagRatio = 0.0;           // |Im V| / |Re V| at the Re V minimum
  double maxImagOverMaxReal = 0.0;  // max |Im V| / max |Re V|
  bool dispersive = true;           // imagRatio below the configured threshold
  double calibrationFactor = 1.0;   // accumulated depth rescaling

  // Fills the derived fields from raw samples.
  static DefectPotential from_samples(std::vector<double> grid, std::vector<complex> values,
                                      double xiG, double imagRatioThreshold = 0.1);
};

// Single sample of V(R0 xi) / V0; |xi - xiG| is clamped below by minDistanceXi.
complex potential_value(double xi, const PhysicalConfig& cfg, const CharacteristicScales& scales,
                        const PotentialOptions& options = {}, double minDistanceXi = 0.0);

DefectPotential build_potential(std::span<const double> grid, const PhysicalConfig& cfg,
                                const CharacteristicScales& scales,
                                const PotentialOptions& options = {});

}  // namespace rydqr
