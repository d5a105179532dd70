#pragma once

// Oracle suite behind `rydqr verify`: each check compares the production
// pipeline against an independent reference and reports the worst deviation.

#include <cstddef>
#include <string>
#include <vector>

#include "rydqr/config.hpp"
#include "rydqr/csv_io.hpp"

namespace rydqr {

struct Check {
  std::string name;
  double value = 0.0;      // observed deviation
  double tolerance = 0.0;  // pass when value <= tolerance
  std::string detail;

  bool pass() const { return value <= tolerance; }
};

struct VerificationReport {
  std::vector<Check> checks;
  std::vector<OracleComparison> comparisons;  // narrow-packet dynamics vs transfer matrix

  bool all_pass() const;
  std::string text() const;
};

// Free Gaussian closed form: centre xi0 + 2 v0 tau, density standard deviation
// sqrt((w^2 + 16 tau^2) / (4 w)).
double free_gaussian_mean(const GaussianSpec& packet, double tau);
double free_gaussian_width(const GaussianSpec& packet, double tau);

// Relative L2 distance between the two densities (same grid).
double density_l2_distance(const Wavepacket& a, const Wavepacket& b);

// The calibrated well used by the pipelines: physical shape rescaled to
// config.scattering.g0 when set.
DefectPotential reference_potential(const RunConfig& config);

struct NarrowPacketSetup {
  double widthParam = 200.0;
  double xi0 = -70.0;
  double halfDomain = 160.0;
  double clearance = 60.0;  // final transmitted centre past the well
  std::vector<double> velocities{6.0, 10.0, 14.0};
};

VerificationReport run_oracle_suite(const RunConfig& config, std::size_t threads = 1,
                                    const NarrowPacketSetup& narrow = {});

}  // namespace rydqr
