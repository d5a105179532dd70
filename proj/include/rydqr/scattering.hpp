#pragma once

// Reflection / transmission / trapping fractions of a scattered packet,
// velocity sweeps and the (v0, g0) map.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rydqr/physical_model.hpp"
#include "rydqr/split_step.hpp"
#include "rydqr/wavepacket.hpp"

namespace rydqr {

struct Splits {
  double left = 0.0;
  double right = 0.0;
};

struct ScatteringResult {
  double r = 0.0;
  double t = 0.0;
  double l = 0.0;
  double xiL = 0.0;
  double xiR = 0.0;
  double budget = 0.0;
  double v0 = 0.0;
  double g0 = 0.0;
};

// Partial norms of finalPsi over xi <= xiL, xi >= xiR and the interval in
// between, each divided by the norm of initialPsi.
ScatteringResult compute_rtl(const Wavepacket& finalPsi, const Wavepacket& initialPsi, double xiL,
                             double xiR);

// Innermost samples beyond which |Re V| stays below epsilonV * depth on each
// side of the well.
Splits default_splits(const DefectPotential& potential, double epsilonV = 1e-3);

// Linear rescaling of the whole complex profile so that -min Re V == targetG0.
DefectPotential calibrate_depth(double targetG0, const DefectPotential& shape);

// Zero-pads a potential onto a grid with the same spacing that contains it.
DefectPotential extend_potential(const DefectPotential& potential, const Grid& grid);

struct ScatteringRun {
  Grid grid;
  GaussianSpec packet;  // v0 is taken from the sweep point
  double epsilonV = 1e-3;
  std::optional<double> mediumLength;  // overrides the per-velocity default
  double lengthCap = 200.0;
  // Enlarge the domain (fixed dXi) when the predicted packet spread at L_m
  // would reach the periodic boundary.
  bool autoWiden = true;
  EvolveOptions evolve;
};

struct MediumLength {
  double value = 0.0;
  bool capped = false;
};

// (|xi0 - xiG| + 6) / (2 v0) rounded up to a whole number of steps, capped at
// lengthCap, unless mediumLength is set.
MediumLength medium_length(const ScatteringRun& run, double v0, double xiG = 0.0);

// Grid used for a point: run.grid, or a widened copy covering the free-packet
// envelope at L_m.
Grid measurement_grid(const ScatteringRun& run, double v0, double mediumLength, double xiG = 0.0);

struct SweepPoint {
  double v0 = 0.0;
  double g0 = 0.0;
  MediumLength mediumLength;
  Grid grid;
  std::optional<ScatteringResult> result;
  std::string error;

  bool ok() const { return result.has_value(); }
};

// One full evolution + R/T/L. Failures are captured in SweepPoint::error.
SweepPoint scatter(const ScatteringRun& run, const DefectPotential& potential, const Splits& splits,
                   double v0);

std::vector<SweepPoint> sweep_velocity(const ScatteringRun& run, const DefectPotential& potential,
                                       std::span<const double> v0List, std::size_t threads = 1);
std::vector<SweepPoint> sweep_velocity(const ScatteringRun& run, const DefectPotential& potential,
                                       const Splits& splits, std::span<const double> v0List,
                                       std::size_t threads = 1);

struct PhaseDiagram {
  std::vector<double> v0Axis;
  std::vector<double> g0Axis;
  // Indexed [g0][v0]; failed cells hold NaN.
  std::vector<std::vector<double>> rMatrix;
  std::vector<std::vector<double>> tMatrix;
  std::vector<std::vector<double>> lMatrix;
  std::vector<SweepPoint> cells;  // row-major, g0 outer
  Splits splits;
};

PhaseDiagram phase_diagram(std::span<const double> v0Grid, std::span<const double> g0Grid,
                           const DefectPotential& baseShape, const ScatteringRun& run,
                           std::size_t threads = 1);

// theta = atan(v0 / R0) with R0 in micrometres, taken literally.
double incident_angle(double v0, double R0Metres);

std::vector<double> linspace(double first, double last, std::size_t count);

}  // namespace rydqr
