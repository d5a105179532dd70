#pragma once

// The defect as a lossless two-port: (E0, E1) -> (E2, E3) with E0 the vacant
// input, E1 the incident probe, E2 reflected and E3 transmitted.

#include <array>
#include <complex>

#include "rydqr/physical_model.hpp"
#include "rydqr/scattering.hpp"

namespace rydqr {

using Matrix2c = std::array<std::array<complex, 2>, 2>;

struct BeamSplitterModel {
  double r = 0.0;
  double t = 0.0;
  // Rows: outputs (E2, E3). Columns: inputs (E0, E1).
  Matrix2c matrix{};
};

// Frobenius norm of U U^dagger - I.
double unitarity_defect(const Matrix2c& u);

// Requires r, t in [0, 1] and |r + t - 1| < budgetTolerance; renormalizes to r + t = 1.
BeamSplitterModel bs_from_rt(double r, double t, double budgetTolerance = 1e-3);

struct DetectorStatistics {
  double pReflectPort = 0.0;
  double pTransmitPort = 0.0;
  double pCoincidence = 0.0;
};

// One photon in E1, vacuum in E0.
DetectorStatistics single_photon_stats(const BeamSplitterModel& bs);

struct BeamSplitterReport {
  BeamSplitterModel model;
  ScatteringResult raw;  // before discarding L
  double v0 = 0.0;
  DetectorStatistics stats;
};

// Full scattering run at v0 followed by L-discard renormalization. Rejects
// runs with L > maxTrapping as trapping dominated.
BeamSplitterReport pipeline_bs(const ScatteringRun& run, const DefectPotential& potential, double v0,
                               double maxTrapping = 0.05);

}  // namespace rydqr
