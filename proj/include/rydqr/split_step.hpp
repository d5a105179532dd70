#pragma once

// Strang-split spectral integrator for i dPhi/dtau' = [-d^2/dxi^2 + V(xi)] Phi
// on a periodic grid.

#include <optional>
#include <span>
#include <vector>

#include "rydqr/fft.hpp"
#include "rydqr/physical_model.hpp"
#include "rydqr/wavepacket.hpp"

namespace rydqr {

struct AbsorbingMask {
  double width = 5.0;  // layer thickness at each edge, xi units
};

struct EvolveOptions {
  bool keepImaginary = false;
  // Measurement runs forbid both the imaginary part and the absorbing mask so
  // that the R/T/L partition accounts for all probability.
  bool measurementMode = true;
  bool guardBoundary = true;
  double boundaryTolerance = 1e-6;
  std::optional<AbsorbingMask> mask;
};

void validate(const EvolveOptions& options);

// Throws std::invalid_argument when potential is not sampled on grid.
void require_same_grid(const Grid& grid, const DefectPotential& potential);

class SplitStepPropagator {
 public:
  SplitStepPropagator(const Grid& grid, const DefectPotential& potential,
                      const EvolveOptions& options = {});

  const Grid& grid() const noexcept { return grid_; }

  void load(std::span<const complex> psi);
  void store(std::span<complex> psi) const;
  std::span<const complex> state() const noexcept { return fft_.data(); }

  // One step of grid().dTau.
  void advance();
  // One step of arbitrary length (used for the final partial step).
  void advance(double dTau);

  // max edge density / peak density of the current state.
  double boundary_ratio() const;

 private:
  void fill_phases(double dTau, std::vector<complex>& half, std::vector<complex>& kinetic) const;
  void apply(const std::vector<complex>& half, const std::vector<complex>& kinetic);

  Grid grid_;
  EvolveOptions options_;
  Fft fft_;
  std::vector<complex> potential_;
  std::vector<double> kineticEnergy_;
  std::vector<complex> halfPotentialPhase_;
  std::vector<complex> kineticPhase_;
  std::vector<double> mask_;
};

Wavepacket step(const Wavepacket& psi, const DefectPotential& potential,
                const EvolveOptions& options = {});

struct Trajectory {
  std::vector<Wavepacket> snapshots;
};

// Advances psi0 to tauEnd. Snapshots: the initial state, every snapshotEvery
// steps when snapshotEvery > 0, and the final state at exactly tauEnd.
Trajectory evolve(const Wavepacket& psi0, const DefectPotential& potential, double tauEnd,
                  std::size_t snapshotEvery, const EvolveOptions& options = {});

// Final state only.
Wavepacket evolve_to(const Wavepacket& psi0, const DefectPotential& potential, double tauEnd,
                     const EvolveOptions& options = {});

}  // namespace rydqr
