#pragma once

// Independent back-ends used to cross-check the split-step pipeline:
// stationary transfer-matrix scattering and an implicit time integrator.
// Both act on Re V only.

#include <cstddef>
#include <functional>
#include <vector>

#include "rydqr/physical_model.hpp"
#include "rydqr/wavepacket.hpp"

namespace rydqr {

// Step potential: values[0] on (-inf, breakpoints[0]), values[i] on
// [breakpoints[i-1], breakpoints[i]), values.back() on [breakpoints.back(), inf).
// The two outer values are zero.
struct PiecewisePotential {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

void validate(const PiecewisePotential& pw);

enum class Incidence { Left, Right };

struct StationaryRT {
  double r = 0.0;
  double t = 0.0;
};

// Plane-wave reflection/transmission probabilities for E = k^2.
StationaryRT transfer_matrix_rt(double k, const PiecewisePotential& pw,
                                Incidence side = Incidence::Left);

// Midpoint samples of an arbitrary real profile on `segments` equal slabs.
PiecewisePotential discretize_function(const std::function<double(double)>& reV, std::size_t segments,
                                       double xiFrom, double xiTo);

// Midpoint samples of Re V (linearly interpolated) on `segments` equal slabs.
PiecewisePotential discretize_potential(const DefectPotential& potential, std::size_t segments,
                                        double xiFrom, double xiTo);
// Slabs span the region where |Re V| >= epsilonV * depth.
PiecewisePotential discretize_potential(const DefectPotential& potential, std::size_t segments,
                                        double epsilonV = 1e-6);

// Well of depth > 0 (V = -depth) on [left, left + width).
PiecewisePotential square_well(double depth, double width, double left = 0.0);

// Closed-form transmission of that well.
double square_well_transmission(double k, double depth, double width);

// Wavenumbers with q width = n pi, where the well is reflectionless.
std::vector<double> square_well_resonances(double depth, double width, std::size_t count);

// Numerov-compact Crank-Nicolson on the packet's grid with zero Dirichlet edges.
// Uses psi0.grid.dTau unless dTau > 0 is given.
Wavepacket reference_evolve(const Wavepacket& psi0, const DefectPotential& potential, double tauEnd,
                            double dTau = 0.0);

}  // namespace rydqr
