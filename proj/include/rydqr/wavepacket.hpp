#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace rydqr {

using complex = std::complex<double>;

// Periodic grid xi_j = xiMin + j * dXi, j = 0 .. n-1, with time step dTau.
struct Grid {
  double xiMin = -40.0;
  double xiMax = 40.0;
  std::size_t n = 4096;
  double dTau = 1e-4;

  double dXi() const { return (xiMax - xiMin) / static_cast<double>(n); }
  double xi(std::size_t j) const { return xiMin + static_cast<double>(j) * dXi(); }
  std::vector<double> samples() const;
  // Angular wavenumbers in FFT order.
  std::vector<double> wavenumbers() const;
  double nyquist() const;

  bool operator==(const Grid&) const = default;
};

// Throws std::invalid_argument unless n is a power of two >= 256, the bounds
// are ordered and dTau > 0.
void validate(const Grid& grid);

// pi / dXi must cover 4 (v0 + sqrt(depth)).
void check_nyquist(const Grid& grid, double v0, double depth);

// Smallest extension of grid (doubling n at fixed dXi, symmetric about the
// original centre) whose bounds contain [lo, hi].
Grid widened_to_cover(const Grid& grid, double lo, double hi);

struct Wavepacket {
  Grid grid;
  std::vector<complex> amplitudes;
  double tau = 0.0;
  double a0 = 1.0;  // nominal amplitude; samples are kept at unit norm
};

struct GaussianSpec {
  double a0 = 1.0;
  double xi0 = -8.0;
  double widthParam = 18.0;
  double v0 = 0.0;
};

// a0 exp(-(xi - xi0)^2 / widthParam) exp(i v0 xi), normalized to unit norm.
Wavepacket init_gaussian(const Grid& grid, const GaussianSpec& packet);

struct Observables {
  double norm = 0.0;
  double meanXi = 0.0;
  double widthXi = 0.0;
  double boundaryDensity = 0.0;  // max of |phi|^2 at the two edge samples
  double peakDensity = 0.0;

  double boundary_ratio() const { return peakDensity > 0.0 ? boundaryDensity / peakDensity : 0.0; }
};

Observables observables(const Wavepacket& psi);

// Rescale amplitudes so that sum |phi|^2 dXi == 1.
void normalize(Wavepacket& psi);

// Mean of the discrete momentum distribution.
double momentum_mean(const Wavepacket& psi);

}  // namespace rydqr
