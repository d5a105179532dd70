#include "rydqr/split_step.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rydqr/error.hpp"

namespace rydqr {

void validate(const EvolveOptions& options) {
  if (options.measurementMode && options.keepImaginary)
    throw std::invalid_argument("measurement mode requires the imaginary potential to be dropped");
  if (options.measurementMode && options.mask)
    throw std::invalid_argument("measurement mode forbids the absorbing mask");
  if (options.mask && !(options.mask->width > 0.0))
    throw std::invalid_argument("absorbing mask width must be > 0");
  if (!(options.boundaryTolerance > 0.0))
    throw std::invalid_argument("boundaryTolerance must be > 0");
}

void require_same_grid(const Grid& grid, const DefectPotential& potential) {
  const double tol = 1e-9 * grid.dXi();
  if (potential.grid.size() != grid.n || std::abs(potential.grid.front() - grid.xi(0)) > tol ||
      std::abs(potential.grid.back() - grid.xi(grid.n - 1)) > tol)
    throw std::invalid_argument("potential is not sampled on the wavepacket grid");
}

SplitStepPropagator::SplitStepPropagator(const Grid& grid, const DefectPotential& potential,
                                         const EvolveOptions& options)
    : grid_(grid), options_(options), fft_(grid.n) {
  validate(grid_);
  validate(options_);
  require_same_grid(grid_, potential);

  potential_.resize(grid_.n);
  for (std::size_t j = 0; j < grid_.n; ++j)
    potential_[j] = options_.keepImaginary ? potential.values[j] : complex(potential.values[j].real());

  const auto ks = grid_.wavenumbers();
  kineticEnergy_.resize(grid_.n);
  for (std::size_t m = 0; m < grid_.n; ++m) kineticEnergy_[m] = ks[m] * ks[m];

  if (options_.mask) {
    mask_.assign(grid_.n, 1.0);
    const double w = options_.mask->width;
    for (std::size_t j = 0; j < grid_.n; ++j) {
      const double x = grid_.xi(j);
      const double depthIn = std::max(w - (x - grid_.xiMin), w - (grid_.xiMax - x));
      if (depthIn > 0.0)
        mask_[j] = std::pow(std::cos(0.5 * std::numbers::pi * std::min(depthIn / w, 1.0)), 0.125);
    }
  }
  fill_phases(grid_.dTau, halfPotentialPhase_, kineticPhase_);
}

void SplitStepPropagator::fill_phases(double dTau, std::vector<complex>& half,
                                      std::vector<complex>& kinetic) const {
  const complex minusI(0.0, -1.0);
  half.resize(grid_.n);
  kinetic.resize(grid_.n);
  for (std::size_t j = 0; j < grid_.n; ++j) half[j] = std::exp(minusI * potential_[j] * (0.5 * dTau));
  // Folds the 1/n of the unnormalized inverse transform into the kinetic phase.
  const double inverseN = 1.0 / static_cast<double>(grid_.n);
  for (std::size_t m = 0; m < grid_.n; ++m)
    kinetic[m] = std::polar(inverseN, -kineticEnergy_[m] * dTau);
}

void SplitStepPropagator::load(std::span<const complex> psi) {
  if (psi.size() != grid_.n) throw std::invalid_argument("load: size mismatch");
  std::copy(psi.begin(), psi.end(), fft_.data().begin());
}

void SplitStepPropagator::store(std::span<complex> psi) const {
  if (psi.size() != grid_.n) throw std::invalid_argument("store: size mismatch");
  std::copy(fft_.data().begin(), fft_.data().end(), psi.begin());
}

namespace {

// Plain complex product; std::complex's operator* carries the Annex G
// inf/nan recovery path, which dominates the step cost.
inline void scale_by(std::span<complex> phi, const std::vector<complex>& factor) {
  auto* z = reinterpret_cast<double*>(phi.data());
  const auto* f = reinterpret_cast<const double*>(factor.data());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const double re = z[2 * j] * f[2 * j] - z[2 * j + 1] * f[2 * j + 1];
    const double im = z[2 * j] * f[2 * j + 1] + z[2 * j + 1] * f[2 * j];
    z[2 * j] = re;
    z[2 * j + 1] = im;
  }
}

}  // namespace

void SplitStepPropagator::apply(const std::vector<complex>& half, const std::vector<complex>& kinetic) {
  auto phi = fft_.data();
  scale_by(phi, half);
  fft_.forward();
  scale_by(phi, kinetic);
  fft_.backward();
  scale_by(phi, half);
  if (!mask_.empty())
    for (std::size_t j = 0; j < grid_.n; ++j) phi[j] *= mask_[j];
}

void SplitStepPropagator::advance() { apply(halfPotentialPhase_, kineticPhase_); }

void SplitStepPropagator::advance(double dTau) {
  std::vector<complex> half;
  std::vector<complex> kinetic;
  fill_phases(dTau, half, kinetic);
  apply(half, kinetic);
}

double SplitStepPropagator::boundary_ratio() const {
  const auto phi = fft_.data();
  double peak = 0.0;
  for (const auto& z : phi) peak = std::max(peak, std::norm(z));
  const double edge = std::max(std::norm(phi.front()), std::norm(phi.back()));
  return peak > 0.0 ? edge / peak : 0.0;
}

Wavepacket step(const Wavepacket& psi, const DefectPotential& potential, const EvolveOptions& options) {
  SplitStepPropagator propagator(psi.grid, potential, options);
  propagator.load(psi.amplitudes);
  propagator.advance();
  Wavepacket out = psi;
  propagator.store(out.amplitudes);
  out.tau = psi.tau + psi.grid.dTau;
  return out;
}

namespace {

Wavepacket snapshot_of(const SplitStepPropagator& propagator, const Wavepacket& like, double tau) {
  Wavepacket out;
  out.grid = like.grid;
  out.a0 = like.a0;
  out.tau = tau;
  out.amplitudes.resize(like.grid.n);
  propagator.store(out.amplitudes);
  return out;
}

}  // namespace

Trajectory evolve(const Wavepacket& psi0, const DefectPotential& potential, double tauEnd,
                  std::size_t snapshotEvery, const EvolveOptions& options) {
  if (!(tauEnd >= 0.0) || !std::isfinite(tauEnd)) throw std::invalid_argument("evolve: tauEnd must be >= 0");
  Trajectory trajectory;
  trajectory.snapshots.push_back(psi0);
  if (tauEnd == 0.0) return trajectory;

  SplitStepPropagator propagator(psi0.grid, potential, options);
  propagator.load(psi0.amplitudes);
  const bool guard = options.guardBoundary && !options.mask;
  auto check = [&](double tau) {
    if (!guard) return;
    const double ratio = propagator.boundary_ratio();
    if (ratio >= options.boundaryTolerance) throw BoundaryContactError(tau, ratio);
  };
  check(psi0.tau);

  const double dTau = psi0.grid.dTau;
  const double exactSteps = tauEnd / dTau;
  auto fullSteps = static_cast<std::size_t>(std::floor(exactSteps + 1e-9));
  const double remainder = tauEnd - static_cast<double>(fullSteps) * dTau;
  const bool partial = remainder > 1e-9 * dTau;

  double tau = psi0.tau;
  for (std::size_t i = 1; i <= fullSteps; ++i) {
    propagator.advance();
    tau = psi0.tau + static_cast<double>(i) * dTau;
    check(tau);
    const bool last = i == fullSteps && !partial;
    if (snapshotEvery > 0 && i % snapshotEvery == 0 && !last)
      trajectory.snapshots.push_back(snapshot_of(propagator, psi0, tau));
  }
  if (partial) {
    propagator.advance(remainder);
    check(psi0.tau + tauEnd);
  }
  trajectory.snapshots.push_back(snapshot_of(propagator, psi0, psi0.tau + tauEnd));
  return trajectory;
}

Wavepacket evolve_to(const Wavepacket& psi0, const DefectPotential& potential, double tauEnd,
                     const EvolveOptions& options) {
  auto trajectory = evolve(psi0, potential, tauEnd, 0, options);
  return std::move(trajectory.snapshots.back());
}

}  // namespace rydqr
