#include "rydqr/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rydqr/fft.hpp"

namespace rydqr {

std::vector<double> Grid::samples() const {
  std::vector<double> xs(n);
  for (std::size_t j = 0; j < n; ++j) xs[j] = xi(j);
  return xs;
}

std::vector<double> Grid::wavenumbers() const {
  std::vector<double> ks(n);
  const double dk = 2.0 * std::numbers::pi / (xiMax - xiMin);
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  for (std::size_t m = 0; m < n; ++m) {
    auto index = static_cast<std::ptrdiff_t>(m);
    if (index >= half) index -= static_cast<std::ptrdiff_t>(n);
    ks[m] = dk * static_cast<double>(index);
  }
  return ks;
}

double Grid::nyquist() const { return std::numbers::pi / dXi(); }

void validate(const Grid& grid) {
  if (grid.n < 256 || (grid.n & (grid.n - 1)) != 0)
    throw std::invalid_argument("grid.n must be a power of two >= 256");
  if (!(std::isfinite(grid.xiMin) && std::isfinite(grid.xiMax) && grid.xiMax > grid.xiMin))
    throw std::invalid_argument("grid bounds must satisfy xiMin < xiMax");
  if (!(grid.dTau > 0.0 && std::isfinite(grid.dTau)))
    throw std::invalid_argument("grid.dTau must be > 0");
}

void check_nyquist(const Grid& grid, double v0, double depth) {
  const double required = 4.0 * (std::abs(v0) + std::sqrt(std::max(depth, 0.0)));
  if (grid.nyquist() < required) {
    std::ostringstream msg;
    msg << "grid under-resolves the packet: pi/dXi = " << grid.nyquist() << " < 4 (v0 + sqrt(depth)) = "
        << required;
    throw std::invalid_argument(msg.str());
  }
}

Grid widened_to_cover(const Grid& grid, double lo, double hi) {
  Grid g = grid;
  while (lo < g.xiMin || hi > g.xiMax) {
    const double half = 0.5 * (g.xiMax - g.xiMin);
    g.xiMin -= half;
    g.xiMax += half;
    g.n *= 2;
  }
  return g;
}

Wavepacket init_gaussian(const Grid& grid, const GaussianSpec& packet) {
  validate(grid);
  if (!(packet.widthParam > 0.0)) throw std::invalid_argument("init_gaussian: widthParam must be > 0");

  // exp(-d^2 / w) < 1e-8 at both periodic edges.
  const double required = std::sqrt(packet.widthParam * std::log(1e8));
  if (packet.xi0 - grid.xiMin < required || grid.xiMax - packet.xi0 < required) {
    std::ostringstream msg;
    msg << "init_gaussian: Gaussian tail at the boundary exceeds 1e-8; the domain must extend at least "
        << required << " on each side of xi0 = " << packet.xi0 << ", i.e. cover [" << packet.xi0 - required
        << ", " << packet.xi0 + required << "]";
    throw std::invalid_argument(msg.str());
  }

  Wavepacket psi;
  psi.grid = grid;
  psi.a0 = packet.a0;
  psi.amplitudes.resize(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double x = grid.xi(j);
    const double u = x - packet.xi0;
    psi.amplitudes[j] = packet.a0 * std::exp(-u * u / packet.widthParam) * std::polar(1.0, packet.v0 * x);
  }
  normalize(psi);
  return psi;
}

Observables observables(const Wavepacket& psi) {
  Observables o;
  const double dx = psi.grid.dXi();
  double sum = 0.0;
  double first = 0.0;
  for (std::size_t j = 0; j < psi.amplitudes.size(); ++j) {
    const double rho = std::norm(psi.amplitudes[j]);
    sum += rho;
    first += rho * psi.grid.xi(j);
    o.peakDensity = std::max(o.peakDensity, rho);
  }
  o.norm = sum * dx;
  if (sum > 0.0) {
    o.meanXi = first / sum;
    double second = 0.0;
    for (std::size_t j = 0; j < psi.amplitudes.size(); ++j) {
      const double u = psi.grid.xi(j) - o.meanXi;
      second += std::norm(psi.amplitudes[j]) * u * u;
    }
    o.widthXi = std::sqrt(second / sum);
  }
  if (!psi.amplitudes.empty())
    o.boundaryDensity = std::max(std::norm(psi.amplitudes.front()), std::norm(psi.amplitudes.back()));
  return o;
}

void normalize(Wavepacket& psi) {
  const double n = observables(psi).norm;
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("normalize: norm must be finite and > 0");
  const double scale = 1.0 / std::sqrt(n);
  for (auto& z : psi.amplitudes) z *= scale;
}

double momentum_mean(const Wavepacket& psi) {
  Fft fft(psi.grid.n);
  std::copy(psi.amplitudes.begin(), psi.amplitudes.end(), fft.data().begin());
  fft.forward();
  const auto ks = psi.grid.wavenumbers();
  double weight = 0.0;
  double first = 0.0;
  for (std::size_t m = 0; m < ks.size(); ++m) {
    const double p = std::norm(fft.data()[m]);
    weight += p;
    first += p * ks[m];
  }
  return first / weight;
}

}  // namespace rydqr
