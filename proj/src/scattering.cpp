#include "rydqr/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rydqr/error.hpp"
#include "rydqr/parallel.hpp"

namespace rydqr {

namespace {
constexpr int kBoundaryRetries = 2;
}  // namespace

ScatteringResult compute_rtl(const Wavepacket& finalPsi, const Wavepacket& initialPsi, double xiL,
                             double xiR) {
  if (!(finalPsi.grid == initialPsi.grid))
    throw std::invalid_argument("compute_rtl: initial and final packets live on different grids");
  const Grid& g = finalPsi.grid;
  const double lo = g.xi(0);
  const double hi = g.xi(g.n - 1);
  if (!(xiL > lo && xiR < hi && xiL < xiR)) {
    std::ostringstream msg;
    msg << "compute_rtl: split points (" << xiL << ", " << xiR << ") must satisfy " << lo
        << " < xiL < xiR < " << hi;
    throw std::invalid_argument(msg.str());
  }

  double initial = 0.0;
  for (const auto& z : initialPsi.amplitudes) initial += std::norm(z);
  initial *= g.dXi();
  if (!(initial > 0.0)) throw std::invalid_argument("compute_rtl: initial packet has zero norm");

  double left = 0.0;
  double right = 0.0;
  double middle = 0.0;
  for (std::size_t j = 0; j < g.n; ++j) {
    const double x = g.xi(j);
    const double rho = std::norm(finalPsi.amplitudes[j]);
    if (x <= xiL)
      left += rho;
    else if (x >= xiR)
      right += rho;
    else
      middle += rho;
  }
  ScatteringResult res;
  res.r = left * g.dXi() / initial;
  res.t = right * g.dXi() / initial;
  res.l = middle * g.dXi() / initial;
  res.budget = res.r + res.t + res.l;
  res.xiL = xiL;
  res.xiR = xiR;
  return res;
}

Splits default_splits(const DefectPotential& potential, double epsilonV) {
  if (!(potential.depth > 0.0)) throw std::invalid_argument("default_splits: potential has no well");
  if (!(epsilonV > 0.0)) throw std::invalid_argument("default_splits: epsilonV must be > 0");
  const double threshold = epsilonV * potential.depth;
  const auto& v = potential.values;
  const auto significant = [&](const complex& z) { return std::abs(z.real()) >= threshold; };
  const auto first = std::find_if(v.begin(), v.end(), significant);
  const auto last = std::find_if(v.rbegin(), v.rend(), significant);
  const auto jl = static_cast<std::size_t>(first - v.begin());
  const auto jr = v.size() - 1 - static_cast<std::size_t>(last - v.rbegin());
  if (jl == 0 || jr + 1 >= v.size())
    throw std::invalid_argument("default_splits: |Re V| never drops below epsilonV * depth inside the grid");
  return {potential.grid[jl - 1], potential.grid[jr + 1]};
}

DefectPotential calibrate_depth(double targetG0, const DefectPotential& shape) {
  if (!(shape.depth > 0.0)) throw std::invalid_argument("calibrate_depth: shape has zero depth");
  if (!(targetG0 >= 0.0) || !std::isfinite(targetG0))
    throw std::invalid_argument("calibrate_depth: target depth must be finite and >= 0");
  const double factor = targetG0 / shape.depth;
  std::vector<complex> values(shape.values.size());
  std::size_t argmin = 0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    values[j] = shape.values[j] * factor;
    if (shape.values[j].real() < shape.values[argmin].real()) argmin = j;
  }
  // Scaling is exact up to rounding; pin the minimum itself.
  values[argmin].real(-targetG0);
  auto out = DefectPotential::from_samples(shape.grid, std::move(values), shape.xiG);
  out.calibrationFactor = shape.calibrationFactor * factor;
  out.dispersive = shape.dispersive;
  if (targetG0 > 0.0) {
    out.imagRatio = shape.imagRatio;
    out.maxImagOverMaxReal = shape.maxImagOverMaxReal;
  }
  return out;
}

DefectPotential extend_potential(const DefectPotential& potential, const Grid& grid) {
  const double dXi = grid.dXi();
  if (potential.grid.size() < 2) throw std::invalid_argument("extend_potential: empty potential");
  const double oldSpacing = potential.grid[1] - potential.grid[0];
  if (std::abs(oldSpacing - dXi) > 1e-9 * dXi)
    throw std::invalid_argument("extend_potential: grid spacing differs from the potential's");
  const double shift = (potential.grid.front() - grid.xi(0)) / dXi;
  const auto offset = static_cast<long long>(std::llround(shift));
  if (offset < 0 || std::abs(shift - static_cast<double>(offset)) > 1e-6 ||
      static_cast<std::size_t>(offset) + potential.grid.size() > grid.n)
    throw std::invalid_argument("extend_potential: target grid does not contain the potential's samples");

  std::vector<complex> values(grid.n, complex(0.0));
  std::copy(potential.values.begin(), potential.values.end(), values.begin() + offset);
  auto out = DefectPotential::from_samples(grid.samples(), std::move(values), potential.xiG);
  out.calibrationFactor = potential.calibrationFactor;
  out.imagRatio = potential.imagRatio;
  out.maxImagOverMaxReal = potential.maxImagOverMaxReal;
  out.dispersive = potential.dispersive;
  return out;
}

MediumLength medium_length(const ScatteringRun& run, double v0, double xiG) {
  if (run.mediumLength) return {*run.mediumLength, false};
  if (!(v0 > 0.0)) throw std::invalid_argument("medium_length: v0 must be > 0");
  const double raw = (std::abs(run.packet.xi0 - xiG) + 6.0) / (2.0 * v0);
  const double steps = std::ceil(raw / run.grid.dTau - 1e-9);
  const double rounded = steps * run.grid.dTau;
  if (rounded > run.lengthCap) return {run.lengthCap, true};
  return {rounded, false};
}

Grid measurement_grid(const ScatteringRun& run, double v0, double mediumLength, double xiG) {
  if (!run.autoWiden) return run.grid;
  // Free-packet envelope: centres of the transmitted and mirrored packets plus
  // 6.5 standard deviations of the spread density.
  const double w = run.packet.widthParam;
  const double sigma = std::sqrt((w * w + 16.0 * mediumLength * mediumLength) / (4.0 * w));
  const double margin = 6.5 * sigma + 2.0;
  const double transmitted = run.packet.xi0 + 2.0 * v0 * mediumLength;
  const double reflected = 2.0 * xiG - transmitted;
  double lo = std::min(run.packet.xi0, reflected) - margin;
  double hi = std::max(run.packet.xi0, transmitted) + margin;
  // The fast component shed by the initial overlap with the well spreads over
  // the whole periodic domain; keeping the domain >= 30 sigma holds it below
  // the boundary tolerance relative to the (spreading) packet peak.
  const double minLength = 30.0 * sigma;
  if (hi - lo < minLength) {
    const double centre = 0.5 * (lo + hi);
    lo = centre - 0.5 * minLength;
    hi = centre + 0.5 * minLength;
  }
  return widened_to_cover(run.grid, lo, hi);
}

SweepPoint scatter(const ScatteringRun& run, const DefectPotential& potential, const Splits& splits,
                   double v0) {
  SweepPoint point;
  point.v0 = v0;
  point.g0 = potential.depth;
  point.grid = run.grid;
  try {
    if (!(v0 > 0.0)) throw std::invalid_argument("v0 must be > 0");
    point.mediumLength = medium_length(run, v0, potential.xiG);
    point.grid = measurement_grid(run, v0, point.mediumLength.value, potential.xiG);
    check_nyquist(point.grid, v0, potential.depth);
    GaussianSpec packet = run.packet;
    packet.v0 = v0;
    // The envelope estimate ignores the small fast component shed when the
    // initial packet overlaps the well; it wraps around the periodic domain on
    // slow runs. Each retry doubles the domain, diluting it.
    std::optional<ScatteringResult> res;
    for (int attempt = 0; !res; ++attempt) {
      const DefectPotential local =
          point.grid == run.grid ? potential : extend_potential(potential, point.grid);
      const Wavepacket initial = init_gaussian(point.grid, packet);
      try {
        const Wavepacket final = evolve_to(initial, local, point.mediumLength.value, run.evolve);
        res = compute_rtl(final, initial, splits.left, splits.right);
      } catch (const BoundaryContactError&) {
        if (!run.autoWiden || attempt >= kBoundaryRetries) throw;
        const double half = 0.5 * (point.grid.xiMax - point.grid.xiMin);
        point.grid = widened_to_cover(point.grid, point.grid.xiMin - half, point.grid.xiMax + half);
      }
    }
    res->v0 = v0;
    res->g0 = potential.depth;
    point.result = res;
  } catch (const std::exception& e) {
    point.error = e.what();
  }
  return point;
}

std::vector<SweepPoint> sweep_velocity(const ScatteringRun& run, const DefectPotential& potential,
                                       std::span<const double> v0List, std::size_t threads) {
  return sweep_velocity(run, potential, default_splits(potential, run.epsilonV), v0List, threads);
}

std::vector<SweepPoint> sweep_velocity(const ScatteringRun& run, const DefectPotential& potential,
                                       const Splits& splits, std::span<const double> v0List,
                                       std::size_t threads) {
  if (v0List.empty()) throw std::invalid_argument("sweep_velocity: empty velocity list");
  validate(run.grid);
  require_same_grid(run.grid, potential);
  std::vector<SweepPoint> points(v0List.size());
  parallel_for(v0List.size(), threads,
               [&](std::size_t i) { points[i] = scatter(run, potential, splits, v0List[i]); });
  return points;
}

PhaseDiagram phase_diagram(std::span<const double> v0Grid, std::span<const double> g0Grid,
                           const DefectPotential& baseShape, const ScatteringRun& run,
                           std::size_t threads) {
  if (v0Grid.empty() || g0Grid.empty()) throw std::invalid_argument("phase_diagram: empty axis");
  validate(run.grid);
  require_same_grid(run.grid, baseShape);

  PhaseDiagram pd;
  pd.v0Axis.assign(v0Grid.begin(), v0Grid.end());
  pd.g0Axis.assign(g0Grid.begin(), g0Grid.end());
  // Relative thresholds make the splits independent of the depth scaling.
  pd.splits = default_splits(baseShape, run.epsilonV);

  std::vector<DefectPotential> wells;
  wells.reserve(g0Grid.size());
  for (double g0 : g0Grid) wells.push_back(calibrate_depth(g0, baseShape));

  const std::size_t nv = v0Grid.size();
  pd.cells.resize(g0Grid.size() * nv);
  parallel_for(pd.cells.size(), threads, [&](std::size_t i) {
    pd.cells[i] = scatter(run, wells[i / nv], pd.splits, v0Grid[i % nv]);
    pd.cells[i].g0 = g0Grid[i / nv];
    if (pd.cells[i].result) pd.cells[i].result->g0 = g0Grid[i / nv];
  });

  const double nan = std::numeric_limits<double>::quiet_NaN();
  pd.rMatrix.assign(g0Grid.size(), std::vector<double>(nv, nan));
  pd.tMatrix = pd.rMatrix;
  pd.lMatrix = pd.rMatrix;
  for (std::size_t i = 0; i < pd.cells.size(); ++i) {
    if (!pd.cells[i].result) continue;
    pd.rMatrix[i / nv][i % nv] = pd.cells[i].result->r;
    pd.tMatrix[i / nv][i % nv] = pd.cells[i].result->t;
    pd.lMatrix[i / nv][i % nv] = pd.cells[i].result->l;
  }
  return pd;
}

double incident_angle(double v0, double R0Metres) { return std::atan(v0 / (R0Metres * 1e6)); }

std::vector<double> linspace(double first, double last, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = first;
    return out;
  }
  for (std::size_t i = 0; i < count; ++i)
    out[i] = first + (last - first) * static_cast<double>(i) / static_cast<double>(count - 1);
  return out;
}

}  // namespace rydqr
