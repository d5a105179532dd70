#include "rydqr/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "rydqr/error.hpp"
#include "rydqr/oracle.hpp"
#include "rydqr/parallel.hpp"

namespace rydqr {

namespace {

DefectPotential zero_potential(const Grid& grid) {
  return DefectPotential::from_samples(grid.samples(), std::vector<complex>(grid.n), 0.0);
}

EvolveOptions free_options() {
  EvolveOptions o;
  o.guardBoundary = false;
  return o;
}

Check free_propagation_check(const RunConfig& config) {
  const Wavepacket psi0 = init_gaussian(config.grid, config.packet);
  const Wavepacket psi = evolve_to(psi0, zero_potential(config.grid), 1.0, free_options());
  const Observables o = observables(psi);
  const double mean = free_gaussian_mean(config.packet, 1.0);
  const double width = free_gaussian_width(config.packet, 1.0);
  const double errMean = std::abs(o.meanXi - mean) / std::max(std::abs(mean), width);
  const double errWidth = std::abs(o.widthXi - width) / width;
  std::ostringstream d;
  d << "mean " << o.meanXi << " vs " << mean << ", width " << o.widthXi << " vs " << width;
  return {"split-step free Gaussian (tau = 1)", std::max(errMean, errWidth), 1e-5, d.str()};
}

Check split_step_norm_check(const RunConfig& config, const DefectPotential& well) {
  const Wavepacket psi0 = init_gaussian(config.grid, config.packet);
  EvolveOptions o = free_options();
  SplitStepPropagator prop(config.grid, well, o);
  prop.load(psi0.amplitudes);
  for (int i = 0; i < 10000; ++i) prop.advance();
  Wavepacket psi = psi0;
  prop.store(psi.amplitudes);
  const double drift = std::abs(observables(psi).norm - observables(psi0).norm);
  return {"split-step norm drift over 1e4 steps", drift, 1e-8, ""};
}

Check square_well_check() {
  double worst = 0.0;
  for (double depth : {1.0, 10.0, 40.0})
    for (double width : {0.3, 1.0, 2.5}) {
      const PiecewisePotential pw = square_well(depth, width, -0.5 * width);
      for (int i = 1; i <= 200; ++i) {
        const double k = 0.05 * i;
        worst = std::max(worst, std::abs(transfer_matrix_rt(k, pw).t -
                                         square_well_transmission(k, depth, width)));
      }
    }
  return {"transfer matrix vs square-well closed form", worst, 1e-10, ""};
}

Check resonance_check() {
  double worst = 0.0;
  const double depth = 25.0;
  const double width = 2.0;
  const PiecewisePotential pw = square_well(depth, width);
  for (double k : square_well_resonances(depth, width, 6))
    worst = std::max(worst, std::abs(1.0 - transfer_matrix_rt(k, pw).t));
  return {"transfer matrix T = 1 at well resonances", worst, 1e-8, ""};
}

std::pair<Check, Check> flux_checks(const DefectPotential& well) {
  const PiecewisePotential pw = discretize_potential(well, 512);
  double flux = 0.0;
  double reciprocity = 0.0;
  for (int i = 1; i <= 64; ++i) {
    const double k = 0.25 * i;
    const StationaryRT left = transfer_matrix_rt(k, pw, Incidence::Left);
    const StationaryRT right = transfer_matrix_rt(k, pw, Incidence::Right);
    flux = std::max(flux, std::abs(left.r + left.t - 1.0));
    reciprocity = std::max(reciprocity, std::abs(left.t - right.t));
  }
  return {{"transfer matrix flux R + T = 1", flux, 1e-12, ""},
          {"transfer matrix reciprocity", reciprocity, 1e-12, ""}};
}

// Re V evaluated pointwise from the physical model (not from grid samples),
// scaled like the calibrated well.
std::function<double(double)> analytic_profile(const RunConfig& config, const DefectPotential& well) {
  const CharacteristicScales scales = characteristic_scales(config.physical);
  return [=](double xi) {
    return well.calibrationFactor * potential_value(xi, config.physical, scales, config.potential, 1e-9).real();
  };
}

Check refinement_check(const RunConfig& config, const DefectPotential& well) {
  // d_s = |R_2s - R_s| must shrink with every doubling for s > 64.
  const auto profile = analytic_profile(config, well);
  const Splits span = default_splits(well, 1e-6);
  double ratio = 0.0;
  for (double k : {2.0, 4.0, 8.0}) {
    double prev = -1.0;
    double rPrev = transfer_matrix_rt(k, discretize_function(profile, 128, span.left, span.right)).r;
    for (std::size_t s = 256; s <= 8192; s *= 2) {
      const double r = transfer_matrix_rt(k, discretize_function(profile, s, span.left, span.right)).r;
      const double diff = std::abs(r - rPrev);
      if (prev > 0.0) ratio = std::max(ratio, diff / prev);
      prev = diff;
      rPrev = r;
    }
  }
  return {"discretization refinement monotone beyond 64 slabs (worst d_2s / d_s)", ratio, 1.0 - 1e-12, ""};
}

Check reference_free_check(const RunConfig& config, double dTau) {
  GaussianSpec packet = config.packet;
  packet.v0 = 0.0;
  const Wavepacket psi0 = init_gaussian(config.grid, packet);
  const Wavepacket psi = reference_evolve(psi0, zero_potential(config.grid), 1.0, dTau);
  const double width = free_gaussian_width(packet, 1.0);
  const double err = std::abs(observables(psi).widthXi - width) / width;
  return {"reference integrator free Gaussian width (tau = 1)", err, 1e-5, ""};
}

Check reference_norm_check(const RunConfig& config, const DefectPotential& well) {
  Wavepacket psi = init_gaussian(config.grid, config.packet);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double before = observables(psi).norm;
    psi = reference_evolve(psi, well, config.grid.dTau);
    worst = std::max(worst, std::abs(observables(psi).norm - before));
  }
  return {"reference integrator norm change per step", worst, 1e-10, ""};
}

Check cross_integrator_check(const RunConfig& config, const DefectPotential& well, double dTau) {
  const ScatteringRun run = make_scattering_run(config);
  const double tauEnd = medium_length(run, config.packet.v0, well.xiG).value;
  const Wavepacket psi0 = init_gaussian(config.grid, config.packet);
  EvolveOptions o = free_options();
  const Wavepacket a = evolve_to(psi0, well, tauEnd, o);
  const Wavepacket b = reference_evolve(psi0, well, tauEnd, dTau);
  std::ostringstream d;
  d << "v0 = " << config.packet.v0 << ", tau = " << tauEnd;
  return {"split-step vs reference integrator density (relative L2)", density_l2_distance(a, b), 1e-4,
          d.str()};
}

std::vector<OracleComparison> narrow_packet_runs(const RunConfig& config, const DefectPotential& well,
                                                 const NarrowPacketSetup& setup, std::size_t threads) {
  // Same dXi as the configured grid, enlarged to hold the slow, wide packet.
  Grid grid = config.grid;
  grid = widened_to_cover(grid, -setup.halfDomain, setup.halfDomain);
  const DefectPotential local = extend_potential(well, grid);
  const PiecewisePotential pw = discretize_potential(well, 512);

  ScatteringRun run = make_scattering_run(config);
  run.grid = grid;
  run.packet.widthParam = setup.widthParam;
  run.packet.xi0 = setup.xi0;
  run.lengthCap = 1e9;
  const Splits splits = default_splits(local, run.epsilonV);

  std::vector<OracleComparison> rows(setup.velocities.size());
  std::vector<std::string> errors(rows.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const double v0 = setup.velocities[i];
    // Long enough for the wide packet to clear the well completely.
    ScatteringRun own = run;
    own.mediumLength = std::ceil((std::abs(setup.xi0 - well.xiG) + setup.clearance) / (2.0 * v0) / grid.dTau) *
                       grid.dTau;
    const SweepPoint p = scatter(own, local, splits, v0);
    const StationaryRT st = transfer_matrix_rt(v0, pw);
    rows[i] = {v0, p.ok() ? p.result->r : std::nan(""), p.ok() ? p.result->t : std::nan(""), st.r, st.t};
    errors[i] = p.error;
  });
  for (const auto& e : errors)
    if (!e.empty()) throw Error("narrow-packet run failed: " + e);
  return rows;
}

}  // namespace

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

std::string VerificationReport::text() const {
  std::ostringstream out;
  out.precision(6);
  for (const auto& c : checks) {
    out << (c.pass() ? "PASS  " : "FAIL  ") << c.name << ": " << c.value << " (tol " << c.tolerance << ")";
    if (!c.detail.empty()) out << "  [" << c.detail << "]";
    out << '\n';
  }
  out << (all_pass() ? "all checks passed\n" : "some checks FAILED\n");
  return out.str();
}

double free_gaussian_mean(const GaussianSpec& packet, double tau) { return packet.xi0 + 2.0 * packet.v0 * tau; }

double free_gaussian_width(const GaussianSpec& packet, double tau) {
  const double w = packet.widthParam;
  return std::sqrt((w * w + 16.0 * tau * tau) / (4.0 * w));
}

double density_l2_distance(const Wavepacket& a, const Wavepacket& b) {
  if (a.amplitudes.size() != b.amplitudes.size())
    throw std::invalid_argument("density_l2_distance: size mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < a.amplitudes.size(); ++j) {
    const double ra = std::norm(a.amplitudes[j]);
    const double rb = std::norm(b.amplitudes[j]);
    num += (ra - rb) * (ra - rb);
    den += rb * rb;
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

DefectPotential reference_potential(const RunConfig& config) {
  const DefectPotential shape = build_potential(config.grid.samples(), config.physical,
                                                characteristic_scales(config.physical), config.potential);
  return config.scattering.g0 ? calibrate_depth(*config.scattering.g0, shape) : shape;
}

VerificationReport run_oracle_suite(const RunConfig& config, std::size_t threads,
                                    const NarrowPacketSetup& narrow) {
  VerificationReport report;
  const DefectPotential well = reference_potential(config);
  // The reference integrator runs with a finer step so that its own time
  // error sits well below the cross-check tolerance.
  const double fineStep = config.grid.dTau / 4.0;

  report.checks.push_back(free_propagation_check(config));
  report.checks.push_back(split_step_norm_check(config, well));
  report.checks.push_back(square_well_check());
  report.checks.push_back(resonance_check());
  const auto [flux, reciprocity] = flux_checks(well);
  report.checks.push_back(flux);
  report.checks.push_back(reciprocity);
  report.checks.push_back(refinement_check(config, well));
  report.checks.push_back(reference_free_check(config, fineStep));
  report.checks.push_back(reference_norm_check(config, well));
  report.checks.push_back(cross_integrator_check(config, well, fineStep));

  report.comparisons = narrow_packet_runs(config, well, narrow, threads);
  double worst = 0.0;
  for (const auto& r : report.comparisons)
    worst = std::max({worst, std::abs(r.rDyn - r.rTm), std::abs(r.tDyn - r.tTm)});
  if (std::any_of(report.comparisons.begin(), report.comparisons.end(),
                  [](const OracleComparison& r) { return std::isnan(r.rDyn); }))
    worst = std::numeric_limits<double>::infinity();
  report.checks.push_back({"narrow-packet dynamics vs transfer matrix", worst, 2e-2,
                           "widthParam = " + std::to_string(narrow.widthParam)});
  return report;
}

}  // namespace rydqr
