#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rydqr/config.hpp"
#include "rydqr/oracle.hpp"
#include "rydqr/scattering.hpp"
#include "rydqr/split_step.hpp"
#include "rydqr/verification.hpp"
#include "support/oracles.hpp"

using namespace rydqr;

namespace {

DefectPotential reference_well() {
  RunConfig cfg = load_run_config({}, {});
  cfg.scattering.g0 = 10.0;
  return reference_potential(cfg);
}

DefectPotential zero_on(const Grid& g) {
  return DefectPotential::from_samples(g.samples(), std::vector<complex>(g.n), 0.0);
}

PiecewisePotential mirrored(const PiecewisePotential& pw) {
  PiecewisePotential m;
  for (auto it = pw.breakpoints.rbegin(); it != pw.breakpoints.rend(); ++it) m.breakpoints.push_back(-*it);
  m.values.assign(pw.values.rbegin(), pw.values.rend());
  return m;
}

// Mixed wells and barriers; some segments are classically forbidden for the
// smaller wavenumbers used below.
const PiecewisePotential kAsymmetric{{-2.0, -1.3, -0.2, 0.4, 1.7}, {0.0, -12.0, 30.0, -4.0, 55.0, 0.0}};

// R averaged over the momentum density exp(-w (k - v)^2 / 2) of the packet.
double momentum_averaged_r(double v, double w, const PiecewisePotential& pw) {
  const double sk = 1.0 / std::sqrt(w);
  double num = 0.0;
  double den = 0.0;
  for (int i = -400; i <= 400; ++i) {
    const double u = 0.02 * i;
    const double weight = std::exp(-0.5 * u * u);
    num += weight * transfer_matrix_rt(v + u * sk, pw).r;
    den += weight;
  }
  return num / den;
}

}  // namespace

TEST_CASE("transfer matrix matches the square-well closed form") {
  for (double depth : {1.0, 10.0, 80.0})
    for (double width : {0.3, 1.0, 2.5})
      for (double k : {0.2, 1.0, 3.7, 9.0}) {
        const StationaryRT rt = transfer_matrix_rt(k, square_well(depth, width, -0.7));
        CHECK(std::abs(rt.t - oracle::square_well_t(k, depth, width)) < 1e-10);
        CHECK(std::abs(square_well_transmission(k, depth, width) - oracle::square_well_t(k, depth, width)) < 1e-12);
      }
}

TEST_CASE("square-well resonances are reflectionless") {
  const double depth = 25.0;
  const double width = 2.0;
  const auto ks = square_well_resonances(depth, width, 6);
  REQUIRE(ks.size() == 6);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    CHECK(ks[i] > 0.0);
    if (i > 0) CHECK(ks[i] > ks[i - 1]);
    const double q = std::sqrt(ks[i] * ks[i] + depth);
    CHECK(std::abs(std::remainder(q * width, oracle::kPi)) < 1e-9);
    CHECK(std::abs(transfer_matrix_rt(ks[i], square_well(depth, width)).t - 1.0) < 1e-8);
  }
}

TEST_CASE("transfer matrix agrees with a global matching solve") {
  for (double k : {0.5, 2.0, 4.0, 7.5, 12.0}) {
    const StationaryRT rt = transfer_matrix_rt(k, kAsymmetric);
    const oracle::RT ref = oracle::piecewise_rt(k, kAsymmetric.breakpoints, kAsymmetric.values);
    CHECK(std::abs(rt.r - ref.r) < 1e-10);
    CHECK(std::abs(rt.t - ref.t) < 1e-10);
    const PiecewisePotential m = mirrored(kAsymmetric);
    const oracle::RT fromRight = oracle::piecewise_rt(k, m.breakpoints, m.values);
    const StationaryRT rtRight = transfer_matrix_rt(k, kAsymmetric, Incidence::Right);
    CHECK(std::abs(rtRight.r - fromRight.r) < 1e-10);
    CHECK(std::abs(rtRight.t - fromRight.t) < 1e-10);
  }
}

TEST_CASE("flux conservation and reciprocity") {
  const PiecewisePotential pw = discretize_potential(reference_well(), 512);
  for (const PiecewisePotential* p : {&kAsymmetric, &pw})
    for (double k = 0.25; k < 16.0; k += 0.75) {
      const StationaryRT left = transfer_matrix_rt(k, *p);
      const StationaryRT right = transfer_matrix_rt(k, *p, Incidence::Right);
      CHECK(std::abs(left.r + left.t - 1.0) < 1e-12);
      CHECK(std::abs(right.r + right.t - 1.0) < 1e-12);
      CHECK(std::abs(left.t - right.t) < 1e-12);
    }
}

TEST_CASE("transfer matrix rejects malformed input") {
  CHECK_THROWS(validate(PiecewisePotential{{}, {0.0}}));
  CHECK_THROWS(validate(PiecewisePotential{{0.0, 1.0}, {0.0, -1.0}}));
  CHECK_THROWS(validate(PiecewisePotential{{0.0, 1.0}, {1.0, -1.0, 0.0}}));
  CHECK_THROWS(validate(PiecewisePotential{{0.0, 1.0}, {0.0, -1.0, 2.0}}));
  CHECK_THROWS(validate(PiecewisePotential{{1.0, 1.0}, {0.0, -1.0, 0.0}}));
  CHECK_THROWS(validate(PiecewisePotential{{1.0, 0.5}, {0.0, -1.0, 0.0}}));
  CHECK_NOTHROW(validate(square_well(1.0, 1.0)));
  CHECK_THROWS(transfer_matrix_rt(0.0, square_well(1.0, 1.0)));
  CHECK_THROWS(transfer_matrix_rt(-1.0, square_well(1.0, 1.0)));
}

TEST_CASE("discretization samples slab midpoints") {
  SUBCASE("constant profile") {
    const PiecewisePotential pw = discretize_function([](double) { return -3.0; }, 32, -1.0, 1.0);
    REQUIRE(pw.breakpoints.size() == 33);
    REQUIRE(pw.values.size() == 34);
    CHECK(pw.values.front() == 0.0);
    CHECK(pw.values.back() == 0.0);
    for (std::size_t i = 1; i + 1 < pw.values.size(); ++i) CHECK(pw.values[i] == -3.0);
    CHECK(pw.breakpoints.front() == doctest::Approx(-1.0));
    CHECK(pw.breakpoints.back() == doctest::Approx(1.0));
  }
  SUBCASE("midpoints and symmetry") {
    const PiecewisePotential pw = discretize_function([](double x) { return x; }, 16, 0.0, 4.0);
    for (std::size_t i = 0; i < 16; ++i) CHECK(pw.values[i + 1] == doctest::Approx(0.25 * (double(i) + 0.5)));
    const PiecewisePotential even = discretize_function([](double x) { return -std::exp(-x * x); }, 64, -3.0, 3.0);
    for (std::size_t i = 1; i + 1 < even.values.size(); ++i)
      CHECK(even.values[i] == doctest::Approx(even.values[even.values.size() - 1 - i]).epsilon(1e-14));
  }
  SUBCASE("errors") {
    CHECK_THROWS(discretize_function([](double) { return 0.0; }, 15, -1.0, 1.0));
    CHECK_THROWS(discretize_function([](double) { return 0.0; }, 32, 1.0, 1.0));
    CHECK_THROWS(discretize_function([](double) { return 0.0; }, 32, 1.0, -1.0));
  }
  SUBCASE("region of the physical well") {
    const DefectPotential well = reference_well();
    const PiecewisePotential pw = discretize_potential(well, 256);
    CHECK(pw.breakpoints.size() == 257);
    CHECK(pw.breakpoints.front() < 0.0);
    CHECK(pw.breakpoints.back() > 0.0);
    const double minValue = *std::min_element(pw.values.begin(), pw.values.end());
    CHECK(minValue < -0.5 * well.depth);
  }
}

TEST_CASE("transfer-matrix R converges under slab refinement") {
  const auto profile = [](double x) { return -10.0 * std::exp(-x * x); };
  double previous = 0.0;
  double lastDiff = 0.0;
  for (std::size_t s : {128, 256, 512, 1024, 2048}) {
    const double r = transfer_matrix_rt(2.0, discretize_function(profile, s, -6.0, 6.0)).r;
    if (s > 128) {
      const double diff = std::abs(r - previous);
      if (s > 256) CHECK(diff < 0.5 * lastDiff);
      lastDiff = diff;
    }
    previous = r;
  }
  CHECK(lastDiff < 1e-6);
}

TEST_CASE("reference integrator") {
  const Grid g;
  SUBCASE("free Gaussian width and mean") {
    const GaussianSpec packet{1.0, -4.0, 18.0, 3.0};
    const Wavepacket psi = reference_evolve(init_gaussian(g, packet), zero_on(g), 1.0, g.dTau / 4.0);
    const Observables o = observables(psi);
    const double sigma = oracle::free_sigma(1.0, packet.widthParam);
    CHECK(std::abs(o.widthXi - sigma) / sigma < 1e-5);
    CHECK(std::abs(o.meanXi - oracle::free_mean(1.0, packet.xi0, packet.v0)) < 1e-4);
  }
  SUBCASE("norm per step inside the well") {
    Wavepacket psi = init_gaussian(g, GaussianSpec{1.0, -3.0, 4.0, 5.0});
    const DefectPotential well = reference_well();
    for (int i = 0; i < 50; ++i) {
      const double before = observables(psi).norm;
      psi = reference_evolve(psi, well, g.dTau);
      CHECK(std::abs(observables(psi).norm - before) < 1e-10);
    }
  }
  SUBCASE("agrees with the split-step propagator") {
    const DefectPotential well = reference_well();
    const Wavepacket psi0 = init_gaussian(g, GaussianSpec{1.0, -6.0, 18.0, 10.0});
    EvolveOptions o;
    o.guardBoundary = false;
    const Wavepacket a = evolve_to(psi0, well, 0.5, o);
    const Wavepacket b = reference_evolve(psi0, well, 0.5, g.dTau / 4.0);
    CHECK(density_l2_distance(a, b) < 1e-4);
  }
  SUBCASE("zero duration and bad input") {
    const Wavepacket psi0 = init_gaussian(g, GaussianSpec{});
    const Wavepacket same = reference_evolve(psi0, zero_on(g), 0.0);
    CHECK(same.amplitudes == psi0.amplitudes);
    CHECK_THROWS(reference_evolve(psi0, zero_on(g), -0.1));
    Grid other = g;
    other.n = 2048;
    CHECK_THROWS(reference_evolve(psi0, zero_on(other), 0.1));
  }
}

TEST_CASE("narrow packets approach the stationary result") {
  RunConfig cfg = load_run_config({}, {});
  cfg.scattering.g0 = 10.0;
  const DefectPotential well = reference_potential(cfg);
  const PiecewisePotential pw = discretize_potential(well, 512);
  const double v0 = 6.0;
  const double stationary = transfer_matrix_rt(v0, pw).r;

  std::vector<double> rDyn;
  std::vector<double> offset;
  for (double w : {50.0, 200.0, 800.0}) {
    const double s = std::sqrt(w / 4.0);
    const double xi0 = -(20.0 + 6.0 * s);
    const double half = std::abs(xi0) + 40.0 + 8.0 * s;
    Grid grid = widened_to_cover(cfg.grid, -half, half);
    grid.dTau = 1e-3;
    const DefectPotential local = extend_potential(well, grid);
    ScatteringRun run = make_scattering_run(cfg);
    run.grid = grid;
    run.packet.widthParam = w;
    run.packet.xi0 = xi0;
    run.lengthCap = 1e9;
    run.mediumLength = std::ceil((std::abs(xi0) + 20.0 + 6.0 * s) / (2.0 * v0) / grid.dTau) * grid.dTau;
    const SweepPoint p = scatter(run, local, default_splits(local, run.epsilonV), v0);
    REQUIRE_MESSAGE(p.ok(), p.error);
    CHECK(p.result->l < 1e-6);
    CHECK(std::abs(p.result->r - stationary) < 2e-2);
    rDyn.push_back(p.result->r);
    offset.push_back(p.result->r - momentum_averaged_r(v0, w, pw));
    MESSAGE("w = " << w << ": R = " << p.result->r << ", stationary " << stationary);
  }
  // The momentum-spread part shrinks like 1/w.
  const double d1 = std::abs(rDyn[0] - rDyn[1]);
  const double d2 = std::abs(rDyn[1] - rDyn[2]);
  CHECK(d2 < 0.5 * d1);
  // What remains is a w-independent offset from the spatial grid.
  const auto [lo, hi] = std::minmax_element(offset.begin(), offset.end());
  CHECK(*hi - *lo < 2e-6);
}
