#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "rydqr/beamsplitter.hpp"
#include "rydqr/error.hpp"
#include "rydqr/physical_model.hpp"
#include "rydqr/scattering.hpp"

using namespace rydqr;

namespace {

// U U^dagger written out entry by entry.
double max_unitarity_error(const Matrix2c& u) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      complex s = 0.0;
      for (int k = 0; k < 2; ++k) s += u[i][k] * std::conj(u[j][k]);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

DefectPotential well_on(const Grid& g, double depth) {
  const PhysicalConfig cfg = strontium_reference_config();
  return calibrate_depth(depth, build_potential(g.samples(), cfg, characteristic_scales(cfg)));
}

ScatteringRun reference_run() {
  ScatteringRun run;
  run.packet = {1.0, -8.0, 18.0, 0.0};
  return run;
}

}  // namespace

TEST_CASE("balanced splitter") {
  const BeamSplitterModel bs = bs_from_rt(0.5, 0.5);
  const double h = 1.0 / std::sqrt(2.0);
  for (const auto& row : bs.matrix)
    for (const auto& z : row) CHECK(std::abs(z) == doctest::Approx(h).epsilon(1e-15));
  CHECK(unitarity_defect(bs.matrix) < 1e-12);
  const DetectorStatistics s = single_photon_stats(bs);
  CHECK(s.pReflectPort == doctest::Approx(0.5));
  CHECK(s.pTransmitPort == doctest::Approx(0.5));
  CHECK(s.pCoincidence == 0.0);
}

TEST_CASE("moduli, unitarity and detector statistics across r") {
  for (double r = 0.0; r <= 1.0 + 1e-12; r += 0.05) {
    const double rr = std::min(r, 1.0);
    const BeamSplitterModel bs = bs_from_rt(rr, 1.0 - rr);
    CHECK(bs.r + bs.t == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::norm(bs.matrix[0][1]) == doctest::Approx(rr).epsilon(1e-12));
    CHECK(std::norm(bs.matrix[1][1]) == doctest::Approx(1.0 - rr).epsilon(1e-12));
    CHECK(max_unitarity_error(bs.matrix) < 1e-12);
    CHECK(std::abs(unitarity_defect(bs.matrix) - 0.0) < 1e-12);
    const DetectorStatistics s = single_photon_stats(bs);
    CHECK(std::abs(s.pReflectPort - rr) < 1e-12);
    CHECK(std::abs(s.pTransmitPort - (1.0 - rr)) < 1e-12);
    CHECK(s.pReflectPort + s.pTransmitPort == doctest::Approx(1.0));
    CHECK(s.pCoincidence == 0.0);
  }
}

TEST_CASE("limits: perfect mirror and transparent defect") {
  const BeamSplitterModel mirror = bs_from_rt(1.0, 0.0);
  CHECK(std::abs(mirror.matrix[0][1]) == doctest::Approx(1.0));
  CHECK(std::abs(mirror.matrix[1][1]) == 0.0);
  CHECK(single_photon_stats(mirror).pReflectPort == doctest::Approx(1.0));
  const BeamSplitterModel clear = bs_from_rt(0.0, 1.0);
  CHECK(std::abs(clear.matrix[1][1]) == doctest::Approx(1.0));
  CHECK(single_photon_stats(clear).pTransmitPort == doctest::Approx(1.0));
}

TEST_CASE("unitarity defect detects a non-unitary matrix") {
  Matrix2c m{{{complex(1.0), complex(0.0)}, {complex(0.0), complex(1.0)}}};
  CHECK(unitarity_defect(m) == 0.0);
  m[0][0] = 2.0;
  CHECK(unitarity_defect(m) == doctest::Approx(3.0));
}

TEST_CASE("input checks and renormalization") {
  CHECK_THROWS_AS(bs_from_rt(0.6, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(bs_from_rt(-0.1, 1.1), std::invalid_argument);
  CHECK_THROWS_AS(bs_from_rt(1.2, -0.2), std::invalid_argument);
  CHECK_THROWS_AS(bs_from_rt(std::nan(""), 0.5), std::invalid_argument);
  CHECK_THROWS_AS(bs_from_rt(0.5, 0.49, 1e-3), std::invalid_argument);
  const BeamSplitterModel bs = bs_from_rt(0.5004, 0.4999);
  CHECK(bs.r + bs.t == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bs.r == doctest::Approx(0.5004 / 1.0003));
}

TEST_CASE("pipeline: fast packets give a near-transparent splitter") {
  const Grid g;
  const DefectPotential well = well_on(g, 10.0);
  const BeamSplitterReport rep = pipeline_bs(reference_run(), well, 14.0);
  CHECK(rep.v0 == 14.0);
  CHECK(rep.raw.l < 0.05);
  CHECK(std::abs(rep.raw.budget - 1.0) < 1e-6);
  CHECK(rep.model.t > 0.99);
  CHECK(rep.model.r + rep.model.t == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rep.model.r == doctest::Approx(rep.raw.r / (rep.raw.r + rep.raw.t)).epsilon(1e-12));
  CHECK(unitarity_defect(rep.model.matrix) < 1e-12);
  CHECK(rep.stats.pCoincidence == 0.0);
}

TEST_CASE("pipeline: rejections") {
  const Grid g;
  const DefectPotential well = well_on(g, 10.0);
  SUBCASE("trapping above the threshold") {
    try {
      pipeline_bs(reference_run(), well, 14.0, 1e-12);
      FAIL("expected a trapping rejection");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("trapping") != std::string::npos);
    }
  }
  SUBCASE("lossy or non-measurement evolution") {
    ScatteringRun lossy = reference_run();
    lossy.evolve.keepImaginary = true;
    CHECK_THROWS_AS(pipeline_bs(lossy, well, 14.0), std::invalid_argument);
    ScatteringRun loose = reference_run();
    loose.evolve.measurementMode = false;
    CHECK_THROWS_AS(pipeline_bs(loose, well, 14.0), std::invalid_argument);
  }
}
