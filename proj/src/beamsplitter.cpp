#include "rydqr/beamsplitter.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rydqr/error.hpp"

namespace rydqr {

double unitarity_defect(const Matrix2c& u) {
  double sum = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      complex e = u[i][0] * std::conj(u[j][0]) + u[i][1] * std::conj(u[j][1]);
      if (i == j) e -= 1.0;
      sum += std::norm(e);
    }
  return std::sqrt(sum);
}

BeamSplitterModel bs_from_rt(double r, double t, double budgetTolerance) {
  const double slack = 1e-6;
  if (!(r >= -slack && r <= 1.0 + slack && t >= -slack && t <= 1.0 + slack)) {
    std::ostringstream msg;
    msg << "bs_from_rt: probabilities out of range (r = " << r << ", t = " << t << ")";
    throw std::invalid_argument(msg.str());
  }
  if (!(std::abs(r + t - 1.0) < budgetTolerance)) {
    std::ostringstream msg;
    msg << "bs_from_rt: r + t = " << r + t << " deviates from 1 by more than " << budgetTolerance
        << "; lossy run unfit for the beam-splitter model";
    throw std::invalid_argument(msg.str());
  }
  r = std::max(r, 0.0);
  t = std::max(t, 0.0);
  const double total = r + t;
  BeamSplitterModel bs;
  bs.r = r / total;
  bs.t = t / total;
  const double sr = std::sqrt(bs.r);
  const double st = std::sqrt(bs.t);
  const complex i(0.0, 1.0);
  bs.matrix = {{{-i * st, complex(sr)}, {i * sr, complex(st)}}};
  if (unitarity_defect(bs.matrix) >= 1e-12)
    throw std::logic_error("bs_from_rt: constructed matrix is not unitary");
  return bs;
}

DetectorStatistics single_photon_stats(const BeamSplitterModel& bs) {
  // a1^dagger -> U[0][1] a2^dagger + U[1][1] a3^dagger acting on |0,0>.
  // Output amplitudes over {|0,0>, |1,0>, |0,1>, |1,1>} in the (E2, E3) modes.
  const std::array<complex, 4> out{complex(0.0), bs.matrix[0][1], bs.matrix[1][1], complex(0.0)};
  DetectorStatistics s;
  s.pReflectPort = std::norm(out[1]) + std::norm(out[3]);
  s.pTransmitPort = std::norm(out[2]) + std::norm(out[3]);
  s.pCoincidence = std::norm(out[3]);
  return s;
}

BeamSplitterReport pipeline_bs(const ScatteringRun& run, const DefectPotential& potential, double v0,
                               double maxTrapping) {
  if (run.evolve.keepImaginary || !run.evolve.measurementMode)
    throw std::invalid_argument("pipeline_bs: requires a real-potential measurement run");
  const Splits splits = default_splits(potential, run.epsilonV);
  const SweepPoint point = scatter(run, potential, splits, v0);
  if (!point.result) throw Error("pipeline_bs: scattering run failed: " + point.error);
  const ScatteringResult& raw = *point.result;
  if (raw.l > maxTrapping) {
    std::ostringstream msg;
    msg << "pipeline_bs: trapping-dominated, BS model invalid (L = " << raw.l << " > " << maxTrapping << ")";
    throw Error(msg.str());
  }
  BeamSplitterReport report;
  report.raw = raw;
  report.v0 = v0;
  const double kept = raw.r + raw.t;
  report.model = bs_from_rt(raw.r / kept, raw.t / kept);
  report.stats = single_photon_stats(report.model);
  return report;
}

}  // namespace rydqr
