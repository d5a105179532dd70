#include "rydqr/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "rydqr/error.hpp"

namespace rydqr {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_potential_csv(const std::filesystem::path& path, const DefectPotential& potential) {
  auto out = open_for_write(path);
  out << "xi,re_V,im_V\n";
  for (std::size_t j = 0; j < potential.grid.size(); ++j)
    out << format_double(potential.grid[j]) << ',' << format_double(potential.values[j].real()) << ','
        << format_double(potential.values[j].imag()) << '\n';
  finish(out, path);
}

void write_snapshots_csv(const std::filesystem::path& path, const Trajectory& trajectory) {
  auto out = open_for_write(path);
  out << "tau,xi,re_phi,im_phi,density\n";
  for (const auto& s : trajectory.snapshots) {
    const std::string tau = format_double(s.tau);
    for (std::size_t j = 0; j < s.amplitudes.size(); ++j) {
      const complex a = s.amplitudes[j];
      out << tau << ',' << format_double(s.grid.xi(j)) << ',' << format_double(a.real()) << ','
          << format_double(a.imag()) << ',' << format_double(std::norm(a)) << '\n';
    }
  }
  finish(out, path);
}

void write_trajectory_summary_csv(const std::filesystem::path& path, const Trajectory& trajectory) {
  auto out = open_for_write(path);
  out << "tau,norm,mean_xi,width_xi,boundary_density\n";
  for (const auto& s : trajectory.snapshots) {
    const Observables o = observables(s);
    out << format_double(s.tau) << ',' << format_double(o.norm) << ',' << format_double(o.meanXi) << ','
        << format_double(o.widthXi) << ',' << format_double(o.boundaryDensity) << '\n';
  }
  finish(out, path);
}

void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepPoint> points) {
  auto out = open_for_write(path);
  out << "v0,g0,R,T,L,budget,xi_l,xi_r,L_m,error\n";
  const double nan = std::nan("");
  for (const auto& p : points) {
    const ScatteringResult r = p.result.value_or(ScatteringResult{nan, nan, nan, nan, nan, nan, p.v0, p.g0});
    std::string err = p.error;
    for (char& c : err)
      if (c == ',' || c == '\n') c = ';';
    out << format_double(p.v0) << ',' << format_double(p.g0) << ',' << format_double(r.r) << ','
        << format_double(r.t) << ',' << format_double(r.l) << ',' << format_double(r.budget) << ','
        << format_double(r.xiL) << ',' << format_double(r.xiR) << ',' << format_double(p.mediumLength.value)
        << ',' << err << '\n';
  }
  finish(out, path);
}

void write_phase_diagram_csv(const std::filesystem::path& path, const PhaseDiagram& diagram) {
  auto out = open_for_write(path);
  out << "g0,v0,R,T,L\n";
  for (std::size_t i = 0; i < diagram.g0Axis.size(); ++i)
    for (std::size_t j = 0; j < diagram.v0Axis.size(); ++j)
      out << format_double(diagram.g0Axis[i]) << ',' << format_double(diagram.v0Axis[j]) << ','
          << format_double(diagram.rMatrix[i][j]) << ',' << format_double(diagram.tMatrix[i][j]) << ','
          << format_double(diagram.lMatrix[i][j]) << '\n';
  finish(out, path);
}

void write_oracle_report_csv(const std::filesystem::path& path, std::span<const OracleComparison> rows) {
  auto out = open_for_write(path);
  out << "k_or_v0,R_dyn,T_dyn,R_tm,T_tm,abs_err_R,abs_err_T\n";
  for (const auto& r : rows)
    out << format_double(r.v0) << ',' << format_double(r.rDyn) << ',' << format_double(r.tDyn) << ','
        << format_double(r.rTm) << ',' << format_double(r.tTm) << ',' << format_double(std::abs(r.rDyn - r.rTm))
        << ',' << format_double(std::abs(r.tDyn - r.tTm)) << '\n';
  finish(out, path);
}

std::string beamsplitter_report(const BeamSplitterReport& report) {
  const auto& m = report.model.matrix;
  auto c = [](complex z) { return "(" + format_double(z.real()) + ", " + format_double(z.imag()) + ")"; };
  std::string s;
  s += "v0 = " + format_double(report.v0) + "\n";
  s += "raw R = " + format_double(report.raw.r) + "\n";
  s += "raw T = " + format_double(report.raw.t) + "\n";
  s += "raw L = " + format_double(report.raw.l) + "\n";
  s += "r = " + format_double(report.model.r) + "\n";
  s += "t = " + format_double(report.model.t) + "\n";
  s += "U[E2][E0] = " + c(m[0][0]) + "\n";
  s += "U[E2][E1] = " + c(m[0][1]) + "\n";
  s += "U[E3][E0] = " + c(m[1][0]) + "\n";
  s += "U[E3][E1] = " + c(m[1][1]) + "\n";
  s += "unitarity_defect = " + format_double(unitarity_defect(m)) + "\n";
  s += "P(D2) = " + format_double(report.stats.pReflectPort) + "\n";
  s += "P(D3) = " + format_double(report.stats.pTransmitPort) + "\n";
  s += "P(D2 and D3) = " + format_double(report.stats.pCoincidence) + "\n";
  return s;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_for_write(path);
  out << text;
  finish(out, path);
}

}  // namespace rydqr
