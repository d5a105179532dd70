#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "rydqr/beamsplitter.hpp"
#include "rydqr/physical_model.hpp"
#include "rydqr/scattering.hpp"
#include "rydqr/split_step.hpp"

namespace rydqr {

// 17 significant digits; "nan", "inf", "-inf"; negative zero printed as 0.
std::string format_double(double v);

void write_potential_csv(const std::filesystem::path& path, const DefectPotential& potential);
void write_snapshots_csv(const std::filesystem::path& path, const Trajectory& trajectory);
void write_trajectory_summary_csv(const std::filesystem::path& path, const Trajectory& trajectory);
void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepPoint> points);
void write_phase_diagram_csv(const std::filesystem::path& path, const PhaseDiagram& diagram);

struct OracleComparison {
  double v0 = 0.0;
  double rDyn = 0.0;
  double tDyn = 0.0;
  double rTm = 0.0;
  double tTm = 0.0;
};

void write_oracle_report_csv(const std::filesystem::path& path, std::span<const OracleComparison> rows);

std::string beamsplitter_report(const BeamSplitterReport& report);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace rydqr
