#include "rydqr/commands.hpp"

#include <ostream>
#include <sstream>

#include "rydqr/csv_io.hpp"
#include "rydqr/verification.hpp"

namespace rydqr {

namespace {

void say(const CommandContext& ctx, const std::string& line) {
  if (ctx.log) *ctx.log << line << '\n';
}

DefectPotential physical_potential(const RunConfig& config) {
  return build_potential(config.grid.samples(), config.physical, characteristic_scales(config.physical),
                         config.potential);
}

std::string comment(const std::string& key, const std::string& value) { return "# " + key + ": " + value + "\n"; }

std::string potential_notes(const DefectPotential& shape, const DefectPotential& used) {
  std::string s;
  s += comment("physical_depth", format_double(shape.depth));
  s += comment("used_depth", format_double(used.depth));
  s += comment("calibration_factor", format_double(used.calibrationFactor));
  s += comment("imag_ratio_at_minimum", format_double(shape.imagRatio));
  s += comment("dispersive", shape.dispersive ? "true" : "false");
  return s;
}

void write_metadata(const CommandContext& ctx, const std::string& command, const std::string& extra) {
  write_text(ctx.outDir / (command + "_metadata.txt"), metadata_text(ctx.config, command, extra));
}

DefectPotential scattering_potential(const RunConfig& config, const DefectPotential& shape) {
  return config.scattering.g0 ? calibrate_depth(*config.scattering.g0, shape) : shape;
}

std::string point_notes(std::span<const SweepPoint> points, const Grid& base) {
  std::string s;
  std::size_t failed = 0;
  for (const auto& p : points) {
    if (!p.ok()) ++failed;
    if (p.mediumLength.capped) s += comment("L_m_capped", "v0 = " + format_double(p.v0));
    if (!(p.grid == base))
      s += comment("grid_widened", "v0 = " + format_double(p.v0) + ", g0 = " + format_double(p.g0) +
                                       ", n = " + std::to_string(p.grid.n));
  }
  s += comment("failed_points", std::to_string(failed));
  return s;
}

}  // namespace

std::string metadata_text(const RunConfig& config, const std::string& command, const std::string& extra) {
  const CharacteristicScales sc = characteristic_scales(config.physical);
  const DispersionReport disp = dispersion_diagnostics(config.physical);
  std::string s = serialize(config);
  s += comment("command", command);
  s += comment("version", kVersion);
  s += comment("grid_dXi", format_double(config.grid.dXi()));
  s += comment("rb_m", format_double(sc.rb));
  s += comment("V0_J", format_double(sc.V0));
  s += comment("tau0_literal_per_s", format_double(sc.tau0));
  s += comment("time_unit_s", format_double(1.0 / sc.tau0));
  s += comment("mp_kg", format_double(sc.mp));
  s += comment("dispersion_control_ratio", format_double(disp.controlRatio));
  s += comment("dispersion_detuning_ratio", format_double(disp.detuningRatio));
  s += comment("g0_definition",
               "dimensionless well depth -min Re V; the physical profile is rescaled linearly to it");
  s += extra;
  return s;
}

int cmd_potential(const CommandContext& ctx) {
  const DefectPotential pot = physical_potential(ctx.config);
  write_potential_csv(ctx.outDir / "potential.csv", pot);
  write_metadata(ctx, "potential", potential_notes(pot, pot));
  say(ctx, "depth " + format_double(pot.depth) + ", Im/Re at minimum " + format_double(pot.imagRatio));
  return kExitOk;
}

int cmd_evolve(const CommandContext& ctx) {
  const RunConfig& c = ctx.config;
  const DefectPotential shape = physical_potential(c);
  const DefectPotential well = scattering_potential(c, shape);
  const ScatteringRun run = make_scattering_run(c);
  const MediumLength lm = medium_length(run, c.packet.v0, well.xiG);
  const Grid grid = measurement_grid(run, c.packet.v0, lm.value, well.xiG);
  const DefectPotential local = grid == c.grid ? well : extend_potential(well, grid);
  const Wavepacket psi0 = init_gaussian(grid, c.packet);

  std::string notes = potential_notes(shape, well);
  notes += comment("tau_end", format_double(lm.value));
  notes += comment("evolve_grid_n", std::to_string(grid.n));
  write_metadata(ctx, "evolve", notes);

  const Trajectory traj = evolve(psi0, local, lm.value, c.outputs.snapshotEvery, run.evolve);
  write_snapshots_csv(ctx.outDir / "evolve_snapshots.csv", traj);
  write_trajectory_summary_csv(ctx.outDir / "evolve_summary.csv", traj);
  say(ctx, std::to_string(traj.snapshots.size()) + " snapshots to tau = " + format_double(lm.value));
  return kExitOk;
}

int cmd_sweep(const CommandContext& ctx) {
  const RunConfig& c = ctx.config;
  const DefectPotential shape = physical_potential(c);
  const DefectPotential well = scattering_potential(c, shape);
  const ScatteringRun run = make_scattering_run(c);
  const Splits splits = default_splits(well, run.epsilonV);
  const auto points = sweep_velocity(run, well, splits, c.scattering.v0List, ctx.threads);
  write_sweep_csv(ctx.outDir / "sweep.csv", points);
  std::string notes = potential_notes(shape, well);
  notes += comment("splits", format_double(splits.left) + ", " + format_double(splits.right));
  notes += point_notes(points, c.grid);
  write_metadata(ctx, "sweep", notes);
  say(ctx, std::to_string(points.size()) + " sweep points written");
  return kExitOk;
}

int cmd_phase_diagram(const CommandContext& ctx) {
  const RunConfig& c = ctx.config;
  const DefectPotential shape = physical_potential(c);
  const ScatteringRun run = make_scattering_run(c);
  const PhaseDiagram pd = phase_diagram(c.scattering.v0List, c.scattering.g0List, shape, run, ctx.threads);
  write_phase_diagram_csv(ctx.outDir / "phase_diagram.csv", pd);
  std::string notes = potential_notes(shape, shape);
  notes += comment("splits", format_double(pd.splits.left) + ", " + format_double(pd.splits.right));
  notes += point_notes(pd.cells, c.grid);
  write_metadata(ctx, "phase_diagram", notes);
  say(ctx, std::to_string(pd.cells.size()) + " phase-diagram cells written");
  return kExitOk;
}

int cmd_beamsplitter(const CommandContext& ctx) {
  const RunConfig& c = ctx.config;
  const DefectPotential shape = physical_potential(c);
  const DefectPotential well = scattering_potential(c, shape);
  write_metadata(ctx, "beamsplitter", potential_notes(shape, well));
  const BeamSplitterReport report =
      pipeline_bs(make_scattering_run(c), well, c.packet.v0, c.scattering.maxTrapping);
  write_text(ctx.outDir / "beamsplitter.txt", beamsplitter_report(report));
  say(ctx, "r = " + format_double(report.model.r) + ", t = " + format_double(report.model.t));
  return kExitOk;
}

int cmd_verify(const CommandContext& ctx) {
  const VerificationReport report = run_oracle_suite(ctx.config, ctx.threads);
  write_oracle_report_csv(ctx.outDir / "oracle_report.csv", report.comparisons);
  write_text(ctx.outDir / "verify_report.txt", report.text());
  write_metadata(ctx, "verify", "");
  say(ctx, report.text());
  return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

}  // namespace rydqr
