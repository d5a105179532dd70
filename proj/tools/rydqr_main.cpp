// rydqr: command-line front end.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rydqr/commands.hpp"
#include "rydqr/error.hpp"
#include "rydqr/parallel.hpp"

namespace {

struct Options {
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<std::size_t> threads;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "key = value configuration file");
  sub->add_option("--out", o.out, "output directory (overrides outputs.dir)");
  sub->add_option("--threads", o.threads, "worker threads (default: RYDQR_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--override", o.overrides, "key=value, applied after the file; repeatable");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-photon scattering off a Rydberg defect in an EIT medium"};
  app.set_version_flag("--version", rydqr::kVersion);
  app.require_subcommand(1);

  Options opts;
  using Fn = int (*)(const rydqr::CommandContext&);
  const std::vector<std::pair<std::string, std::pair<std::string, Fn>>> commands = {
      {"potential", {"write the defect potential profile", rydqr::cmd_potential}},
      {"evolve", {"evolve one wavepacket and write snapshots", rydqr::cmd_evolve}},
      {"sweep", {"R/T/L over scattering.v0List", rydqr::cmd_sweep}},
      {"phase-diagram", {"R/T/L over scattering.v0List x scattering.g0List", rydqr::cmd_phase_diagram}},
      {"beamsplitter", {"two-port model at packet.v0", rydqr::cmd_beamsplitter}},
      {"verify", {"run the oracle cross-checks", rydqr::cmd_verify}},
  };
  for (const auto& [name, entry] : commands) add_common(app.add_subcommand(name, entry.first), opts);

  CLI11_PARSE(app, argc, argv);

  Fn run = nullptr;
  for (const auto& [name, entry] : commands)
    if (app.got_subcommand(name)) run = entry.second;

  try {
    rydqr::CommandContext ctx;
    ctx.config = rydqr::load_run_config(opts.config, opts.overrides);
    if (opts.out) ctx.config.outputs.dir = *opts.out;
    ctx.outDir = ctx.config.outputs.dir;
    ctx.threads = opts.threads.value_or(rydqr::default_thread_count());
    ctx.log = &std::cerr;
    return run(ctx);
  } catch (const rydqr::ConfigError& e) {
    std::cerr << "error: invalid configuration\n";
    for (const auto& p : e.problems()) std::cerr << "  " << p << '\n';
    return rydqr::kExitConfig;
  } catch (const rydqr::BoundaryContactError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return rydqr::kExitBoundary;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return rydqr::kExitRuntime;
  }
}
