#pragma once

// Flat key = value run configuration with dotted section prefixes.
//
// Keys match the field names below (e.g. physical.Delta2, grid.n). Angular
// quantities may instead be given as <key>_hz_over_2pi in plain Hz; they are
// multiplied by 2 pi on input. Lists accept "a, b, c" or "linspace(a, b, n)".
// Optional values accept "none" (or "auto") to fall back to the default.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rydqr/physical_model.hpp"
#include "rydqr/scattering.hpp"
#include "rydqr/wavepacket.hpp"

namespace rydqr {

struct ScatteringSettings {
  std::vector<double> v0List = linspace(0.5, 16.0, 30);
  std::vector<double> g0List = linspace(2.0, 40.0, 20);
  // Depth calibration applied by evolve / sweep / beamsplitter; none keeps the
  // physical depth.
  std::optional<double> g0 = 10.0;
  double epsilonV = 1e-3;
  std::optional<double> mediumLength;
  double lengthCap = 200.0;
  bool autoWiden = true;
  double maxTrapping = 0.05;
};

struct OutputSettings {
  std::string dir = "out";
  std::size_t snapshotEvery = 0;
};

struct ModeFlags {
  bool keepImaginary = false;
  bool measurement = true;
  bool absorbingMask = false;
  double maskWidth = 5.0;
};

struct RunConfig {
  PhysicalConfig physical = strontium_reference_config();
  PotentialOptions potential;
  Grid grid;
  GaussianSpec packet{1.0, -8.0, 18.0, 10.0};
  ScatteringSettings scattering;
  OutputSettings outputs;
  ModeFlags mode;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Reads key = value lines; '#' starts a comment. Throws ConfigError on
// malformed lines, naming the source and line number.
KeyValues parse_key_values(std::istream& in, std::string_view source = "<config>");

// Applies one assignment; throws ConfigError naming the key on failure.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);
void apply_settings(RunConfig& config, const KeyValues& settings);

// Field-level problems across all sections; empty when valid.
std::vector<std::string> validation_problems(const RunConfig& config);
void require_valid(const RunConfig& config);

// Defaults, then the file (if any), then "key=value" overrides in order.
RunConfig load_run_config(const std::optional<std::string>& path,
                          const std::vector<std::string>& overrides = {});

// Every key with its resolved value, in a fixed order. Re-ingesting the text
// reproduces the same configuration.
std::string serialize(const RunConfig& config);

std::vector<std::string> known_keys();

ScatteringRun make_scattering_run(const RunConfig& config);
EvolveOptions make_evolve_options(const RunConfig& config);

}  // namespace rydqr
