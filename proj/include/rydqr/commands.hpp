#pragma once

// Subcommand bodies shared by the CLI and the tests. Each writes its files
// under outDir plus a <command>_metadata.txt sidecar holding the resolved
// configuration; re-reading the sidecar with --config reproduces the run.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "rydqr/config.hpp"

namespace rydqr {

#ifndef RYDQR_VERSION
#define RYDQR_VERSION "unknown"
#endif

inline constexpr const char* kVersion = RYDQR_VERSION;

enum ExitCode : int {
  kExitOk = 0,
  kExitRuntime = 1,
  kExitConfig = 2,
  kExitBoundary = 3,
  kExitVerifyFailed = 4,
};

struct CommandContext {
  RunConfig config;
  std::filesystem::path outDir;
  std::size_t threads = 1;
  std::ostream* log = nullptr;  // progress lines; may be null
};

int cmd_potential(const CommandContext& ctx);
int cmd_evolve(const CommandContext& ctx);
int cmd_sweep(const CommandContext& ctx);
int cmd_phase_diagram(const CommandContext& ctx);
int cmd_beamsplitter(const CommandContext& ctx);
int cmd_verify(const CommandContext& ctx);

// Sidecar text: serialized configuration followed by '#' comment lines.
std::string metadata_text(const RunConfig& config, const std::string& command,
                          const std::string& extra = {});

}  // namespace rydqr
