#pragma once

#include "ddclock/config.hpp"

namespace ddclock {

// Command bodies behind the CLI subcommands. Each one is deterministic given
// (config, seed), writes its files once from merged in-memory results and
// throws config_error / numerical_error on failure.
void cmd_scan_residual(const RunConfig& cfg);
void cmd_fringe(const RunConfig& cfg);
void cmd_sequence(const RunConfig& cfg);
void cmd_chain(const RunConfig& cfg);
void cmd_echo(const RunConfig& cfg);

} // namespace ddclock
