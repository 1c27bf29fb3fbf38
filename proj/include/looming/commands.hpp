#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "looming/config.hpp"
#include "looming/report.hpp"
#include "looming/stimuli.hpp"

namespace looming {

inline constexpr const char* kConfigEnvVar = "LOOMING_NET_CONFIG";

// Reads `path` (or the file named by LOOMING_NET_CONFIG when `path` is
// empty), then applies the --key=value overrides. Rejects keys outside the
// known namespaces.
KeyValues resolve_config(const std::string& path, const std::vector<std::string>& overrides);

// Writes potentials.csv, decisions.csv and summary.txt into out_dir.
RunReport cmd_run(const std::string& sequence_path, const KeyValues& config, const std::string& out_dir);

// Writes the LNSQ file plus its .spec sidecar; optionally a PGM directory.
void cmd_stimgen(const StimulusSpec& spec, const std::string& out_path, const std::string& pgm_dir = {});

struct ArenaOutputOptions {
  std::string out_dir;
  bool agent_decisions = true;
  // Camera stream dump: agent id and number of frames, for the first seed of
  // each cell.
  std::optional<int> dump_agent;
  int dump_frames = 300;
};

// Runs the experiment, writes per-run ledgers (and decision CSVs),
// runs.csv and table.csv. Returns the pooled event table as text.
std::string cmd_arena(const KeyValues& config, const ArenaOutputOptions& opts);

// Returns the calibration report text; writes a config file with the new
// scales when `write_path` is set.
std::string cmd_calibrate(const KeyValues& config, int seeds, const std::string& write_path = {});

}  // namespace looming
