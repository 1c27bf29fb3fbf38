#include "looming/commands.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>

#include "looming/calibration.hpp"
#include "looming/experiment.hpp"
#include "looming/report.hpp"

namespace looming {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kOtherPrefixes[] = {"arena.", "camera.", "experiment.", "stimulus."};

std::string run_tag(int agents, ModelVariant v, std::uint64_t seed) {
  std::string variant(variant_name(v));
  for (char& c : variant) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return "a" + std::to_string(agents) + "_" + variant + "_s" + std::to_string(seed);
}

}  // namespace

KeyValues resolve_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::string file = path;
  if (file.empty()) {
    if (const char* env = std::getenv(kConfigEnvVar); env && *env) file = env;
  }
  KeyValues kv = file.empty() ? KeyValues{} : read_key_values_file(file);
  apply_overrides(kv, overrides);
  for (const auto& [key, value] : kv) {
    bool known = is_model_key(key);
    for (auto p : kOtherPrefixes) known = known || key.starts_with(p);
    if (!known) throw ConfigError(key, "unknown key");
  }
  return kv;
}

RunReport cmd_run(const std::string& sequence_path, const KeyValues& config, const std::string& out_dir) {
  const ModelConfig model = ModelConfig::from_key_values(config);
  const FrameSequence frames = read_frames(sequence_path);
  RunReport r = run_sequence(frames, model);
  fs::create_directories(out_dir);
  write_text_file((fs::path(out_dir) / "potentials.csv").string(), potentials_csv(r.frames));
  write_text_file((fs::path(out_dir) / "decisions.csv").string(), decisions_csv(r.frames));
  write_text_file((fs::path(out_dir) / "summary.txt").string(), summary_text(r));
  return r;
}

void cmd_stimgen(const StimulusSpec& spec, const std::string& out_path, const std::string& pgm_dir) {
  const StimulusSequence s = generate(spec);
  const fs::path parent = fs::path(out_path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  write_sequence(s, out_path);
  if (!pgm_dir.empty()) write_pgm_directory(s.frames, pgm_dir);
}

std::string cmd_arena(const KeyValues& config, const ArenaOutputOptions& opts) {
  const ArenaExperiment e = ArenaExperiment::from_key_values(config);
  const fs::path out(opts.out_dir);
  fs::create_directories(out);

  // Per-agent decision streams are buffered for the run in progress.
  std::vector<std::vector<FrameResult>> decisions;
  std::uint64_t dump_seed = e.first_seed;
  auto observer_for = [&](int agents, ModelVariant v, std::uint64_t seed) {
    decisions.assign(static_cast<std::size_t>(agents), {});
    StepObserver obs;
    if (opts.agent_decisions) {
      obs.on_result = [&](const RobotAgent& a, const FrameResult& r) {
        decisions[static_cast<std::size_t>(a.id)].push_back(r);
      };
    }
    if (opts.dump_agent && seed == dump_seed && *opts.dump_agent < agents) {
      const fs::path dir = out / ("frames_" + run_tag(agents, v, seed) + "_agent" + std::to_string(*opts.dump_agent));
      fs::create_directories(dir);
      auto count = std::make_shared<int>(0);
      obs.on_frame = [dir, count, &opts](const RobotAgent& a, const Frame& f) {
        if (a.id != *opts.dump_agent || *count >= opts.dump_frames) return;
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%05d.pgm", (*count)++);
        write_pgm(f, (dir / name).string());
      };
    }
    return obs;
  };
  auto sink = [&](const ArenaRunResult& r) {
    const std::string tag = run_tag(r.agents, r.variant, r.seed);
    write_text_file((out / (tag + "_ledger.csv")).string(), ledger_csv(r.ledger));
    if (opts.agent_decisions) {
      for (std::size_t i = 0; i < decisions.size(); ++i) {
        write_text_file((out / (tag + "_agent" + std::to_string(i) + "_decisions.csv")).string(),
                        decisions_csv(decisions[i]));
      }
    }
  };

  const auto cells = run_experiment(e, sink, observer_for);
  write_text_file((out / "runs.csv").string(), runs_csv(cells));
  write_text_file((out / "table.csv").string(), table_csv(cells));
  return table_text(cells);
}

std::string cmd_calibrate(const KeyValues& config, int seeds, const std::string& write_path) {
  const ModelConfig base = ModelConfig::from_key_values(config);
  const CalibrationReport r = calibrate(base, seeds);
  if (!write_path.empty()) write_text_file(write_path, r.config.serialize());
  return format_calibration(r);
}

}  // namespace looming
