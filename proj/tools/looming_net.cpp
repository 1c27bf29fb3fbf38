#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "looming/commands.hpp"
#include "looming/config.hpp"
#include "looming/sequence_io.hpp"
#include "looming/stimuli.hpp"

using namespace looming;

namespace {

// Leftover "--section.key=value" arguments become config overrides.
std::vector<std::string> overrides_from(const CLI::App& app) {
  std::vector<std::string> out;
  for (const auto& extra : app.remaining()) {
    if (extra.rfind("--", 0) == 0 && extra.find('=') != std::string::npos && extra.find('.') != std::string::npos) {
      out.push_back(extra);
    } else {
      throw CLI::ExtrasError({extra});
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Looming and translation detection pipeline"};
  app.require_subcommand(1);
  std::string config_path;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "key=value config file (default: $LOOMING_NET_CONFIG)");
    sub->allow_extras();
    sub->footer("Any config key can be overridden with --key=value, e.g. --neuron.scale_lgmd1=1.5");
  };

  // run
  auto* run = app.add_subcommand("run", "Run the model on a frame sequence (LNSQ file or PGM directory)");
  std::string run_input, run_out = ".";
  run->add_option("sequence", run_input, "input sequence")->required();
  run->add_option("-o,--out-dir", run_out, "output directory for potentials.csv, decisions.csv, summary.txt");
  add_config(run);

  // stimgen
  auto* stim = app.add_subcommand("stimgen", "Generate a synthetic stimulus sequence");
  std::string kind = "APPROACH", speed = "S80", stim_out, pgm_dir;
  double object = -1, background = -1, angle = 0;
  int frames = 0;
  std::uint64_t seed = 0;
  stim->add_option("kind", kind, "APPROACH, RECEDE, TRANSLATE_R, TRANSLATE_L or ANGULAR_APPROACH");
  stim->add_option("--speed", speed, "S40, S80 or S120");
  stim->add_option("--frames", frames, "frame count (0: natural length)");
  stim->add_option("--object", object, "object luminance");
  stim->add_option("--background", background, "background luminance");
  stim->add_option("--angle", angle, "approach angle in degrees (ANGULAR_APPROACH)");
  stim->add_option("--seed", seed, "jitter seed");
  stim->add_option("-o,--out", stim_out, "output LNSQ path")->required();
  stim->add_option("--pgm-dir", pgm_dir, "also write frames as PGM files here");
  add_config(stim);

  // arena
  auto* arena = app.add_subcommand("arena", "Run closed-loop arena experiments");
  ArenaOutputOptions aopts;
  aopts.out_dir = "arena_out";
  std::string agent_counts, variants;
  int seeds = 0, dump_agent = -1;
  double duration = -1;
  bool no_decisions = false;
  arena->add_option("-o,--out-dir", aopts.out_dir, "output directory");
  arena->add_option("--agents", agent_counts, "comma list of agent counts (experiment.agent_counts)");
  arena->add_option("--variants", variants, "comma list of model variants (experiment.variants)");
  arena->add_option("--seeds", seeds, "number of seeds (experiment.seeds)");
  arena->add_option("--duration", duration, "simulated seconds per run (arena.duration_s)");
  arena->add_flag("--no-decisions", no_decisions, "skip per-agent decision CSVs");
  arena->add_option("--dump-agent", dump_agent, "write this agent's camera frames as PGM (first seed)");
  arena->add_option("--dump-frames", aopts.dump_frames, "frames to dump");
  add_config(arena);

  // calibrate
  auto* cal = app.add_subcommand("calibrate", "Fit the sigmoid scales to the reference stimuli");
  int cal_seeds = 1;
  std::string cal_write;
  cal->add_option("--seeds", cal_seeds, "reference seeds");
  cal->add_option("-w,--write", cal_write, "write the calibrated model config here");
  add_config(cal);

  // config
  auto* show = app.add_subcommand("config", "Print the effective model configuration");
  add_config(show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    std::vector<std::string> overrides = overrides_from(*sub);

    if (sub == run) {
      const RunReport r = cmd_run(run_input, resolve_config(config_path, overrides), run_out);
      std::cout << summary_text(r);
    } else if (sub == stim) {
      KeyValues kv = resolve_config(config_path, overrides);
      StimulusSpec spec = StimulusSpec::from_key_values(kv);
      if (stim->count("kind")) spec.kind = parse_stimulus_kind(kind);
      if (stim->count("--speed")) spec.speed = parse_speed_level(speed);
      if (stim->count("--frames")) spec.frames = frames;
      if (stim->count("--object")) spec.object_luminance = object;
      if (stim->count("--background")) spec.background_luminance = background;
      if (stim->count("--angle")) spec.approach_angle_deg = angle;
      if (stim->count("--seed")) spec.seed = seed;
      cmd_stimgen(spec, stim_out, pgm_dir);
      std::cout << "wrote " << stim_out << " (" << spec.frame_count() << " frames)\n";
    } else if (sub == arena) {
      if (!agent_counts.empty()) overrides.push_back("experiment.agent_counts=" + agent_counts);
      if (!variants.empty()) overrides.push_back("experiment.variants=" + variants);
      if (seeds > 0) overrides.push_back("experiment.seeds=" + std::to_string(seeds));
      if (duration >= 0) overrides.push_back("arena.duration_s=" + std::to_string(duration));
      aopts.agent_decisions = !no_decisions;
      if (dump_agent >= 0) aopts.dump_agent = dump_agent;
      std::cout << cmd_arena(resolve_config(config_path, overrides), aopts);
    } else if (sub == cal) {
      std::cout << cmd_calibrate(resolve_config(config_path, overrides), cal_seeds, cal_write);
    } else if (sub == show) {
      std::cout << ModelConfig::from_key_values(resolve_config(config_path, overrides)).serialize();
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ExtrasError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
