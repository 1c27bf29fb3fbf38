#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "looming/arena.hpp"
#include "looming/config.hpp"

namespace looming {

// One arena experiment: every (agent count, variant, seed) combination.
// Keys:
//   experiment.variants      comma list, default HYBRID,LGMDS_ONLY,LGMD2_ONLY
//   experiment.agent_counts  comma list, default arena.agents
//   experiment.seeds         number of seeds, default 5
//   experiment.first_seed    default 1
struct ArenaExperiment {
  ArenaParams arena;
  ModelConfig model = ModelConfig::defaults();
  std::vector<ModelVariant> variants{ModelVariant::Hybrid, ModelVariant::LgmdsOnly, ModelVariant::Lgmd2Only};
  std::vector<int> agent_counts{4};
  int seeds = 5;
  std::uint64_t first_seed = 1;

  static ArenaExperiment from_key_values(const KeyValues& kv);
};

struct ArenaCell {
  int agents = 0;
  ModelVariant variant = ModelVariant::Hybrid;
  std::vector<ArenaRunResult> runs;

  // Event counts pooled over seeds, EventKind order.
  std::array<std::size_t, 5> pooled_counts() const;
  SuccessRates pooled_rates() const;
  // Mean of the per-seed rates over seeds where the rate exists.
  SuccessRates mean_rates() const;
};

// Per-run callback, e.g. for writing ledgers as runs finish.
using RunSink = std::function<void(const ArenaRunResult&)>;

std::vector<ArenaCell> run_experiment(const ArenaExperiment& e, const RunSink& sink = {},
                                      const std::function<StepObserver(int agents, ModelVariant, std::uint64_t)>&
                                          observer_for = {});

// agents, variant, seed, CR, CP, AA, AT, AP, SR1, SR2
std::string runs_csv(const std::vector<ArenaCell>& cells);
// Event rows (CR..AP, SR1, SR2) by scene/variant columns; pooled counts,
// rates from the pooled counts.
std::string table_csv(const std::vector<ArenaCell>& cells);
std::string table_text(const std::vector<ArenaCell>& cells);

// One-sided sign test: probability of at least `wins` successes out of
// `trials` fair coin flips.
double sign_test_p(int wins, int trials);

}  // namespace looming
