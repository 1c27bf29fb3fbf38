#include "looming/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "looming/report.hpp"

namespace looming {

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::string scene_name(int agents) { return std::to_string(agents) + "-robots"; }

}  // namespace

ArenaExperiment ArenaExperiment::from_key_values(const KeyValues& kv) {
  ArenaExperiment e;
  e.arena = ArenaParams::from_key_values(kv);
  e.model = ModelConfig::from_key_values(kv);
  e.agent_counts = {e.arena.agents};
  for (const auto& [key, value] : kv) {
    if (!key.starts_with("experiment.")) continue;
    if (key == "experiment.variants") {
      e.variants.clear();
      try {
        for (const auto& v : split_list(value)) e.variants.push_back(parse_variant(v));
      } catch (const std::invalid_argument& ex) {
        throw ConfigError(key, ex.what());
      }
      if (e.variants.empty()) throw ConfigError(key, "needs at least one variant");
    } else if (key == "experiment.agent_counts") {
      e.agent_counts.clear();
      for (const auto& v : split_list(value)) {
        KeyValues one{{key, v}};
        const int n = parse_int_field(one, key, 0);
        if (n < 0) throw ConfigError(key, "agent counts must be >= 0");
        e.agent_counts.push_back(n);
      }
      if (e.agent_counts.empty()) throw ConfigError(key, "needs at least one agent count");
    } else if (key == "experiment.seeds") {
      e.seeds = parse_int_field(kv, key, e.seeds);
      if (e.seeds < 1) throw ConfigError(key, "must be >= 1");
    } else if (key == "experiment.first_seed") {
      const int s = parse_int_field(kv, key, 1);
      if (s < 0) throw ConfigError(key, "must be >= 0");
      e.first_seed = static_cast<std::uint64_t>(s);
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  return e;
}

std::array<std::size_t, 5> ArenaCell::pooled_counts() const {
  std::array<std::size_t, 5> c{};
  for (const auto& r : runs) {
    const auto rc = event_counts(r.ledger);
    for (std::size_t i = 0; i < 5; ++i) c[i] += rc[i];
  }
  return c;
}

SuccessRates ArenaCell::pooled_rates() const {
  const auto c = pooled_counts();
  EventLedger pooled;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t n = 0; n < c[i]; ++n) pooled.add({0, 0, static_cast<EventKind>(i), {}});
  }
  return success_rates(pooled);
}

SuccessRates ArenaCell::mean_rates() const {
  double s1 = 0.0, s2 = 0.0;
  int n1 = 0, n2 = 0;
  for (const auto& r : runs) {
    if (r.rates.sr1) {
      s1 += *r.rates.sr1;
      ++n1;
    }
    if (r.rates.sr2) {
      s2 += *r.rates.sr2;
      ++n2;
    }
  }
  SuccessRates m;
  if (n1) m.sr1 = s1 / n1;
  if (n2) m.sr2 = s2 / n2;
  return m;
}

std::vector<ArenaCell> run_experiment(const ArenaExperiment& e, const RunSink& sink,
                                      const std::function<StepObserver(int, ModelVariant, std::uint64_t)>& observer_for) {
  std::vector<ArenaCell> cells;
  for (int agents : e.agent_counts) {
    for (ModelVariant v : e.variants) {
      ArenaCell cell;
      cell.agents = agents;
      cell.variant = v;
      ArenaParams p = e.arena;
      p.agents = agents;
      ModelConfig m = e.model;
      m.arbiter.variant = v;
      for (int k = 0; k < e.seeds; ++k) {
        const std::uint64_t seed = e.first_seed + static_cast<std::uint64_t>(k);
        StepObserver obs;
        if (observer_for) obs = observer_for(agents, v, seed);
        ArenaRunResult r = run_arena(p, m, seed, observer_for ? &obs : nullptr);
        if (sink) sink(r);
        cell.runs.push_back(std::move(r));
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

std::string runs_csv(const std::vector<ArenaCell>& cells) {
  std::string out = "agents,variant,seed,CR,CP,AA,AT,AP,SR1,SR2\n";
  for (const auto& cell : cells) {
    for (const auto& r : cell.runs) {
      out += std::to_string(r.agents) + "," + std::string(variant_name(r.variant)) + "," + std::to_string(r.seed);
      for (auto n : event_counts(r.ledger)) out += "," + std::to_string(n);
      out += "," + format_rate(r.rates.sr1) + "," + format_rate(r.rates.sr2) + "\n";
    }
  }
  return out;
}

std::string table_csv(const std::vector<ArenaCell>& cells) {
  std::string out = "event";
  for (const auto& c : cells) out += "," + scene_name(c.agents) + ":" + std::string(variant_name(c.variant));
  out += "\n";
  static const char* kinds[] = {"CR", "CP", "AA", "AT", "AP"};
  for (std::size_t i = 0; i < 5; ++i) {
    out += kinds[i];
    for (const auto& c : cells) out += "," + std::to_string(c.pooled_counts()[i]);
    out += "\n";
  }
  out += "SR1";
  for (const auto& c : cells) out += "," + format_rate(c.pooled_rates().sr1);
  out += "\nSR2";
  for (const auto& c : cells) out += "," + format_rate(c.pooled_rates().sr2);
  out += "\n";
  return out;
}

std::string table_text(const std::vector<ArenaCell>& cells) {
  std::ostringstream s;
  char buf[64];
  s << "event ";
  for (const auto& c : cells) {
    std::snprintf(buf, sizeof(buf), " %22s", (scene_name(c.agents) + ":" + std::string(variant_name(c.variant))).c_str());
    s << buf;
  }
  s << "\n";
  static const char* kinds[] = {"CR", "CP", "AA", "AT", "AP"};
  for (std::size_t i = 0; i < 5; ++i) {
    std::snprintf(buf, sizeof(buf), "%-6s", kinds[i]);
    s << buf;
    for (const auto& c : cells) {
      std::snprintf(buf, sizeof(buf), " %22zu", c.pooled_counts()[i]);
      s << buf;
    }
    s << "\n";
  }
  for (int k = 0; k < 2; ++k) {
    s << (k == 0 ? "SR1   " : "SR2   ");
    for (const auto& c : cells) {
      const auto r = c.pooled_rates();
      const std::string v = format_rate(k == 0 ? r.sr1 : r.sr2);
      std::snprintf(buf, sizeof(buf), " %21s%s", v.c_str(), v == "NA" ? " " : "%");
      s << buf;
    }
    s << "\n";
  }
  return s.str();
}

double sign_test_p(int wins, int trials) {
  double p = 0.0;
  for (int k = wins; k <= trials; ++k) {
    p += std::exp(std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) - std::lgamma(trials - k + 1.0) -
                  trials * std::log(2.0));
  }
  return std::min(1.0, p);
}

}  // namespace looming
