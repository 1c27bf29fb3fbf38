#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "looming/arbiter.hpp"
#include "looming/frontend.hpp"
#include "looming/medulla_lgmd.hpp"
#include "looming/medulla_lptc.hpp"
#include "looming/neurons.hpp"

namespace looming {

// Raised for a config value that is missing, malformed or out of range.
// field() names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Flat key=value text. '#' starts a comment; blank lines are ignored.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::string_view text);
KeyValues read_key_values_file(const std::string& path);
// Applies "--key=value" / "key=value" overrides on top of `base`.
void apply_overrides(KeyValues& base, const std::vector<std::string>& overrides);

struct ModelConfig {
  FrontendParams frontend;
  LgmdKernel lgmd1 = LgmdKernel::lgmd1();
  LgmdKernel lgmd2 = LgmdKernel::lgmd2();
  EmdParams emd;
  // Sigmoid scale per neuron, NeuronId order.
  std::array<double, 4> sigmoid_scale{0.0, 0.0, 0.0, 0.0};
  std::array<SpikeParams, 4> spike{};
  ArbiterParams arbiter;

  static ModelConfig defaults();
  // Unknown keys under the model prefixes are rejected; other keys ignored.
  static ModelConfig from_key_values(const KeyValues& kv);
  static ModelConfig load(const std::string& path, const std::vector<std::string>& overrides = {});

  // Canonical commented text; parse(serialize()) reproduces the config.
  std::string serialize() const;
  // Throws ConfigError naming the failing field.
  void validate() const;

  const SpikeParams& spike_params(NeuronId id) const { return spike[static_cast<std::size_t>(id)]; }
  double scale(NeuronId id) const { return sigmoid_scale[static_cast<std::size_t>(id)]; }

  friend bool operator==(const ModelConfig& a, const ModelConfig& b) { return a.serialize() == b.serialize(); }
};

bool is_model_key(std::string_view key);

// Shared numeric parsing for key=value configs.
double parse_double_field(const KeyValues& kv, const std::string& key, double fallback);
int parse_int_field(const KeyValues& kv, const std::string& key, int fallback);
std::string format_double(double v);

}  // namespace looming
