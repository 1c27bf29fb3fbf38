#include "looming/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace looming {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Field {
  const char* key;
  const char* comment;
  std::function<std::string(const ModelConfig&)> get;
  std::function<void(ModelConfig&, const KeyValues&, const std::string&)> set;
};

template <typename Getter>
Field double_field(const char* key, const char* comment, Getter member) {
  return {key, comment,
          [member](const ModelConfig& c) { return format_double(member(c)); },
          [member](ModelConfig& c, const KeyValues& kv, const std::string& k) {
            auto& ref = member(c);
            ref = parse_double_field(kv, k, ref);
          }};
}

template <typename Getter>
Field int_field(const char* key, const char* comment, Getter member) {
  return {key, comment,
          [member](const ModelConfig& c) { return std::to_string(member(c)); },
          [member](ModelConfig& c, const KeyValues& kv, const std::string& k) {
            auto& ref = member(c);
            ref = parse_int_field(kv, k, ref);
          }};
}

void set_surround(ModelConfig& c, double edge, double diag) {
  for (LgmdKernel* k : {&c.lgmd1, &c.lgmd2}) {
    *k = LgmdKernel::surround(edge, diag, k->temporal_delay, k->bias_w, k->on_gain);
  }
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(double_field("frontend.inner_sigma", "DoG inner Gaussian sigma (px)",
                             [](auto& c) -> auto& { return c.frontend.inner_sigma; }));
    f.push_back(int_field("frontend.inner_radius", "DoG inner support radius (3x3 -> 1)",
                          [](auto& c) -> auto& { return c.frontend.inner_radius; }));
    f.push_back(double_field("frontend.outer_sigma", "DoG outer Gaussian sigma (px)",
                             [](auto& c) -> auto& { return c.frontend.outer_sigma; }));
    f.push_back(int_field("frontend.outer_radius", "DoG outer support radius (7x7 -> 3)",
                          [](auto& c) -> auto& { return c.frontend.outer_radius; }));
    f.push_back(double_field("frontend.alpha_up", "FDSR fast depolarising rate",
                             [](auto& c) -> auto& { return c.frontend.alpha_up; }));
    f.push_back(double_field("frontend.alpha_down", "FDSR slow repolarising rate",
                             [](auto& c) -> auto& { return c.frontend.alpha_down; }));

    f.push_back({"lgmd.weight_edge", "lateral inhibition weight, edge neighbours",
                 [](const ModelConfig& c) { return format_double(c.lgmd1.spatial_weights[0][1]); },
                 [](ModelConfig& c, const KeyValues& kv, const std::string& k) {
                   set_surround(c, parse_double_field(kv, k, c.lgmd1.spatial_weights[0][1]),
                                c.lgmd1.spatial_weights[0][0]);
                 }});
    f.push_back({"lgmd.weight_diag", "lateral inhibition weight, diagonal neighbours",
                 [](const ModelConfig& c) { return format_double(c.lgmd1.spatial_weights[0][0]); },
                 [](ModelConfig& c, const KeyValues& kv, const std::string& k) {
                   set_surround(c, c.lgmd1.spatial_weights[0][1],
                                parse_double_field(kv, k, c.lgmd1.spatial_weights[0][0]));
                 }});
    f.push_back({"lgmd.temporal_delay", "inhibition delay (frames)",
                 [](const ModelConfig& c) { return std::to_string(c.lgmd1.temporal_delay); },
                 [](ModelConfig& c, const KeyValues& kv, const std::string& k) {
                   const int d = parse_int_field(kv, k, c.lgmd1.temporal_delay);
                   c.lgmd1.temporal_delay = d;
                   c.lgmd2.temporal_delay = d;
                 }});
    f.push_back(double_field("lgmd1.bias_w", "LGMD-1 local bias w",
                             [](auto& c) -> auto& { return c.lgmd1.bias_w; }));
    f.push_back(double_field("lgmd1.on_gain", "LGMD-1 ON inhibition gain",
                             [](auto& c) -> auto& { return c.lgmd1.on_gain; }));
    f.push_back(double_field("lgmd2.bias_w", "LGMD-2 local bias w",
                             [](auto& c) -> auto& { return c.lgmd2.bias_w; }));
    f.push_back(double_field("lgmd2.on_gain", "LGMD-2 ON inhibition gain",
                             [](auto& c) -> auto& { return c.lgmd2.on_gain; }));

    f.push_back(int_field("lptc.sample_spacing", "correlator pair distance (px)",
                          [](auto& c) -> auto& { return c.emd.sample_spacing; }));
    f.push_back(double_field("lptc.delay_coeff", "correlator low-pass coefficient",
                             [](auto& c) -> auto& { return c.emd.delay_coeff; }));

    f.push_back(double_field("neuron.scale_lgmd1", "LGMD-1 sigmoid scale",
                             [](auto& c) -> auto& { return c.sigmoid_scale[0]; }));
    f.push_back(double_field("neuron.scale_lgmd2", "LGMD-2 sigmoid scale",
                             [](auto& c) -> auto& { return c.sigmoid_scale[1]; }));
    f.push_back(double_field("neuron.scale_lptc_r", "LPTC-R sigmoid scale",
                             [](auto& c) -> auto& { return c.sigmoid_scale[2]; }));
    f.push_back(double_field("neuron.scale_lptc_l", "LPTC-L sigmoid scale",
                             [](auto& c) -> auto& { return c.sigmoid_scale[3]; }));

    f.push_back({"spike.k_sp", "spike scale coefficient (all neurons)",
                 [](const ModelConfig& c) { return format_double(c.spike[0].k_sp); },
                 [](ModelConfig& c, const KeyValues& kv, const std::string& k) {
                   const double v = parse_double_field(kv, k, c.spike[0].k_sp);
                   for (auto& s : c.spike) s.k_sp = v;
                 }});
    f.push_back(double_field("spike.t_lgmd1", "LGMD-1 spiking threshold",
                             [](auto& c) -> auto& { return c.spike[0].t_sp; }));
    f.push_back(double_field("spike.t_lgmd2", "LGMD-2 spiking threshold",
                             [](auto& c) -> auto& { return c.spike[1].t_sp; }));
    f.push_back(double_field("spike.t_lptc_r", "LPTC-R spiking threshold",
                             [](auto& c) -> auto& { return c.spike[2].t_sp; }));
    f.push_back(double_field("spike.t_lptc_l", "LPTC-L spiking threshold (negative)",
                             [](auto& c) -> auto& { return c.spike[3].t_sp; }));

    f.push_back(int_field("arbiter.n_confirm", "consecutive COLLISION frames to trigger avoidance",
                          [](auto& c) -> auto& { return c.arbiter.n_confirm; }));
    f.push_back(int_field("arbiter.suppression_window", "frames vetoed after the last LPTC spike",
                          [](auto& c) -> auto& { return c.arbiter.suppression_window; }));
    f.push_back({"model.variant", "HYBRID | LGMDS_ONLY | LGMD2_ONLY",
                 [](const ModelConfig& c) { return std::string(variant_name(c.arbiter.variant)); },
                 [](ModelConfig& c, const KeyValues& kv, const std::string& k) {
                   auto it = kv.find(k);
                   if (it == kv.end()) return;
                   try {
                     c.arbiter.variant = parse_variant(it->second);
                   } catch (const std::invalid_argument& e) {
                     throw ConfigError(k, e.what());
                   }
                 }});
    return f;
  }();
  return table;
}

constexpr std::string_view kModelPrefixes[] = {"frontend.", "lgmd.", "lgmd1.", "lgmd2.", "lptc.",
                                               "neuron.",   "spike.", "arbiter.", "model."};

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double_field(const KeyValues& kv, const std::string& key, double fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  const std::string& s = it->second;
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError(key, "expected a real number, got '" + s + "'");
  }
  return v;
}

int parse_int_field(const KeyValues& kv, const std::string& key, int fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  const std::string& s = it->second;
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ConfigError(key, "expected an integer, got '" + s + "'");
  }
  return v;
}

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected key=value, got '" + std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "empty key");
    kv[key] = std::string(trim(line.substr(eq + 1)));
  }
  return kv;
}

KeyValues read_key_values_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

void apply_overrides(KeyValues& base, const std::vector<std::string>& overrides) {
  for (const auto& raw : overrides) {
    std::string_view o = raw;
    if (o.starts_with("--")) o.remove_prefix(2);
    const auto eq = o.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ConfigError(std::string(o), "override must be key=value");
    }
    base[std::string(trim(o.substr(0, eq)))] = std::string(trim(o.substr(eq + 1)));
  }
}

bool is_model_key(std::string_view key) {
  for (auto p : kModelPrefixes) {
    if (key.starts_with(p)) return true;
  }
  return false;
}

ModelConfig ModelConfig::defaults() {
  ModelConfig c;
  // Slower repolarisation and a stronger ON inhibition than the component
  // defaults: both widen the gap between approach and recession for LGMD-2.
  c.frontend.alpha_down = 0.02;
  c.lgmd2.on_gain = 8.0;
  // From `looming_net calibrate` with the settings above.
  c.sigmoid_scale = {1.741074044424888, 1.679928923943859, 19.35045427209687, 19.35045427209687};
  c.spike = {SpikeParams{4.0, 0.7}, SpikeParams{4.0, 0.7}, SpikeParams{4.0, 0.2}, SpikeParams{4.0, -0.2}};
  return c;
}

ModelConfig ModelConfig::from_key_values(const KeyValues& kv) {
  ModelConfig c = defaults();
  for (const auto& [key, value] : kv) {
    if (!is_model_key(key)) continue;
    bool known = false;
    for (const auto& f : fields()) known = known || key == f.key;
    if (!known) throw ConfigError(key, "unknown model config key");
  }
  for (const auto& f : fields()) f.set(c, kv, f.key);
  c.validate();
  return c;
}

ModelConfig ModelConfig::load(const std::string& path, const std::vector<std::string>& overrides) {
  KeyValues kv = path.empty() ? KeyValues{} : read_key_values_file(path);
  apply_overrides(kv, overrides);
  return from_key_values(kv);
}

std::string ModelConfig::serialize() const {
  std::string out = "# looming-net model configuration\n";
  std::string section;
  for (const auto& f : fields()) {
    std::string_view key = f.key;
    const std::string prefix(key.substr(0, key.find('.')));
    if (prefix != section) {
      out += "\n";
      section = prefix;
    }
    out += "# ";
    out += f.comment;
    out += "\n";
    out += f.key;
    out += " = ";
    out += f.get(*this);
    out += "\n";
  }
  return out;
}

void ModelConfig::validate() const {
  auto check = [](bool ok, const char* field, const char* msg) {
    if (!ok) throw ConfigError(field, msg);
  };
  check(frontend.inner_sigma > 0.0, "frontend.inner_sigma", "must be > 0");
  check(frontend.outer_sigma > 0.0, "frontend.outer_sigma", "must be > 0");
  check(frontend.inner_radius >= 0 && frontend.inner_radius <= 16, "frontend.inner_radius", "must be in [0, 16]");
  check(frontend.outer_radius >= 0 && frontend.outer_radius <= 16, "frontend.outer_radius", "must be in [0, 16]");
  check(frontend.alpha_up > 0.0 && frontend.alpha_up <= 1.0, "frontend.alpha_up", "must be in (0, 1]");
  check(frontend.alpha_down > 0.0 && frontend.alpha_down < frontend.alpha_up, "frontend.alpha_down",
        "must be in (0, alpha_up)");
  check(lgmd1.spatial_weights[0][1] >= 0.0, "lgmd.weight_edge", "must be >= 0");
  check(lgmd1.spatial_weights[0][0] >= 0.0, "lgmd.weight_diag", "must be >= 0");
  check(lgmd1.temporal_delay >= 1 && lgmd1.temporal_delay <= 64, "lgmd.temporal_delay", "must be in [1, 64]");
  check(lgmd1.bias_w >= 0.0, "lgmd1.bias_w", "must be >= 0");
  check(lgmd2.bias_w >= 0.0, "lgmd2.bias_w", "must be >= 0");
  check(lgmd1.on_gain >= 1.0, "lgmd1.on_gain", "must be >= 1");
  check(lgmd2.on_gain >= 1.0, "lgmd2.on_gain", "must be >= 1");
  check(emd.sample_spacing >= 1 && emd.sample_spacing <= 32, "lptc.sample_spacing", "must be in [1, 32]");
  check(emd.delay_coeff > 0.0 && emd.delay_coeff <= 1.0, "lptc.delay_coeff", "must be in (0, 1]");
  const char* scale_keys[] = {"neuron.scale_lgmd1", "neuron.scale_lgmd2", "neuron.scale_lptc_r",
                              "neuron.scale_lptc_l"};
  for (std::size_t i = 0; i < 4; ++i) check(sigmoid_scale[i] > 0.0, scale_keys[i], "must be > 0");
  check(spike[0].k_sp > 0.0, "spike.k_sp", "must be > 0");
  check(spike[0].t_sp > 0.0 && spike[0].t_sp < 1.0, "spike.t_lgmd1", "must be in (0, 1)");
  check(spike[1].t_sp > 0.0 && spike[1].t_sp < 1.0, "spike.t_lgmd2", "must be in (0, 1)");
  check(spike[2].t_sp > 0.0 && spike[2].t_sp < 1.0, "spike.t_lptc_r", "must be in (0, 1)");
  check(spike[3].t_sp < 0.0 && spike[3].t_sp > -1.0, "spike.t_lptc_l", "must be in (-1, 0)");
  check(arbiter.n_confirm >= 1, "arbiter.n_confirm", "must be >= 1");
  check(arbiter.suppression_window >= 0, "arbiter.suppression_window", "must be >= 0");
}

}  // namespace looming
