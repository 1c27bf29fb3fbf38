#include "looming/stimuli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>

namespace looming {

namespace {

std::string upper(std::string_view s) {
  std::string u(s);
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return u;
}

// Uniform in [0, 1) from the raw 64-bit engine output; independent of the
// standard library's distribution implementations.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

constexpr double kJitterPx = 2.0;
constexpr double kStartFraction = 0.05;
constexpr double kEndFraction = 0.85;
constexpr double kTranslateHeightFraction = 0.30;
// Sub-frames averaged per frame (shutter open for the whole frame interval).
constexpr int kShutterSamples = 8;

// Edge speed against progress, relative to its peak. Piecewise linear
// through these knots. The slow start keeps the onset transient small, the
// taper near full width keeps the expanding edges inside the EMD's useful
// speed range as they leave the frame.
struct Knot {
  double g;
  double v;
};
constexpr Knot kProfile[] = {{0.0, 0.15}, {0.63, 1.0}, {0.67, 1.0}, {0.846, 0.81}, {1.0, 0.38}};
constexpr int kSegments = static_cast<int>(std::size(kProfile)) - 1;

// Time spent crossing a segment (or the first `dg` of it) at speed 1/v.
double segment_time(const Knot& a, const Knot& b, double dg) {
  const double slope = (b.v - a.v) / (b.g - a.g);
  if (std::fabs(slope) < 1e-12) return dg / a.v;
  return std::log((a.v + slope * dg) / a.v) / slope;
}

double total_time() {
  double t = 0.0;
  for (int i = 0; i < kSegments; ++i) t += segment_time(kProfile[i], kProfile[i + 1], kProfile[i + 1].g - kProfile[i].g);
  return t;
}

double overlap(double lo, double hi, double a, double b) {
  const double v = std::min(hi, b) - std::max(lo, a);
  return v > 0.0 ? v : 0.0;
}

struct Placement {
  double cx;
  double cy;
  double side;
};

// Square moving linearly from `a` to `b` during the frame, averaged over the
// shutter, then quantized. a == b renders a still frame.
Frame render_square(const StimulusSpec& s, const Placement& a, const Placement& b) {
  const int w = s.width;
  const int h = s.height;
  const bool still = a.cx == b.cx && a.cy == b.cy && a.side == b.side;
  const int samples = still ? 1 : kShutterSamples;
  std::vector<double> cov(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0);
  std::vector<double> cx(static_cast<std::size_t>(w));
  for (int j = 0; j < samples; ++j) {
    const double u = (j + 0.5) / samples;
    const double side = a.side + (b.side - a.side) * u;
    const double x0 = a.cx + (b.cx - a.cx) * u - side / 2.0;
    const double y0 = a.cy + (b.cy - a.cy) * u - side / 2.0;
    for (int x = 0; x < w; ++x) cx[static_cast<std::size_t>(x)] = overlap(x, x + 1.0, x0, x0 + side);
    for (int y = 0; y < h; ++y) {
      const double cy = overlap(y, y + 1.0, y0, y0 + side) / samples;
      if (cy == 0.0) continue;
      double* row = cov.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(w);
      for (int x = 0; x < w; ++x) row[x] += cx[static_cast<std::size_t>(x)] * cy;
    }
  }
  Frame f(w, h);
  const double bg = s.background_luminance;
  const double obj = s.object_luminance;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      f(x, y) = std::round(bg + (obj - bg) * cov[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)]);
    }
  }
  return f;
}

double visible_area(const StimulusSpec& s, const Placement& p) {
  return overlap(0.0, s.width, p.cx - p.side / 2.0, p.cx + p.side / 2.0) *
         overlap(0.0, s.height, p.cy - p.side / 2.0, p.cy + p.side / 2.0);
}

StimulusSequence render_path(const StimulusSpec& spec, const std::vector<Placement>& path, const char* label) {
  StimulusSequence seq{spec, {}, {}};
  for (std::size_t k = 0; k < path.size(); ++k) {
    seq.frames.push_back(render_square(spec, path[k == 0 ? 0 : k - 1], path[k]));
    seq.ground_truth.push_back({label, path[k].side, path[k].cx, path[k].cy, visible_area(spec, path[k])});
  }
  return seq;
}

// Approach with an optional lateral drift. The looming component scales with
// cos(angle), the drift with sin(angle); angle 0 is the frontal approach.
std::vector<Placement> approach_path(const StimulusSpec& spec, double jx, double jy) {
  const int n = spec.frame_count();
  const int span = completion_frames(spec.speed) - 1;
  const double theta = spec.approach_angle_deg * std::numbers::pi / 180.0;
  const double growth = (kEndFraction - kStartFraction) * spec.width;
  const double drift = std::sin(theta) * growth;
  std::vector<Placement> path;
  for (int k = 0; k < n; ++k) {
    const double g = approach_progress(std::min(1.0, static_cast<double>(k) / span));
    path.push_back({spec.width / 2.0 + jx + drift * (g - 0.5), spec.height / 2.0 + jy,
                    kStartFraction * spec.width + std::cos(theta) * growth * g});
  }
  return path;
}

std::vector<Placement> translation_path(const StimulusSpec& spec, double jx, double jy) {
  const int n = spec.frame_count();
  const double side = kTranslateHeightFraction * spec.height;
  const double v = translation_speed_px(spec.speed);
  std::vector<Placement> path;
  for (int k = 0; k < n; ++k) path.push_back({-side / 2.0 + jx + v * k, spec.height / 2.0 + jy, side});
  return path;
}

}  // namespace

std::string_view stimulus_kind_name(StimulusKind k) {
  switch (k) {
    case StimulusKind::Approach: return "APPROACH";
    case StimulusKind::Recede: return "RECEDE";
    case StimulusKind::TranslateR: return "TRANSLATE_R";
    case StimulusKind::TranslateL: return "TRANSLATE_L";
    case StimulusKind::AngularApproach: return "ANGULAR_APPROACH";
  }
  return "APPROACH";
}

StimulusKind parse_stimulus_kind(std::string_view s) {
  const std::string u = upper(s);
  if (u == "APPROACH") return StimulusKind::Approach;
  if (u == "RECEDE") return StimulusKind::Recede;
  if (u == "TRANSLATE_R") return StimulusKind::TranslateR;
  if (u == "TRANSLATE_L") return StimulusKind::TranslateL;
  if (u == "ANGULAR_APPROACH" || u == "ANGULAR") return StimulusKind::AngularApproach;
  throw std::invalid_argument("unknown stimulus kind '" + std::string(s) + "'");
}

std::string_view speed_level_name(SpeedLevel s) {
  switch (s) {
    case SpeedLevel::S40: return "S40";
    case SpeedLevel::S80: return "S80";
    case SpeedLevel::S120: return "S120";
  }
  return "S80";
}

SpeedLevel parse_speed_level(std::string_view s) {
  const std::string u = upper(s);
  if (u == "S40") return SpeedLevel::S40;
  if (u == "S80") return SpeedLevel::S80;
  if (u == "S120") return SpeedLevel::S120;
  throw std::invalid_argument("unknown speed level '" + std::string(s) + "'");
}

double approach_progress(double t) {
  static const double total = total_time();
  double remaining = std::clamp(t, 0.0, 1.0) * total;
  for (int i = 0; i < kSegments; ++i) {
    const Knot& a = kProfile[i];
    const Knot& b = kProfile[i + 1];
    const double span = segment_time(a, b, b.g - a.g);
    if (remaining > span && i + 1 < kSegments) {
      remaining -= span;
      continue;
    }
    const double slope = (b.v - a.v) / (b.g - a.g);
    const double g = std::fabs(slope) < 1e-12 ? a.g + a.v * remaining
                                              : a.g + a.v * (std::exp(slope * remaining) - 1.0) / slope;
    return std::min(g, 1.0);
  }
  return 1.0;
}

double translation_speed_px(SpeedLevel s) {
  switch (s) {
    case SpeedLevel::S40: return 1.7;
    case SpeedLevel::S80: return 2.04;
    case SpeedLevel::S120: return 2.5;
  }
  return 2.04;
}

int StimulusSpec::frame_count() const {
  if (frames > 0) return frames;
  if (kind == StimulusKind::TranslateR || kind == StimulusKind::TranslateL) {
    const double side = kTranslateHeightFraction * height;
    return static_cast<int>(std::ceil((width + side) / translation_speed_px(speed))) + 1;
  }
  return completion_frames(speed);
}

int completion_frames(SpeedLevel s) {
  switch (s) {
    case SpeedLevel::S40: return 90;
    case SpeedLevel::S80: return 60;
    case SpeedLevel::S120: return 40;
  }
  return 60;
}

void StimulusSpec::validate() const {
  auto lum_ok = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 255.0 && std::floor(v) == v; };
  if (!lum_ok(object_luminance)) throw std::invalid_argument("stimulus: object luminance must be an integer in [0, 255]");
  if (!lum_ok(background_luminance)) {
    throw std::invalid_argument("stimulus: background luminance must be an integer in [0, 255]");
  }
  if (object_luminance == background_luminance) throw std::invalid_argument("stimulus: zero contrast");
  if (frames != 0 && frames < 2) throw std::invalid_argument("stimulus: frames must be >= 2");
  if (!(std::fabs(approach_angle_deg) < 90.0)) throw std::invalid_argument("stimulus: |angle| must be < 90 degrees");
  if (kind != StimulusKind::AngularApproach && approach_angle_deg != 0.0) {
    throw std::invalid_argument("stimulus: approach angle only applies to ANGULAR_APPROACH");
  }
  if (width < 8 || height < 8) throw std::invalid_argument("stimulus: frame must be at least 8x8");
}

KeyValues StimulusSpec::to_key_values() const {
  return {{"stimulus.kind", std::string(stimulus_kind_name(kind))},
          {"stimulus.object", format_double(object_luminance)},
          {"stimulus.background", format_double(background_luminance)},
          {"stimulus.speed", std::string(speed_level_name(speed))},
          {"stimulus.angle_deg", format_double(approach_angle_deg)},
          {"stimulus.frames", std::to_string(frame_count())},
          {"stimulus.seed", std::to_string(seed)},
          {"stimulus.width", std::to_string(width)},
          {"stimulus.height", std::to_string(height)}};
}

StimulusSpec StimulusSpec::from_key_values(const KeyValues& kv) {
  StimulusSpec s;
  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  try {
    if (auto v = get("stimulus.kind")) s.kind = parse_stimulus_kind(*v);
    if (auto v = get("stimulus.speed")) s.speed = parse_speed_level(*v);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("stimulus", e.what());
  }
  s.object_luminance = parse_double_field(kv, "stimulus.object", s.object_luminance);
  s.background_luminance = parse_double_field(kv, "stimulus.background", s.background_luminance);
  s.approach_angle_deg = parse_double_field(kv, "stimulus.angle_deg", s.approach_angle_deg);
  s.frames = parse_int_field(kv, "stimulus.frames", s.frames);
  s.width = parse_int_field(kv, "stimulus.width", s.width);
  s.height = parse_int_field(kv, "stimulus.height", s.height);
  if (auto v = get("stimulus.seed")) {
    try {
      s.seed = std::stoull(*v);
    } catch (const std::exception&) {
      throw ConfigError("stimulus.seed", "expected an unsigned integer");
    }
  }
  return s;
}

std::string StimulusSpec::serialize() const {
  std::string out = "# looming-net stimulus spec\n";
  for (const auto& [k, v] : to_key_values()) out += k + " = " + v + "\n";
  return out;
}

StimulusSequence generate(const StimulusSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const double jx = (2.0 * unit_draw(rng) - 1.0) * kJitterPx;
  const double jy = (2.0 * unit_draw(rng) - 1.0) * kJitterPx;

  switch (spec.kind) {
    case StimulusKind::Approach: {
      return render_path(spec, approach_path(spec, jx, jy), "looming");
    }
    case StimulusKind::AngularApproach: {
      return render_path(spec, approach_path(spec, jx, jy), "angular_approach");
    }
    case StimulusKind::Recede: {
      StimulusSpec forward = spec;
      forward.kind = StimulusKind::Approach;
      StimulusSequence seq = render_path(forward, approach_path(forward, jx, jy), "receding");
      std::reverse(seq.frames.begin(), seq.frames.end());
      std::reverse(seq.ground_truth.begin(), seq.ground_truth.end());
      seq.spec = spec;
      return seq;
    }
    case StimulusKind::TranslateR: {
      return render_path(spec, translation_path(spec, jx, jy), "translating_right");
    }
    case StimulusKind::TranslateL: {
      StimulusSpec right = spec;
      right.kind = StimulusKind::TranslateR;
      StimulusSequence seq = render_path(right, translation_path(right, jx, jy), "translating_left");
      for (auto& f : seq.frames) f = mirror_horizontal(f);
      for (auto& g : seq.ground_truth) g.center_x = spec.width - g.center_x;
      seq.spec = spec;
      return seq;
    }
  }
  throw std::invalid_argument("stimulus: unhandled kind");
}

void write_sequence(const StimulusSequence& s, const std::string& path) {
  write_lnsq(s.frames, path);
  std::ofstream side(path + ".spec", std::ios::binary | std::ios::trunc);
  if (!side) throw std::runtime_error("cannot write '" + path + ".spec'");
  side << s.spec.serialize();
}

StimulusSequence read_sequence(const std::string& path) {
  StimulusSequence s;
  s.frames = read_frames(path);
  const std::string side = path + ".spec";
  if (std::filesystem::exists(side)) {
    s.spec = StimulusSpec::from_key_values(read_key_values_file(side));
    s.ground_truth = generate(s.spec).ground_truth;
  } else if (!s.frames.empty()) {
    s.spec.width = s.frames.front().width();
    s.spec.height = s.frames.front().height();
    s.spec.frames = static_cast<int>(s.frames.size());
  }
  return s;
}

double measured_object_area(const Frame& f, const StimulusSpec& spec) {
  const double contrast = spec.object_luminance - spec.background_luminance;
  double area = 0.0;
  for (double v : f.values()) area += (v - spec.background_luminance) / contrast;
  return area;
}

}  // namespace looming
