#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "looming/config.hpp"
#include "looming/sequence_io.hpp"

namespace looming {

enum class StimulusKind { Approach, Recede, TranslateR, TranslateL, AngularApproach };
enum class SpeedLevel { S40, S80, S120 };

std::string_view stimulus_kind_name(StimulusKind k);
StimulusKind parse_stimulus_kind(std::string_view s);
std::string_view speed_level_name(SpeedLevel s);
SpeedLevel parse_speed_level(std::string_view s);

// Frames needed to complete an approach at a speed level: 90 / 60 / 40.
int completion_frames(SpeedLevel s);
// Image speed of a translating object, px/frame.
double translation_speed_px(SpeedLevel s);
// Fraction of the approach completed at normalized time t in [0, 1]. The
// edge speed ramps up, holds, then eases off once the object nears full
// width; see stimuli.cpp for the knots.
double approach_progress(double t);

struct StimulusSpec {
  StimulusKind kind = StimulusKind::Approach;
  double object_luminance = 40.0;
  double background_luminance = 200.0;
  SpeedLevel speed = SpeedLevel::S80;
  // Angular approach only. Positive angles come from the left and drift
  // rightward; negative from the right.
  double approach_angle_deg = 0.0;
  // 0 selects the natural length: completion_frames(speed) for approach and
  // recession, a full crossing of the frame for translations.
  int frames = 0;
  std::uint64_t seed = 0;
  int width = kDefaultFrameWidth;
  int height = kDefaultFrameHeight;

  int frame_count() const;
  // Throws std::invalid_argument for zero contrast, frames < 2 (when set),
  // out-of-range luminance or angle.
  void validate() const;

  KeyValues to_key_values() const;
  static StimulusSpec from_key_values(const KeyValues& kv);
  std::string serialize() const;

  friend bool operator==(const StimulusSpec&, const StimulusSpec&) = default;
};

// Per-frame geometry of the rendered object, in pixels.
struct GroundTruth {
  std::string label;  // looming / receding / translating_right / translating_left / angular_approach
  double side = 0.0;
  double center_x = 0.0;
  double center_y = 0.0;
  // On-screen object area (continuous, clipped to the frame).
  double visible_area = 0.0;
};

struct StimulusSequence {
  StimulusSpec spec;
  FrameSequence frames;
  std::vector<GroundTruth> ground_truth;
};

StimulusSequence generate(const StimulusSpec& spec);

// Writes the LNSQ file at `path` and the key=value spec at `path + ".spec"`.
void write_sequence(const StimulusSequence& s, const std::string& path);
// Reads frames and, when present, the spec sidecar (ground truth is then
// regenerated from the spec).
StimulusSequence read_sequence(const std::string& path);

// Area-weighted object coverage measured from pixel values.
double measured_object_area(const Frame& f, const StimulusSpec& spec);

}  // namespace looming
