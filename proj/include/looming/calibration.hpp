#pragma once

#include <array>
#include <string>

#include "looming/config.hpp"

namespace looming {

// Summed drive separating a response that must stay below threshold from one
// that must cross it, over a set of seeded reference stimuli.
struct CalibrationBand {
  std::string neuron;
  std::string quiet_case;
  std::string active_case;
  double quiet = 0.0;   // largest drive seen where the neuron must stay silent
  double active = 0.0;  // smallest per-trial peak where it must fire
  double threshold_drive = 0.0;
  double scale = 0.0;

  bool separable() const { return active > quiet; }
};

struct CalibrationReport {
  // LGMD-1, LGMD-2, LPTC (shared by both directions).
  std::array<CalibrationBand, 3> bands;
  ModelConfig config;
};

// Places each spiking threshold at the geometric mean of its band and solves
// for the sigmoid scales; everything else is taken from `base`.
//   LGMD-1: late recession (after the first third) vs approach peak
//   LGMD-2: whole recession vs approach peak
//   LPTC:   approach (either direction) vs slowest translation peak
// Reference stimuli are dark-on-light: approach and recession at S80,
// rightward translation at S40, seeds 0..seeds-1. The default is the
// canonical seed-0 stimulus; more seeds widen the bands (and may close them).
CalibrationReport calibrate(const ModelConfig& base, int seeds = 1);

std::string format_calibration(const CalibrationReport& r);

}  // namespace looming
