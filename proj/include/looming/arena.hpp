#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "looming/config.hpp"
#include "looming/pipeline.hpp"

namespace looming {

// World units are centimetres and seconds. x to the right, y up, heading
// counter-clockwise from +x.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
};

struct CameraParams {
  int width = 99;
  int height = 72;
  double fov_deg = 70.0;
  double eye_height_cm = 2.5;
  // Horizontal sub-rays averaged per column (box anti-aliasing).
  int rays_per_column = 4;
  double robot_luminance = 40.0;
  double stripe_dark = 0.0;
  double stripe_light = 255.0;
  double floor_luminance = 160.0;

  double focal_px() const;
};

struct ArenaParams {
  double width_cm = 70.0;
  double height_cm = 55.0;
  double wall_height_cm = 10.0;
  double stripe_period_cm = 5.0;
  int agents = 4;
  double duration_s = 600.0;
  double time_step_s = 1.0 / 30.0;
  double min_speed_cm_s = 6.0;
  double max_speed_cm_s = 10.0;
  double robot_radius_cm = 2.0;
  double robot_height_cm = 3.0;
  double turn_rate_deg_s = 180.0;
  double turn_min_deg = 90.0;
  double turn_max_deg = 180.0;
  double classify_range_cm = 25.0;
  double classify_cone_deg = 25.0;
  // Clearance used when placing agents and when resolving contacts.
  double placement_clearance_cm = 6.0;
  double contact_epsilon_cm = 0.01;
  // false skips rendering and the model entirely (kinematics only).
  bool vision = true;
  CameraParams camera;

  std::int64_t frame_count() const;
  void validate() const;

  // Keys under "arena." and "camera.".
  static ArenaParams from_key_values(const KeyValues& kv);
  KeyValues to_key_values() const;
};

enum class AgentState { Forward, Avoiding };
enum class EventKind { CR, CP, AA, AT, AP };

std::string_view event_kind_name(EventKind k);
EventKind parse_event_kind(std::string_view s);

struct ArenaEvent {
  std::int64_t frame = 0;
  int agent_id = 0;
  EventKind kind = EventKind::AP;
  std::string context;
};

struct EventLedger {
  std::vector<ArenaEvent> events;

  void add(ArenaEvent e) { events.push_back(std::move(e)); }
  std::size_t count(EventKind k) const;
};

struct SuccessRates {
  // Absent when the denominator is zero.
  std::optional<double> sr1;
  std::optional<double> sr2;
};

SuccessRates success_rates(const EventLedger& ledger);

struct MotionCommand {
  double linear_cm_s = 0.0;
  double angular_rad_s = 0.0;
};

struct RobotAgent {
  int id = 0;
  Pose pose;
  double linear_speed = 0.0;
  double radius = 2.0;
  AgentState state = AgentState::Forward;
  double turn_remaining_rad = 0.0;
  int turn_direction = 1;  // +1 left (counter-clockwise), -1 right
  std::uint64_t controller_rng_seed = 0;
  std::mt19937_64 rng;
  // Velocity over the last integration step, for classification.
  double vx = 0.0;
  double vy = 0.0;
  std::shared_ptr<HybridModel> pipeline;
};

struct ArenaWorld {
  ArenaParams params;
  std::vector<RobotAgent> agents;
  std::int64_t clock = 0;
  EventLedger ledger;
};

// Random non-overlapping placement, headings and speeds from `seed`. Each
// agent gets its own pipeline built from `model`.
ArenaWorld make_world(const ArenaParams& params, const ModelConfig& model, std::uint64_t seed);

// Pinhole view from the agent's pose; pure function of the world snapshot.
Frame render_camera(const ArenaWorld& world, const RobotAgent& agent);

// Starts an in-place turn on trigger while moving forward, keeps turning
// while avoiding, otherwise drives forward at the assigned speed.
MotionCommand avoidance_controller(bool trigger, RobotAgent& agent, const ArenaParams& params);

// Turn with a uniformly drawn angle and direction from the agent's rng.
void begin_avoidance_turn(RobotAgent& agent, const ArenaParams& params);

struct TriggerContext {
  std::optional<int> partner;
  double range_cm = 0.0;
  double bearing_deg = 0.0;
  double closing_cm_s = 0.0;
};

// Kind for an avoidance trigger (AP, AA or AT) plus what it was based on.
EventKind classify_event(const ArenaWorld& world, const RobotAgent& agent, TriggerContext* ctx = nullptr);

struct StepObserver {
  std::function<void(const RobotAgent&, const Frame&)> on_frame;
  std::function<void(const RobotAgent&, const FrameResult&)> on_result;
};

void step_world(ArenaWorld& world, const StepObserver* observer = nullptr);

struct ArenaRunResult {
  std::uint64_t seed = 0;
  ModelVariant variant = ModelVariant::Hybrid;
  int agents = 0;
  std::int64_t frames = 0;
  EventLedger ledger;
  SuccessRates rates;
};

ArenaRunResult run_arena(const ArenaParams& params, const ModelConfig& model, std::uint64_t seed,
                         const StepObserver* observer = nullptr);

// Counts per kind in EventKind order.
std::array<std::size_t, 5> event_counts(const EventLedger& ledger);

}  // namespace looming
