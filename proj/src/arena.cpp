#include "looming/arena.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace looming {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit_draw(rng); }

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

struct DoubleKey {
  const char* key;
  double ArenaParams::*arena;
  double CameraParams::*camera;
};

const DoubleKey kDoubleKeys[] = {
    {"arena.width_cm", &ArenaParams::width_cm, nullptr},
    {"arena.height_cm", &ArenaParams::height_cm, nullptr},
    {"arena.wall_height_cm", &ArenaParams::wall_height_cm, nullptr},
    {"arena.stripe_period_cm", &ArenaParams::stripe_period_cm, nullptr},
    {"arena.duration_s", &ArenaParams::duration_s, nullptr},
    {"arena.time_step_s", &ArenaParams::time_step_s, nullptr},
    {"arena.min_speed_cm_s", &ArenaParams::min_speed_cm_s, nullptr},
    {"arena.max_speed_cm_s", &ArenaParams::max_speed_cm_s, nullptr},
    {"arena.robot_radius_cm", &ArenaParams::robot_radius_cm, nullptr},
    {"arena.robot_height_cm", &ArenaParams::robot_height_cm, nullptr},
    {"arena.turn_rate_deg_s", &ArenaParams::turn_rate_deg_s, nullptr},
    {"arena.turn_min_deg", &ArenaParams::turn_min_deg, nullptr},
    {"arena.turn_max_deg", &ArenaParams::turn_max_deg, nullptr},
    {"arena.classify_range_cm", &ArenaParams::classify_range_cm, nullptr},
    {"arena.classify_cone_deg", &ArenaParams::classify_cone_deg, nullptr},
    {"arena.placement_clearance_cm", &ArenaParams::placement_clearance_cm, nullptr},
    {"arena.contact_epsilon_cm", &ArenaParams::contact_epsilon_cm, nullptr},
    {"camera.fov_deg", nullptr, &CameraParams::fov_deg},
    {"camera.eye_height_cm", nullptr, &CameraParams::eye_height_cm},
    {"camera.robot_luminance", nullptr, &CameraParams::robot_luminance},
    {"camera.stripe_dark", nullptr, &CameraParams::stripe_dark},
    {"camera.stripe_light", nullptr, &CameraParams::stripe_light},
    {"camera.floor_luminance", nullptr, &CameraParams::floor_luminance},
};

double& field(ArenaParams& p, const DoubleKey& k) { return k.arena ? p.*(k.arena) : p.camera.*(k.camera); }
double field(const ArenaParams& p, const DoubleKey& k) { return k.arena ? p.*(k.arena) : p.camera.*(k.camera); }

// Ray from p along unit d: distance to the first wall and the coordinate
// along that wall measured from its midpoint.
void cast_walls(const ArenaParams& a, double px, double py, double dx, double dy, double& t, double& s) {
  const double inf = std::numeric_limits<double>::infinity();
  const double tx = dx > 0.0 ? (a.width_cm - px) / dx : dx < 0.0 ? -px / dx : inf;
  const double ty = dy > 0.0 ? (a.height_cm - py) / dy : dy < 0.0 ? -py / dy : inf;
  if (tx < ty) {
    t = tx;
    s = py + t * dy - a.height_cm / 2.0;
  } else {
    t = ty;
    s = px + t * dx - a.width_cm / 2.0;
  }
}

// Stripes are symmetric about each wall's midpoint, which keeps mirrored
// arenas rendering as mirrored images.
bool light_stripe(double s, double period) {
  const double half = period / 2.0;
  const auto k = static_cast<long long>(std::floor((std::fabs(s) + half / 2.0) / half));
  return k % 2 == 0;
}

bool inside_fov_and_range(const RobotAgent& a, const RobotAgent& b, const ArenaParams& p, double& dist,
                          double& bearing) {
  const double dx = b.pose.x - a.pose.x;
  const double dy = b.pose.y - a.pose.y;
  dist = std::hypot(dx, dy);
  bearing = wrap_angle(std::atan2(dy, dx) - a.pose.heading);
  return dist <= p.classify_range_cm && std::fabs(bearing) <= p.camera.fov_deg * kDeg / 2.0;
}

}  // namespace

double CameraParams::focal_px() const { return (width / 2.0) / std::tan(fov_deg * kDeg / 2.0); }

std::int64_t ArenaParams::frame_count() const { return std::llround(duration_s / time_step_s); }

void ArenaParams::validate() const {
  auto need = [](bool ok, const char* key, const char* msg) {
    if (!ok) throw ConfigError(key, msg);
  };
  need(width_cm > 4.0 * robot_radius_cm, "arena.width_cm", "must exceed two robot diameters");
  need(height_cm > 4.0 * robot_radius_cm, "arena.height_cm", "must exceed two robot diameters");
  need(wall_height_cm > 0.0, "arena.wall_height_cm", "must be > 0");
  need(stripe_period_cm > 0.0, "arena.stripe_period_cm", "must be > 0");
  need(agents >= 0, "arena.agents", "must be >= 0");
  need(duration_s >= 0.0, "arena.duration_s", "must be >= 0");
  need(time_step_s > 0.0, "arena.time_step_s", "must be > 0");
  need(min_speed_cm_s >= 0.0 && min_speed_cm_s <= max_speed_cm_s, "arena.min_speed_cm_s",
       "must be in [0, max_speed_cm_s]");
  need(max_speed_cm_s <= 35.0, "arena.max_speed_cm_s", "must be <= 35");
  need(robot_radius_cm > 0.0, "arena.robot_radius_cm", "must be > 0");
  need(robot_height_cm > camera.eye_height_cm, "arena.robot_height_cm", "must exceed camera.eye_height_cm");
  need(turn_rate_deg_s > 0.0, "arena.turn_rate_deg_s", "must be > 0");
  need(turn_min_deg > 0.0 && turn_min_deg <= turn_max_deg, "arena.turn_min_deg", "must be in (0, turn_max_deg]");
  need(turn_max_deg <= 360.0, "arena.turn_max_deg", "must be <= 360");
  need(classify_range_cm > 0.0, "arena.classify_range_cm", "must be > 0");
  need(classify_cone_deg > 0.0 && classify_cone_deg <= 180.0, "arena.classify_cone_deg", "must be in (0, 180]");
  need(placement_clearance_cm >= 0.0, "arena.placement_clearance_cm", "must be >= 0");
  need(contact_epsilon_cm > 0.0, "arena.contact_epsilon_cm", "must be > 0");
  need(camera.width >= 8 && camera.height >= 8, "camera.width", "frame must be at least 8x8");
  need(camera.fov_deg > 0.0 && camera.fov_deg < 180.0, "camera.fov_deg", "must be in (0, 180)");
  need(camera.eye_height_cm > 0.0 && camera.eye_height_cm < wall_height_cm, "camera.eye_height_cm",
       "must be in (0, arena.wall_height_cm)");
  need(camera.rays_per_column >= 1, "camera.rays_per_column", "must be >= 1");
  for (double v : {camera.robot_luminance, camera.stripe_dark, camera.stripe_light, camera.floor_luminance}) {
    need(v >= 0.0 && v <= 255.0, "camera", "luminance values must be in [0, 255]");
  }
}

ArenaParams ArenaParams::from_key_values(const KeyValues& kv) {
  ArenaParams p;
  for (const auto& k : kDoubleKeys) field(p, k) = parse_double_field(kv, k.key, field(p, k));
  p.agents = parse_int_field(kv, "arena.agents", p.agents);
  p.camera.width = parse_int_field(kv, "camera.width", p.camera.width);
  p.camera.height = parse_int_field(kv, "camera.height", p.camera.height);
  p.camera.rays_per_column = parse_int_field(kv, "camera.rays_per_column", p.camera.rays_per_column);
  if (auto it = kv.find("arena.vision"); it != kv.end()) {
    if (it->second == "true" || it->second == "1") {
      p.vision = true;
    } else if (it->second == "false" || it->second == "0") {
      p.vision = false;
    } else {
      throw ConfigError("arena.vision", "expected true or false");
    }
  }
  for (const auto& [key, value] : kv) {
    if (key.rfind("arena.", 0) != 0 && key.rfind("camera.", 0) != 0) continue;
    const bool known = key == "arena.agents" || key == "arena.vision" || key == "camera.width" ||
                       key == "camera.height" || key == "camera.rays_per_column" ||
                       std::any_of(std::begin(kDoubleKeys), std::end(kDoubleKeys),
                                   [&](const DoubleKey& k) { return key == k.key; });
    if (!known) throw ConfigError(key, "unknown key");
  }
  p.validate();
  return p;
}

KeyValues ArenaParams::to_key_values() const {
  KeyValues kv;
  for (const auto& k : kDoubleKeys) kv[k.key] = format_double(field(*this, k));
  kv["arena.agents"] = std::to_string(agents);
  kv["arena.vision"] = vision ? "true" : "false";
  kv["camera.width"] = std::to_string(camera.width);
  kv["camera.height"] = std::to_string(camera.height);
  kv["camera.rays_per_column"] = std::to_string(camera.rays_per_column);
  return kv;
}

std::string_view event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::CR: return "CR";
    case EventKind::CP: return "CP";
    case EventKind::AA: return "AA";
    case EventKind::AT: return "AT";
    case EventKind::AP: return "AP";
  }
  return "AP";
}

EventKind parse_event_kind(std::string_view s) {
  for (EventKind k : {EventKind::CR, EventKind::CP, EventKind::AA, EventKind::AT, EventKind::AP}) {
    if (s == event_kind_name(k)) return k;
  }
  throw std::invalid_argument("unknown event kind '" + std::string(s) + "'");
}

std::size_t EventLedger::count(EventKind k) const {
  return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [k](const ArenaEvent& e) { return e.kind == k; }));
}

std::array<std::size_t, 5> event_counts(const EventLedger& ledger) {
  std::array<std::size_t, 5> c{};
  for (const auto& e : ledger.events) ++c[static_cast<std::size_t>(e.kind)];
  return c;
}

SuccessRates success_rates(const EventLedger& ledger) {
  const auto c = event_counts(ledger);
  const double cr = static_cast<double>(c[0]), cp = static_cast<double>(c[1]);
  const double aa = static_cast<double>(c[2]), at = static_cast<double>(c[3]), ap = static_cast<double>(c[4]);
  SuccessRates r;
  if (ap + cp > 0.0) r.sr1 = 100.0 * ap / (ap + cp);
  if (aa + at + cr > 0.0) r.sr2 = 100.0 * aa / (aa + at + cr);
  return r;
}

ArenaWorld make_world(const ArenaParams& params, const ModelConfig& model, std::uint64_t seed) {
  params.validate();
  ArenaWorld w;
  w.params = params;
  std::mt19937_64 rng(seed);
  const double r = params.robot_radius_cm;
  const double margin = r + params.placement_clearance_cm;
  if (params.agents > 0 && (params.width_cm <= 2.0 * margin || params.height_cm <= 2.0 * margin)) {
    throw ConfigError("arena.placement_clearance_cm", "no room to place agents");
  }
  for (int i = 0; i < params.agents; ++i) {
    RobotAgent a;
    a.id = i;
    a.radius = r;
    bool placed = false;
    for (int attempt = 0; attempt < 100000 && !placed; ++attempt) {
      a.pose.x = uniform(rng, margin, params.width_cm - margin);
      a.pose.y = uniform(rng, margin, params.height_cm - margin);
      placed = std::all_of(w.agents.begin(), w.agents.end(), [&](const RobotAgent& o) {
        return std::hypot(o.pose.x - a.pose.x, o.pose.y - a.pose.y) >= 2.0 * r + params.placement_clearance_cm;
      });
    }
    if (!placed) throw ConfigError("arena.agents", "cannot place " + std::to_string(params.agents) + " agents");
    a.pose.heading = uniform(rng, -kPi, kPi);
    a.linear_speed = uniform(rng, params.min_speed_cm_s, params.max_speed_cm_s);
    a.controller_rng_seed = rng();
    a.rng.seed(a.controller_rng_seed);
    if (params.vision) a.pipeline = std::make_shared<HybridModel>(model);
    w.agents.push_back(std::move(a));
  }
  return w;
}

// Adds `v` times the covered fraction of each row in [top, bot).
void add_band(std::vector<double>& col, double top, double bot, double v) {
  const int h = static_cast<int>(col.size());
  top = std::max(top, 0.0);
  bot = std::min(bot, static_cast<double>(h));
  if (!(bot > top)) return;
  const int r0 = static_cast<int>(top);
  const int r1 = static_cast<int>(std::ceil(bot)) - 1;
  if (r0 == r1) {
    col[static_cast<std::size_t>(r0)] += v * (bot - top);
    return;
  }
  col[static_cast<std::size_t>(r0)] += v * (r0 + 1.0 - top);
  for (int r = r0 + 1; r < r1; ++r) col[static_cast<std::size_t>(r)] += v;
  col[static_cast<std::size_t>(r1)] += v * (bot - r1);
}

Frame render_camera(const ArenaWorld& world, const RobotAgent& agent) {
  const ArenaParams& p = world.params;
  const CameraParams& cam = p.camera;
  const int w = cam.width;
  const int h = cam.height;
  const double f = cam.focal_px();
  const double cy = h / 2.0;
  const int rays = cam.rays_per_column;
  const double weight = 1.0 / rays;

  const double ch = std::cos(agent.pose.heading);
  const double sh = std::sin(agent.pose.heading);

  Frame out(w, h);
  std::vector<double> col(static_cast<std::size_t>(h));
  for (int i = 0; i < w; ++i) {
    std::fill(col.begin(), col.end(), cam.floor_luminance);
    for (int j = 0; j < rays; ++j) {
      const double u = i + (j + 0.5) / rays - w / 2.0;
      // Ray at angle alpha = atan2(u, f) clockwise from the heading.
      const double norm = std::sqrt(f * f + u * u);
      const double ca = f / norm;
      const double sa = u / norm;
      const double dx = ch * ca + sh * sa;
      const double dy = sh * ca - ch * sa;
      const double depth_factor = ca;

      double tw = 0.0, s = 0.0;
      cast_walls(p, agent.pose.x, agent.pose.y, dx, dy, tw, s);
      double tr = std::numeric_limits<double>::infinity();
      for (const RobotAgent& o : world.agents) {
        if (o.id == agent.id) continue;
        const double ox = o.pose.x - agent.pose.x;
        const double oy = o.pose.y - agent.pose.y;
        const double b = ox * dx + oy * dy;
        if (b <= 0.0) continue;
        const double disc = b * b - (ox * ox + oy * oy - o.radius * o.radius);
        if (disc < 0.0) continue;
        const double t = b - std::sqrt(disc);
        if (t > 0.0 && t < tr) tr = t;
      }

      const double zw = tw * depth_factor;
      const double wall_top = cy - f * (p.wall_height_cm - cam.eye_height_cm) / zw;
      const double wall_bot = cy + f * cam.eye_height_cm / zw;
      const double wall_lum = light_stripe(s, p.stripe_period_cm) ? cam.stripe_light : cam.stripe_dark;
      const bool robot = tr < tw;
      double rob_top = 0.0, rob_bot = 0.0;
      if (robot) {
        const double zr = tr * depth_factor;
        rob_top = cy - f * (p.robot_height_cm - cam.eye_height_cm) / zr;
        rob_bot = cy + f * cam.eye_height_cm / zr;
      }
      const double dw = weight * (wall_lum - cam.floor_luminance);
      add_band(col, wall_top, wall_bot, dw);
      if (robot) {
        // The robot occludes the part of the wall behind it.
        add_band(col, std::max(wall_top, rob_top), std::min(wall_bot, rob_bot), -dw);
        add_band(col, rob_top, rob_bot, weight * (cam.robot_luminance - cam.floor_luminance));
      }
    }
    for (int r = 0; r < h; ++r) out(i, r) = std::clamp(std::round(col[static_cast<std::size_t>(r)]), 0.0, 255.0);
  }
  return out;
}

void begin_avoidance_turn(RobotAgent& agent, const ArenaParams& params) {
  agent.state = AgentState::Avoiding;
  agent.turn_remaining_rad = uniform(agent.rng, params.turn_min_deg, params.turn_max_deg) * kDeg;
  agent.turn_direction = (agent.rng() >> 63) ? 1 : -1;
}

MotionCommand avoidance_controller(bool trigger, RobotAgent& agent, const ArenaParams& params) {
  if (agent.state == AgentState::Forward && trigger) begin_avoidance_turn(agent, params);
  if (agent.state == AgentState::Avoiding) return {0.0, agent.turn_direction * params.turn_rate_deg_s * kDeg};
  return {agent.linear_speed, 0.0};
}

EventKind classify_event(const ArenaWorld& world, const RobotAgent& agent, TriggerContext* ctx) {
  const ArenaParams& p = world.params;
  const RobotAgent* nearest = nullptr;
  double best = 0.0, best_bearing = 0.0;
  for (const RobotAgent& o : world.agents) {
    if (o.id == agent.id) continue;
    double dist = 0.0, bearing = 0.0;
    if (!inside_fov_and_range(agent, o, p, dist, bearing)) continue;
    if (!nearest || dist < best) {
      nearest = &o;
      best = dist;
      best_bearing = bearing;
    }
  }
  if (!nearest) return EventKind::AP;
  const double rx = nearest->pose.x - agent.pose.x;
  const double ry = nearest->pose.y - agent.pose.y;
  // The triggered agent is moving forward at its own speed; the partner at
  // whatever it did over the last step.
  const double vx = agent.linear_speed * std::cos(agent.pose.heading);
  const double vy = agent.linear_speed * std::sin(agent.pose.heading);
  const double closing = best > 0.0 ? -(rx * (nearest->vx - vx) + ry * (nearest->vy - vy)) / best : 0.0;
  if (ctx) {
    ctx->partner = nearest->id;
    ctx->range_cm = best;
    ctx->bearing_deg = best_bearing / kDeg;
    ctx->closing_cm_s = closing;
  }
  return closing > 0.0 && std::fabs(best_bearing) <= p.classify_cone_deg * kDeg ? EventKind::AA : EventKind::AT;
}

namespace {

std::string format_context(const TriggerContext& c) {
  if (!c.partner) return "no robot in view";
  char buf[128];
  std::snprintf(buf, sizeof(buf), "partner=%d range=%.2f bearing=%.1f closing=%.2f", *c.partner, c.range_cm,
                c.bearing_deg, c.closing_cm_s);
  return buf;
}

void clamp_to_walls(RobotAgent& a, const ArenaParams& p) {
  const double lo = a.radius + p.contact_epsilon_cm;
  a.pose.x = std::clamp(a.pose.x, lo, p.width_cm - lo);
  a.pose.y = std::clamp(a.pose.y, lo, p.height_cm - lo);
}

}  // namespace

void step_world(ArenaWorld& world, const StepObserver* observer) {
  const ArenaParams& p = world.params;
  const double dt = p.time_step_s;
  const std::int64_t frame = world.clock;
  std::vector<MotionCommand> cmds(world.agents.size());

  for (std::size_t i = 0; i < world.agents.size(); ++i) {
    RobotAgent& a = world.agents[i];
    bool trigger = false;
    if (p.vision && a.pipeline) {
      const Frame f = render_camera(world, a);
      if (observer && observer->on_frame) observer->on_frame(a, f);
      const FrameResult r = a.pipeline->process(f);
      if (observer && observer->on_result) observer->on_result(a, r);
      trigger = r.trigger;
    }
    if (trigger && a.state == AgentState::Forward) {
      TriggerContext ctx;
      const EventKind kind = classify_event(world, a, &ctx);
      world.ledger.add({frame, a.id, kind, format_context(ctx)});
    }
    cmds[i] = avoidance_controller(trigger, a, p);
  }

  for (std::size_t i = 0; i < world.agents.size(); ++i) {
    RobotAgent& a = world.agents[i];
    double dtheta = cmds[i].angular_rad_s * dt;
    if (a.state == AgentState::Avoiding) {
      dtheta = std::copysign(std::min(std::fabs(dtheta), a.turn_remaining_rad), dtheta);
      a.turn_remaining_rad -= std::fabs(dtheta);
      if (a.turn_remaining_rad <= 1e-12) {
        a.turn_remaining_rad = 0.0;
        a.state = AgentState::Forward;
      }
    }
    const double x0 = a.pose.x, y0 = a.pose.y;
    a.pose.x += cmds[i].linear_cm_s * std::cos(a.pose.heading) * dt;
    a.pose.y += cmds[i].linear_cm_s * std::sin(a.pose.heading) * dt;
    a.pose.heading = wrap_angle(a.pose.heading + dtheta);
    a.vx = (a.pose.x - x0) / dt;
    a.vy = (a.pose.y - y0) / dt;
  }

  // Walls first, then robot pairs in index order.
  for (RobotAgent& a : world.agents) {
    const bool hit = a.pose.x < a.radius || a.pose.y < a.radius || a.pose.x > p.width_cm - a.radius ||
                     a.pose.y > p.height_cm - a.radius;
    if (!hit) continue;
    clamp_to_walls(a, p);
    world.ledger.add({frame, a.id, EventKind::CP, "wall contact"});
    begin_avoidance_turn(a, p);
  }
  for (std::size_t i = 0; i < world.agents.size(); ++i) {
    for (std::size_t j = i + 1; j < world.agents.size(); ++j) {
      RobotAgent& a = world.agents[i];
      RobotAgent& b = world.agents[j];
      double dx = b.pose.x - a.pose.x;
      double dy = b.pose.y - a.pose.y;
      double d = std::hypot(dx, dy);
      const double reach = a.radius + b.radius;
      if (d >= reach) continue;
      if (d == 0.0) {
        dx = 1.0;
        dy = 0.0;
      } else {
        dx /= d;
        dy /= d;
      }
      // Only an agent that was closing on its partner is charged with the
      // collision; being run into is not a failure.
      const bool a_toward = a.vx * dx + a.vy * dy > 0.0;
      const bool b_toward = -(b.vx * dx + b.vy * dy) > 0.0;
      const double push = (reach - d + p.contact_epsilon_cm) / 2.0;
      a.pose.x -= dx * push;
      a.pose.y -= dy * push;
      b.pose.x += dx * push;
      b.pose.y += dy * push;
      clamp_to_walls(a, p);
      clamp_to_walls(b, p);
      if (a_toward) {
        world.ledger.add({frame, a.id, EventKind::CR, "partner=" + std::to_string(b.id)});
        begin_avoidance_turn(a, p);
      }
      if (b_toward) {
        world.ledger.add({frame, b.id, EventKind::CR, "partner=" + std::to_string(a.id)});
        begin_avoidance_turn(b, p);
      }
    }
  }
  // One push can shove a robot into a third one or back off a wall; relax
  // the remaining overlaps without logging them again.
  for (int pass = 0; pass < 16; ++pass) {
    bool moved = false;
    for (std::size_t i = 0; i < world.agents.size(); ++i) {
      for (std::size_t j = i + 1; j < world.agents.size(); ++j) {
        RobotAgent& a = world.agents[i];
        RobotAgent& b = world.agents[j];
        double dx = b.pose.x - a.pose.x;
        double dy = b.pose.y - a.pose.y;
        const double d = std::hypot(dx, dy);
        const double reach = a.radius + b.radius;
        if (d >= reach) continue;
        dx = d > 0.0 ? dx / d : 1.0;
        dy = d > 0.0 ? dy / d : 0.0;
        const double push = (reach - d + p.contact_epsilon_cm) / 2.0;
        a.pose.x -= dx * push;
        a.pose.y -= dy * push;
        b.pose.x += dx * push;
        b.pose.y += dy * push;
        clamp_to_walls(a, p);
        clamp_to_walls(b, p);
        moved = true;
      }
    }
    if (!moved) break;
  }
  ++world.clock;
}

ArenaRunResult run_arena(const ArenaParams& params, const ModelConfig& model, std::uint64_t seed,
                         const StepObserver* observer) {
  ArenaWorld w = make_world(params, model, seed);
  const std::int64_t n = params.frame_count();
  for (std::int64_t k = 0; k < n; ++k) step_world(w, observer);
  ArenaRunResult r;
  r.seed = seed;
  r.variant = model.arbiter.variant;
  r.agents = params.agents;
  r.frames = n;
  r.rates = success_rates(w.ledger);
  r.ledger = std::move(w.ledger);
  return r;
}

}  // namespace looming
