#include <stdexcept>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "looming/arena.hpp"

using namespace looming;

namespace {

constexpr double kPi = std::numbers::pi;

RobotAgent agent_at(int id, double x, double y, double heading, double speed = 8.0) {
  RobotAgent a;
  a.id = id;
  a.pose = {x, y, heading};
  a.linear_speed = speed;
  a.controller_rng_seed = 1000 + static_cast<std::uint64_t>(id);
  a.rng.seed(a.controller_rng_seed);
  a.vx = speed * std::cos(heading);
  a.vy = speed * std::sin(heading);
  return a;
}

ArenaWorld kinematic_world(std::vector<RobotAgent> agents) {
  ArenaWorld w;
  w.params.vision = false;
  w.params.agents = static_cast<int>(agents.size());
  w.agents = std::move(agents);
  return w;
}

// Count of columns in the middle row showing the robot luminance.
int robot_columns(const Frame& f, double lum) {
  int n = 0;
  const int y = f.height() / 2;
  for (int x = 0; x < f.width(); ++x) {
    if (std::fabs(f(x, y) - lum) < 60.0) ++n;
  }
  return n;
}

}  // namespace

TEST_SUITE("arena") {
  TEST_CASE("success rates from counts") {
    EventLedger l;
    for (int i = 0; i < 9; ++i) l.add({0, 0, EventKind::AP, ""});
    l.add({0, 0, EventKind::CP, ""});
    auto r = success_rates(l);
    REQUIRE(r.sr1);
    CHECK(*r.sr1 == doctest::Approx(90.0));
    CHECK_FALSE(r.sr2);

    EventLedger m;
    for (int i = 0; i < 87; ++i) m.add({0, 0, EventKind::AA, ""});
    for (int i = 0; i < 10; ++i) m.add({0, 0, EventKind::AT, ""});
    for (int i = 0; i < 3; ++i) m.add({0, 0, EventKind::CR, ""});
    r = success_rates(m);
    REQUIRE(r.sr2);
    CHECK(*r.sr2 == doctest::Approx(87.0));
    CHECK_FALSE(r.sr1);

    r = success_rates(EventLedger{});
    CHECK_FALSE(r.sr1);
    CHECK_FALSE(r.sr2);
  }

  TEST_CASE("event kind names") {
    for (EventKind k : {EventKind::CR, EventKind::CP, EventKind::AA, EventKind::AT, EventKind::AP}) {
      CHECK(parse_event_kind(event_kind_name(k)) == k);
    }
    CHECK_THROWS_AS(parse_event_kind("XX"), std::invalid_argument);
    EventLedger l;
    l.add({0, 0, EventKind::AT, ""});
    l.add({0, 1, EventKind::AT, ""});
    l.add({0, 1, EventKind::CR, ""});
    const auto c = event_counts(l);
    CHECK(c[0] == 1);
    CHECK(c[3] == 2);
    CHECK(l.count(EventKind::AT) == 2);
  }

  TEST_CASE("facing a wall shows stripes and floor only") {
    ArenaWorld w;
    w.agents.push_back(agent_at(0, 35.0, 27.5, 0.0));
    const Frame f = render_camera(w, w.agents[0]);
    CHECK(f.width() == 99);
    CHECK(f.height() == 72);
    // Bottom rows are floor, the wall band sits around the horizon.
    for (int x = 0; x < f.width(); ++x) {
      CHECK(f(x, 0) == 160.0);
      CHECK(f(x, f.height() - 1) == 160.0);
    }
    int dark = 0, light = 0;
    const int y = 36;
    for (int x = 0; x < f.width(); ++x) {
      CHECK(f(x, y) >= 0.0);
      CHECK(f(x, y) <= 255.0);
      if (f(x, y) == 0.0) ++dark;
      if (f(x, y) == 255.0) ++light;
    }
    CHECK(dark > 10);
    CHECK(light > 10);

    // Perspective: stripes near the image centre span more columns than at
    // the edges, where the wall is further away.
    auto run_at = [&](int x0) {
      int a = x0, b = x0;
      while (a > 0 && (f(a - 1, y) >= 128.0) == (f(x0, y) >= 128.0)) --a;
      while (b + 1 < f.width() && (f(b + 1, y) >= 128.0) == (f(x0, y) >= 128.0)) ++b;
      return b - a + 1;
    };
    CHECK(run_at(49) > run_at(3));
  }

  TEST_CASE("rendering is a pure function of the snapshot") {
    ArenaWorld w;
    w.agents.push_back(agent_at(0, 20.0, 20.0, 0.3));
    w.agents.push_back(agent_at(1, 40.0, 25.0, 2.0));
    const Frame a = render_camera(w, w.agents[0]);
    const Frame b = render_camera(w, w.agents[0]);
    CHECK(a == b);
    for (double v : a.values()) {
      CHECK(v == std::floor(v));
    }
  }

  TEST_CASE("mirrored arena renders mirrored frames") {
    ArenaWorld w, m;
    const double W = w.params.width_cm;
    const std::vector<Pose> poses = {{20.0, 20.0, 0.4}, {41.0, 27.0, 2.5}, {55.0, 12.0, -1.2}};
    for (std::size_t i = 0; i < poses.size(); ++i) {
      const Pose& p = poses[i];
      w.agents.push_back(agent_at(static_cast<int>(i), p.x, p.y, p.heading));
      m.agents.push_back(agent_at(static_cast<int>(i), W - p.x, p.y, kPi - p.heading));
    }
    for (std::size_t i = 0; i < poses.size(); ++i) {
      const Frame a = render_camera(w, w.agents[i]);
      const Frame b = mirror_horizontal(render_camera(m, m.agents[i]));
      double worst = 0.0;
      for (std::size_t k = 0; k < a.values().size(); ++k) {
        worst = std::max(worst, std::fabs(a.values()[k] - b.values()[k]));
      }
      // Rounding of values sitting on .5 boundaries is the only slack.
      CHECK(worst <= 1.0);
    }
  }

  TEST_CASE("robot image widens as it gets closer") {
    int prev = 0;
    for (double d : {24.0, 16.0, 10.0, 6.0}) {
      ArenaWorld w;
      w.agents.push_back(agent_at(0, 10.0, 27.5, 0.0));
      w.agents.push_back(agent_at(1, 10.0 + d, 27.5, kPi));
      const int n = robot_columns(render_camera(w, w.agents[0]), w.params.camera.robot_luminance);
      CHECK(n > prev);
      prev = n;
    }
  }

  TEST_CASE("controller turns on trigger and then drives on") {
    ArenaParams p;
    RobotAgent a = agent_at(0, 30.0, 30.0, 0.0, 7.5);
    MotionCommand c = avoidance_controller(false, a, p);
    CHECK(c.linear_cm_s == 7.5);
    CHECK(c.angular_rad_s == 0.0);

    c = avoidance_controller(true, a, p);
    CHECK(a.state == AgentState::Avoiding);
    CHECK(c.linear_cm_s == 0.0);
    CHECK(std::fabs(c.angular_rad_s) == doctest::Approx(kPi));
    CHECK(a.turn_remaining_rad >= kPi / 2.0);
    CHECK(a.turn_remaining_rad <= kPi);

    // A trigger while avoiding does not restart the turn.
    const double left = a.turn_remaining_rad;
    avoidance_controller(true, a, p);
    CHECK(a.turn_remaining_rad == left);
  }

  TEST_CASE("turn draws are reproducible and in range") {
    ArenaParams p;
    RobotAgent a = agent_at(0, 30.0, 30.0, 0.0);
    RobotAgent b = agent_at(0, 30.0, 30.0, 0.0);
    int left = 0;
    for (int i = 0; i < 200; ++i) {
      begin_avoidance_turn(a, p);
      begin_avoidance_turn(b, p);
      CHECK(a.turn_remaining_rad == b.turn_remaining_rad);
      CHECK(a.turn_direction == b.turn_direction);
      CHECK(a.turn_remaining_rad >= kPi / 2.0);
      CHECK(a.turn_remaining_rad <= kPi);
      if (a.turn_direction > 0) ++left;
    }
    CHECK(left > 60);
    CHECK(left < 140);
  }

  TEST_CASE("head-on pair collides at the predicted frame") {
    ArenaWorld w = kinematic_world({agent_at(0, 20.0, 27.5, 0.0, 8.0), agent_at(1, 50.0, 27.5, kPi, 6.0)});
    // Separation after k steps is 30 - 14 k / 30; contact once it drops
    // below two radii.
    int k = 1;
    while (30.0 - 14.0 * k / 30.0 >= 4.0) ++k;
    for (int i = 0; i < k; ++i) step_world(w);
    CHECK(w.ledger.count(EventKind::CR) == 2);
    for (const auto& e : w.ledger.events) CHECK(e.frame == k - 1);
    CHECK(std::hypot(w.agents[1].pose.x - w.agents[0].pose.x, w.agents[1].pose.y - w.agents[0].pose.y) >= 4.0);
    CHECK(w.agents[0].state == AgentState::Avoiding);
  }

  TEST_CASE("only the closing agent is charged") {
    // Agent 1 sits still, agent 0 drives into it.
    ArenaWorld w = kinematic_world({agent_at(0, 20.0, 27.5, 0.0, 10.0), agent_at(1, 26.0, 27.5, kPi / 2.0, 0.0)});
    for (int i = 0; i < 30 && w.ledger.events.empty(); ++i) step_world(w);
    REQUIRE(w.ledger.events.size() == 1);
    CHECK(w.ledger.events[0].agent_id == 0);
    CHECK(w.ledger.events[0].kind == EventKind::CR);
  }

  TEST_CASE("blind agent hits a wall") {
    ArenaWorld w = kinematic_world({agent_at(0, 60.0, 27.5, 0.0, 10.0)});
    for (int i = 0; i < 60; ++i) step_world(w);
    REQUIRE(w.ledger.count(EventKind::CP) >= 1);
    CHECK(w.ledger.events[0].frame == 24);
    CHECK(w.agents[0].pose.x <= w.params.width_cm - w.agents[0].radius);
  }

  TEST_CASE("empty arena just ticks") {
    ArenaWorld w = kinematic_world({});
    for (int i = 0; i < 10; ++i) step_world(w);
    CHECK(w.clock == 10);
    CHECK(w.ledger.events.empty());
  }

  TEST_CASE("trigger classification") {
    ArenaParams p;
    SUBCASE("nothing in view") {
      ArenaWorld w;
      w.agents.push_back(agent_at(0, 30.0, 30.0, 0.0));
      w.agents.push_back(agent_at(1, 20.0, 30.0, 0.0));  // behind
      TriggerContext ctx;
      CHECK(classify_event(w, w.agents[0], &ctx) == EventKind::AP);
      CHECK_FALSE(ctx.partner);
    }
    SUBCASE("out of range") {
      ArenaWorld w;
      w.agents.push_back(agent_at(0, 10.0, 30.0, 0.0));
      w.agents.push_back(agent_at(1, 36.0, 30.0, kPi));
      CHECK(classify_event(w, w.agents[0]) == EventKind::AP);
    }
    SUBCASE("closing head-on") {
      ArenaWorld w;
      w.agents.push_back(agent_at(0, 20.0, 30.0, 0.0));
      w.agents.push_back(agent_at(1, 35.0, 30.0, kPi));
      TriggerContext ctx;
      CHECK(classify_event(w, w.agents[0], &ctx) == EventKind::AA);
      REQUIRE(ctx.partner);
      CHECK(*ctx.partner == 1);
      CHECK(ctx.range_cm == doctest::Approx(15.0));
      CHECK(ctx.closing_cm_s == doctest::Approx(16.0));
    }
    SUBCASE("crossing with no radial closing speed") {
      ArenaWorld w;
      w.agents.push_back(agent_at(0, 20.0, 30.0, 0.0, 0.0));
      w.agents.push_back(agent_at(1, 35.0, 30.0, kPi / 2.0, 8.0));
      TriggerContext ctx;
      CHECK(classify_event(w, w.agents[0], &ctx) == EventKind::AT);
      CHECK(ctx.closing_cm_s == doctest::Approx(0.0));
    }
    SUBCASE("closing but outside the cone") {
      ArenaWorld w;
      w.agents.push_back(agent_at(0, 20.0, 30.0, 0.0));
      const double b = 30.0 * std::numbers::pi / 180.0;
      w.agents.push_back(agent_at(1, 20.0 + 15.0 * std::cos(b), 30.0 + 15.0 * std::sin(b), kPi + b));
      CHECK(classify_event(w, w.agents[0]) == EventKind::AT);
    }
    SUBCASE("nearest robot decides") {
      ArenaWorld w;
      w.agents.push_back(agent_at(0, 20.0, 30.0, 0.0));
      w.agents.push_back(agent_at(1, 40.0, 30.0, kPi));
      w.agents.push_back(agent_at(2, 30.0, 30.0, kPi / 2.0, 0.0));
      TriggerContext ctx;
      classify_event(w, w.agents[0], &ctx);
      REQUIRE(ctx.partner);
      CHECK(*ctx.partner == 2);
    }
  }

  TEST_CASE("placement respects clearance") {
    ArenaParams p;
    p.vision = false;
    p.agents = 7;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      ArenaWorld w = make_world(p, ModelConfig::defaults(), seed);
      REQUIRE(w.agents.size() == 7);
      for (std::size_t i = 0; i < w.agents.size(); ++i) {
        const auto& a = w.agents[i];
        CHECK(a.linear_speed >= p.min_speed_cm_s);
        CHECK(a.linear_speed <= p.max_speed_cm_s);
        CHECK(a.pose.x >= a.radius);
        CHECK(a.pose.y >= a.radius);
        for (std::size_t j = i + 1; j < w.agents.size(); ++j) {
          const auto& b = w.agents[j];
          CHECK(std::hypot(a.pose.x - b.pose.x, a.pose.y - b.pose.y) >= 2.0 * p.robot_radius_cm + p.placement_clearance_cm);
        }
      }
    }
    p.agents = 400;
    CHECK_THROWS_AS(make_world(p, ModelConfig::defaults(), 0), ConfigError);
  }

  TEST_CASE("kinematic invariants over a long run") {
    ArenaParams p;
    p.vision = false;
    p.agents = 7;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      ArenaWorld w = make_world(p, ModelConfig::defaults(), seed);
      for (int k = 0; k < 3000; ++k) {
        step_world(w);
        for (std::size_t i = 0; i < w.agents.size(); ++i) {
          const auto& a = w.agents[i];
          CHECK(a.pose.x >= a.radius);
          CHECK(a.pose.x <= p.width_cm - a.radius);
          CHECK(a.pose.y >= a.radius);
          CHECK(a.pose.y <= p.height_cm - a.radius);
          CHECK(std::hypot(a.vx, a.vy) <= 35.0);
          CHECK(std::fabs(a.pose.heading) <= kPi + 1e-12);
          for (std::size_t j = i + 1; j < w.agents.size(); ++j) {
            const auto& b = w.agents[j];
            CHECK(std::hypot(a.pose.x - b.pose.x, a.pose.y - b.pose.y) >= a.radius + b.radius - 1e-9);
          }
        }
      }
      // Blind robots never avoid anything on purpose.
      CHECK(w.ledger.count(EventKind::AA) == 0);
      CHECK(w.ledger.count(EventKind::AT) == 0);
      CHECK(w.ledger.count(EventKind::AP) == 0);
      CHECK(w.ledger.count(EventKind::CP) > 0);
    }
  }

  TEST_CASE("removing the translation veto never removes target avoidances") {
    ArenaParams p;
    p.duration_s = 30.0;
    ModelConfig hybrid = ModelConfig::defaults();
    ModelConfig ablated = hybrid;
    ablated.arbiter.variant = ModelVariant::LgmdsOnly;
    for (std::uint64_t seed : {1u, 2u}) {
      const auto a = run_arena(p, hybrid, seed);
      const auto b = run_arena(p, ablated, seed);
      CHECK(b.ledger.count(EventKind::AT) >= a.ledger.count(EventKind::AT));
    }
  }

  TEST_CASE("seeded runs repeat exactly") {
    ArenaParams p;
    p.agents = 2;
    p.duration_s = 3.0;
    ModelConfig m = ModelConfig::defaults();
    const ArenaRunResult a = run_arena(p, m, 11);
    const ArenaRunResult b = run_arena(p, m, 11);
    CHECK(a.frames == 90);
    REQUIRE(a.ledger.events.size() == b.ledger.events.size());
    for (std::size_t i = 0; i < a.ledger.events.size(); ++i) {
      CHECK(a.ledger.events[i].frame == b.ledger.events[i].frame);
      CHECK(a.ledger.events[i].agent_id == b.ledger.events[i].agent_id);
      CHECK(a.ledger.events[i].kind == b.ledger.events[i].kind);
      CHECK(a.ledger.events[i].context == b.ledger.events[i].context);
    }
  }

  TEST_CASE("observer sees every agent frame") {
    ArenaParams p;
    p.agents = 3;
    p.duration_s = 0.5;
    int frames = 0, results = 0;
    StepObserver obs;
    obs.on_frame = [&](const RobotAgent&, const Frame& f) {
      ++frames;
      CHECK(f.width() == p.camera.width);
    };
    obs.on_result = [&](const RobotAgent&, const FrameResult&) { ++results; };
    run_arena(p, ModelConfig::defaults(), 1, &obs);
    CHECK(frames == 45);
    CHECK(results == 45);
  }

  TEST_CASE("arena params keys") {
    ArenaParams p;
    p.agents = 7;
    p.duration_s = 120.0;
    p.vision = false;
    p.camera.rays_per_column = 2;
    const ArenaParams q = ArenaParams::from_key_values(p.to_key_values());
    CHECK(q.agents == 7);
    CHECK(q.duration_s == 120.0);
    CHECK_FALSE(q.vision);
    CHECK(q.camera.rays_per_column == 2);
    CHECK(q.frame_count() == 3600);

    KeyValues kv = p.to_key_values();
    kv["arena.bogus"] = "1";
    CHECK_THROWS_AS(ArenaParams::from_key_values(kv), ConfigError);
    kv = p.to_key_values();
    kv["arena.vision"] = "maybe";
    CHECK_THROWS_AS(ArenaParams::from_key_values(kv), ConfigError);

    ArenaParams bad;
    bad.min_speed_cm_s = 12.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = ArenaParams{};
    bad.time_step_s = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    try {
      bad.validate();
    } catch (const ConfigError& e) {
      CHECK(e.field() == "arena.time_step_s");
    }
  }
}
