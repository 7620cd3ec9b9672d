#include "facefuse/scenarios.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>

#include "facefuse/errors.hpp"
#include "facefuse/face_pipeline.hpp"
#include "facefuse/fusion_engine.hpp"
#include "facefuse/motion_pipeline.hpp"
#include "facefuse/rng.hpp"

namespace facefuse {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr int kImuHz = 60;
constexpr int kFaceHz = 16;

// Noise magnitudes shared by every scenario.
const ScenarioParams kNoiseDefaults{
    {"sigma_g", 0.0}, {"sigma_dps", 0.0}, {"sigma_px", 0.0}, {"sigma_deg", 0.0}};

struct DevicePose {
  double tilt_deg = 90.0;
  double roll_deg = 0.0;
  double lateral_g = 0.0;  // extra device-x acceleration (swipes)
};

struct FaceSpec {
  double fx = 240.0;
  double fy = 320.0;
  double fs = 100.0;
  double fa = 0.0;
};

/// Continuous description of one scenario; sampled onto the IMU and face
/// clocks by render().
struct Script {
  Millis duration_ms = 2000;
  std::function<DevicePose(Millis)> pose = [](Millis) { return DevicePose{}; };
  std::function<std::optional<FaceSpec>(Millis)> face = [](Millis) { return FaceSpec{}; };
  std::vector<std::pair<Millis, TouchSample>> touches;
};

double lerp(double a, double b, double u) { return a + (b - a) * std::clamp(u, 0.0, 1.0); }

double ramp(Millis t, Millis start, Millis length) {
  if (length <= 0) return t >= start ? 1.0 : 0.0;
  return std::clamp(static_cast<double>(t - start) / static_cast<double>(length), 0.0, 1.0);
}

/// Scale at the middle of a face-scale level for the default range.
double level_center_scale(double level) {
  const FaceConfig c;
  const double w = (c.scale_max - c.scale_min) / kScaleLevels;
  return c.scale_max - (level + 0.5) * w;
}

Vec3 accel_for(const DevicePose& p) {
  // Up direction in the device frame; the accelerometer reads its negative.
  const double st = std::sin(p.tilt_deg * kDegToRad);
  const Vec3 up{st * std::sin(p.roll_deg * kDegToRad), st * std::cos(p.roll_deg * kDegToRad),
                std::cos(p.tilt_deg * kDegToRad)};
  return {-up.x + p.lateral_g, -up.y, -up.z};
}

void add_touch(Script& s, Millis t, TouchPhase phase, double x, double y, int id = 0) {
  s.touches.push_back({t, TouchSample{id, phase, {x, y}}});
}

/// Finger down at `down`, held (optionally drifting along x), up at `up`.
void add_hold(Script& s, Millis down, Millis up, Vec2 at, double drift_x) {
  add_touch(s, down, TouchPhase::Began, at.x, at.y);
  for (std::int64_t k = 0;; ++k) {
    const Millis t = tick_time(k, kImuHz);
    if (t <= down) continue;
    if (t >= up) break;
    add_touch(s, t, TouchPhase::Moved, at.x + drift_x * ramp(t, down, up - down), at.y);
  }
  add_touch(s, up, TouchPhase::Ended, at.x + drift_x, at.y);
}

/// Accelerate-then-brake lateral pulse pair starting at `at`.
double swipe_profile(Millis t, Millis at, double direction) {
  if (t >= at && t < at + 100) return 1.0 * direction;
  if (t >= at + 150 && t < at + 250) return -0.8 * direction;
  return 0.0;
}

struct Params {
  const ScenarioParams& p;
  double operator()(const char* key) const { return p.at(key); }
  Millis ms(const char* key) const { return static_cast<Millis>(std::llround(p.at(key))); }
};

Script face_approach(const Params& p) {
  Script s;
  s.duration_ms = p.ms("duration_ms");
  const Millis start = p.ms("approach_start_ms");
  const Millis length = p.ms("approach_ms");
  const double from = p("scale_from"), to = p("scale_to");
  s.face = [=](Millis t) {
    FaceSpec f;
    f.fs = lerp(from, to, ramp(t, start, length));
    return std::optional<FaceSpec>(f);
  };
  // One finger scrolling upward the whole time keeps scrolling active.
  const Millis down = 300, up = s.duration_ms - 200;
  add_touch(s, down, TouchPhase::Began, 320, 900);
  double y = 900;
  for (std::int64_t k = 0;; ++k) {
    const Millis t = tick_time(k, kImuHz);
    if (t <= down) continue;
    if (t >= up) break;
    y -= p("scroll_px_per_tick");
    add_touch(s, t, TouchPhase::Moved, 320, y);
  }
  add_touch(s, up, TouchPhase::Ended, 320, y);
  return s;
}

Script lean(const Params& p, double side) {
  Script s;
  s.duration_ms = p.ms("duration_ms");
  const Millis start = p.ms("start_ms");
  const Millis hold = p.ms("hold_ms");
  const double amp = p("amplitude"), offset = p("offset_px");
  s.face = [=](Millis t) {
    FaceSpec f;
    if (t >= start && t < start + hold) {
      f.fa = side * amp;
      f.fx = 240.0 + side * offset;
    }
    return std::optional<FaceSpec>(f);
  };
  return s;
}

Script tilt_to_3d(const Params& p) {
  Script s;
  s.duration_ms = p.ms("duration_ms");
  const Millis start = p.ms("start_ms"), length = p.ms("ramp_ms");
  const double from = p("tilt_from"), to = p("tilt_to");
  s.pose = [=](Millis t) {
    DevicePose d;
    d.tilt_deg = lerp(from, to, ramp(t, start, length));
    return d;
  };
  return s;
}

void face_toggle(Script& s, const Params& p) {
  if (p("face") == 0.0) s.face = [](Millis) { return std::optional<FaceSpec>(); };
}

Script phone_swipe(const Params& p) {
  Script s;
  s.duration_ms = p.ms("duration_ms");
  const Millis at = p.ms("swipe_at_ms");
  const double dir = p("direction") >= 0 ? 1.0 : -1.0;
  s.pose = [=](Millis t) {
    DevicePose d;
    d.lateral_g = swipe_profile(t, at, dir);
    return d;
  };
  face_toggle(s, p);
  return s;
}

Script hold_and_swipe(const Params& p) {
  Script s = phone_swipe(p);
  const Millis at = p.ms("swipe_at_ms");
  add_hold(s, at - 300, at + 600, {320, 600}, p("drift_px"));
  return s;
}

/// Finger lands before the swipe and slides `travel_px` in the flick
/// direction during its accelerate pulse, releasing at speed.
void add_flick(Script& s, Millis at, double dir, double travel) {
  const double x0 = dir > 0 ? 200.0 : 440.0;
  const double y = 600.0;
  const Millis down = at - 50;
  add_touch(s, down, TouchPhase::Began, x0, y);
  std::int64_t k = 0;
  while (tick_time(k, kImuHz) < at + 30) ++k;
  const Millis t0 = tick_time(k, kImuHz);
  const Millis t1 = t0 + 100;
  for (;; ++k) {
    const Millis t = tick_time(k, kImuHz);
    const double x = x0 + dir * travel * ramp(t, t0, t1 - t0);
    if (t >= t1) {
      add_touch(s, t, TouchPhase::Ended, x, y);
      break;
    }
    add_touch(s, t, TouchPhase::Moved, x, y);
  }
}

Script flick_and_swipe(const Params& p) {
  Script s = phone_swipe(p);
  const double dir = p("direction") >= 0 ? 1.0 : -1.0;
  add_flick(s, p.ms("swipe_at_ms"), dir, p("travel_px"));
  return s;
}

Script normal_flick(const Params& p) {
  Script s;
  s.duration_ms = p.ms("duration_ms");
  const double dir = p("direction") >= 0 ? 1.0 : -1.0;
  add_flick(s, p.ms("flick_at_ms"), dir, p("travel_px"));
  face_toggle(s, p);
  return s;
}

Script menu_dwell(const Params& p) {
  Script s;
  s.duration_ms = p.ms("duration_ms");
  const double theta = p("theta");
  s.pose = [=](Millis) {
    DevicePose d;
    d.roll_deg = wrap_degrees(theta);
    return d;
  };
  return s;
}

Script zoom(const Params& p, double sign) {
  Script s;
  s.duration_ms = p.ms("duration_ms");
  const double levels = p("levels");
  const double from = level_center_scale(3.0);
  const double to = level_center_scale(3.0 - sign * levels);
  const Millis start = 800, length = 400;
  s.face = [=](Millis t) {
    FaceSpec f;
    f.fs = lerp(from, to, ramp(t, start, length));
    return std::optional<FaceSpec>(f);
  };
  if (p("finger") != 0.0) add_hold(s, 500, s.duration_ms - 300, {320, 568}, 0.0);
  return s;
}

Script rotate_device(const Params& p) {
  Script s;
  s.duration_ms = p.ms("duration_ms");
  const double degrees = p("degrees");
  const Millis start = 800, length = 1000;
  s.pose = [=](Millis t) {
    DevicePose d;
    d.roll_deg = degrees * ramp(t, start, length);
    return d;
  };
  if (p("finger") != 0.0) add_hold(s, 500, s.duration_ms - 300, {320, 568}, 0.0);
  return s;
}

struct Entry {
  ScenarioInfo info;
  std::function<Script(const Params&)> build;
};

ScenarioParams with_noise(ScenarioParams p) {
  p.insert(kNoiseDefaults.begin(), kNoiseDefaults.end());
  return p;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = [] {
    const ScenarioParams swipe{{"duration_ms", 2000}, {"swipe_at_ms", 1000}, {"direction", 1}, {"face", 1}};
    auto swipe_with = [&](ScenarioParams extra) {
      ScenarioParams p = swipe;
      p.insert(extra.begin(), extra.end());
      return with_noise(p);
    };
    std::vector<Entry> v;
    v.push_back({{"face_approach", "finger scrolling while the face approaches the screen",
                  with_noise({{"duration_ms", 2500}, {"approach_start_ms", 500}, {"approach_ms", 1500},
                              {"scale_from", 90}, {"scale_to", 150}, {"scroll_px_per_tick", 2}}),
                  {"scroll", "RATE_CHANGED", "rate", "0.250000", 0}},
                 face_approach});
    const ScenarioParams lean_defaults{{"duration_ms", 2000}, {"start_ms", 500}, {"hold_ms", 1000},
                                       {"amplitude", 20}, {"offset_px", 90}};
    v.push_back({{"lean_left", "head leans left for hold_ms", with_noise(lean_defaults),
                  {"text_edit", "CURSOR_MOVED", "direction", "LEFT", 5}},
                 [](const Params& p) { return lean(p, -1.0); }});
    v.push_back({{"lean_right", "head leans right for hold_ms", with_noise(lean_defaults),
                  {"text_edit", "CURSOR_MOVED", "direction", "RIGHT", 5}},
                 [](const Params& p) { return lean(p, 1.0); }});
    v.push_back({{"tilt_to_3d", "upright phone tilted back through 45 degrees",
                  with_noise({{"duration_ms", 2500}, {"start_ms", 500}, {"ramp_ms", 1000},
                              {"tilt_from", 90}, {"tilt_to", 40}}),
                  {"map_viewer", "VIEW_MODE", "mode", "3D", 1}},
                 tilt_to_3d});
    v.push_back({{"phone_swipe", "lateral phone jab with no finger on the screen", swipe_with({}),
                  {"flick", "CLASS", "kind", "PhoneSwipe", 1}},
                 phone_swipe});
    v.push_back({{"hold_and_swipe", "phone jab while a finger rests on the screen",
                  swipe_with({{"drift_px", 12}}), {"flick", "CLASS", "kind", "HoldAndSwipe", 1}},
                 hold_and_swipe});
    v.push_back({{"flick_and_swipe", "finger flick synchronized with a phone jab",
                  swipe_with({{"travel_px", 120}}), {"flick", "CLASS", "kind", "FlickAndSwipe", 1}},
                 flick_and_swipe});
    v.push_back({{"normal_flick", "plain finger flick, phone still",
                  with_noise({{"duration_ms", 2000}, {"flick_at_ms", 1000}, {"direction", 1},
                              {"face", 1}, {"travel_px", 120}}),
                  {"flick", "CLASS", "kind", "NormalFlick", 1}},
                 normal_flick});
    v.push_back({{"menu_dwell", "relative face-device angle held at theta",
                  with_noise({{"duration_ms", 2500}, {"theta", 90}}),
                  {"touch_free_menu", "SELECTED", "item", "2", 1}},
                 menu_dwell});
    v.push_back({{"zoom_in", "finger held while the face comes closer by `levels`",
                  with_noise({{"duration_ms", 2000}, {"levels", 1}, {"finger", 1}}),
                  {"navigator", "ZOOM", "factor", "1.250000", 1}},
                 [](const Params& p) { return zoom(p, 1.0); }});
    v.push_back({{"zoom_out", "finger held while the face moves away by `levels`",
                  with_noise({{"duration_ms", 2000}, {"levels", 1}, {"finger", 1}}),
                  {"navigator", "ZOOM", "factor", "0.800000", 1}},
                 [](const Params& p) { return zoom(p, -1.0); }});
    v.push_back({{"rotate_device", "finger held while the phone rolls by `degrees`",
                  with_noise({{"duration_ms", 2500}, {"degrees", 36}, {"finger", 1}}),
                  {"navigator", "ROTATE", "degrees", "-36.000000", 1}},
                 rotate_device});
    return v;
  }();
  return list;
}

FaceObservation observe(const FaceSpec& f, Xoshiro256& rng, double sigma_px, double sigma_deg) {
  FaceObservation o;
  o.detected = true;
  o.center.x = quantize6(std::clamp(f.fx + rng.gaussian(sigma_px), 0.0, 479.0));
  o.center.y = quantize6(std::clamp(f.fy + rng.gaussian(sigma_px), 0.0, 639.0));
  o.scale = quantize6(std::max(1.0, f.fs + rng.gaussian(sigma_px)));
  o.angle_deg = quantize6(std::clamp(f.fa + rng.gaussian(sigma_deg), -90.0, 90.0));
  o.rotation_class = nearest_rotation_bucket(o.angle_deg);
  return o;
}

std::string describe(const Scenario& s, const ScenarioParams& params) {
  std::string text = "scenario=" + s.name + " seed=" + std::to_string(s.seed) + " rng=" + Xoshiro256::kName;
  for (const auto& [k, v] : params) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " %s=%g", k.c_str(), v);
    text += buf;
  }
  return text;
}

}  // namespace

const std::vector<ScenarioInfo>& builtin_scenarios() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

void parse_param(std::string_view text, ScenarioParams& params) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw Error(ErrorCode::BadConfig, "parameter must be key=value: " + std::string(text));
  }
  const std::string_view value = text.substr(eq + 1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::BadConfig, "parameter value must be numeric: " + std::string(text));
  }
  params[std::string(text.substr(0, eq))] = v;
}

Trace generate(const Scenario& scenario) {
  const auto& list = entries();
  const auto it = std::find_if(list.begin(), list.end(),
                               [&](const Entry& e) { return e.info.name == scenario.name; });
  if (it == list.end()) throw Error(ErrorCode::UnknownScenario, "unknown scenario " + scenario.name);

  ScenarioParams params = it->info.defaults;
  for (const auto& [k, v] : scenario.params) {
    if (!params.contains(k)) {
      throw Error(ErrorCode::BadConfig, "scenario " + scenario.name + " has no parameter " + k);
    }
    params[k] = v;
  }
  const Script script = it->build(Params{params});

  Xoshiro256 rng(scenario.seed);
  const double sigma_g = params.at("sigma_g"), sigma_dps = params.at("sigma_dps");
  const double sigma_px = params.at("sigma_px"), sigma_deg = params.at("sigma_deg");

  Trace trace;
  trace.header.generator = describe(scenario, params);

  std::optional<DevicePose> prev_pose;
  Millis prev_t = 0;
  for (std::int64_t k = 0;; ++k) {
    const Millis t = tick_time(k, kImuHz);
    if (t >= script.duration_ms) break;
    const DevicePose pose = script.pose(t);
    Vec3 gyro;
    if (prev_pose && t > prev_t) {
      const double dt = static_cast<double>(t - prev_t) / 1000.0;
      gyro.x = -(pose.tilt_deg - prev_pose->tilt_deg) / dt;
      gyro.z = wrap_degrees(pose.roll_deg - prev_pose->roll_deg) / dt;
    }
    prev_pose = pose;
    prev_t = t;
    Vec3 a = accel_for(pose);
    ImuSample imu;
    imu.accel = {quantize6(a.x + rng.gaussian(sigma_g)), quantize6(a.y + rng.gaussian(sigma_g)),
                 quantize6(a.z + rng.gaussian(sigma_g))};
    imu.gyro = {quantize6(gyro.x + rng.gaussian(sigma_dps)), quantize6(gyro.y + rng.gaussian(sigma_dps)),
                quantize6(gyro.z + rng.gaussian(sigma_dps))};
    trace.frames.push_back({t, imu});
  }
  for (std::int64_t k = 0;; ++k) {
    const Millis t = tick_time(k, kFaceHz);
    if (t >= script.duration_ms) break;
    const auto spec = script.face(t);
    trace.frames.push_back({t, spec ? observe(*spec, rng, sigma_px, sigma_deg) : FaceObservation{}});
  }
  for (const auto& [t, touch] : script.touches) {
    TouchSample q = touch;
    q.position = {quantize6(touch.position.x), quantize6(touch.position.y)};
    trace.frames.push_back({t, q});
  }
  std::stable_sort(trace.frames.begin(), trace.frames.end(), frame_order_less);
  return trace;
}

}  // namespace facefuse
