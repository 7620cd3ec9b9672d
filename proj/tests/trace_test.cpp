#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <set>

#include "facefuse/errors.hpp"
#include "facefuse/rng.hpp"
#include "facefuse/scenarios.hpp"
#include "test_support.hpp"

using namespace facefuse;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Protocol;
}

std::size_t line_of(const std::string& text) {
  try {
    parse_trace(text);
  } catch (const LineError& e) {
    return e.line();
  }
  return 0;
}

double tilt_of(const Vec3& a) {
  return std::acos(-a.z / std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z)) * 180.0 / ft::kPi;
}

}  // namespace

// ---------------------------------------------------------------- trace text

TEST_CASE("frame lines parse") {
  auto imu = parse_frame_line("0 IMU 0.000000 -1.000000 0.000000 0 0 0", 1);
  REQUIRE(imu);
  CHECK(imu->t == 0);
  const auto& s = std::get<ImuSample>(imu->payload);
  CHECK(s.accel.y == -1.0);
  CHECK(s.gyro.z == 0.0);

  auto face = parse_frame_line("16 FACE DET 240 320 100 0.0 0", 1);
  REQUIRE(face);
  const auto& f = std::get<FaceObservation>(face->payload);
  CHECK(f.detected);
  CHECK(f.center.x == 240);
  CHECK(f.scale == 100);

  auto touch = parse_frame_line("33 TOUCH 0 BEGAN 10.5 20", 1);
  REQUIRE(touch);
  CHECK(std::get<TouchSample>(touch->payload).phase == TouchPhase::Began);

  CHECK_FALSE(parse_frame_line("   ", 1));
  CHECK_FALSE(parse_frame_line("# just a note", 1));
  CHECK(std::get<FaceObservation>(parse_frame_line("5 FACE NONE", 1)->payload).detected == false);
}

TEST_CASE("malformed lines report their line number") {
  CHECK(code_of([] { parse_trace("16 FACE DET 240"); }) == ErrorCode::ParseError);
  CHECK(line_of("16 FACE DET 240") == 1);
  CHECK(line_of("# facefuse-trace 1\n0 IMU 0 -1 0 0 0 0\n\n16 IMU 0 -1 x 0 0 0\n") == 4);
  CHECK(line_of("0 GPS 1 2") == 1);
  CHECK(line_of("0 TOUCH 0 WIGGLE 1 2") == 1);
  CHECK(line_of("0 IMU 0 -1 0 0 0 nan") == 1);
  CHECK(line_of("0 IMU 0 -1 0 0 0 0\n# screen 100 100\n") == 2);
  CHECK(line_of("# facefuse-trace 9\n") == 1);
  CHECK(line_of("# set novalue\n") == 1);
}

TEST_CASE("invalid frames are validation errors with line numbers") {
  const std::string text = "0 IMU 0 -1 0 0 0 0\n16 TOUCH 0 MOVED 1 1\n";
  try {
    parse_trace(text);
    FAIL("expected a validation error");
  } catch (const LineError& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
    CHECK(e.line() == 2);
  }
  CHECK_NOTHROW(parse_trace(text, false));
  CHECK(line_of("10 IMU 0 -1 0 0 0 0\n5 IMU 0 -1 0 0 0 0\n") == 2);
  CHECK(line_of("0 TOUCH 0 BEGAN 5000 1\n") == 1);
}

TEST_CASE("header directives") {
  const auto t = parse_trace(
      "# facefuse-trace 1\n# screen 800 600\n# camera 320 240\n# generator hand written\n"
      "# set touch_free_menu.timeout_ms=3000\n# a comment\n0 IMU 0 -1 0 0 0 0\n");
  CHECK(t.header.screen.width == 800);
  CHECK(t.header.camera.height == 240);
  CHECK(t.header.generator == "hand written");
  REQUIRE(t.header.overrides.size() == 1);
  CHECK(t.header.overrides[0].second == "3000");
  CHECK(t.frames.size() == 1);
}

TEST_CASE("render then parse is the identity") {
  for (const auto& info : builtin_scenarios()) {
    Scenario sc{info.name, {{"sigma_g", 0.05}, {"sigma_px", 3}, {"sigma_deg", 2}}, 7};
    const Trace t = generate(sc);
    const std::string text = render_trace(t);
    CHECK(render_trace(parse_trace(text)) == text);
  }
}

TEST_CASE("quantize6 rounds to six places without negative zero") {
  CHECK(quantize6(1.23456749) == 1.234567);
  CHECK(quantize6(1.2345675001) == 1.234568);
  CHECK(std::signbit(quantize6(-1e-9)) == false);
}

// ---------------------------------------------------------------- rng

namespace {

/// Reference xoshiro256** seeded from splitmix64, written out from the
/// published algorithm.
struct RefRng {
  std::uint64_t s[4];
  explicit RefRng(std::uint64_t seed) {
    for (auto& w : s) {
      seed += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = seed;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      w = z ^ (z >> 31);
    }
  }
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t next() {
    const std::uint64_t r = rotl(s[1] * 5, 7) * 9, t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return r;
  }
};

}  // namespace

TEST_CASE("rng matches the reference generator") {
  CHECK(RefRng(0).s[0] == 0xe220a8397b1dcdafULL);
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xffffffffffffffffULL}) {
    Xoshiro256 a(seed);
    RefRng b(seed);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next() == b.next());
  }
}

TEST_CASE("rng uniforms and normals have the right moments") {
  Xoshiro256 r(9);
  double su = 0, sg = 0, sg2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    su += u;
  }
  for (int i = 0; i < n; ++i) {
    const double g = r.gaussian(2.0);
    sg += g;
    sg2 += g * g;
  }
  CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(sg / n) < 0.02);
  CHECK(std::sqrt(sg2 / n) == doctest::Approx(2.0).epsilon(0.01));
}

// ---------------------------------------------------------------- scenarios

TEST_CASE("generation is deterministic per seed") {
  const Scenario a{"menu_dwell", {{"sigma_g", 0.05}, {"sigma_px", 3}}, 5};
  CHECK(render_trace(generate(a)) == render_trace(generate(a)));
  Scenario b = a;
  b.seed = 6;
  CHECK(render_trace(generate(a)) != render_trace(generate(b)));
}

TEST_CASE("generated traces are valid and ordered") {
  for (const auto& info : builtin_scenarios()) {
    const Trace t = generate({info.name, {}, 1});
    FrameValidator v(t.header.screen, t.header.camera);
    for (const auto& f : t.frames) REQUIRE_NOTHROW(v.validate(f));
    CHECK(t.header.generator.find("scenario=" + info.name) != std::string::npos);
  }
}

TEST_CASE("unknown scenarios and params are rejected") {
  CHECK(code_of([] { generate({"moonwalk", {}, 0}); }) == ErrorCode::UnknownScenario);
  CHECK(code_of([] { generate({"lean_left", {{"nope", 1}}, 0}); }) == ErrorCode::BadConfig);
  ScenarioParams p;
  CHECK(code_of([&] { parse_param("amplitude", p); }) == ErrorCode::BadConfig);
  CHECK(code_of([&] { parse_param("amplitude=abc", p); }) == ErrorCode::BadConfig);
  parse_param("amplitude=25", p);
  CHECK(p.at("amplitude") == 25);
}

TEST_CASE("lean amplitude sets the face angle peak") {
  const Trace t = generate({"lean_right", {{"amplitude", 25}}, 0});
  double peak = 0;
  for (const auto& f : t.frames) {
    if (const auto* o = std::get_if<FaceObservation>(&f.payload); o && o->detected) {
      peak = std::max(peak, std::abs(o->angle_deg));
    }
  }
  CHECK(peak == doctest::Approx(25).epsilon(1e-6));
}

TEST_CASE("tilt_to_3d crosses 45 degrees once") {
  const Trace t = generate({"tilt_to_3d", {}, 0});
  int crossings = 0;
  std::optional<bool> above;
  for (const auto& f : t.frames) {
    if (const auto* s = std::get_if<ImuSample>(&f.payload)) {
      const bool now = tilt_of(s->accel) > 45.0;
      if (above && *above != now) ++crossings;
      above = now;
    }
  }
  CHECK(crossings == 1);
}

TEST_CASE("every scenario produces its expected event without noise") {
  for (const auto& info : builtin_scenarios()) {
    CAPTURE(info.name);
    const auto events = ft::run_events(generate({info.name, {}, 0}));
    const auto& x = info.expected;
    int hits = 0;
    for (const auto& e : ft::filter(events, x.technique, x.kind)) {
      if (x.key.empty() || ft::str(e, x.key) == x.value) ++hits;
    }
    if (x.count > 0) {
      CHECK(hits == x.count);
    } else {
      CHECK(hits >= 1);
    }
  }
}

TEST_CASE("flick scenarios produce one class each") {
  for (const std::string name : {"normal_flick", "phone_swipe", "hold_and_swipe", "flick_and_swipe"}) {
    CAPTURE(name);
    const auto events = ft::run_events(generate({name, {}, 0}), ft::only({"flick"}));
    CHECK(events.size() == 1);
  }
}

// ---------------------------------------------------------------- config

TEST_CASE("config parsing") {
  const auto c = parse_config(R"({"touch_free_menu": {"timeout_ms": 3000}, "mirror_camera": false,
                                  "techniques": ["scroll", "navigator"], "state_hz": 10})");
  CHECK(c.techniques.touch_free_menu.timeout_ms == 3000);
  CHECK_FALSE(c.engine.mirror_camera);
  CHECK(c.enabled == std::vector<std::string>{"scroll", "navigator"});
  CHECK(c.state_hz == 10);
  CHECK(parse_config("{}").enabled == builtin_technique_ids());
}

TEST_CASE("bad config is rejected") {
  for (const char* text : {"{", "[]", R"({"nope": 1})", R"({"face": {"nope": 1}})",
                           R"({"touch_free_menu": {"timeout_ms": "soon"}})",
                           R"({"touch_free_menu": {"timeout_ms": -1}})", R"({"techniques": ["teleport"]})",
                           R"({"face": {"scale_min": 200, "scale_max": 100}})", R"({"clock_hz": 0})"}) {
    CAPTURE(text);
    CHECK(code_of([&] { parse_config(text); }) == ErrorCode::BadConfig);
  }
  CHECK(code_of([] { load_config("/nonexistent/facefuse.json"); }) == ErrorCode::BadConfig);
}

TEST_CASE("dotted overrides") {
  SessionConfig c;
  apply_override(c, "touch_free_menu.timeout_ms", "3000");
  apply_override(c, "techniques", "scroll,flick");
  apply_override(c, "mirror_camera", "false");
  CHECK(c.techniques.touch_free_menu.timeout_ms == 3000);
  CHECK(c.enabled == std::vector<std::string>{"scroll", "flick"});
  CHECK_FALSE(c.engine.mirror_camera);
  CHECK(code_of([&] { apply_override(c, "face.nope", "1"); }) == ErrorCode::BadConfig);
  CHECK(code_of([&] { apply_override(c, "touch_free_menu.timeout_ms", "x"); }) == ErrorCode::BadConfig);
}

TEST_CASE("config path falls back to FACEFUSE_CONFIG") {
  ::setenv("FACEFUSE_CONFIG", "/tmp/from_env.json", 1);
  CHECK(resolve_config_path("") == "/tmp/from_env.json");
  CHECK(resolve_config_path("/tmp/flag.json") == "/tmp/flag.json");
  ::unsetenv("FACEFUSE_CONFIG");
  CHECK(resolve_config_path("").empty());
  CHECK(load_config("").enabled == builtin_technique_ids());

  const std::string path = "/tmp/facefuse_trace_test.json";
  std::ofstream(path) << R"({"state_hz": 5})";
  CHECK(load_config(path).state_hz == 5);
  std::remove(path.c_str());
}

// ---------------------------------------------------------------- replay

TEST_CASE("header set overrides change the outcome") {
  const Trace base = generate({"menu_dwell", {}, 0});
  CHECK(ft::filter(ft::run_events(base), "touch_free_menu", "SELECTED").size() == 1);
  Trace slow = base;
  slow.header.overrides.emplace_back("touch_free_menu.timeout_ms", "3000");
  CHECK(ft::filter(ft::run_events(slow), "touch_free_menu", "SELECTED").empty());
  Trace bad = base;
  bad.header.overrides.emplace_back("face.nope", "1");
  CHECK(code_of([&] { ft::run_events(bad); }) == ErrorCode::BadConfig);
}

TEST_CASE("header dimensions replace the config's") {
  TraceHeader h;
  h.screen = {800, 600};
  const auto c = session_config_for(h, SessionConfig{});
  CHECK(c.engine.screen.width == 800);
}

TEST_CASE("an empty trace gives an empty log") {
  CHECK(replay(Trace{}, SessionConfig{}).empty());
  CHECK(replay(parse_trace("# facefuse-trace 1\n"), SessionConfig{}).empty());
}

TEST_CASE("log lines carry time, technique and kind") {
  const auto log = replay(generate({"tilt_to_3d", {}, 0}), ft::only({"map_viewer"}));
  CHECK(log.find(" EVT map_viewer VIEW_MODE mode=3D\n") != std::string::npos);
}

TEST_CASE("ticks run as soon as a later frame arrives") {
  const Trace t = generate({"rotate_device", {{"sigma_g", 0.02}}, 3});
  std::vector<Millis> ticks;
  SessionRunner r(SessionConfig{}, [&](const TickResult& x) { ticks.push_back(x.snapshot.t); });
  for (const auto& f : t.frames) {
    r.push(f);
    // Every tick strictly before this frame has run; none at or after it.
    if (f.t == 0) {
      CHECK(ticks.empty());
      continue;
    }
    REQUIRE_FALSE(ticks.empty());
    CHECK(ticks.back() < f.t);
    CHECK(f.t - ticks.back() <= 17);
  }
  const auto before_finish = ticks.size();
  r.finish();
  CHECK(ticks.size() == before_finish + 1);
  for (std::size_t k = 0; k < ticks.size(); ++k) CHECK(ticks[k] == tick_time(static_cast<std::int64_t>(k), 60));
}

TEST_CASE("state and inspect lines") {
  const Trace t = generate({"menu_dwell", {}, 0});
  std::string state, inspect;
  SessionRunner* runner_ptr = nullptr;
  SessionRunner r(SessionConfig{}, [&](const TickResult& x) {
    if (x.snapshot.t == 2066) {
      state = render_state(x, runner_ptr->engine());
      inspect = render_inspect(x);
    }
  });
  runner_ptr = &r;
  for (const auto& f : t.frames) r.push(f);
  r.finish();
  CHECK(state.rfind("STATE 2066 face=PRESENT", 0) == 0);
  CHECK(state.find("menu_item=2") != std::string::npos);
  CHECK(inspect.find("face=PRESENT") != std::string::npos);
  CHECK(inspect.find("level=3") != std::string::npos);
  CHECK(inspect.find("touch=UP") != std::string::npos);
}
