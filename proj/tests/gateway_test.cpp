#include <doctest.h>

#include <future>

#include "facefuse/gateway.hpp"
#include "facefuse/scenarios.hpp"
#include "tcp_client.hpp"
#include "test_support.hpp"

using namespace facefuse;

namespace {

struct Collected {
  std::vector<std::string> lines;
  GatewaySession session;
  explicit Collected(SessionConfig c = {})
      : session(std::move(c), [this](const std::string& l) { lines.push_back(l); }) {}

  void feed(const std::string& text) {
    for (const auto& l : ft::lines_of(text)) {
      if (!session.on_line(l)) break;
    }
  }
  std::string events() const {
    std::string out;
    for (const auto& l : lines) {
      if (l.rfind("STATE ", 0) != 0) out += l + "\n";
    }
    return out;
  }
};

}  // namespace

TEST_CASE("session output matches replay for every scenario") {
  for (const auto& info : builtin_scenarios()) {
    CAPTURE(info.name);
    const Trace t = generate({info.name, {{"sigma_g", 0.03}, {"sigma_px", 2}}, 11});
    Collected c;
    c.feed(render_trace(t));
    c.session.on_end();
    CHECK(c.events() == replay(t, SessionConfig{}));
  }
}

TEST_CASE("END flushes the last ticks and closes") {
  const Trace t = generate({"menu_dwell", {}, 0});
  Collected c;
  c.feed(render_trace(t));
  CHECK_FALSE(c.session.closed());
  CHECK_FALSE(c.session.on_line("END"));
  CHECK(c.session.closed());
  CHECK(c.events() == replay(t, SessionConfig{}));
  CHECK_FALSE(c.session.on_line("0 IMU 0 -1 0 0 0 0"));
}

TEST_CASE("STATE lines follow the configured cadence") {
  SessionConfig cfg;
  cfg.state_hz = 10;
  Collected c(cfg);
  c.feed(render_trace(generate({"menu_dwell", {}, 0})));
  c.session.on_end();
  std::vector<Millis> times;
  for (const auto& l : c.lines) {
    if (l.rfind("STATE ", 0) == 0) times.push_back(std::stoll(l.substr(6)));
  }
  REQUIRE(times.size() >= 20);
  CHECK(times.front() == 0);
  for (std::size_t i = 1; i < times.size(); ++i) {
    CHECK(times[i] - times[i - 1] >= 100);
    CHECK(times[i] - times[i - 1] <= 117);
  }
}

TEST_CASE("STATE menu item agrees with the last highlight") {
  Collected c;
  c.feed(render_trace(generate({"menu_dwell", {}, 0})));
  c.session.on_end();
  std::string last_highlight = "-1";
  int states = 0;
  for (const auto& l : c.lines) {
    if (const auto p = l.find("HIGHLIGHT item="); p != std::string::npos) last_highlight = l.substr(p + 15);
    if (l.rfind("STATE ", 0) == 0) {
      ++states;
      CHECK(l.find("menu_item=" + last_highlight) != std::string::npos);
    }
  }
  CHECK(states > 0);
}

TEST_CASE("garbage gets a parse error and closes the session") {
  Collected c;
  CHECK(c.session.on_line("# facefuse-trace 1"));
  CHECK(c.session.on_line("0 IMU 0 -1 0 0 0 0"));
  CHECK_FALSE(c.session.on_line("hello there"));
  REQUIRE(c.lines.size() == 1);
  CHECK(c.lines[0].rfind("ERR parse line 3:", 0) == 0);
  CHECK(c.session.closed());
}

TEST_CASE("invalid frames get a validation error") {
  Collected c;
  c.session.on_line("0 IMU 0 -1 0 0 0 0");
  CHECK_FALSE(c.session.on_line("16 TOUCH 0 MOVED 1 1"));
  REQUIRE_FALSE(c.lines.empty());
  CHECK(c.lines.back().rfind("ERR validation line 2: BadPhase", 0) == 0);
}

TEST_CASE("header directives after the first frame are protocol errors") {
  for (const char* directive : {"# set face.ema_alpha=0.5", "# screen 100 100"}) {
    Collected c;
    c.session.on_line("0 IMU 0 -1 0 0 0 0");
    CHECK_FALSE(c.session.on_line(directive));
    REQUIRE(c.lines.size() == 1);
    CHECK(c.lines[0] == "ERR protocol line 2: header directive after the first frame");
  }
}

TEST_CASE("bad header overrides are config errors") {
  Collected c;
  c.session.on_line("# set face.nope=1");
  CHECK_FALSE(c.session.on_line("0 IMU 0 -1 0 0 0 0"));
  REQUIRE(c.lines.size() == 1);
  CHECK(c.lines[0].rfind("ERR config:", 0) == 0);
}

TEST_CASE("header overrides apply to the session") {
  Collected c;
  c.session.on_line("# set touch_free_menu.timeout_ms=3000");
  const Trace t = generate({"menu_dwell", {}, 0});
  c.feed(render_trace(t));
  c.session.on_end();
  CHECK(c.events().find("SELECTED") == std::string::npos);
}

// ---------------------------------------------------------------- TCP

TEST_CASE("tcp: streamed output equals replay") {
  Gateway g(SessionConfig{});
  g.start(0);
  REQUIRE(g.port() != 0);
  const Trace t = generate({"zoom_in", {}, 2});
  ft::TcpClient client(g.port());
  client.send(render_trace(t));
  client.send("END\n");
  CHECK(ft::events_only(client.read_all()) == replay(t, SessionConfig{}));
}

TEST_CASE("tcp: EOF without END flushes too") {
  Gateway g(SessionConfig{});
  g.start(0);
  const Trace t = generate({"tilt_to_3d", {}, 0});
  ft::TcpClient client(g.port());
  client.send(render_trace(t));
  client.shutdown_write();
  CHECK(ft::events_only(client.read_all()) == replay(t, SessionConfig{}));
}

TEST_CASE("tcp: a broken client does not disturb another") {
  Gateway g(SessionConfig{});
  g.start(0);
  const Trace t = generate({"menu_dwell", {}, 4});
  const std::string text = render_trace(t);

  ft::TcpClient good(g.port());
  ft::TcpClient bad(g.port());
  // Interleave the two streams.
  const auto half = text.find('\n', text.size() / 2) + 1;
  good.send(text.substr(0, half));
  bad.send("0 IMU 0 -1 0 0 0 0\nnot a frame\n");
  const std::string bad_reply = bad.read_all();
  good.send(text.substr(half));
  good.send("END\n");

  CHECK(bad_reply.rfind("ERR parse line 2:", 0) != std::string::npos);
  CHECK(ft::events_only(good.read_all()) == replay(t, SessionConfig{}));
}

TEST_CASE("tcp: concurrent sessions are isolated") {
  Gateway g(SessionConfig{});
  g.start(0);
  std::vector<std::future<bool>> runs;
  for (const std::string name : {"menu_dwell", "zoom_out", "lean_left", "flick_and_swipe"}) {
    runs.push_back(std::async(std::launch::async, [&g, name] {
      const Trace t = generate({name, {{"sigma_px", 1}}, 9});
      ft::TcpClient c(g.port());
      c.send(render_trace(t));
      c.send("END\n");
      return ft::events_only(c.read_all()) == replay(t, SessionConfig{});
    }));
  }
  for (auto& r : runs) CHECK(r.get());
}

TEST_CASE("tcp: stop closes open connections") {
  Gateway g(SessionConfig{});
  g.start(0);
  ft::TcpClient idle(g.port());
  idle.send("0 IMU 0 -1 0 0 0 0\n");
  g.stop();
  CHECK(idle.read_all().find("ERR") == std::string::npos);
}

TEST_CASE("tcp: a taken port is reported") {
  Gateway a(SessionConfig{});
  a.start(0);
  Gateway b(SessionConfig{});
  try {
    b.start(a.port());
    FAIL("second bind succeeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Protocol);
  }
}
