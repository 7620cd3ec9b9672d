#include "facefuse/replay.hpp"

#include <cstdio>

#include "facefuse/format.hpp"

namespace facefuse {

std::unique_ptr<FusionEngine> build_engine(const SessionConfig& config) {
  auto engine = std::make_unique<FusionEngine>(config.engine);
  for (const auto& id : config.enabled) engine->register_technique(make_technique(id, config.techniques));
  return engine;
}

SessionConfig session_config_for(const TraceHeader& header, SessionConfig base) {
  base.engine.screen = header.screen;
  base.engine.camera = header.camera;
  apply_overrides(base, header.overrides);
  return base;
}

SessionRunner::SessionRunner(const SessionConfig& config, TickHandler on_tick)
    : engine_(build_engine(config)), on_tick_(std::move(on_tick)) {}

void SessionRunner::run_tick() {
  const Millis t = tick_time(next_tick_++, engine_->config().clock_hz);
  std::vector<SensorFrame> due;
  while (!pending_.empty() && pending_.front().t <= t) {
    due.push_back(std::move(pending_.front()));
    pending_.pop_front();
  }
  const TickResult result = engine_->tick(t, due);
  if (on_tick_) on_tick_(result);
}

void SessionRunner::push(const SensorFrame& frame) {
  while (tick_time(next_tick_, engine_->config().clock_hz) < frame.t) run_tick();
  pending_.push_back(frame);
}

void SessionRunner::finish() {
  while (!pending_.empty()) run_tick();
}

std::string render_state(const TickResult& tick, const FusionEngine& engine) {
  const auto& snap = tick.snapshot;
  std::string line = "STATE " + std::to_string(snap.t);
  line += snap.face.present() ? " face=PRESENT" : " face=ABSENT";
  line += " tilt=" + fixed(snap.attitude.tilt_deg, 1);
  line += " roll=" + fixed(snap.attitude.roll_deg, 1);
  StateFields fields;
  for (const auto& d : engine.registry()) engine.find(d.id)->describe_state(fields);
  for (const auto& [k, v] : fields) line += " " + k + "=" + v;
  return line;
}

std::string render_inspect(const TickResult& tick) {
  const auto& snap = tick.snapshot;
  std::string line = "t=" + std::to_string(snap.t);
  if (snap.face.present() && snap.face.smoothed) {
    const auto& f = *snap.face.smoothed;
    line += " face=PRESENT fx=" + fixed(f.center.x, 0) + " fy=" + fixed(f.center.y, 0) +
            " fs=" + fixed(f.scale, 1) + " fa=" + fixed(f.angle_deg, 1) +
            " level=" + std::to_string(snap.face.scale_level);
    if (!snap.face_available) line += " stale";
  } else {
    line += " face=ABSENT";
  }
  line += " tilt=" + fixed(snap.attitude.tilt_deg, 1) + " roll=" + fixed(snap.attitude.roll_deg, 1);
  if (const auto id = snap.touch.primary_pointer()) {
    const Stroke& s = *snap.touch.stroke(*id);
    line += " touch=DOWN x=" + fixed(s.path.back().p.x, 0) + " y=" + fixed(s.path.back().p.y, 0);
    if (snap.touch.active.size() > 1) line += " pointers=" + std::to_string(snap.touch.active.size());
  } else {
    line += " touch=UP";
  }
  for (const auto& d : tick.diagnostics) line += " diag=" + std::string(to_string(d.code));
  return line;
}

std::string replay(const Trace& trace, const SessionConfig& config, std::vector<Diagnostic>* diagnostics) {
  std::string log;
  SessionRunner runner(session_config_for(trace.header, config), [&](const TickResult& r) {
    for (const auto& e : r.events) log += render_event(e) + "\n";
    if (diagnostics) diagnostics->insert(diagnostics->end(), r.diagnostics.begin(), r.diagnostics.end());
  });
  for (const auto& f : trace.frames) runner.push(f);
  runner.finish();
  return log;
}

}  // namespace facefuse
