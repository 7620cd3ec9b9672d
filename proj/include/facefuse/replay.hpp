#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <string>

#include "facefuse/config.hpp"
#include "facefuse/fusion_engine.hpp"
#include "facefuse/trace.hpp"

namespace facefuse {

/// Engine with the enabled techniques registered in config order.
std::unique_ptr<FusionEngine> build_engine(const SessionConfig& config);

/// Config for a trace: header dimensions replace the config's, then the
/// header's `set` overrides are applied. Throws Error(BadConfig).
SessionConfig session_config_for(const TraceHeader& header, SessionConfig base);

/// Drives an engine from a frame stream on the master clock. Tick k runs
/// once a frame later than t_k arrives (or at finish), so feeding frames
/// one by one and feeding them all at once give the same ticks.
class SessionRunner {
 public:
  using TickHandler = std::function<void(const TickResult&)>;

  SessionRunner(const SessionConfig& config, TickHandler on_tick);

  /// Frames must already be validated and in trace order.
  void push(const SensorFrame& frame);

  /// Runs the remaining ticks until every buffered frame is consumed.
  void finish();

  const FusionEngine& engine() const { return *engine_; }

 private:
  void run_tick();

  std::unique_ptr<FusionEngine> engine_;
  TickHandler on_tick_;
  std::deque<SensorFrame> pending_;
  std::int64_t next_tick_ = 0;
};

/// `STATE <t> face=.. tilt=.. roll=.. <technique fields>` for one tick.
std::string render_state(const TickResult& tick, const FusionEngine& engine);

/// Per-tick debug line: face parameters, attitude and touch state.
std::string render_inspect(const TickResult& tick);

/// Event log text of a whole trace. Diagnostics go to `diagnostics` if set.
std::string replay(const Trace& trace, const SessionConfig& config,
                   std::vector<Diagnostic>* diagnostics = nullptr);

}  // namespace facefuse
