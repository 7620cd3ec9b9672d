#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "facefuse/errors.hpp"
#include "facefuse/technique.hpp"

namespace facefuse {

struct EngineConfig {
  FaceConfig face;
  MotionConfig motion;
  TouchConfig touch;
  bool mirror_camera = true;
  Dimensions screen = kDefaultScreen;
  Dimensions camera = kDefaultCamera;
  int clock_hz = 60;
};

/// A pipeline error attached to the frame that caused it.
struct Diagnostic {
  Millis t = 0;
  ErrorCode code = ErrorCode::ValidationError;
  std::string message;
};

struct TickResult {
  FusedSnapshot snapshot;
  std::vector<TechniqueEvent> events;
  std::vector<Diagnostic> diagnostics;
};

/// Time of master clock tick k at the given rate (floor of k * 1000 / hz).
Millis tick_time(std::int64_t k, int hz);

/// Central recognizer: applies frames to the face, motion and touch
/// pipelines, samples a fused snapshot at each tick and steps every
/// registered technique once per tick, in registration order.
class FusionEngine {
 public:
  explicit FusionEngine(EngineConfig config = {});

  /// Throws Error(DuplicateIdentifier) if the id is taken.
  void register_technique(std::unique_ptr<Technique> technique);

  std::vector<TechniqueDescriptor> registry() const;
  const Technique* find(std::string_view id) const;

  /// Applies frames (all with timestamps <= t) and steps the techniques.
  /// Throws Error(NonMonotonicTime) if t precedes the previous tick.
  TickResult tick(Millis t, std::span<const SensorFrame> frames);

  const EngineConfig& config() const { return config_; }
  std::optional<Millis> last_tick() const { return last_tick_; }

  const FacePipeline& face() const { return face_; }
  const MotionPipeline& motion() const { return motion_; }
  const TouchPipeline& touch() const { return touch_; }

 private:
  void apply(const SensorFrame& frame, FusedSnapshot& snap);

  EngineConfig config_;
  FacePipeline face_;
  MotionPipeline motion_;
  TouchPipeline touch_;
  std::vector<std::unique_ptr<Technique>> techniques_;
  std::optional<Millis> last_tick_;
};

}  // namespace facefuse
