#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "facefuse/face_pipeline.hpp"
#include "facefuse/motion_pipeline.hpp"
#include "facefuse/touch_pipeline.hpp"

namespace facefuse {

/// Everything a technique may look at for one tick. All sub-states are
/// taken after the tick's frames were applied.
struct FusedSnapshot {
  Millis t = 0;
  FaceState face;
  bool face_available = false;  // present and not stale
  DeviceAttitude attitude;
  TouchState touch;
  double hold_tolerance_px = 15.0;
  bool mirror_camera = true;
  Dimensions screen = kDefaultScreen;
  Dimensions camera = kDefaultCamera;

  // Produced during this tick only.
  std::vector<TouchSample> touches;
  std::vector<FlickDetection> flicks;
  std::optional<SwipeDetection> swipe;
  std::vector<FaceEvent> face_events;
};

struct ModalityUsage {
  bool discrete = false;
  bool continuous = false;

  friend bool operator==(const ModalityUsage&, const ModalityUsage&) = default;
};

struct TechniqueDescriptor {
  std::string id;
  ModalityUsage face;
  ModalityUsage motion;
  ModalityUsage touch;
  std::vector<std::string> vocabulary;  // event kinds this technique may emit
};

using PayloadValue = std::variant<std::int64_t, double, std::string>;
using Payload = std::map<std::string, PayloadValue>;

struct TechniqueEvent {
  Millis t = 0;
  std::string technique;
  std::string kind;
  Payload payload;  // std::map keeps keys sorted for rendering

  friend bool operator==(const TechniqueEvent&, const TechniqueEvent&) = default;
};

/// Collects events for one technique during one tick.
class EventEmitter {
 public:
  EventEmitter(const TechniqueDescriptor& descriptor, Millis t, std::vector<TechniqueEvent>& sink)
      : descriptor_(descriptor), t_(t), sink_(sink) {}

  /// Throws std::logic_error for a kind outside the descriptor vocabulary.
  void emit(std::string kind, Payload payload = {});

 private:
  const TechniqueDescriptor& descriptor_;
  Millis t_;
  std::vector<TechniqueEvent>& sink_;
};

/// Key/value pairs a technique contributes to live STATE lines.
using StateFields = std::vector<std::pair<std::string, std::string>>;

class Technique {
 public:
  virtual ~Technique() = default;

  virtual const TechniqueDescriptor& descriptor() const = 0;
  virtual void step(const FusedSnapshot& snap, EventEmitter& out) = 0;
  virtual void describe_state(StateFields& /*out*/) const {}
};

}  // namespace facefuse
