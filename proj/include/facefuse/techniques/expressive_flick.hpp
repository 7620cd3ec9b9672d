#pragma once

#include <deque>

#include "facefuse/technique.hpp"

namespace facefuse {

enum class FlickClass { NormalFlick = 1, PhoneSwipe = 2, HoldAndSwipe = 3, FlickAndSwipe = 4 };

std::string to_string(FlickClass c);

struct FlickClassConfig {
  Millis pair_wait_ms = 300;            // how long a flick or swipe waits for its partner
  double min_flick_swipe_travel_px = 40.0;
  Millis face_history_ms = 1500;
};

enum class FlickPhase { Idle, Monitoring };

struct FlickClassState {
  FlickPhase phase = FlickPhase::Idle;
  bool face_at_start = false;
  std::optional<FlickDetection> pending_flick;
  std::optional<SwipeDetection> pending_swipe;  // waiting for a flick
  Millis pending_swipe_t = 0;
  std::optional<FlickClass> last_class;
};

/// Expressive flicking: classifies normal flick, phone swipe,
/// hold-and-swipe and flick-and-swipe. All but the normal flick require
/// the face to be present when the swipe starts.
class ExpressiveFlickTechnique : public Technique {
 public:
  explicit ExpressiveFlickTechnique(FlickClassConfig config = {});

  const TechniqueDescriptor& descriptor() const override;
  void step(const FusedSnapshot& snap, EventEmitter& out) override;
  void describe_state(StateFields& out) const override;

  const FlickClassState& state() const { return state_; }

 private:
  bool face_present_at(Millis t) const;
  void on_flick(const FusedSnapshot& snap, const FlickDetection& flick, EventEmitter& out);
  void on_swipe(const FusedSnapshot& snap, const SwipeDetection& swipe, EventEmitter& out);
  bool pairs(const FusedSnapshot& snap, const FlickDetection& flick,
             const SwipeDetection& swipe) const;
  void classify(FlickClass c, const std::string& direction, bool face_ok, EventEmitter& out);

  FlickClassConfig config_;
  FlickClassState state_;
  std::deque<std::pair<Millis, bool>> face_history_;
};

}  // namespace facefuse
