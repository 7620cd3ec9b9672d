#include "facefuse/techniques/expressive_flick.hpp"

namespace facefuse {

std::string to_string(FlickClass c) {
  switch (c) {
    case FlickClass::NormalFlick: return "NormalFlick";
    case FlickClass::PhoneSwipe: return "PhoneSwipe";
    case FlickClass::HoldAndSwipe: return "HoldAndSwipe";
    case FlickClass::FlickAndSwipe: return "FlickAndSwipe";
  }
  return "?";
}

namespace {

bool same_direction(FlickDirection f, LateralDirection s) {
  return (f == FlickDirection::Left && s == LateralDirection::Left) ||
         (f == FlickDirection::Right && s == LateralDirection::Right);
}

bool stroke_overlaps(const Stroke& s, Millis t0, Millis t1) {
  return s.start_t <= t1 && (!s.end_t || *s.end_t >= t0);
}

}  // namespace

ExpressiveFlickTechnique::ExpressiveFlickTechnique(FlickClassConfig config) : config_(config) {}

const TechniqueDescriptor& ExpressiveFlickTechnique::descriptor() const {
  static const TechniqueDescriptor d{"flick", {true, false}, {true, false}, {true, true}, {"CLASS"}};
  return d;
}

bool ExpressiveFlickTechnique::face_present_at(Millis t) const {
  bool present = false;
  for (const auto& [ht, p] : face_history_) {
    if (ht > t) break;
    present = p;
  }
  return present;
}

void ExpressiveFlickTechnique::classify(FlickClass c, const std::string& direction, bool face_ok,
                                        EventEmitter& out) {
  // Without a face at the swipe start the gesture is consumed silently.
  if (!face_ok) return;
  state_.last_class = c;
  out.emit("CLASS", {{"direction", direction},
                     {"kind", to_string(c)},
                     {"rank", std::int64_t{static_cast<int>(c)}}});
}

bool ExpressiveFlickTechnique::pairs(const FusedSnapshot& snap, const FlickDetection& flick,
                                     const SwipeDetection& swipe) const {
  return same_direction(flick.direction, swipe.direction) &&
         travel_during(snap.touch, flick.pointer_id, swipe.t_start, swipe.t_end) >=
             config_.min_flick_swipe_travel_px;
}

void ExpressiveFlickTechnique::on_flick(const FusedSnapshot& snap, const FlickDetection& flick,
                                        EventEmitter& out) {
  if (state_.pending_swipe) {
    const SwipeDetection swipe = *state_.pending_swipe;
    state_.pending_swipe.reset();
    if (pairs(snap, flick, swipe)) {
      classify(FlickClass::FlickAndSwipe, to_string(swipe.direction), state_.face_at_start, out);
      return;
    }
  }
  if (state_.pending_flick) {
    classify(FlickClass::NormalFlick, to_string(state_.pending_flick->direction), true, out);
  }
  state_.pending_flick = flick;
}

void ExpressiveFlickTechnique::on_swipe(const FusedSnapshot& snap, const SwipeDetection& swipe,
                                        EventEmitter& out) {
  state_.face_at_start = face_present_at(swipe.t_start);
  const std::string dir = to_string(swipe.direction);

  if (state_.pending_flick) {
    const FlickDetection flick = *state_.pending_flick;
    state_.pending_flick.reset();
    if (pairs(snap, flick, swipe)) {
      classify(FlickClass::FlickAndSwipe, dir, state_.face_at_start, out);
      return;
    }
    classify(FlickClass::NormalFlick, to_string(flick.direction), true, out);
  }

  bool touched = false;
  for (const auto& s : snap.touch.finished) touched = touched || stroke_overlaps(s, swipe.t_start, swipe.t_end);
  for (const auto& [id, s] : snap.touch.active) touched = touched || stroke_overlaps(s, swipe.t_start, swipe.t_end);
  if (!touched) {
    classify(FlickClass::PhoneSwipe, dir, state_.face_at_start, out);
    return;
  }

  if (const auto id = snap.touch.primary_pointer()) {
    if (held_within(snap.touch, *id, snap.hold_tolerance_px)) {
      classify(FlickClass::HoldAndSwipe, dir, state_.face_at_start, out);
      return;
    }
    if (travel_during(snap.touch, *id, swipe.t_start, swipe.t_end) >=
        config_.min_flick_swipe_travel_px) {
      // The finger is still travelling: its flick may land after the swipe.
      state_.pending_swipe = swipe;
      state_.pending_swipe_t = snap.t;
    }
  }
}

void ExpressiveFlickTechnique::step(const FusedSnapshot& snap, EventEmitter& out) {
  face_history_.emplace_back(snap.t, snap.face.present());
  while (!face_history_.empty() && face_history_.front().first < snap.t - config_.face_history_ms) {
    face_history_.pop_front();
  }

  for (const auto& flick : snap.flicks) on_flick(snap, flick, out);
  if (snap.swipe) on_swipe(snap, *snap.swipe, out);

  if (state_.pending_flick && snap.t - state_.pending_flick->t >= config_.pair_wait_ms) {
    classify(FlickClass::NormalFlick, to_string(state_.pending_flick->direction), true, out);
    state_.pending_flick.reset();
  }
  if (state_.pending_swipe && snap.t - state_.pending_swipe_t >= config_.pair_wait_ms) {
    state_.pending_swipe.reset();
  }
  state_.phase = state_.pending_flick || state_.pending_swipe ? FlickPhase::Monitoring
                                                              : FlickPhase::Idle;
}

void ExpressiveFlickTechnique::describe_state(StateFields& out) const {
  out.emplace_back("flick_last", state_.last_class ? to_string(*state_.last_class) : "NONE");
}

}  // namespace facefuse
