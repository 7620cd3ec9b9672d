#include "facefuse/face_pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "facefuse/errors.hpp"

namespace facefuse {

std::string to_string(FaceEvent event) {
  switch (event) {
    case FaceEvent::None: return "NONE";
    case FaceEvent::Entering: return "ENTERING";
    case FaceEvent::Moving: return "MOVING";
    case FaceEvent::Exiting: return "EXITING";
  }
  return "?";
}

double distance_ratio(double reference_scale, double current_scale) {
  if (!(reference_scale > 0.0) || !(current_scale > 0.0)) {
    throw Error(ErrorCode::NonPositiveScale, "face scales must be positive");
  }
  return reference_scale / current_scale;
}

int quantize_scale(double scale, double scale_min, double scale_max,
                   std::optional<int> prev_level, double hysteresis_fraction) {
  const double width = (scale_max - scale_min) / kScaleLevels;
  const double s = std::clamp(scale, scale_min, scale_max);

  // Level l covers (scale_max - (l+1)w, scale_max - l*w].
  auto raw_level = [&] {
    const int l = static_cast<int>(std::floor((scale_max - s) / width));
    return std::clamp(l, 0, kScaleLevels - 1);
  };

  if (prev_level && *prev_level >= 0 && *prev_level < kScaleLevels) {
    const double h = hysteresis_fraction * width;
    const double upper = scale_max - *prev_level * width;
    const double lower = upper - width;
    if (s > lower - h && s < upper + h) return *prev_level;
  }
  return raw_level();
}

FacePipeline::FacePipeline(FaceConfig config) : config_(config) {}

bool FacePipeline::available() const {
  return state_.present() && state_.smoothed && state_.staleness_ms <= config_.staleness_ms;
}

std::optional<FaceEvent> FacePipeline::exit() {
  state_.presence = FacePresence::Absent;
  state_.last_event = FaceEvent::Exiting;
  state_.smoothed.reset();
  ema_.reset();
  state_.consecutive_hits = 0;
  return FaceEvent::Exiting;
}

std::optional<FaceEvent> FacePipeline::ingest(const FaceObservation& obs, Millis t) {
  if (state_.last_detection_t) state_.staleness_ms = t - *state_.last_detection_t;

  if (!obs.detected) {
    state_.consecutive_hits = 0;
    ++state_.consecutive_misses;
    if (!state_.present()) ema_.reset();
    if (state_.present() && state_.consecutive_misses >= config_.exit_misses) return exit();
    return std::nullopt;
  }

  state_.consecutive_misses = 0;
  ++state_.consecutive_hits;
  state_.last_detection_t = t;
  state_.staleness_ms = 0;

  const FaceParams raw{obs.center, obs.scale, obs.angle_deg};
  if (!ema_) {
    ema_ = raw;
  } else {
    const double a = config_.smoothing_alpha;
    FaceParams& s = *ema_;
    s.center.x += a * (raw.center.x - s.center.x);
    s.center.y += a * (raw.center.y - s.center.y);
    s.scale += a * (raw.scale - s.scale);
    s.angle_deg += a * (raw.angle_deg - s.angle_deg);
  }

  const FaceParams& s = *ema_;
  if (!state_.present()) {
    state_.scale_level = quantize_scale(s.scale, config_.scale_min, config_.scale_max,
                                        std::nullopt, config_.hysteresis_fraction);
    if (state_.consecutive_hits >= config_.enter_detections) {
      state_.presence = FacePresence::Present;
      state_.smoothed = s;
      state_.last_event = FaceEvent::Entering;
      state_.last_event_center = s.center;
      state_.reference_scale = s.scale;
      return FaceEvent::Entering;
    }
    return std::nullopt;
  }

  state_.smoothed = s;
  state_.scale_level = quantize_scale(s.scale, config_.scale_min, config_.scale_max,
                                      state_.scale_level, config_.hysteresis_fraction);
  if (distance(s.center, state_.last_event_center) > config_.move_epsilon_px) {
    state_.last_event = FaceEvent::Moving;
    state_.last_event_center = s.center;
    return FaceEvent::Moving;
  }
  return std::nullopt;
}

std::optional<FaceEvent> FacePipeline::advance(Millis t) {
  if (!state_.last_detection_t) return std::nullopt;
  state_.staleness_ms = std::max<Millis>(0, t - *state_.last_detection_t);
  if (state_.present() && state_.staleness_ms > config_.exit_timeout_ms) return exit();
  return std::nullopt;
}

}  // namespace facefuse
