#pragma once

#include <optional>

#include "facefuse/core_model.hpp"

namespace facefuse {

enum class FacePresence { Absent, Present };
enum class FaceEvent { None, Entering, Moving, Exiting };

std::string to_string(FaceEvent event);

inline constexpr int kScaleLevels = 6;

struct FaceConfig {
  int enter_detections = 2;   // consecutive detections to become Present
  int exit_misses = 5;        // consecutive misses to become Absent
  double smoothing_alpha = 0.4;
  double scale_min = 40.0;    // camera px, farthest usable face
  double scale_max = 160.0;   // camera px, closest usable face
  double move_epsilon_px = 8.0;
  Millis staleness_ms = 200;  // continuous consumers ignore older values
  // Present with no face frames at all for this long is treated as exit.
  Millis exit_timeout_ms = 320;
  double hysteresis_fraction = 0.05;  // of one scale bin
};

/// Smoothed face parameters (F_x, F_y, F_s, F_a).
struct FaceParams {
  Vec2 center;
  double scale = 0.0;
  double angle_deg = 0.0;

  friend bool operator==(const FaceParams&, const FaceParams&) = default;
};

struct FaceState {
  FacePresence presence = FacePresence::Absent;
  FaceEvent last_event = FaceEvent::None;
  std::optional<FaceParams> smoothed;
  Millis staleness_ms = 0;
  int scale_level = 0;
  double reference_scale = 0.0;

  // Debounce bookkeeping.
  int consecutive_hits = 0;
  int consecutive_misses = 0;
  std::optional<Millis> last_detection_t;
  Vec2 last_event_center;

  bool present() const { return presence == FacePresence::Present; }
};

/// d2/d1 from two face scales under F_s * d = const; throws NonPositiveScale.
double distance_ratio(double reference_scale, double current_scale);

/// Six equal bins over [scale_min, scale_max]; level 0 is the largest face.
/// With prev_level set, leaving that level needs an overshoot of
/// hysteresis_fraction * bin width past its boundary.
int quantize_scale(double scale, double scale_min, double scale_max,
                   std::optional<int> prev_level, double hysteresis_fraction = 0.05);

/// Debounced presence, EMA smoothing and scale levels for one session.
class FacePipeline {
 public:
  explicit FacePipeline(FaceConfig config = {});

  /// Observations must arrive with non-decreasing t.
  std::optional<FaceEvent> ingest(const FaceObservation& obs, Millis t);

  /// Updates staleness at t, and exits a Present face whose frames stopped.
  std::optional<FaceEvent> advance(Millis t);

  const FaceState& state() const { return state_; }
  const FaceConfig& config() const { return config_; }

  /// Present and refreshed within staleness_ms.
  bool available() const;

 private:
  std::optional<FaceEvent> exit();

  FaceConfig config_;
  FaceState state_;
  std::optional<FaceParams> ema_;  // runs from the first detection of a streak
};

}  // namespace facefuse
