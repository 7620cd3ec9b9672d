#pragma once

#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "facefuse/core_model.hpp"

namespace facefuse {

enum class FlickDirection { Left, Right, Up, Down };

std::string to_string(FlickDirection d);

struct FlickDetection {
  FlickDirection direction = FlickDirection::Right;
  double speed_px_s = 0.0;
  Vec2 velocity_px_s;
  int pointer_id = 0;
  Millis t = 0;
};

struct TouchConfig {
  double flick_speed_px_s = 600.0;
  Millis velocity_window_ms = 100;
  Millis history_ms = 150;
  double hold_tolerance_px = 15.0;
  Millis stroke_retention_ms = 2000;  // finished strokes kept for travel queries
};

struct TimedPoint {
  Millis t = 0;
  Vec2 p;
};

/// One finger from Began to Ended/Cancelled.
struct Stroke {
  int pointer_id = 0;
  Vec2 start;
  Vec2 current;
  Millis start_t = 0;
  std::optional<Millis> end_t;
  std::deque<TimedPoint> history;  // last history_ms, for release velocity
  std::vector<TimedPoint> path;    // whole stroke, for travel queries
  double travel_px = 0.0;
  double max_deviation_px = 0.0;

  bool down() const { return !end_t.has_value(); }
};

struct TouchState {
  std::map<int, Stroke> active;
  std::vector<Stroke> finished;

  bool is_down(int pointer_id) const { return active.contains(pointer_id); }
  bool any_down() const { return !active.empty(); }
  /// Lowest-numbered pointer currently down.
  std::optional<int> primary_pointer() const;
  const Stroke* stroke(int pointer_id) const;
};

/// Least-squares velocity (px/s) of the points no older than window_ms
/// before the last one; nullopt with fewer than two distinct timestamps.
std::optional<Vec2> release_velocity(const std::deque<TimedPoint>& history, Millis window_ms);

/// Path length of a timed polyline clipped to [t0, t1). A zero-duration
/// jump at time u counts when t0 <= u < t1, so adjacent windows add up.
double clipped_path_length(const std::vector<TimedPoint>& path, Millis t0, Millis t1);

/// travel_during over an explicit state, for consumers holding a snapshot.
double travel_during(const TouchState& state, int pointer_id, Millis t0, Millis t1);

/// Tolerance check over an explicit state; false if the pointer is not down.
bool held_within(const TouchState& state, int pointer_id, double tolerance_px);

class TouchPipeline {
 public:
  explicit TouchPipeline(TouchConfig config = {});

  /// Throws Error(UnknownPointer) for Moved/Ended/Cancelled without Began.
  std::optional<FlickDetection> ingest(const TouchSample& sample, Millis t);

  /// Drops finished strokes older than the retention window.
  void advance(Millis t);

  /// Max deviation from the start position since Began stays within
  /// tolerance. Throws Error(UnknownPointer) if the pointer is not down.
  bool within_hold_tolerance(int pointer_id) const;

  /// Finger path length inside [t0, t1) over every retained stroke of
  /// this pointer id; 0 when the pointer has no samples there.
  double travel_during(int pointer_id, Millis t0, Millis t1) const;

  const TouchState& state() const { return state_; }
  const TouchConfig& config() const { return config_; }

 private:
  TouchConfig config_;
  TouchState state_;
};

}  // namespace facefuse
