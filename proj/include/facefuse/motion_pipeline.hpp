#pragma once

#include <optional>
#include <vector>

#include "facefuse/core_model.hpp"

namespace facefuse {

enum class LateralDirection { Left, Right };

std::string to_string(LateralDirection d);

struct DeviceAttitude {
  Vec3 gravity{0.0, -1.0, 0.0};  // unit, device frame, reads toward the ground
  double tilt_deg = 90.0;        // 0 flat face-up, 90 upright, 180 face-down
  double roll_deg = 0.0;         // (-180, 180], 0 portrait-upright
  bool reliable = false;
};

struct SwipeDetection {
  LateralDirection direction = LateralDirection::Right;
  double peak_accel_g = 0.0;
  Millis t_start = 0;
  Millis t_end = 0;
};

struct MotionConfig {
  double gravity_cutoff_hz = 1.0;
  double swipe_highpass_cutoff_hz = 0.25;
  bool use_gyro = true;            // false: attitude from accel only
  double gyro_blend_weight = 0.02; // accel share per sample in the roll blend
  double degenerate_accel_g = 0.2;
  Millis degenerate_after_ms = 1000;

  double swipe_primary_g = 0.6;
  Millis swipe_primary_min_ms = 50;
  double swipe_opposite_g = 0.4;
  Millis swipe_opposite_within_ms = 500;
  Millis swipe_refractory_ms = 400;
  Millis swipe_min_buffer_ms = 120;
  Millis swipe_max_window_ms = 700;
};

/// Tilt and roll of a (not necessarily unit) gravity reading.
double tilt_from_gravity(const Vec3& g);
double roll_from_gravity(const Vec3& g);

/// Wraps an angle into (-180, 180].
double wrap_degrees(double deg);

/// Streaming accelerate-then-brake detector over high-passed lateral accel.
class SwipeDetector {
 public:
  explicit SwipeDetector(const MotionConfig& config = {});

  std::optional<SwipeDetection> push(Millis t, double highpass_x);

 private:
  enum class Phase { Idle, Primary, AwaitOpposite, Refractory };

  std::optional<SwipeDetection> step(Millis t, double a);

  MotionConfig config_;
  Phase phase_ = Phase::Idle;
  std::optional<Millis> first_t_;
  int sign_ = 0;
  Millis primary_start_ = 0;
  Millis primary_end_ = 0;
  double peak_ = 0.0;
  Millis refractory_until_ = 0;
};

/// Window-form check of the detector contract: feeds the samples in order
/// to a fresh detector and returns the first detection.
std::optional<SwipeDetection> detect_phone_swipe(
    const std::vector<std::pair<Millis, double>>& highpass_x,
    const MotionConfig& config = {});

class MotionPipeline {
 public:
  explicit MotionPipeline(MotionConfig config = {});

  /// Throws Error(DegenerateGravity) when |accel| has stayed below the
  /// free-fall bound for longer than degenerate_after_ms (once per episode).
  /// The attitude stays marked unreliable for the whole episode; the sample
  /// is consumed either way.
  std::optional<SwipeDetection> ingest(const ImuSample& imu, Millis t);

  const DeviceAttitude& attitude() const { return attitude_; }
  double last_highpass_x() const { return highpass_x_; }

 private:
  MotionConfig config_;
  DeviceAttitude attitude_;
  std::optional<Millis> last_t_;
  Vec3 gravity_lp_;
  double swipe_lp_x_ = 0.0;
  double highpass_x_ = 0.0;
  double blended_roll_ = 0.0;
  std::optional<Millis> low_accel_since_;
  bool degenerate_reported_ = false;
  SwipeDetector swipe_;
};

}  // namespace facefuse
