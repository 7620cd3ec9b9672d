#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace facefuse {

/// Milliseconds since session start.
using Millis = std::int64_t;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
double distance(Vec2 a, Vec2 b);

struct Dimensions {
  int width = 0;
  int height = 0;

  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

// iPhone 5 defaults: screen in points-as-pixels, front camera frame.
inline constexpr Dimensions kDefaultScreen{640, 1136};
inline constexpr Dimensions kDefaultCamera{480, 640};

enum class TouchPhase { Began, Moved, Ended, Cancelled };

struct TouchSample {
  int pointer_id = 0;
  TouchPhase phase = TouchPhase::Began;
  Vec2 position;

  friend bool operator==(const TouchSample&, const TouchSample&) = default;
};

/// accel in g with gravity reading -1 on the axis pointing up
/// (+X right, +Y up in portrait, +Z out of the screen); gyro in deg/s.
struct ImuSample {
  Vec3 accel;
  Vec3 gyro;

  friend bool operator==(const ImuSample&, const ImuSample&) = default;
};

/// Coarse rotation buckets of the underlying face detector.
inline constexpr int kRotationBuckets[] = {-45, 0, 45};

struct FaceObservation {
  bool detected = false;
  Vec2 center;            // camera pixels
  double scale = 0.0;     // inter-eye distance, camera pixels
  double angle_deg = 0.0; // face roll, positive = clockwise in image
  int rotation_class = 0;

  friend bool operator==(const FaceObservation&, const FaceObservation&) = default;
};

/// Bucket of kRotationBuckets nearest to the given face angle.
int nearest_rotation_bucket(double angle_deg);

/// Face scale times face-to-screen distance is constant for one user:
/// d_eye (mm) * d_image (camera px).
struct CalibrationConstants {
  double d_eye_mm = 63.0;
  double d_image_px = 500.0;

  double product() const { return d_eye_mm * d_image_px; }
};

enum class Channel { Touch = 0, Imu = 1, Face = 2 };

struct SensorFrame {
  Millis t = 0;
  std::variant<TouchSample, ImuSample, FaceObservation> payload;

  Channel channel() const { return static_cast<Channel>(payload.index()); }
  friend bool operator==(const SensorFrame&, const SensorFrame&) = default;
};

/// Frame ordering within a trace: time, then Touch < IMU < Face.
bool frame_order_less(const SensorFrame& a, const SensorFrame& b);

std::string to_string(TouchPhase phase);
std::optional<TouchPhase> touch_phase_from_string(std::string_view text);

struct ValidationWarning {
  Millis t = 0;
  std::string message;
};

/// Stateful frame checker: bounds, time monotonicity and per-pointer phase
/// order. A rejected frame leaves the validator state untouched.
class FrameValidator {
 public:
  explicit FrameValidator(Dimensions screen = kDefaultScreen,
                          Dimensions camera = kDefaultCamera);

  /// Returns the frame unchanged, or throws Error with OutOfRange,
  /// NonMonotonicTime or BadPhase.
  const SensorFrame& validate(const SensorFrame& frame);

  /// IMU cadence outside 30..120 Hz is reported here, never rejected.
  const std::vector<ValidationWarning>& warnings() const { return warnings_; }

 private:
  void check_touch(const TouchSample& touch) const;
  void check_imu(const ImuSample& imu) const;
  void check_face(const FaceObservation& face) const;

  Dimensions screen_;
  Dimensions camera_;
  std::optional<Millis> last_t_;
  std::optional<Millis> last_imu_t_;
  std::map<int, bool> pointer_down_;
  std::vector<ValidationWarning> warnings_;
};

}  // namespace facefuse
