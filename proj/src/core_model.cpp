#include "facefuse/core_model.hpp"

#include <cmath>
#include <limits>

#include "facefuse/errors.hpp"

namespace facefuse {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonMonotonicTime: return "NonMonotonicTime";
    case ErrorCode::BadPhase: return "BadPhase";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::UnknownPointer: return "UnknownPointer";
    case ErrorCode::DegenerateGravity: return "DegenerateGravity";
    case ErrorCode::DuplicateIdentifier: return "DuplicateIdentifier";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::Protocol: return "Protocol";
  }
  return "Unknown";
}

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

int nearest_rotation_bucket(double angle_deg) {
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int bucket : kRotationBuckets) {
    const double d = std::abs(angle_deg - bucket);
    if (d < best_dist) {
      best = bucket;
      best_dist = d;
    }
  }
  return best;
}

bool frame_order_less(const SensorFrame& a, const SensorFrame& b) {
  if (a.t != b.t) return a.t < b.t;
  return a.payload.index() < b.payload.index();
}

std::string to_string(TouchPhase phase) {
  switch (phase) {
    case TouchPhase::Began: return "BEGAN";
    case TouchPhase::Moved: return "MOVED";
    case TouchPhase::Ended: return "ENDED";
    case TouchPhase::Cancelled: return "CANCELLED";
  }
  return "?";
}

std::optional<TouchPhase> touch_phase_from_string(std::string_view text) {
  if (text == "BEGAN") return TouchPhase::Began;
  if (text == "MOVED") return TouchPhase::Moved;
  if (text == "ENDED") return TouchPhase::Ended;
  if (text == "CANCELLED") return TouchPhase::Cancelled;
  return std::nullopt;
}

FrameValidator::FrameValidator(Dimensions screen, Dimensions camera)
    : screen_(screen), camera_(camera) {}

namespace {

bool finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

[[noreturn]] void out_of_range(const std::string& what) {
  throw Error(ErrorCode::OutOfRange, what);
}

}  // namespace

void FrameValidator::check_touch(const TouchSample& touch) const {
  const Vec2 p = touch.position;
  if (!(p.x >= 0.0 && p.x < screen_.width && p.y >= 0.0 && p.y < screen_.height)) {
    out_of_range("touch position outside " + std::to_string(screen_.width) + "x" +
                 std::to_string(screen_.height) + " screen");
  }
  if (touch.pointer_id < 0) out_of_range("negative pointer id");

  const auto it = pointer_down_.find(touch.pointer_id);
  const bool down = it != pointer_down_.end() && it->second;
  if (touch.phase == TouchPhase::Began && down) {
    throw Error(ErrorCode::BadPhase,
                "pointer " + std::to_string(touch.pointer_id) + " began twice");
  }
  if (touch.phase != TouchPhase::Began && !down) {
    throw Error(ErrorCode::BadPhase, "pointer " + std::to_string(touch.pointer_id) + " " +
                                         to_string(touch.phase) + " without BEGAN");
  }
}

void FrameValidator::check_imu(const ImuSample& imu) const {
  if (!finite(imu.accel) || !finite(imu.gyro)) out_of_range("non-finite IMU value");
}

void FrameValidator::check_face(const FaceObservation& face) const {
  if (!face.detected) return;
  const Vec2 c = face.center;
  if (!(c.x >= 0.0 && c.x < camera_.width && c.y >= 0.0 && c.y < camera_.height)) {
    out_of_range("face center outside camera image");
  }
  if (!(face.scale > 0.0) || !std::isfinite(face.scale)) out_of_range("face scale must be positive");
  if (!(face.angle_deg >= -90.0 && face.angle_deg <= 90.0)) out_of_range("face angle outside [-90, 90]");

  bool known_bucket = false;
  for (int b : kRotationBuckets) known_bucket = known_bucket || b == face.rotation_class;
  if (!known_bucket) out_of_range("rotation class must be -45, 0 or 45");
  // Ties between two buckets accept either.
  const double nearest = std::abs(face.angle_deg - nearest_rotation_bucket(face.angle_deg));
  if (std::abs(face.angle_deg - face.rotation_class) > nearest + 1e-9) {
    out_of_range("rotation class is not the bucket nearest the face angle");
  }
}

const SensorFrame& FrameValidator::validate(const SensorFrame& frame) {
  if (frame.t < 0) throw Error(ErrorCode::NonMonotonicTime, "negative timestamp");
  if (last_t_ && frame.t < *last_t_) {
    throw Error(ErrorCode::NonMonotonicTime, "timestamp " + std::to_string(frame.t) +
                                                 " earlier than " + std::to_string(*last_t_));
  }

  std::visit(
      [this](const auto& payload) {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, TouchSample>) check_touch(payload);
        if constexpr (std::is_same_v<T, ImuSample>) check_imu(payload);
        if constexpr (std::is_same_v<T, FaceObservation>) check_face(payload);
      },
      frame.payload);

  last_t_ = frame.t;
  if (const auto* touch = std::get_if<TouchSample>(&frame.payload)) {
    pointer_down_[touch->pointer_id] = touch->phase == TouchPhase::Began ||
                                       touch->phase == TouchPhase::Moved;
  } else if (std::holds_alternative<ImuSample>(frame.payload)) {
    if (last_imu_t_) {
      const Millis dt = frame.t - *last_imu_t_;
      // 30..120 Hz nominal band, i.e. 1000/120 .. 1000/30 ms between samples.
      if (dt * 120 < 1000 || dt * 30 > 1000) {
        warnings_.push_back({frame.t, "IMU interval " + std::to_string(dt) +
                                          " ms outside 30-120 Hz"});
      }
    }
    last_imu_t_ = frame.t;
  }
  return frame;
}

}  // namespace facefuse
