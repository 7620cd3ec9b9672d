#include "facefuse/motion_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "facefuse/errors.hpp"

namespace facefuse {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

double lowpass_alpha(double cutoff_hz, double dt_s) {
  const double rc = 1.0 / (2.0 * std::numbers::pi * cutoff_hz);
  return dt_s / (rc + dt_s);
}

}  // namespace

std::string to_string(LateralDirection d) { return d == LateralDirection::Left ? "LEFT" : "RIGHT"; }

double wrap_degrees(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w <= -180.0) w += 360.0;
  if (w > 180.0) w -= 360.0;
  return w;
}

double tilt_from_gravity(const Vec3& g) {
  const double n = g.norm();
  // Up is -g; tilt is the angle between up and the screen normal (+Z).
  const double c = std::clamp(-g.z / n, -1.0, 1.0);
  return std::acos(c) * kRadToDeg;
}

double roll_from_gravity(const Vec3& g) {
  // Positive when the reading is turned clockwise from the rest reading (0,-1).
  return wrap_degrees(std::atan2(-g.x, -g.y) * kRadToDeg);
}

SwipeDetector::SwipeDetector(const MotionConfig& config) : config_(config) {}

std::optional<SwipeDetection> SwipeDetector::push(Millis t, double a) {
  if (!first_t_) first_t_ = t;
  return step(t, a);
}

std::optional<SwipeDetection> SwipeDetector::step(Millis t, double a) {
  const int s = a > 0.0 ? 1 : (a < 0.0 ? -1 : 0);
  switch (phase_) {
    case Phase::Refractory:
      if (t < refractory_until_) return std::nullopt;
      phase_ = Phase::Idle;
      [[fallthrough]];
    case Phase::Idle:
      if (std::abs(a) >= config_.swipe_primary_g) {
        phase_ = Phase::Primary;
        sign_ = s;
        primary_start_ = t;
        peak_ = std::abs(a);
      }
      return std::nullopt;
    case Phase::Primary:
      if (s == sign_ && std::abs(a) >= config_.swipe_primary_g) {
        peak_ = std::max(peak_, std::abs(a));
        return std::nullopt;
      }
      // The pulse lasted from its first sample until this one.
      if (t - primary_start_ < config_.swipe_primary_min_ms) {
        phase_ = Phase::Idle;
        return step(t, a);
      }
      phase_ = Phase::AwaitOpposite;
      primary_end_ = t;
      return step(t, a);
    case Phase::AwaitOpposite: {
      if (t - primary_end_ > config_.swipe_opposite_within_ms ||
          t - primary_start_ > config_.swipe_max_window_ms) {
        phase_ = Phase::Idle;
        return step(t, a);
      }
      const bool opposite = s == -sign_ && std::abs(a) >= config_.swipe_opposite_g;
      if (!opposite) return std::nullopt;
      if (t - *first_t_ < config_.swipe_min_buffer_ms) {
        phase_ = Phase::Idle;
        return std::nullopt;
      }
      SwipeDetection d;
      d.direction = sign_ > 0 ? LateralDirection::Right : LateralDirection::Left;
      d.peak_accel_g = peak_;
      d.t_start = primary_start_;
      d.t_end = t;
      phase_ = Phase::Refractory;
      refractory_until_ = t + config_.swipe_refractory_ms;
      return d;
    }
  }
  return std::nullopt;
}

std::optional<SwipeDetection> detect_phone_swipe(
    const std::vector<std::pair<Millis, double>>& highpass_x, const MotionConfig& config) {
  SwipeDetector detector(config);
  for (const auto& [t, a] : highpass_x) {
    if (auto d = detector.push(t, a)) return d;
  }
  return std::nullopt;
}

MotionPipeline::MotionPipeline(MotionConfig config) : config_(config), swipe_(config_) {}

std::optional<SwipeDetection> MotionPipeline::ingest(const ImuSample& imu, Millis t) {
  const Vec3& a = imu.accel;
  const double magnitude = a.norm();

  if (!last_t_) {
    gravity_lp_ = a;
    swipe_lp_x_ = a.x;
    blended_roll_ = roll_from_gravity(a);
  } else {
    const double dt = std::max<Millis>(0, t - *last_t_) / 1000.0;
    const double k = lowpass_alpha(config_.gravity_cutoff_hz, dt);
    gravity_lp_.x += k * (a.x - gravity_lp_.x);
    gravity_lp_.y += k * (a.y - gravity_lp_.y);
    gravity_lp_.z += k * (a.z - gravity_lp_.z);
    swipe_lp_x_ += lowpass_alpha(config_.swipe_highpass_cutoff_hz, dt) * (a.x - swipe_lp_x_);
  }
  const double dt_s = last_t_ ? std::max<Millis>(0, t - *last_t_) / 1000.0 : 0.0;
  last_t_ = t;
  highpass_x_ = a.x - swipe_lp_x_;

  const double g_norm = gravity_lp_.norm();
  bool degenerate = false;
  if (magnitude < config_.degenerate_accel_g) {
    if (!low_accel_since_) low_accel_since_ = t;
    degenerate = t - *low_accel_since_ > config_.degenerate_after_ms;
  } else {
    low_accel_since_.reset();
  }

  if (g_norm > 0.0) {
    attitude_.gravity = {gravity_lp_.x / g_norm, gravity_lp_.y / g_norm, gravity_lp_.z / g_norm};
    attitude_.tilt_deg = tilt_from_gravity(gravity_lp_);
    const double accel_roll = roll_from_gravity(gravity_lp_);
    if (config_.use_gyro) {
      // Roll grows with positive rotation rate about +Z.
      const double predicted = blended_roll_ + imu.gyro.z * dt_s;
      blended_roll_ =
          wrap_degrees(predicted + config_.gyro_blend_weight * wrap_degrees(accel_roll - predicted));
    } else {
      blended_roll_ = accel_roll;
    }
    attitude_.roll_deg = blended_roll_;
  }
  attitude_.reliable = !degenerate && g_norm > 0.0;

  auto swipe = swipe_.push(t, highpass_x_);
  const bool newly_degenerate = degenerate && !degenerate_reported_;
  degenerate_reported_ = degenerate;
  if (newly_degenerate) {
    throw Error(ErrorCode::DegenerateGravity, "accel below free-fall bound for over " +
                                                  std::to_string(config_.degenerate_after_ms) +
                                                  " ms");
  }
  return swipe;
}

}  // namespace facefuse
