#include "facefuse/techniques/navigator.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace facefuse {

std::string to_string(NavigatorMode m) {
  switch (m) {
    case NavigatorMode::Up: return "UP";
    case NavigatorMode::IdleDown: return "IDLE";
    case NavigatorMode::Pan: return "PAN";
    case NavigatorMode::Zoom: return "ZOOM";
    case NavigatorMode::Rotate: return "ROTATE";
  }
  return "?";
}

double NavigatorState::zoom_factor(double step) const {
  return std::pow(step, zoom_committed + zoom_live);
}

double NavigatorState::content_rotation_deg(double step_deg) const {
  return (rotation_committed - rotation_live) * step_deg;
}

int quantize_rotation_steps(double angle_deg, int prev_steps, double step_deg,
                            double hysteresis_deg) {
  if (std::abs(angle_deg - prev_steps * step_deg) <= step_deg / 2.0 + hysteresis_deg) {
    return prev_steps;
  }
  return static_cast<int>(std::lround(angle_deg / step_deg));
}

NavigatorTechnique::NavigatorTechnique(NavigatorConfig config) : config_(config) {}

const TechniqueDescriptor& NavigatorTechnique::descriptor() const {
  static const TechniqueDescriptor d{"navigator",
                                     {true, true},
                                     {false, true},
                                     {true, true},
                                     {"MODE", "PAN", "ANCHOR", "ZOOM", "ROTATE", "COMMIT"}};
  return d;
}

void NavigatorTechnique::set_mode(NavigatorMode mode, EventEmitter& out) {
  if (mode == state_.mode) return;
  state_.mode = mode;
  if (mode == NavigatorMode::Zoom || mode == NavigatorMode::Rotate) {
    out.emit("MODE", {{"mode", to_string(mode)}});
  }
}

void NavigatorTechnique::capture_references(const FusedSnapshot& snap) {
  if (!snap.face_available || !snap.face.smoothed) return;
  if (!state_.zoom_level_ref) state_.zoom_level_ref = snap.face.scale_level;
  if (!state_.rotation_ref_deg) {
    state_.rotation_ref_deg = wrap_degrees(snap.attitude.roll_deg - snap.face.smoothed->angle_deg);
  }
}

void NavigatorTechnique::emit_zoom(EventEmitter& out) {
  out.emit("ZOOM", {{"anchor_x", state_.anchor.x},
                    {"anchor_y", state_.anchor.y},
                    {"factor", std::pow(config_.zoom_step, state_.zoom_live)},
                    {"level_delta", std::int64_t{state_.zoom_live}},
                    {"total", state_.zoom_factor(config_.zoom_step)}});
}

void NavigatorTechnique::emit_rotation(EventEmitter& out) {
  out.emit("ROTATE", {{"anchor_x", state_.anchor.x},
                      {"anchor_y", state_.anchor.y},
                      {"degrees", -state_.rotation_live * config_.rotation_step_deg},
                      {"total", state_.content_rotation_deg(config_.rotation_step_deg)}});
}

void NavigatorTechnique::step(const FusedSnapshot& snap, EventEmitter& out) {
  const auto u = focus_.update(snap);
  if (u.began) {
    state_.mode = NavigatorMode::IdleDown;
    state_.anchor = u.began_at;
    state_.zoom_level_ref.reset();
    state_.rotation_ref_deg.reset();
    state_.zoom_live = 0;
    state_.rotation_live = 0;
  }
  if (state_.mode == NavigatorMode::Up) return;

  capture_references(snap);
  const bool face = snap.face_available && snap.face.smoothed;
  int zoom_delta = 0;
  int rot_steps = state_.rotation_live;
  if (face) {
    // Closer face means a lower level and a positive zoom exponent.
    if (state_.zoom_level_ref) zoom_delta = *state_.zoom_level_ref - snap.face.scale_level;
    if (state_.rotation_ref_deg) {
      const double phi = wrap_degrees(snap.attitude.roll_deg - snap.face.smoothed->angle_deg);
      rot_steps = quantize_rotation_steps(wrap_degrees(phi - *state_.rotation_ref_deg),
                                          state_.rotation_live, config_.rotation_step_deg,
                                          config_.rotation_hysteresis_deg);
    }
  }
  const bool moved = u.delta.x != 0.0 || u.delta.y != 0.0;

  switch (state_.mode) {
    case NavigatorMode::IdleDown:
    case NavigatorMode::Pan:
      if (face && zoom_delta != 0) {
        set_mode(NavigatorMode::Zoom, out);
        state_.zoom_live = zoom_delta;
        emit_zoom(out);
      } else if (face && rot_steps != 0) {
        set_mode(NavigatorMode::Rotate, out);
        state_.rotation_live = rot_steps;
        emit_rotation(out);
      } else if (moved) {
        set_mode(NavigatorMode::Pan, out);
        out.emit("PAN", {{"dx", u.delta.x}, {"dy", u.delta.y}});
      }
      break;
    case NavigatorMode::Zoom:
      if (face && zoom_delta != state_.zoom_live) {
        state_.zoom_live = zoom_delta;
        emit_zoom(out);
      }
      break;
    case NavigatorMode::Rotate:
      if (face && rot_steps != state_.rotation_live) {
        state_.rotation_live = rot_steps;
        emit_rotation(out);
      }
      break;
    case NavigatorMode::Up:
      break;
  }

  const bool locked = state_.mode == NavigatorMode::Zoom || state_.mode == NavigatorMode::Rotate;
  if (locked && moved && !u.ended) {
    state_.anchor = state_.anchor + u.delta;
    out.emit("ANCHOR", {{"x", state_.anchor.x}, {"y", state_.anchor.y}});
  }

  if (u.ended) {
    if (locked) {
      state_.zoom_committed += state_.zoom_live;
      state_.rotation_committed -= state_.rotation_live;
      state_.zoom_live = 0;
      state_.rotation_live = 0;
      out.emit("COMMIT", {{"rotation", state_.content_rotation_deg(config_.rotation_step_deg)},
                          {"zoom", state_.zoom_factor(config_.zoom_step)}});
    }
    state_.mode = NavigatorMode::Up;
    state_.zoom_level_ref.reset();
    state_.rotation_ref_deg.reset();
  }
}

void NavigatorTechnique::describe_state(StateFields& out) const {
  char zoom[32];
  std::snprintf(zoom, sizeof zoom, "%.4f", state_.zoom_factor(config_.zoom_step));
  out.emplace_back("nav_mode", to_string(state_.mode));
  out.emplace_back("zoom", zoom);
  out.emplace_back("rotation",
                   std::to_string(static_cast<int>(state_.content_rotation_deg(config_.rotation_step_deg))));
}

}  // namespace facefuse
