#include "facefuse/techniques/touch_free_menu.hpp"

#include <cmath>

namespace facefuse {

double menu_relative_angle(double device_roll_deg, double face_angle_deg) {
  double theta = std::fmod(device_roll_deg - face_angle_deg, 360.0);
  if (theta < 0.0) theta += 360.0;
  if (theta >= 360.0) theta -= 360.0;
  return theta;
}

int menu_sector(double theta_deg, std::optional<int> prev, int item_count, double hysteresis_deg) {
  const double sector = 360.0 / item_count;
  if (prev) {
    double d = std::fmod(std::abs(theta_deg - *prev * sector), 360.0);
    if (d > 180.0) d = 360.0 - d;
    if (d <= sector / 2.0 + hysteresis_deg) return *prev;
  }
  const long s = std::lround(theta_deg / sector);
  return static_cast<int>(((s % item_count) + item_count) % item_count);
}

TouchFreeMenuTechnique::TouchFreeMenuTechnique(MenuConfig config) : config_(config) {}

const TechniqueDescriptor& TouchFreeMenuTechnique::descriptor() const {
  static const TechniqueDescriptor d{"touch_free_menu", {false, true}, {false, true},
                                     {false, false}, {"HIGHLIGHT", "SELECTED"}};
  return d;
}

void TouchFreeMenuTechnique::step(const FusedSnapshot& snap, EventEmitter& out) {
  if (!snap.face_available || !snap.face.smoothed) {
    // Inert without a face; the highlight stays, the dwell restarts on return.
    state_.suspended = true;
    return;
  }
  if (state_.suspended) {
    state_.suspended = false;
    state_.dwell_start_t = snap.t;
  }
  const double theta = menu_relative_angle(snap.attitude.roll_deg, snap.face.smoothed->angle_deg);
  const int item = menu_sector(theta, state_.highlighted, config_.item_count, config_.hysteresis_deg);

  if (item != state_.highlighted) {
    state_.highlighted = item;
    state_.dwell_start_t = snap.t;
    out.emit("HIGHLIGHT", {{"item", std::int64_t{item}}});
    return;
  }
  if (snap.t - state_.dwell_start_t >= config_.timeout_ms) {
    state_.selected = item;
    state_.dwell_start_t = snap.t;
    out.emit("SELECTED", {{"item", std::int64_t{item}}});
  }
}

void TouchFreeMenuTechnique::describe_state(StateFields& out) const {
  out.emplace_back("menu_item", std::to_string(state_.highlighted.value_or(-1)));
}

}  // namespace facefuse
