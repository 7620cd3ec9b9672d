#include "facefuse/techniques/map_viewer.hpp"

#include <cmath>

#include "facefuse/directions.hpp"

namespace facefuse {

int glimpse_angle(double offset_px, double angle_deg, const MapViewerConfig& config,
                  bool mirror_camera) {
  if (std::abs(offset_px) < config.min_offset_px) return 0;
  if (std::abs(angle_deg) < config.min_angle_deg) return 0;
  if ((offset_px > 0) != (angle_deg > 0)) return 0;

  const double a = std::abs(angle_deg);
  const int level = a >= 3 * config.min_angle_deg   ? 135
                    : a >= 2 * config.min_angle_deg ? 90
                                                    : 45;
  return face_side(offset_px, mirror_camera) == LateralDirection::Right ? level : -level;
}

MapViewerTechnique::MapViewerTechnique(MapViewerConfig config) : config_(config) {}

const TechniqueDescriptor& MapViewerTechnique::descriptor() const {
  static const TechniqueDescriptor d{
      "map_viewer", {false, true}, {true, false}, {false, false}, {"VIEW_MODE", "GLIMPSE"}};
  return d;
}

void MapViewerTechnique::set_glimpse(int angle, EventEmitter& out) {
  if (angle == state_.glimpse_deg) return;
  state_.glimpse_deg = angle;
  const char* side = angle > 0 ? "RIGHT" : angle < 0 ? "LEFT" : "CENTER";
  out.emit("GLIMPSE", {{"angle", std::int64_t{angle}}, {"side", std::string(side)}});
}

void MapViewerTechnique::step(const FusedSnapshot& snap, EventEmitter& out) {
  if (snap.attitude.reliable) {
    const double from_center = std::abs(snap.attitude.tilt_deg - config_.band_center_deg);
    if (state_.armed && from_center <= config_.band_half_width_deg) {
      state_.armed = false;
      state_.view_mode = state_.view_mode == ViewMode::TwoD ? ViewMode::ThreeD : ViewMode::TwoD;
      out.emit("VIEW_MODE",
               {{"mode", std::string(state_.view_mode == ViewMode::ThreeD ? "3D" : "2D")}});
    } else if (!state_.armed &&
               from_center >= config_.band_half_width_deg + config_.rearm_margin_deg) {
      state_.armed = true;
    }
  }

  int angle = 0;
  if (state_.view_mode == ViewMode::ThreeD && snap.face_available && snap.face.smoothed) {
    const auto& f = *snap.face.smoothed;
    angle = glimpse_angle(f.center.x - snap.camera.width / 2.0, f.angle_deg, config_,
                          snap.mirror_camera);
  }
  set_glimpse(angle, out);
}

void MapViewerTechnique::describe_state(StateFields& out) const {
  out.emplace_back("view", state_.view_mode == ViewMode::ThreeD ? "3D" : "2D");
  out.emplace_back("glimpse", std::to_string(state_.glimpse_deg));
}

}  // namespace facefuse
