#pragma once

#include "facefuse/technique.hpp"

namespace facefuse {

enum class ViewMode { TwoD, ThreeD };

struct MapViewerConfig {
  double band_center_deg = 45.0;
  double band_half_width_deg = 10.0;
  double rearm_margin_deg = 5.0;    // must leave the band by this much to re-arm
  double min_offset_px = 80.0;      // |F_x - image center|
  double min_angle_deg = 10.0;      // |F_a|
};

struct MapViewerState {
  ViewMode view_mode = ViewMode::TwoD;
  bool armed = false;
  int glimpse_deg = 0;  // signed, + = user's right
};

/// Signed glimpse angle for a face offset/angle pair: both thresholds must
/// hold on the same side, then |F_a| picks 45/90/135 at 10/20/30 degrees.
int glimpse_angle(double offset_px, double angle_deg, const MapViewerConfig& config,
                  bool mirror_camera);

/// 3D map viewer: tilting into the 45 degree band toggles 2D/3D; in 3D a
/// head lean glimpses sideways.
class MapViewerTechnique : public Technique {
 public:
  explicit MapViewerTechnique(MapViewerConfig config = {});

  const TechniqueDescriptor& descriptor() const override;
  void step(const FusedSnapshot& snap, EventEmitter& out) override;
  void describe_state(StateFields& out) const override;

  const MapViewerState& state() const { return state_; }

 private:
  void set_glimpse(int angle, EventEmitter& out);

  MapViewerConfig config_;
  MapViewerState state_;
};

}  // namespace facefuse
