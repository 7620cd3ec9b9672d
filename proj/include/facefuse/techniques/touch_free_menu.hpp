#pragma once

#include "facefuse/technique.hpp"

namespace facefuse {

struct MenuConfig {
  int item_count = 8;
  Millis timeout_ms = 2000;  // 3000 is the longer setting also in use
  double hysteresis_deg = 5.0;
};

struct MenuState {
  std::optional<int> highlighted;
  Millis dwell_start_t = 0;
  std::optional<int> selected;
  bool suspended = false;  // face lost since the last step
};

/// Relative device-face angle normalized into [0, 360).
double menu_relative_angle(double device_roll_deg, double face_angle_deg);

/// Sector under the angle; keeps prev while within half a sector plus the
/// hysteresis of its center.
int menu_sector(double theta_deg, std::optional<int> prev, int item_count, double hysteresis_deg);

/// Touch-free pie menu: the relative face/device angle highlights one of
/// eight sectors; holding it for the timeout selects it.
class TouchFreeMenuTechnique : public Technique {
 public:
  explicit TouchFreeMenuTechnique(MenuConfig config = {});

  const TechniqueDescriptor& descriptor() const override;
  void step(const FusedSnapshot& snap, EventEmitter& out) override;
  void describe_state(StateFields& out) const override;

  const MenuState& state() const { return state_; }

 private:
  MenuConfig config_;
  MenuState state_;
};

}  // namespace facefuse
