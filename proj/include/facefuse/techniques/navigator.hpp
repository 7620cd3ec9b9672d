#pragma once

#include "facefuse/techniques/pointer_focus.hpp"

namespace facefuse {

enum class NavigatorMode { Up, IdleDown, Pan, Zoom, Rotate };

std::string to_string(NavigatorMode m);

struct NavigatorConfig {
  double zoom_step = 1.25;        // factor per face-scale level
  double rotation_step_deg = 18;  // 20 levels over 360 degrees
  double rotation_hysteresis_deg = 5;
};

struct NavigatorState {
  NavigatorMode mode = NavigatorMode::Up;
  Vec2 anchor;
  std::optional<int> zoom_level_ref;
  std::optional<double> rotation_ref_deg;  // device roll minus face angle at press
  int zoom_committed = 0;     // zoom_factor = zoom_step^(committed + live)
  int zoom_live = 0;
  int rotation_committed = 0; // content rotation in steps
  int rotation_live = 0;

  double zoom_factor(double step) const;
  double content_rotation_deg(double step_deg) const;
};

/// Rotation steps for a relative angle, staying at prev while within half
/// a step plus hysteresis of it.
int quantize_rotation_steps(double angle_deg, int prev_steps, double step_deg, double hysteresis_deg);

/// One-hand navigator: a held finger anchors zoom (face distance levels)
/// or rotation (device roll relative to the face); plain sliding pans.
class NavigatorTechnique : public Technique {
 public:
  explicit NavigatorTechnique(NavigatorConfig config = {});

  const TechniqueDescriptor& descriptor() const override;
  void step(const FusedSnapshot& snap, EventEmitter& out) override;
  void describe_state(StateFields& out) const override;

  const NavigatorState& state() const { return state_; }

 private:
  void capture_references(const FusedSnapshot& snap);
  void emit_zoom(EventEmitter& out);
  void emit_rotation(EventEmitter& out);
  void set_mode(NavigatorMode mode, EventEmitter& out);

  NavigatorConfig config_;
  NavigatorState state_;
  PointerFocus focus_;
};

}  // namespace facefuse
