#pragma once

#include <functional>

#include "facefuse/motion_pipeline.hpp"
#include "facefuse/techniques/pointer_focus.hpp"

namespace facefuse {

/// Maps a screen position to a character offset of the document.
using HitTest = std::function<int(Vec2)>;

/// Monospaced layout: fixed-width cells, fixed line height.
HitTest monospace_hit_test(double char_width_px = 20.0, double line_height_px = 40.0,
                           int chars_per_line = 32);

struct TextEditConfig {
  int document_length = 100;
  int initial_cursor = 50;
  Millis step_ms = 200;            // one character per step while engaged
  double threshold_deg = 15.0;     // |face-screen angle| beyond this engages
  Millis tap_max_ms = 300;
  double tap_max_travel_px = 10.0;
};

struct TextEditState {
  int cursor_index = 0;
  std::optional<LateralDirection> moving;
  Millis engaged_since = 0;
  int steps_taken = 0;
  std::optional<Millis> last_step_t;
};

/// Coarse-to-fine cursor placement: a tap sets the cursor, then leaning
/// the head relative to the screen steps it one character at a time.
class TextEditTechnique : public Technique {
 public:
  explicit TextEditTechnique(TextEditConfig config = {}, HitTest hit_test = monospace_hit_test());

  const TechniqueDescriptor& descriptor() const override;
  void step(const FusedSnapshot& snap, EventEmitter& out) override;
  void describe_state(StateFields& out) const override;

  const TextEditState& state() const { return state_; }

  /// Relative face-screen angle: face angle minus device roll, wrapped.
  static double relative_angle(const FusedSnapshot& snap);

 private:
  void tap(Vec2 at, EventEmitter& out);
  void lean(const FusedSnapshot& snap, EventEmitter& out);

  TextEditConfig config_;
  HitTest hit_test_;
  TextEditState state_;
  PointerFocus focus_;
  Vec2 press_at_;
  double press_excursion_ = 0.0;
};

}  // namespace facefuse
