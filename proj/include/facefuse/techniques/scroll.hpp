#pragma once

#include "facefuse/techniques/pointer_focus.hpp"

namespace facefuse {

enum class ScrollMode { Absolute, Relative };

struct ScrollConfig {
  ScrollMode mode = ScrollMode::Relative;
  Millis active_window_ms = 500;
};

inline constexpr int kMinRateExponent = -2;  // 0.25x
inline constexpr int kMaxRateExponent = 3;   // 8x

struct ScrollState {
  ScrollMode mode = ScrollMode::Relative;
  int rate_exponent = 0;  // multiplier = 2^rate_exponent
  bool active = false;
  std::optional<Millis> last_scroll_t;
  std::optional<int> level_at_activation;  // reference level while active

  double rate_multiplier() const;
};

/// Multi-scale scrolling: content moves by finger displacement times a
/// rate that follows the face-to-screen distance level.
class ScrollTechnique : public Technique {
 public:
  explicit ScrollTechnique(ScrollConfig config = {});

  const TechniqueDescriptor& descriptor() const override;
  void step(const FusedSnapshot& snap, EventEmitter& out) override;
  void describe_state(StateFields& out) const override;

  const ScrollState& state() const { return state_; }

  /// One scroll update given an explicit finger displacement (px).
  void scroll_step(const FusedSnapshot& snap, double scroll_input, bool finger_down,
                   EventEmitter& out);

 private:
  void set_exponent(int exponent, int level, EventEmitter& out);

  ScrollConfig config_;
  ScrollState state_;
  PointerFocus focus_;
};

}  // namespace facefuse
