#include "facefuse/techniques/scroll.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace facefuse {

double ScrollState::rate_multiplier() const { return std::ldexp(1.0, rate_exponent); }

ScrollTechnique::ScrollTechnique(ScrollConfig config) : config_(config) {
  state_.mode = config.mode;
}

const TechniqueDescriptor& ScrollTechnique::descriptor() const {
  static const TechniqueDescriptor d{
      "scroll", {false, true}, {false, false}, {false, true}, {"RATE_CHANGED", "SCROLL_DELTA"}};
  return d;
}

void ScrollTechnique::set_exponent(int exponent, int level, EventEmitter& out) {
  exponent = std::clamp(exponent, kMinRateExponent, kMaxRateExponent);
  if (exponent == state_.rate_exponent) return;
  state_.rate_exponent = exponent;
  out.emit("RATE_CHANGED", {{"level", std::int64_t{level}}, {"rate", state_.rate_multiplier()}});
}

void ScrollTechnique::scroll_step(const FusedSnapshot& snap, double scroll_input,
                                  bool finger_down, EventEmitter& out) {
  if (scroll_input != 0.0) state_.last_scroll_t = snap.t;
  state_.active = finger_down ||
                  (state_.last_scroll_t && snap.t - *state_.last_scroll_t <= config_.active_window_ms);

  const int level = snap.face.scale_level;
  if (state_.mode == ScrollMode::Relative) {
    if (state_.active && snap.face_available) {
      if (!state_.level_at_activation) {
        state_.level_at_activation = level;
      } else if (level != *state_.level_at_activation) {
        // Farther face (higher level) scrolls faster: one doubling per level.
        set_exponent(state_.rate_exponent + (level - *state_.level_at_activation), level, out);
        state_.level_at_activation = level;
      }
    } else {
      // Inactive: the rate is frozen and level changes are not tracked.
      state_.level_at_activation.reset();
    }
  } else if (state_.active && snap.face_available) {
    // Each level has a fixed rate: 0.25x at the closest level up to 8x.
    set_exponent(level + kMinRateExponent, level, out);
  }

  if (scroll_input != 0.0) {
    out.emit("SCROLL_DELTA", {{"delta", scroll_input * state_.rate_multiplier()},
                              {"input", scroll_input},
                              {"rate", state_.rate_multiplier()}});
  }
}

void ScrollTechnique::step(const FusedSnapshot& snap, EventEmitter& out) {
  const auto u = focus_.update(snap);
  scroll_step(snap, u.delta.y, focus_.down(), out);
}

void ScrollTechnique::describe_state(StateFields& out) const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", state_.rate_multiplier());
  out.emplace_back("scroll_rate", buf);
  out.emplace_back("scroll_active", state_.active ? "1" : "0");
}

}  // namespace facefuse
