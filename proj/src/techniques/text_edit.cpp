#include "facefuse/techniques/text_edit.hpp"

#include <algorithm>
#include <cmath>

#include "facefuse/directions.hpp"

namespace facefuse {

HitTest monospace_hit_test(double char_width_px, double line_height_px, int chars_per_line) {
  return [=](Vec2 p) {
    const int row = static_cast<int>(std::floor(p.y / line_height_px));
    const int col = std::clamp(static_cast<int>(std::lround(p.x / char_width_px)), 0, chars_per_line);
    return row * chars_per_line + col;
  };
}

TextEditTechnique::TextEditTechnique(TextEditConfig config, HitTest hit_test)
    : config_(config), hit_test_(std::move(hit_test)) {
  state_.cursor_index = std::clamp(config_.initial_cursor, 0, config_.document_length);
}

const TechniqueDescriptor& TextEditTechnique::descriptor() const {
  static const TechniqueDescriptor d{
      "text_edit", {true, false}, {false, false}, {true, true}, {"CURSOR_SET", "CURSOR_MOVED"}};
  return d;
}

double TextEditTechnique::relative_angle(const FusedSnapshot& snap) {
  return wrap_degrees(snap.face.smoothed->angle_deg - snap.attitude.roll_deg);
}

void TextEditTechnique::tap(Vec2 at, EventEmitter& out) {
  state_.cursor_index = std::clamp(hit_test_(at), 0, config_.document_length);
  out.emit("CURSOR_SET", {{"index", std::int64_t{state_.cursor_index}}});
}

void TextEditTechnique::lean(const FusedSnapshot& snap, EventEmitter& out) {
  std::optional<LateralDirection> dir;
  if (snap.face_available && snap.face.smoothed) {
    const double theta = relative_angle(snap);
    if (std::abs(theta) > config_.threshold_deg) dir = face_side(theta, snap.mirror_camera);
  }

  if (dir != state_.moving) {
    state_.moving = dir;
    state_.engaged_since = snap.t;
    state_.steps_taken = 0;
  }
  if (!state_.moving) return;

  // First step on engagement, then one per full step_ms of engaged time.
  while (snap.t - state_.engaged_since >= state_.steps_taken * config_.step_ms) {
    ++state_.steps_taken;
    const int next = state_.cursor_index + (*state_.moving == LateralDirection::Right ? 1 : -1);
    if (next < 0 || next > config_.document_length) continue;
    state_.cursor_index = next;
    state_.last_step_t = snap.t;
    out.emit("CURSOR_MOVED", {{"direction", to_string(*state_.moving)},
                              {"index", std::int64_t{state_.cursor_index}}});
  }
}

void TextEditTechnique::step(const FusedSnapshot& snap, EventEmitter& out) {
  const bool was_down = focus_.down();
  const auto u = focus_.update(snap);
  if (u.began) {
    press_at_ = u.began_at;
    press_excursion_ = 0.0;
  }
  if (u.began || was_down) press_excursion_ = std::max(press_excursion_, distance(press_at_, u.position));
  if (u.ended && !u.cancelled && snap.t - u.down_since <= config_.tap_max_ms &&
      press_excursion_ <= config_.tap_max_travel_px) {
    tap(u.position, out);
  }
  lean(snap, out);
}

void TextEditTechnique::describe_state(StateFields& out) const {
  out.emplace_back("cursor", std::to_string(state_.cursor_index));
}

}  // namespace facefuse
