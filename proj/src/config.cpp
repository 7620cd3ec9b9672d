#include "facefuse/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <type_traits>
#include <sstream>

#include <json.hpp>

#include "facefuse/errors.hpp"

namespace facefuse {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::BadConfig, msg); }

using Setter = std::function<void(SessionConfig&, const json&, const std::string& key)>;

/// Numeric field with inclusive range [lo, hi].
template <typename Get>
Setter num(Get get, double lo, double hi) {
  return [get, lo, hi](SessionConfig& c, const json& v, const std::string& key) {
    if (!v.is_number()) bad(key + " must be a number");
    const double d = v.get<double>();
    if (!(d >= lo && d <= hi)) bad(key + " out of range");
    auto& field = get(c);
    using F = std::remove_reference_t<decltype(field)>;
    if constexpr (std::is_integral_v<F>) {
      if (!v.is_number_integer()) bad(key + " must be an integer");
      field = static_cast<F>(v.get<std::int64_t>());
    } else {
      field = static_cast<F>(d);
    }
  };
}

template <typename Get>
Setter boolean(Get get) {
  return [get](SessionConfig& c, const json& v, const std::string& key) {
    if (!v.is_boolean()) bad(key + " must be true or false");
    get(c) = v.get<bool>();
  };
}

constexpr double kBig = 1e9;

const std::map<std::string, Setter>& fields() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
#define FF_FIELD(member) [](SessionConfig& c) -> auto& { return c.member; }
    t["mirror_camera"] = boolean(FF_FIELD(engine.mirror_camera));
    t["clock_hz"] = num(FF_FIELD(engine.clock_hz), 1, 1000);
    t["state_hz"] = num(FF_FIELD(state_hz), 1, 1000);
    t["screen.width"] = num(FF_FIELD(engine.screen.width), 1, 100000);
    t["screen.height"] = num(FF_FIELD(engine.screen.height), 1, 100000);
    t["camera.width"] = num(FF_FIELD(engine.camera.width), 1, 100000);
    t["camera.height"] = num(FF_FIELD(engine.camera.height), 1, 100000);

    t["face.enter_detections"] = num(FF_FIELD(engine.face.enter_detections), 1, 100);
    t["face.exit_misses"] = num(FF_FIELD(engine.face.exit_misses), 1, 100);
    t["face.smoothing_alpha"] = num(FF_FIELD(engine.face.smoothing_alpha), 1e-6, 1);
    t["face.scale_min"] = num(FF_FIELD(engine.face.scale_min), 1, 10000);
    t["face.scale_max"] = num(FF_FIELD(engine.face.scale_max), 1, 10000);
    t["face.move_epsilon_px"] = num(FF_FIELD(engine.face.move_epsilon_px), 0, 10000);
    t["face.staleness_ms"] = num(FF_FIELD(engine.face.staleness_ms), 1, kBig);
    t["face.exit_timeout_ms"] = num(FF_FIELD(engine.face.exit_timeout_ms), 1, kBig);
    t["face.hysteresis_fraction"] = num(FF_FIELD(engine.face.hysteresis_fraction), 0, 0.5);

    t["motion.gravity_cutoff_hz"] = num(FF_FIELD(engine.motion.gravity_cutoff_hz), 0.01, 20);
    t["motion.swipe_highpass_cutoff_hz"] = num(FF_FIELD(engine.motion.swipe_highpass_cutoff_hz), 0.01, 20);
    t["motion.use_gyro"] = boolean(FF_FIELD(engine.motion.use_gyro));
    t["motion.gyro_blend_weight"] = num(FF_FIELD(engine.motion.gyro_blend_weight), 0, 1);
    t["motion.degenerate_accel_g"] = num(FF_FIELD(engine.motion.degenerate_accel_g), 0, 1);
    t["motion.degenerate_after_ms"] = num(FF_FIELD(engine.motion.degenerate_after_ms), 0, kBig);
    t["motion.swipe_primary_g"] = num(FF_FIELD(engine.motion.swipe_primary_g), 0.01, 16);
    t["motion.swipe_primary_min_ms"] = num(FF_FIELD(engine.motion.swipe_primary_min_ms), 0, 10000);
    t["motion.swipe_opposite_g"] = num(FF_FIELD(engine.motion.swipe_opposite_g), 0.01, 16);
    t["motion.swipe_opposite_within_ms"] = num(FF_FIELD(engine.motion.swipe_opposite_within_ms), 0, 10000);
    t["motion.swipe_refractory_ms"] = num(FF_FIELD(engine.motion.swipe_refractory_ms), 0, 10000);
    t["motion.swipe_min_buffer_ms"] = num(FF_FIELD(engine.motion.swipe_min_buffer_ms), 0, 10000);
    t["motion.swipe_max_window_ms"] = num(FF_FIELD(engine.motion.swipe_max_window_ms), 1, 10000);

    t["touch.flick_speed_px_s"] = num(FF_FIELD(engine.touch.flick_speed_px_s), 1, 1e6);
    t["touch.velocity_window_ms"] = num(FF_FIELD(engine.touch.velocity_window_ms), 1, 10000);
    t["touch.history_ms"] = num(FF_FIELD(engine.touch.history_ms), 1, 10000);
    t["touch.hold_tolerance_px"] = num(FF_FIELD(engine.touch.hold_tolerance_px), 0, 10000);
    t["touch.stroke_retention_ms"] = num(FF_FIELD(engine.touch.stroke_retention_ms), 0, kBig);

    t["scroll.mode"] = [](SessionConfig& c, const json& v, const std::string& key) {
      if (v == "relative") {
        c.techniques.scroll.mode = ScrollMode::Relative;
      } else if (v == "absolute") {
        c.techniques.scroll.mode = ScrollMode::Absolute;
      } else {
        bad(key + " must be \"relative\" or \"absolute\"");
      }
    };
    t["scroll.active_window_ms"] = num(FF_FIELD(techniques.scroll.active_window_ms), 0, kBig);

    t["text_edit.document_length"] = num(FF_FIELD(techniques.text_edit.document_length), 0, 1e8);
    t["text_edit.initial_cursor"] = num(FF_FIELD(techniques.text_edit.initial_cursor), 0, 1e8);
    t["text_edit.step_ms"] = num(FF_FIELD(techniques.text_edit.step_ms), 1, kBig);
    t["text_edit.threshold_deg"] = num(FF_FIELD(techniques.text_edit.threshold_deg), 0, 90);
    t["text_edit.tap_max_ms"] = num(FF_FIELD(techniques.text_edit.tap_max_ms), 1, kBig);
    t["text_edit.tap_max_travel_px"] = num(FF_FIELD(techniques.text_edit.tap_max_travel_px), 0, 10000);

    t["map_viewer.band_center_deg"] = num(FF_FIELD(techniques.map_viewer.band_center_deg), 0, 180);
    t["map_viewer.band_half_width_deg"] = num(FF_FIELD(techniques.map_viewer.band_half_width_deg), 0, 90);
    t["map_viewer.rearm_margin_deg"] = num(FF_FIELD(techniques.map_viewer.rearm_margin_deg), 0, 90);
    t["map_viewer.min_offset_px"] = num(FF_FIELD(techniques.map_viewer.min_offset_px), 0, 10000);
    t["map_viewer.min_angle_deg"] = num(FF_FIELD(techniques.map_viewer.min_angle_deg), 0, 90);

    t["touch_free_menu.item_count"] = num(FF_FIELD(techniques.touch_free_menu.item_count), 1, 360);
    t["touch_free_menu.timeout_ms"] = num(FF_FIELD(techniques.touch_free_menu.timeout_ms), 1, kBig);
    t["touch_free_menu.hysteresis_deg"] = num(FF_FIELD(techniques.touch_free_menu.hysteresis_deg), 0, 90);

    t["flick.pair_wait_ms"] = num(FF_FIELD(techniques.flick.pair_wait_ms), 0, 10000);
    t["flick.min_flick_swipe_travel_px"] = num(FF_FIELD(techniques.flick.min_flick_swipe_travel_px), 0, 10000);
    t["flick.face_history_ms"] = num(FF_FIELD(techniques.flick.face_history_ms), 0, kBig);

    t["navigator.zoom_step"] = num(FF_FIELD(techniques.navigator.zoom_step), 1.0001, 100);
    t["navigator.rotation_step_deg"] = num(FF_FIELD(techniques.navigator.rotation_step_deg), 0.1, 180);
    t["navigator.rotation_hysteresis_deg"] = num(FF_FIELD(techniques.navigator.rotation_hysteresis_deg), 0, 90);
#undef FF_FIELD
    return t;
  }();
  return table;
}

void set_field(SessionConfig& c, const std::string& key, const json& v) {
  const auto it = fields().find(key);
  if (it == fields().end()) bad("unknown config key " + key);
  it->second(c, v, key);
}

void set_techniques(SessionConfig& c, const json& v) {
  if (!v.is_array()) bad("techniques must be an array of ids");
  std::vector<std::string> ids;
  for (const auto& item : v) {
    if (!item.is_string()) bad("techniques must be an array of ids");
    const std::string id = item.get<std::string>();
    const auto& known = builtin_technique_ids();
    if (std::find(known.begin(), known.end(), id) == known.end()) bad("unknown technique " + id);
    if (std::find(ids.begin(), ids.end(), id) != ids.end()) bad("technique listed twice: " + id);
    ids.push_back(id);
  }
  c.enabled = std::move(ids);
}

/// Cross-field checks after all values are in.
void validate(const SessionConfig& c) {
  if (c.engine.face.scale_min >= c.engine.face.scale_max) bad("face.scale_min must be below face.scale_max");
  const auto& te = c.techniques.text_edit;
  if (te.initial_cursor > te.document_length) bad("text_edit.initial_cursor exceeds document_length");
}

json parse_scalar(const std::string& text) {
  json v = json::parse(text, nullptr, false);
  if (v.is_discarded() || v.is_structured()) return json(text);
  return v;
}

}  // namespace

SessionConfig parse_config(std::string_view json_text) {
  const json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) bad("config is not valid JSON");
  if (!doc.is_object()) bad("config must be a JSON object");
  SessionConfig c;
  for (const auto& [key, value] : doc.items()) {
    if (key == "techniques") {
      set_techniques(c, value);
    } else if (value.is_object()) {
      for (const auto& [sub, v] : value.items()) set_field(c, key + "." + sub, v);
    } else {
      set_field(c, key, value);
    }
  }
  validate(c);
  return c;
}

SessionConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) bad("cannot read config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string resolve_config_path(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("FACEFUSE_CONFIG")) return env;
  return {};
}

void apply_override(SessionConfig& config, const std::string& key, const std::string& value) {
  if (key == "techniques") {
    json ids = json::array();
    std::stringstream ss(value);
    std::string id;
    while (std::getline(ss, id, ',')) ids.push_back(id);
    set_techniques(config, ids);
  } else {
    set_field(config, key, parse_scalar(value));
  }
  validate(config);
}

void apply_overrides(SessionConfig& config,
                     const std::vector<std::pair<std::string, std::string>>& overrides) {
  for (const auto& [k, v] : overrides) apply_override(config, k, v);
}

}  // namespace facefuse
