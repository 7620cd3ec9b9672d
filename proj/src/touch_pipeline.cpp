#include "facefuse/touch_pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "facefuse/errors.hpp"

namespace facefuse {

std::string to_string(FlickDirection d) {
  switch (d) {
    case FlickDirection::Left: return "LEFT";
    case FlickDirection::Right: return "RIGHT";
    case FlickDirection::Up: return "UP";
    case FlickDirection::Down: return "DOWN";
  }
  return "?";
}

std::optional<int> TouchState::primary_pointer() const {
  if (active.empty()) return std::nullopt;
  return active.begin()->first;
}

const Stroke* TouchState::stroke(int pointer_id) const {
  const auto it = active.find(pointer_id);
  return it == active.end() ? nullptr : &it->second;
}

std::optional<Vec2> release_velocity(const std::deque<TimedPoint>& history, Millis window_ms) {
  if (history.size() < 2) return std::nullopt;
  const Millis newest = history.back().t;
  std::vector<TimedPoint> window;
  for (const auto& p : history) {
    if (p.t >= newest - window_ms) window.push_back(p);
  }
  if (window.size() < 2) return std::nullopt;

  // Center time on the first sample to keep the sums small.
  const Millis t0 = window.front().t;
  double mt = 0, mx = 0, my = 0;
  for (const auto& p : window) {
    mt += static_cast<double>(p.t - t0);
    mx += p.p.x;
    my += p.p.y;
  }
  const double n = static_cast<double>(window.size());
  mt /= n;
  mx /= n;
  my /= n;
  double stt = 0, stx = 0, sty = 0;
  for (const auto& p : window) {
    const double dt = static_cast<double>(p.t - t0) - mt;
    stt += dt * dt;
    stx += dt * (p.p.x - mx);
    sty += dt * (p.p.y - my);
  }
  if (stt <= 0.0) return std::nullopt;
  return Vec2{stx / stt * 1000.0, sty / stt * 1000.0};
}

double clipped_path_length(const std::vector<TimedPoint>& path, Millis t0, Millis t1) {
  if (t1 <= t0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const TimedPoint& a = path[i - 1];
    const TimedPoint& b = path[i];
    const double len = distance(a.p, b.p);
    if (len == 0.0) continue;
    if (a.t == b.t) {
      if (a.t >= t0 && a.t < t1) total += len;
      continue;
    }
    const Millis lo = std::max(a.t, t0);
    const Millis hi = std::min(b.t, t1);
    if (hi > lo) total += len * static_cast<double>(hi - lo) / static_cast<double>(b.t - a.t);
  }
  return total;
}

TouchPipeline::TouchPipeline(TouchConfig config) : config_(config) {}

std::optional<FlickDetection> TouchPipeline::ingest(const TouchSample& sample, Millis t) {
  const int id = sample.pointer_id;
  if (sample.phase == TouchPhase::Began) {
    if (state_.is_down(id)) {
      throw Error(ErrorCode::BadPhase, "pointer " + std::to_string(id) + " began twice");
    }
    Stroke s;
    s.pointer_id = id;
    s.start = s.current = sample.position;
    s.start_t = t;
    s.history.push_back({t, sample.position});
    s.path.push_back({t, sample.position});
    state_.active.emplace(id, std::move(s));
    return std::nullopt;
  }

  const auto it = state_.active.find(id);
  if (it == state_.active.end()) {
    throw Error(ErrorCode::UnknownPointer,
                "pointer " + std::to_string(id) + " " + to_string(sample.phase) + " without BEGAN");
  }
  Stroke& s = it->second;
  s.travel_px += distance(s.current, sample.position);
  s.current = sample.position;
  s.max_deviation_px = std::max(s.max_deviation_px, distance(s.start, sample.position));
  s.history.push_back({t, sample.position});
  s.path.push_back({t, sample.position});
  while (!s.history.empty() && s.history.front().t < t - config_.history_ms) s.history.pop_front();

  if (sample.phase == TouchPhase::Moved) return std::nullopt;

  std::optional<FlickDetection> flick;
  if (sample.phase == TouchPhase::Ended) {
    if (auto v = release_velocity(s.history, config_.velocity_window_ms)) {
      const double speed = std::hypot(v->x, v->y);
      if (speed >= config_.flick_speed_px_s) {
        FlickDetection f;
        f.speed_px_s = speed;
        f.velocity_px_s = *v;
        f.pointer_id = id;
        f.t = t;
        // Screen y grows downward.
        if (std::abs(v->x) >= std::abs(v->y)) {
          f.direction = v->x >= 0 ? FlickDirection::Right : FlickDirection::Left;
        } else {
          f.direction = v->y >= 0 ? FlickDirection::Down : FlickDirection::Up;
        }
        flick = f;
      }
    }
  }
  s.end_t = t;
  state_.finished.push_back(std::move(s));
  state_.active.erase(it);
  return flick;
}

void TouchPipeline::advance(Millis t) {
  std::erase_if(state_.finished, [&](const Stroke& s) {
    return s.end_t && *s.end_t < t - config_.stroke_retention_ms;
  });
}

bool TouchPipeline::within_hold_tolerance(int pointer_id) const {
  const Stroke* s = state_.stroke(pointer_id);
  if (!s) throw Error(ErrorCode::UnknownPointer, "pointer " + std::to_string(pointer_id) + " is not down");
  return s->max_deviation_px <= config_.hold_tolerance_px;
}

double TouchPipeline::travel_during(int pointer_id, Millis t0, Millis t1) const {
  return facefuse::travel_during(state_, pointer_id, t0, t1);
}

double travel_during(const TouchState& state, int pointer_id, Millis t0, Millis t1) {
  double total = 0.0;
  for (const auto& s : state.finished) {
    if (s.pointer_id == pointer_id) total += clipped_path_length(s.path, t0, t1);
  }
  if (const Stroke* s = state.stroke(pointer_id)) total += clipped_path_length(s->path, t0, t1);
  return total;
}

bool held_within(const TouchState& state, int pointer_id, double tolerance_px) {
  const Stroke* s = state.stroke(pointer_id);
  return s != nullptr && s->max_deviation_px <= tolerance_px;
}

}  // namespace facefuse
