#include "facefuse/fusion_engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace facefuse {

void EventEmitter::emit(std::string kind, Payload payload) {
  const auto& vocab = descriptor_.vocabulary;
  if (std::find(vocab.begin(), vocab.end(), kind) == vocab.end()) {
    throw std::logic_error(descriptor_.id + " emitted undeclared event kind " + kind);
  }
  sink_.push_back({t_, descriptor_.id, std::move(kind), std::move(payload)});
}

Millis tick_time(std::int64_t k, int hz) { return k * 1000 / hz; }

FusionEngine::FusionEngine(EngineConfig config)
    : config_(config), face_(config.face), motion_(config.motion), touch_(config.touch) {}

void FusionEngine::register_technique(std::unique_ptr<Technique> technique) {
  if (find(technique->descriptor().id) != nullptr) {
    throw Error(ErrorCode::DuplicateIdentifier,
                "technique " + technique->descriptor().id + " already registered");
  }
  techniques_.push_back(std::move(technique));
}

std::vector<TechniqueDescriptor> FusionEngine::registry() const {
  std::vector<TechniqueDescriptor> out;
  out.reserve(techniques_.size());
  for (const auto& t : techniques_) out.push_back(t->descriptor());
  return out;
}

const Technique* FusionEngine::find(std::string_view id) const {
  for (const auto& t : techniques_) {
    if (t->descriptor().id == id) return t.get();
  }
  return nullptr;
}

void FusionEngine::apply(const SensorFrame& frame, FusedSnapshot& snap) {
  std::visit(
      [&](const auto& payload) {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, TouchSample>) {
          if (auto flick = touch_.ingest(payload, frame.t)) snap.flicks.push_back(*flick);
          snap.touches.push_back(payload);
        } else if constexpr (std::is_same_v<T, ImuSample>) {
          if (auto swipe = motion_.ingest(payload, frame.t)) snap.swipe = swipe;
        } else {
          if (auto ev = face_.ingest(payload, frame.t)) snap.face_events.push_back(*ev);
        }
      },
      frame.payload);
}

TickResult FusionEngine::tick(Millis t, std::span<const SensorFrame> frames) {
  if (last_tick_ && t < *last_tick_) {
    throw Error(ErrorCode::NonMonotonicTime, "tick " + std::to_string(t) + " precedes tick " +
                                                 std::to_string(*last_tick_));
  }
  last_tick_ = t;

  TickResult result;
  FusedSnapshot& snap = result.snapshot;

  std::vector<SensorFrame> ordered(frames.begin(), frames.end());
  std::stable_sort(ordered.begin(), ordered.end(), frame_order_less);
  for (const auto& frame : ordered) {
    if (frame.t > t) {
      result.diagnostics.push_back({frame.t, ErrorCode::NonMonotonicTime,
                                    "frame later than tick " + std::to_string(t) + " ignored"});
      continue;
    }
    try {
      apply(frame, snap);
    } catch (const Error& e) {
      result.diagnostics.push_back({frame.t, e.code(), e.what()});
    }
  }

  if (auto ev = face_.advance(t)) snap.face_events.push_back(*ev);
  touch_.advance(t);

  snap.t = t;
  snap.face = face_.state();
  snap.face_available = face_.available();
  snap.attitude = motion_.attitude();
  snap.touch = touch_.state();
  snap.hold_tolerance_px = config_.touch.hold_tolerance_px;
  snap.mirror_camera = config_.mirror_camera;
  snap.screen = config_.screen;
  snap.camera = config_.camera;

  for (auto& technique : techniques_) {
    EventEmitter emitter(technique->descriptor(), t, result.events);
    technique->step(snap, emitter);
  }
  return result;
}

}  // namespace facefuse
