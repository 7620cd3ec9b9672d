#include <doctest.h>

#include <stdexcept>

#include "facefuse/errors.hpp"
#include "facefuse/fusion_engine.hpp"
#include "facefuse/techniques/registry.hpp"
#include "test_support.hpp"

using namespace facefuse;

namespace {

class Probe : public Technique {
 public:
  explicit Probe(std::string id, std::vector<FusedSnapshot>* seen = nullptr) : seen_(seen) {
    descriptor_.id = std::move(id);
    descriptor_.vocabulary = {"TICK"};
  }
  const TechniqueDescriptor& descriptor() const override { return descriptor_; }
  void step(const FusedSnapshot& snap, EventEmitter& out) override {
    if (seen_) seen_->push_back(snap);
    out.emit("TICK", {{"n", std::int64_t{count_++}}});
  }

 private:
  TechniqueDescriptor descriptor_;
  std::vector<FusedSnapshot>* seen_;
  std::int64_t count_ = 0;
};

class Rogue : public Technique {
 public:
  Rogue() { descriptor_.id = "rogue"; descriptor_.vocabulary = {"OK"}; }
  const TechniqueDescriptor& descriptor() const override { return descriptor_; }
  void step(const FusedSnapshot&, EventEmitter& out) override { out.emit("NOT_DECLARED"); }

 private:
  TechniqueDescriptor descriptor_;
};

SensorFrame face_frame(Millis t) { return {t, ft::face_obs({})}; }

}  // namespace

TEST_CASE("tick time is the floor of k * 1000 / hz") {
  CHECK(tick_time(0, 60) == 0);
  CHECK(tick_time(1, 60) == 16);
  CHECK(tick_time(2, 60) == 33);
  CHECK(tick_time(3, 60) == 50);
  CHECK(tick_time(60, 60) == 1000);
  CHECK(tick_time(1, 16) == 62);
}

TEST_CASE("a tick with no frames advances time and staleness only") {
  FusionEngine engine;
  std::vector<FusedSnapshot> seen;
  engine.register_technique(std::make_unique<Probe>("probe", &seen));
  const SensorFrame f[] = {face_frame(0), face_frame(10)};
  engine.tick(16, f);
  const auto r = engine.tick(100, {});
  CHECK(r.snapshot.t == 100);
  CHECK(r.snapshot.face.staleness_ms == 90);
  CHECK(r.snapshot.face_events.empty());
  CHECK(r.events.size() == 1);
  CHECK(r.diagnostics.empty());
}

TEST_CASE("a face Entering event is passed through in the snapshot") {
  FusionEngine engine;
  const SensorFrame f1[] = {face_frame(0)};
  CHECK(engine.tick(0, f1).snapshot.face_events.empty());
  const SensorFrame f2[] = {face_frame(62)};
  const auto r = engine.tick(66, f2);
  REQUIRE(r.snapshot.face_events.size() == 1);
  CHECK(r.snapshot.face_events[0] == FaceEvent::Entering);
  CHECK(r.snapshot.face_available);
}

TEST_CASE("registering an id twice fails") {
  FusionEngine engine;
  engine.register_technique(std::make_unique<Probe>("x"));
  try {
    engine.register_technique(std::make_unique<Probe>("x"));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateIdentifier);
  }
  CHECK(engine.registry().size() == 1);
}

TEST_CASE("events come in registration order") {
  FusionEngine engine;
  engine.register_technique(std::make_unique<Probe>("b"));
  engine.register_technique(std::make_unique<Probe>("a"));
  const auto r = engine.tick(0, {});
  REQUIRE(r.events.size() == 2);
  CHECK(r.events[0].technique == "b");
  CHECK(r.events[1].technique == "a");
  CHECK(engine.find("a") != nullptr);
  CHECK(engine.find("zz") == nullptr);
}

TEST_CASE("ticks never go backwards") {
  FusionEngine engine;
  engine.tick(50, {});
  CHECK_NOTHROW(engine.tick(50, {}));
  try {
    engine.tick(49, {});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonMonotonicTime);
  }
}

TEST_CASE("pipeline errors become diagnostics and the tick goes on") {
  FusionEngine engine;
  engine.register_technique(std::make_unique<Probe>("probe"));
  const SensorFrame f[] = {{5, TouchSample{7, TouchPhase::Moved, {10, 10}}}, face_frame(6)};
  const auto r = engine.tick(16, f);
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].code == ErrorCode::UnknownPointer);
  CHECK(r.diagnostics[0].t == 5);
  CHECK(r.events.size() == 1);
  CHECK(r.snapshot.face.consecutive_hits == 1);
}

TEST_CASE("frames later than the tick are refused") {
  FusionEngine engine;
  const SensorFrame f[] = {face_frame(20)};
  const auto r = engine.tick(16, f);
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.snapshot.face.consecutive_hits == 0);
}

TEST_CASE("undeclared event kinds are a programming error") {
  FusionEngine engine;
  engine.register_technique(std::make_unique<Rogue>());
  CHECK_THROWS_AS(engine.tick(0, {}), std::logic_error);
}

TEST_CASE("face values are latched between face frames") {
  const Trace trace = ft::TraceBuilder()
                          .poses(0, 1000, [](Millis) { return ft::Pose{}; })
                          .faces(0, 1000, [](Millis t) { return ft::FaceSpec{200.0 + t / 10.0, 320, 100, 0}; })
                          .build();
  std::vector<FusedSnapshot> seen;
  SessionConfig config;
  config.enabled.clear();
  FusionEngine engine(config.engine);
  engine.register_technique(std::make_unique<Probe>("probe", &seen));
  std::size_t i = 0;
  for (int k = 0; k < 60; ++k) {
    const Millis t = tick_time(k, 60);
    std::vector<SensorFrame> due;
    bool face_due = false;
    while (i < trace.frames.size() && trace.frames[i].t <= t) {
      face_due = face_due || trace.frames[i].channel() == Channel::Face;
      due.push_back(trace.frames[i++]);
    }
    const auto before = seen.empty() ? std::optional<FaceParams>() : seen.back().face.smoothed;
    engine.tick(t, due);
    if (!face_due && before) CHECK(seen.back().face.smoothed == before);
  }
  for (std::size_t k = 1; k < seen.size(); ++k) CHECK(seen[k].t > seen[k - 1].t);
}

TEST_CASE("same frames, same events") {
  const Trace trace = ft::TraceBuilder()
                          .poses(0, 3000, [](Millis t) { return ft::Pose{90.0 - t / 60.0, t / 50.0, 0}; })
                          .faces(0, 3000, [](Millis t) { return ft::FaceSpec{240.0 + t / 20.0, 320, 90.0 + t / 50.0, t / 150.0}; })
                          .touch(500, 0, TouchPhase::Began, 300, 500)
                          .touch(900, 0, TouchPhase::Moved, 340, 520)
                          .touch(1400, 0, TouchPhase::Ended, 340, 520)
                          .build();
  const auto a = ft::run_events(trace), b = ft::run_events(trace);
  CHECK(!a.empty());
  CHECK(a == b);
}

TEST_CASE("built-in registry order and modality sets") {
  const auto& ids = builtin_technique_ids();
  REQUIRE(ids == std::vector<std::string>{"scroll", "text_edit", "map_viewer", "touch_free_menu", "flick", "navigator"});
  TechniqueSettings s;
  const ModalityUsage none{false, false}, d{true, false}, c{false, true}, dc{true, true};
  struct Row {
    ModalityUsage face, motion, touch;
  };
  const Row rows[] = {{c, none, c}, {d, none, dc}, {c, d, none}, {c, c, none}, {d, d, dc}, {dc, c, dc}};
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto t = make_technique(ids[i], s);
    CHECK(t->descriptor().id == ids[i]);
    CHECK(t->descriptor().face == rows[i].face);
    CHECK(t->descriptor().motion == rows[i].motion);
    CHECK(t->descriptor().touch == rows[i].touch);
    CHECK_FALSE(t->descriptor().vocabulary.empty());
  }
  CHECK_THROWS_AS(make_technique("teleport", s), Error);
}
