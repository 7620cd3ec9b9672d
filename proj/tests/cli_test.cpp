#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

/// Runs the CLI with stderr folded into stdout.
Run cli(const std::string& args) {
  const std::string cmd = std::string(FACEFUSE_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string tmp(const std::string& name, const std::string& text = "") {
  const std::string path = "/tmp/facefuse_cli_test_" + name;
  if (!text.empty()) std::ofstream(path) << text;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("generate then replay") {
  const auto trace = tmp("menu.trace");
  const auto log = tmp("menu.log");
  REQUIRE(cli("generate --scenario menu_dwell --seed 3 --out " + trace).code == 0);
  CHECK(slurp(trace).rfind("# facefuse-trace 1\n", 0) == 0);
  const auto r = cli("replay --trace " + trace + " --out " + log);
  CHECK(r.code == 0);
  CHECK(slurp(log).find("EVT touch_free_menu SELECTED item=2") != std::string::npos);
}

TEST_CASE("generate writes the same trace for the same seed") {
  const auto a = cli("generate --scenario lean_left --seed 8 --param sigma_px=2");
  const auto b = cli("generate --scenario lean_left --seed 8 --param sigma_px=2");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("malformed trace exits 1 naming the line") {
  const auto trace = tmp("bad.trace", "# facefuse-trace 1\n0 IMU 0 -1 0 0 0 0\n16 FACE DET 240\n");
  const auto r = cli("replay --trace " + trace);
  CHECK(r.code == 1);
  CHECK(r.out.find("line 3") != std::string::npos);
}

TEST_CASE("invalid frame exits 1") {
  const auto trace = tmp("invalid.trace", "0 TOUCH 0 MOVED 5 5\n");
  const auto r = cli("replay --trace " + trace);
  CHECK(r.code == 1);
  CHECK(r.out.find("line 1") != std::string::npos);
}

TEST_CASE("missing trace file exits 1") {
  CHECK(cli("replay --trace /nonexistent/x.trace").code == 1);
}

TEST_CASE("unknown config key exits 2") {
  const auto trace = tmp("ok.trace", "0 IMU 0 -1 0 0 0 0\n");
  const auto cfg = tmp("bad.json", R"({"face": {"nope": 1}})");
  const auto r = cli("replay --trace " + trace + " --config " + cfg);
  CHECK(r.code == 2);
  CHECK(r.out.find("nope") != std::string::npos);
}

TEST_CASE("config from the environment") {
  const auto trace = tmp("env.trace");
  REQUIRE(cli("generate --scenario menu_dwell --out " + trace).code == 0);
  const auto cfg = tmp("slow.json", R"({"touch_free_menu": {"timeout_ms": 3000}})");
  const std::string cmd = "env FACEFUSE_CONFIG=" + cfg + " " + std::string(FACEFUSE_CLI) + " replay --trace " + trace;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  CHECK(::pclose(pipe) == 0);
  CHECK(out.find("HIGHLIGHT") != std::string::npos);
  CHECK(out.find("SELECTED") == std::string::npos);
}

TEST_CASE("generate rejects unknown scenarios and params with 2") {
  CHECK(cli("generate --scenario moonwalk").code == 2);
  CHECK(cli("generate --scenario lean_left --param nope=1").code == 2);
  CHECK(cli("generate --scenario lean_left --param amplitude").code == 2);
}

TEST_CASE("inspect prints one line per tick") {
  const auto trace = tmp("inspect.trace");
  REQUIRE(cli("generate --scenario menu_dwell --out " + trace).code == 0);
  const auto r = cli("inspect --trace " + trace);
  CHECK(r.code == 0);
  CHECK(r.out.rfind("t=0 ", 0) == 0);
  CHECK(r.out.find("t=2066 face=PRESENT fx=240 fy=320 fs=100.0 fa=0.0 level=3 tilt=90.0 roll=90.0 touch=UP") !=
        std::string::npos);
}

TEST_CASE("scenarios lists every scenario") {
  const auto r = cli("scenarios");
  CHECK(r.code == 0);
  for (const char* name : {"face_approach", "lean_left", "lean_right", "tilt_to_3d", "phone_swipe",
                           "hold_and_swipe", "flick_and_swipe", "menu_dwell", "zoom_in", "zoom_out",
                           "rotate_device", "normal_flick"}) {
    CHECK(r.out.find(std::string(name) + ":") != std::string::npos);
  }
}
