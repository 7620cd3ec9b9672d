// facefuse command line: replay, generate, inspect and serve.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "facefuse/config.hpp"
#include "facefuse/errors.hpp"
#include "facefuse/gateway.hpp"
#include "facefuse/replay.hpp"
#include "facefuse/scenarios.hpp"
#include "facefuse/trace.hpp"

using namespace facefuse;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;   // unreadable, malformed or invalid trace
constexpr int kExitConfig = 2;  // bad config, scenario or parameter

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::ParseError, "cannot write " + path);
}

int report(const Error& e) {
  std::cerr << "facefuse: " << to_string(e.code()) << ": " << e.what() << "\n";
  switch (e.code()) {
    case ErrorCode::BadConfig:
    case ErrorCode::UnknownScenario:
      return kExitConfig;
    default:
      return kExitInput;
  }
}

int run_replay(const std::string& trace_path, const std::string& config_flag, const std::string& out_path) {
  try {
    const SessionConfig config = load_config(resolve_config_path(config_flag));
    const Trace trace = parse_trace(read_file(trace_path));
    std::vector<Diagnostic> diagnostics;
    const std::string log = replay(trace, config, &diagnostics);
    for (const auto& d : diagnostics) {
      std::cerr << "facefuse: t=" << d.t << " " << to_string(d.code) << ": " << d.message << "\n";
    }
    write_output(out_path, log);
    return kExitOk;
  } catch (const Error& e) {
    return report(e);
  }
}

int run_generate(const std::string& name, std::uint64_t seed, const std::vector<std::string>& params,
                 const std::string& out_path) {
  try {
    Scenario s{name, {}, seed};
    for (const auto& p : params) parse_param(p, s.params);
    write_output(out_path, render_trace(generate(s)));
    return kExitOk;
  } catch (const Error& e) {
    return report(e);
  }
}

int run_inspect(const std::string& trace_path, const std::string& config_flag) {
  try {
    const SessionConfig config = load_config(resolve_config_path(config_flag));
    const Trace trace = parse_trace(read_file(trace_path));
    SessionRunner runner(session_config_for(trace.header, config),
                         [](const TickResult& r) { std::cout << render_inspect(r) << "\n"; });
    for (const auto& f : trace.frames) runner.push(f);
    runner.finish();
    return kExitOk;
  } catch (const Error& e) {
    return report(e);
  }
}

int run_serve(int port, const std::string& config_flag) {
  try {
    Gateway gateway(load_config(resolve_config_path(config_flag)));
    gateway.start(static_cast<std::uint16_t>(port));
    std::cout << "listening on 127.0.0.1:" << gateway.port() << std::endl;
    gateway.wait();
    return kExitOk;
  } catch (const Error& e) {
    return report(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"facefuse: face, motion and touch gesture fusion"};
  app.require_subcommand(1);

  std::string trace_path, config_path, out_path, scenario;
  std::uint64_t seed = 0;
  int port = 7878;
  std::vector<std::string> params;

  auto* replay_cmd = app.add_subcommand("replay", "Replay a trace and write its event log");
  replay_cmd->add_option("--trace", trace_path, "Trace file")->required();
  replay_cmd->add_option("--config", config_path, "JSON session config (default: $FACEFUSE_CONFIG)");
  replay_cmd->add_option("--out", out_path, "Event log path (default: stdout)");

  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic scenario trace");
  gen_cmd->add_option("--scenario", scenario, "Scenario name")->required();
  gen_cmd->add_option("--seed", seed, "Noise seed");
  gen_cmd->add_option("--param", params, "Scenario parameter key=value (repeatable)");
  gen_cmd->add_option("--out", out_path, "Trace path (default: stdout)");

  auto* inspect_cmd = app.add_subcommand("inspect", "Print the fused snapshot of every tick");
  inspect_cmd->add_option("--trace", trace_path, "Trace file")->required();
  inspect_cmd->add_option("--config", config_path, "JSON session config (default: $FACEFUSE_CONFIG)");

  auto* serve_cmd = app.add_subcommand("serve", "Run the streaming gateway on localhost");
  serve_cmd->add_option("--port", port, "TCP port, 0 for any free port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--config", config_path, "JSON session config (default: $FACEFUSE_CONFIG)");

  auto* list_cmd = app.add_subcommand("scenarios", "List built-in scenarios and their parameters");

  CLI11_PARSE(app, argc, argv);

  if (*replay_cmd) return run_replay(trace_path, config_path, out_path);
  if (*gen_cmd) return run_generate(scenario, seed, params, out_path);
  if (*inspect_cmd) return run_inspect(trace_path, config_path);
  if (*serve_cmd) return run_serve(port, config_path);
  if (*list_cmd) {
    for (const auto& info : builtin_scenarios()) {
      std::cout << info.name << ": " << info.description << "\n  expects " << info.expected.technique << " "
                << info.expected.kind << " " << info.expected.key << "=" << info.expected.value << "\n ";
      for (const auto& [k, v] : info.defaults) std::cout << " " << k << "=" << v;
      std::cout << "\n";
    }
  }
  return kExitOk;
}
