#include "facefuse/trace.hpp"

#include <charconv>
#include <cmath>

#include "facefuse/errors.hpp"
#include "facefuse/format.hpp"

namespace facefuse {

double quantize6(double value) {
  const double q = std::round(value * 1e6) / 1e6;
  return q == 0.0 ? 0.0 : q;
}

std::string render_frame(const SensorFrame& frame) {
  std::string line = std::to_string(frame.t);
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TouchSample>) {
          line += " TOUCH " + std::to_string(p.pointer_id) + " " + to_string(p.phase) + " " +
                  fixed(p.position.x, 6) + " " + fixed(p.position.y, 6);
        } else if constexpr (std::is_same_v<T, ImuSample>) {
          line += " IMU";
          for (double v : {p.accel.x, p.accel.y, p.accel.z, p.gyro.x, p.gyro.y, p.gyro.z}) {
            line += ' ';
            line += fixed(v, 6);
          }
        } else if (!p.detected) {
          line += " FACE NONE";
        } else {
          line += " FACE DET " + fixed(p.center.x, 6) + " " + fixed(p.center.y, 6) + " " +
                  fixed(p.scale, 6) + " " + fixed(p.angle_deg, 6) + " " +
                  std::to_string(p.rotation_class);
        }
      },
      frame.payload);
  return line;
}

std::string render_trace(const Trace& trace) {
  const auto& h = trace.header;
  std::string out = "# facefuse-trace " + std::to_string(h.version) + "\n";
  out += "# screen " + std::to_string(h.screen.width) + " " + std::to_string(h.screen.height) + "\n";
  out += "# camera " + std::to_string(h.camera.width) + " " + std::to_string(h.camera.height) + "\n";
  if (!h.generator.empty()) out += "# generator " + h.generator + "\n";
  for (const auto& [key, value] : h.overrides) out += "# set " + key + "=" + value + "\n";
  for (const auto& frame : trace.frames) {
    out += render_frame(frame);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw LineError(ErrorCode::ParseError, line_no, what);
}

template <class T>
T number(std::string_view token, std::size_t line_no, const char* what) {
  T value{};
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) fail(line_no, std::string("bad ") + what + " '" + std::string(token) + "'");
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) fail(line_no, std::string("non-finite ") + what);
  }
  return value;
}

void expect_count(const std::vector<std::string_view>& tokens, std::size_t n, std::size_t line_no,
                  std::string_view kind) {
  if (tokens.size() != n) {
    fail(line_no, std::string(kind) + " frame needs " + std::to_string(n) + " fields, got " +
                      std::to_string(tokens.size()));
  }
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

}  // namespace

std::optional<SensorFrame> parse_frame_line(std::string_view line, std::size_t line_no) {
  const auto tokens = split(strip_comment(line));
  if (tokens.empty()) return std::nullopt;
  if (tokens.size() < 2) fail(line_no, "expected '<t_ms> <CHANNEL> ...'");

  SensorFrame frame;
  frame.t = number<Millis>(tokens[0], line_no, "timestamp");
  const std::string_view channel = tokens[1];
  if (channel == "TOUCH") {
    expect_count(tokens, 6, line_no, "TOUCH");
    TouchSample s;
    s.pointer_id = number<int>(tokens[2], line_no, "pointer id");
    const auto phase = touch_phase_from_string(tokens[3]);
    if (!phase) fail(line_no, "unknown touch phase '" + std::string(tokens[3]) + "'");
    s.phase = *phase;
    s.position = {number<double>(tokens[4], line_no, "x"), number<double>(tokens[5], line_no, "y")};
    frame.payload = s;
  } else if (channel == "IMU") {
    expect_count(tokens, 8, line_no, "IMU");
    double v[6];
    for (int i = 0; i < 6; ++i) v[i] = number<double>(tokens[2 + i], line_no, "IMU value");
    frame.payload = ImuSample{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
  } else if (channel == "FACE") {
    if (tokens.size() >= 3 && tokens[2] == "NONE") {
      expect_count(tokens, 3, line_no, "FACE NONE");
      frame.payload = FaceObservation{};
    } else if (tokens.size() >= 3 && tokens[2] == "DET") {
      expect_count(tokens, 8, line_no, "FACE DET");
      FaceObservation f;
      f.detected = true;
      f.center = {number<double>(tokens[3], line_no, "fx"), number<double>(tokens[4], line_no, "fy")};
      f.scale = number<double>(tokens[5], line_no, "fs");
      f.angle_deg = number<double>(tokens[6], line_no, "fa");
      f.rotation_class = number<int>(tokens[7], line_no, "rotation class");
      frame.payload = f;
    } else {
      fail(line_no, "FACE frame must be NONE or DET");
    }
  } else {
    fail(line_no, "unknown channel '" + std::string(channel) + "'");
  }
  return frame;
}

bool parse_directive(std::string_view line, std::size_t line_no, bool frames_seen, TraceHeader& h) {
  if (line.empty() || line.front() != '#') return false;
  const auto tokens = split(line.substr(1));
  if (tokens.empty()) return false;
  const std::string_view key = tokens[0];
  auto dims = [&](Dimensions& d) {
    if (frames_seen) fail(line_no, std::string(key) + " directive after the first frame");
    if (tokens.size() != 3) fail(line_no, std::string(key) + " needs width and height");
    d = {number<int>(tokens[1], line_no, "width"), number<int>(tokens[2], line_no, "height")};
    if (d.width <= 0 || d.height <= 0) fail(line_no, "dimensions must be positive");
  };
  if (key == "facefuse-trace") {
    if (tokens.size() != 2) fail(line_no, "facefuse-trace needs a version");
    h.version = number<int>(tokens[1], line_no, "version");
    if (h.version != kTraceFormatVersion) fail(line_no, "unsupported trace version");
  } else if (key == "screen") {
    dims(h.screen);
  } else if (key == "camera") {
    dims(h.camera);
  } else if (key == "generator") {
    const auto start = line.find("generator") + std::string_view("generator").size();
    std::string_view rest = line.substr(start);
    while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
    while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\r')) rest.remove_suffix(1);
    h.generator = std::string(rest);
  } else if (key == "set") {
    if (tokens.size() != 2) fail(line_no, "set needs key=value");
    const auto eq = tokens[1].find('=');
    if (eq == std::string_view::npos || eq == 0) fail(line_no, "set needs key=value");
    h.overrides.emplace_back(std::string(tokens[1].substr(0, eq)), std::string(tokens[1].substr(eq + 1)));
  } else {
    return false;  // plain comment
  }
  return true;
}

Trace parse_trace(std::string_view text, bool validate) {
  Trace trace;
  std::vector<std::size_t> line_numbers;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    if (!parse_directive(line, line_no, !trace.frames.empty(), trace.header)) {
      if (auto frame = parse_frame_line(line, line_no)) {
        trace.frames.push_back(std::move(*frame));
        line_numbers.push_back(line_no);
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  if (validate) {
    FrameValidator validator(trace.header.screen, trace.header.camera);
    for (std::size_t i = 0; i < trace.frames.size(); ++i) {
      try {
        validator.validate(trace.frames[i]);
      } catch (const Error& e) {
        throw LineError(ErrorCode::ValidationError, line_numbers[i],
                        std::string(to_string(e.code())) + ": " + e.what());
      }
    }
  }
  return trace;
}

}  // namespace facefuse
