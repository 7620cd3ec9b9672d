#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "facefuse/core_model.hpp"

namespace facefuse {

inline constexpr int kTraceFormatVersion = 1;

struct TraceHeader {
  int version = kTraceFormatVersion;
  Dimensions screen = kDefaultScreen;
  Dimensions camera = kDefaultCamera;
  std::string generator;  // free text, e.g. scenario name, seed and RNG
  std::vector<std::pair<std::string, std::string>> overrides;  // dotted config keys

  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

struct Trace {
  TraceHeader header;
  std::vector<SensorFrame> frames;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// One frame line, no newline. Floats at 6 decimals.
std::string render_frame(const SensorFrame& frame);

/// Header directives followed by one frame per line.
std::string render_trace(const Trace& trace);

/// Parses one line. Returns nullopt for blank and comment-only lines.
/// Throws LineError(ParseError) on malformed input.
std::optional<SensorFrame> parse_frame_line(std::string_view line, std::size_t line_no);

/// Applies a `# ...` header directive to h and returns true; returns false
/// for blank lines, frame lines and plain comments. Dimension directives
/// after the first frame throw LineError(ParseError).
bool parse_directive(std::string_view line, std::size_t line_no, bool frames_seen, TraceHeader& h);

/// Parses and (optionally) validates a whole trace. Throws LineError with
/// ParseError or ValidationError and the offending line number.
Trace parse_trace(std::string_view text, bool validate = true);

/// Rounds to 6 decimals the way render_frame prints.
double quantize6(double value);

}  // namespace facefuse
