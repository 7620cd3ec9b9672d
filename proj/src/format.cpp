#include "facefuse/format.hpp"

#include <cmath>
#include <cstdio>

namespace facefuse {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string render_value(const PayloadValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        if constexpr (std::is_same_v<T, double>) return fixed(v, 6);
        if constexpr (std::is_same_v<T, std::string>) return v;
      },
      value);
}

std::string render_event(const TechniqueEvent& event) {
  std::string line = std::to_string(event.t) + " EVT " + event.technique + " " + event.kind;
  for (const auto& [key, value] : event.payload) {
    line += ' ';
    line += key;
    line += '=';
    line += render_value(value);
  }
  return line;
}

}  // namespace facefuse
