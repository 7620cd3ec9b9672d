#pragma once

#include <string>
#include <string_view>

#include "facefuse/technique.hpp"

namespace facefuse {

/// Fixed-point text with the given decimals; never renders "-0".
std::string fixed(double value, int decimals);

/// `<t> EVT <technique> <kind> k=v ...`, keys sorted, doubles at 6 dp.
std::string render_event(const TechniqueEvent& event);

std::string render_value(const PayloadValue& value);

}  // namespace facefuse
