#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "facefuse/techniques/expressive_flick.hpp"
#include "facefuse/techniques/map_viewer.hpp"
#include "facefuse/techniques/navigator.hpp"
#include "facefuse/techniques/scroll.hpp"
#include "facefuse/techniques/text_edit.hpp"
#include "facefuse/techniques/touch_free_menu.hpp"

namespace facefuse {

struct TechniqueSettings {
  ScrollConfig scroll;
  TextEditConfig text_edit;
  MapViewerConfig map_viewer;
  MenuConfig touch_free_menu;
  FlickClassConfig flick;
  NavigatorConfig navigator;
};

/// Ids of the six built-in techniques, in default registration order.
const std::vector<std::string>& builtin_technique_ids();

/// Throws Error(BadConfig) for an unknown id.
std::unique_ptr<Technique> make_technique(std::string_view id, const TechniqueSettings& settings);

}  // namespace facefuse
