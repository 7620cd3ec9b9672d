#include "facefuse/techniques/registry.hpp"

#include "facefuse/errors.hpp"

namespace facefuse {

const std::vector<std::string>& builtin_technique_ids() {
  static const std::vector<std::string> ids{"scroll", "text_edit", "map_viewer",
                                            "touch_free_menu", "flick", "navigator"};
  return ids;
}

std::unique_ptr<Technique> make_technique(std::string_view id, const TechniqueSettings& s) {
  if (id == "scroll") return std::make_unique<ScrollTechnique>(s.scroll);
  if (id == "text_edit") return std::make_unique<TextEditTechnique>(s.text_edit);
  if (id == "map_viewer") return std::make_unique<MapViewerTechnique>(s.map_viewer);
  if (id == "touch_free_menu") return std::make_unique<TouchFreeMenuTechnique>(s.touch_free_menu);
  if (id == "flick") return std::make_unique<ExpressiveFlickTechnique>(s.flick);
  if (id == "navigator") return std::make_unique<NavigatorTechnique>(s.navigator);
  throw Error(ErrorCode::BadConfig, "unknown technique " + std::string(id));
}

}  // namespace facefuse
