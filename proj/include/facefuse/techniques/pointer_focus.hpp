#pragma once

#include <optional>

#include "facefuse/technique.hpp"

namespace facefuse {

/// Follows one finger per technique: the lowest-numbered pointer that
/// begins while nothing is tracked, until it ends or is cancelled.
class PointerFocus {
 public:
  struct Update {
    bool began = false;
    bool ended = false;      // Ended or Cancelled
    bool cancelled = false;
    Vec2 began_at;
    Vec2 delta;              // summed movement this tick
    Vec2 position;           // last known position
    Millis down_since = 0;
  };

  Update update(const FusedSnapshot& snap);

  std::optional<int> id() const { return id_; }
  bool down() const { return id_.has_value(); }

 private:
  std::optional<int> id_;
  Vec2 last_;
  Millis down_since_ = 0;
};

}  // namespace facefuse
