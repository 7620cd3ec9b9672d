#include "facefuse/techniques/pointer_focus.hpp"

namespace facefuse {

PointerFocus::Update PointerFocus::update(const FusedSnapshot& snap) {
  Update u;
  if (!id_) {
    std::optional<int> lowest;
    for (const auto& s : snap.touches) {
      if (s.phase == TouchPhase::Began && (!lowest || s.pointer_id < *lowest)) lowest = s.pointer_id;
    }
    if (lowest) {
      // Only samples from the adopted pointer's Began onwards count.
      bool seen = false;
      for (const auto& s : snap.touches) {
        if (s.pointer_id != *lowest) continue;
        if (s.phase == TouchPhase::Began) {
          seen = true;
          id_ = s.pointer_id;
          last_ = s.position;
          down_since_ = snap.t;
          u.began = true;
          u.began_at = s.position;
          continue;
        }
        if (!seen || !id_) continue;
        u.delta = u.delta + (s.position - last_);
        last_ = s.position;
        if (s.phase == TouchPhase::Ended || s.phase == TouchPhase::Cancelled) {
          u.ended = true;
          u.cancelled = s.phase == TouchPhase::Cancelled;
          id_.reset();
        }
      }
      u.position = last_;
      u.down_since = down_since_;
      return u;
    }
    u.position = last_;
    return u;
  }

  for (const auto& s : snap.touches) {
    if (!id_ || s.pointer_id != *id_) continue;
    u.delta = u.delta + (s.position - last_);
    last_ = s.position;
    if (s.phase == TouchPhase::Ended || s.phase == TouchPhase::Cancelled) {
      u.ended = true;
      u.cancelled = s.phase == TouchPhase::Cancelled;
      id_.reset();
    }
  }
  u.position = last_;
  u.down_since = down_since_;
  return u;
}

}  // namespace facefuse
