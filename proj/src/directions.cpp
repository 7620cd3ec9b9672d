#include "facefuse/directions.hpp"

namespace facefuse {

double face_to_user(double image_value, bool mirror_camera) {
  return mirror_camera ? image_value : -image_value;
}

LateralDirection face_side(double image_value, bool mirror_camera) {
  return face_to_user(image_value, mirror_camera) >= 0.0 ? LateralDirection::Right
                                                         : LateralDirection::Left;
}

}  // namespace facefuse
