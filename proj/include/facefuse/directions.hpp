#pragma once

#include "facefuse/motion_pipeline.hpp"

namespace facefuse {

// All face-derived lateral semantics go through these two functions.
// Image-space positive means face center right of the image midline or
// face angle clockwise. With mirror_camera (the default) the image is read
// like a mirror, so image-positive is the user's right; clearing the flag
// flips every face-derived left/right decision at once.

/// Image-space signed quantity expressed in the user's frame (+ = right).
double face_to_user(double image_value, bool mirror_camera);

/// Side of a non-zero image-space signed quantity.
LateralDirection face_side(double image_value, bool mirror_camera);

}  // namespace facefuse
