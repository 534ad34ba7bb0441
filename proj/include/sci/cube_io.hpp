#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sci/cube.hpp"

namespace sci {

// Raised for unreadable, unwritable or malformed files; distinct from
// numeric failures so the CLI can map it to the configuration exit code.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Native cube container: a 32-byte text header "SCICUBE nx ny B dtype"
// (space padded, terminated by '\n' at byte 31) followed by the payload
// in vectorize order, little-endian. dtype is f32 or f64.
enum class CubeDType { f32, f64 };

void save_cube(const FrameCube& cube, const std::string& path,
               CubeDType dtype = CubeDType::f32);
FrameCube load_cube(const std::string& path);

// Measurements reuse the container with B = 1.
void save_measurement(const Measurement& meas, const std::string& path,
                      CubeDType dtype = CubeDType::f32);
Measurement load_measurement(const std::string& path);

// Frame-sequence import/export for visualization. Grayscale only;
// 8- and 16-bit PNG/PGM are read, exports are 8-bit scaled by 255/peak.
void save_frame_png(const FrameCube& cube, int frame, const std::string& path);
void save_frame_pgm(const FrameCube& cube, int frame, const std::string& path);
FrameCube load_image_sequence(const std::vector<std::string>& paths);

}  // namespace sci
