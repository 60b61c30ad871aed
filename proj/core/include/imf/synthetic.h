#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "imf/binary_frame.h"
#include "imf/box.h"
#include "imf/frames.h"

namespace imf {

enum class VehicleClass { kCar, kBus, kBike, kTruck };

std::string_view to_string(VehicleClass c);

// Mean object height x width in pixels at the three recording sites.
struct ObjectSize {
  int h = 0;
  int w = 0;
};
ObjectSize mean_object_size(VehicleClass c, int location);  // location 1..3

// Moving-rectangle traffic scene with Bernoulli salt noise. Objects drive
// horizontally across the frame in non-overlapping row bands.
struct SyntheticConfig {
  int width = 240;
  int height = 180;
  int frames = 500;
  int location = 2;            // 1..3, picks object sizes
  double noise_rate = 0.01;    // per-pixel salt probability
  double fill_prob = 0.7;      // per-pixel firing probability inside an object
  double spawn_prob = 0.06;    // per frame
  int max_objects = 4;
  double min_speed = 1.0;      // px / frame
  double max_speed = 4.0;
  double size_jitter = 0.15;   // relative, uniform
  int min_visible = 8;         // px; narrower clipped boxes are not annotated
  std::uint64_t seed = 1;

  void validate() const;  // throws InvalidParams
};

struct SyntheticRecording {
  std::vector<BinaryFrame> frames;
  std::vector<Annotation> ground_truth;
};

SyntheticRecording generate_recording(const SyntheticConfig& cfg);

// Single object moving at constant velocity with no noise; used to exercise
// the tracker against known motion.
SyntheticRecording constant_velocity_object(int width, int height, int frames,
                                            BoundingBox start, int dx, int dy,
                                            double fill_prob, std::uint64_t seed);

// Emits one event per set pixel, spread evenly inside each frame interval so
// that aggregate_frames with the same t_f recovers the frames. The first
// event is at t = 0; recovery needs frame 0 and the last frame to be
// nonempty.
std::vector<Event> frames_to_events(std::span<const BinaryFrame> frames,
                                    std::int64_t t_f_us, std::uint64_t seed);

}  // namespace imf
