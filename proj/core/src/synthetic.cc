#include "imf/synthetic.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "imf/error.h"

namespace imf {
namespace {

// Rows: car, bus, bike, truck. Columns: location 1..3. Values are h x w.
constexpr ObjectSize kSizes[4][3] = {
    {{16, 42}, {25, 47}, {34, 82}},
    {{31, 94}, {52, 107}, {64, 180}},
    {{15, 21}, {17, 22}, {26, 44}},
    {{22, 50}, {35, 61}, {50, 104}},
};

// Relative frequency of each class in the generated traffic.
constexpr double kClassWeights[4] = {0.55, 0.1, 0.2, 0.15};

struct Mover {
  int id;
  VehicleClass cls;
  double x, y;
  int w, h;
  double vx;
};

BoundingBox clip(const Mover& m, int width, int height) {
  const int x0 = std::max(0, static_cast<int>(std::lround(m.x)));
  const int y0 = std::max(0, static_cast<int>(std::lround(m.y)));
  const int x1 = std::min(width, static_cast<int>(std::lround(m.x)) + m.w);
  const int y1 = std::min(height, static_cast<int>(std::lround(m.y)) + m.h);
  if (x1 <= x0 || y1 <= y0) return {0, 0, 0, 0};
  return {x0, y0, x1 - x0, y1 - y0};
}

void paint(BinaryFrame& frame, const BoundingBox& box, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution fire(p);
  for (int y = box.y; y < box.bottom(); ++y) {
    for (int x = box.x; x < box.right(); ++x) {
      if (fire(rng)) frame.set(x, y);
    }
  }
}

void salt(BinaryFrame& frame, double rate, std::mt19937_64& rng) {
  if (rate <= 0.0) return;
  // Geometric gaps between noisy pixels instead of one draw per pixel.
  std::geometric_distribution<std::size_t> gap(rate);
  const std::size_t total = frame.pixel_count();
  for (std::size_t i = gap(rng); i < total; i += gap(rng) + 1) {
    frame.set(static_cast<int>(i % frame.width()), static_cast<int>(i / frame.width()));
  }
}

}  // namespace

std::string_view to_string(VehicleClass c) {
  switch (c) {
    case VehicleClass::kCar: return "car";
    case VehicleClass::kBus: return "bus";
    case VehicleClass::kBike: return "bike";
    case VehicleClass::kTruck: return "truck";
  }
  return "object";
}

ObjectSize mean_object_size(VehicleClass c, int location) {
  if (location < 1 || location > 3) throw InvalidParams("location must be 1, 2 or 3");
  return kSizes[static_cast<int>(c)][location - 1];
}

void SyntheticConfig::validate() const {
  if (width < 1 || height < 1 || frames < 1) throw InvalidParams("synthetic dims must be >= 1");
  if (location < 1 || location > 3) throw InvalidParams("location must be 1, 2 or 3");
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(noise_rate) || !prob(fill_prob) || !prob(spawn_prob)) {
    throw InvalidParams("probabilities must lie in [0, 1]");
  }
  if (max_objects < 0) throw InvalidParams("max_objects must be >= 0");
  if (!(min_speed > 0.0) || max_speed < min_speed) throw InvalidParams("bad speed range");
  if (size_jitter < 0.0 || size_jitter >= 1.0) throw InvalidParams("size_jitter must be in [0, 1)");
  if (min_visible < 1) throw InvalidParams("min_visible must be >= 1");
}

SyntheticRecording generate_recording(const SyntheticConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::discrete_distribution<int> pick_class(std::begin(kClassWeights), std::end(kClassWeights));
  std::uniform_real_distribution<double> speed(cfg.min_speed, cfg.max_speed);
  std::uniform_real_distribution<double> jitter(1.0 - cfg.size_jitter, 1.0 + cfg.size_jitter);

  SyntheticRecording rec;
  std::vector<Mover> movers;
  int next_id = 0;
  for (int f = 0; f < cfg.frames; ++f) {
    if (static_cast<int>(movers.size()) < cfg.max_objects && unit(rng) < cfg.spawn_prob) {
      Mover m;
      m.id = next_id++;
      m.cls = static_cast<VehicleClass>(pick_class(rng));
      const ObjectSize s = mean_object_size(m.cls, cfg.location);
      m.w = std::clamp(static_cast<int>(std::lround(s.w * jitter(rng))), 1, cfg.width);
      m.h = std::clamp(static_cast<int>(std::lround(s.h * jitter(rng))), 1, cfg.height);
      const bool rightward = unit(rng) < 0.5;
      m.vx = rightward ? speed(rng) : -speed(rng);
      m.x = rightward ? -m.w + 1.0 : cfg.width - 1.0;
      m.y = std::floor(unit(rng) * (cfg.height - m.h + 1));
      // Objects occupy disjoint row bands, so none is ever occluded.
      const bool clear = std::none_of(movers.begin(), movers.end(), [&](const Mover& o) {
        return m.y < o.y + o.h && o.y < m.y + m.h;
      });
      if (clear) {
        movers.push_back(m);
      } else {
        --next_id;
      }
    }

    BinaryFrame frame(cfg.width, cfg.height);
    for (const Mover& m : movers) {
      const BoundingBox box = clip(m, cfg.width, cfg.height);
      if (box.w <= 0) continue;
      paint(frame, box, cfg.fill_prob, rng);
      if (box.w >= cfg.min_visible && box.h >= cfg.min_visible) {
        rec.ground_truth.push_back({f, m.id, std::string(to_string(m.cls)), box});
      }
    }
    salt(frame, cfg.noise_rate, rng);
    rec.frames.push_back(std::move(frame));

    for (Mover& m : movers) m.x += m.vx;
    std::erase_if(movers, [&](const Mover& m) {
      return m.x >= cfg.width || m.x + m.w <= 0.0;
    });
  }
  return rec;
}

SyntheticRecording constant_velocity_object(int width, int height, int frames,
                                            BoundingBox start, int dx, int dy,
                                            double fill_prob, std::uint64_t seed) {
  if (width < 1 || height < 1 || frames < 0) throw InvalidParams("bad recording size");
  std::mt19937_64 rng(seed);
  SyntheticRecording rec;
  for (int f = 0; f < frames; ++f) {
    Mover m{0, VehicleClass::kCar, static_cast<double>(start.x + f * dx),
            static_cast<double>(start.y + f * dy), start.w, start.h, 0.0};
    BinaryFrame frame(width, height);
    const BoundingBox box = clip(m, width, height);
    if (box.w > 0) {
      paint(frame, box, fill_prob, rng);
      rec.ground_truth.push_back({f, 0, "car", box});
    }
    rec.frames.push_back(std::move(frame));
  }
  return rec;
}

std::vector<Event> frames_to_events(std::span<const BinaryFrame> frames,
                                    std::int64_t t_f_us, std::uint64_t seed) {
  if (t_f_us <= 0) throw InvalidParams("t_f must be positive");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution on(0.5);
  std::vector<Event> events;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const BinaryFrame& frame = frames[f];
    const std::size_t count = frame.popcount();
    std::size_t k = 0;
    for (int y = 0; y < frame.height(); ++y) {
      for (int x = 0; x < frame.width(); ++x) {
        if (!frame.get(x, y)) continue;
        const std::int64_t offset =
            static_cast<std::int64_t>(k) * t_f_us / static_cast<std::int64_t>(count);
        events.push_back({static_cast<std::int64_t>(f) * t_f_us + offset, x, y,
                          static_cast<std::int8_t>(on(rng) ? 1 : -1)});
        ++k;
      }
    }
  }
  return events;
}

}  // namespace imf
