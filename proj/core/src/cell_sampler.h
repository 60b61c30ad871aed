#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace imf::detail {

// Per-cell device lottery. Every consumer of sampled currents and trip points
// goes through this class so that identical seeds give identical cells.
class CellSampler {
 public:
  explicit CellSampler(std::uint64_t seed) : engine_(seed) {}

  // mean * (1 + rel_sigma * z), z ~ N(0, 1) restricted to |z| <= 4 and to a
  // strictly positive result.
  double current(double mean, double rel_sigma) {
    while (true) {
      const double z = normal_(engine_);
      if (std::abs(z) > 4.0) continue;
      const double value = mean * (1.0 + rel_sigma * z);
      if (value > 0.0) return value;
    }
  }

  // N(mean, sigma) restricted to (0, vdd).
  double trip_point(double mean, double sigma, double vdd) {
    while (true) {
      const double value = mean + sigma * normal_(engine_);
      if (value > 0.0 && value < vdd) return value;
    }
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace imf::detail
