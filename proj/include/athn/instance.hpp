#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "athn/geometry.hpp"

namespace athn {

/// One freight order: move a load from origin to destination, available at
/// release_time (minutes since the start of the horizon).
struct Load {
  int id = 0;
  GeoPoint origin;
  GeoPoint destination;
  int release_time = 0;

  friend bool operator==(const Load&, const Load&) = default;
};

/// Scenario parameters. All times are integer minutes; costs are miles.
struct Params {
  double alpha = 0.25;        // discount for autonomous middle miles
  double beta = 0.25;         // fraction of implied first/last miles that are empty
  double gamma = 0.40;        // autonomous-mile discount during hub assignment
  int delta_minutes = 60;     // pickup-time flexibility
  int sigma_minutes = 30;     // loading/unloading duration
  int num_trucks = 100;       // K
  int num_hubs = 100;         // |H|
  int horizon_minutes = 40320;  // four weeks
  double speed_mph = 65.0;

  /// Throws ValidationError on an out-of-range field, naming it.
  void validate() const;

  friend bool operator==(const Params&, const Params&) = default;
};

struct Instance {
  std::vector<Load> loads;
  Params params;
  std::uint64_t seed = 0;

  void validate() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Synthetic-generator knobs (substitute for the proprietary dataset).
struct GeneratorConfig {
  int num_loads = 1000;
  int num_regions = 8;
  double region_spread_miles = 120.0;
  int horizon_minutes = 40320;
  double bounding_box_x_miles = 2500.0;
  double bounding_box_y_miles = 1500.0;
};

/// Deterministic for a fixed (config, params, seed). Origins/destinations are
/// drawn from Gaussian clusters around uniformly placed region centers and
/// clipped to the bounding box; release times are uniform on [0, horizon-1].
Instance generate_synthetic(const GeneratorConfig& config, const Params& params,
                            std::uint64_t seed);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& instance, const std::filesystem::path& path);

}  // namespace athn
