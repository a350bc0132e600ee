#include "athn/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <string>

#include <json.hpp>

#include "athn/errors.hpp"

namespace athn {

using ordered_json = nlohmann::ordered_json;

void Params::validate() const {
  auto fail = [](const std::string& msg) { throw ValidationError("params: " + msg); };
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail("alpha must be in [0,1]");
  if (!(beta >= 0.0 && beta < 1.0)) fail("beta must be in [0,1)");
  if (!(gamma >= 0.0 && gamma <= 1.0)) fail("gamma must be in [0,1]");
  if (delta_minutes < 0) fail("delta_minutes must be >= 0");
  if (sigma_minutes < 0) fail("sigma_minutes must be >= 0");
  if (num_trucks < 0) fail("num_trucks must be >= 0");
  if (num_hubs < 1) fail("num_hubs must be >= 1");
  if (horizon_minutes <= 0) fail("horizon_minutes must be > 0");
  if (!(speed_mph > 0.0)) fail("speed_mph must be > 0");
}

void Instance::validate() const {
  params.validate();
  for (std::size_t i = 0; i < loads.size(); ++i) {
    const Load& load = loads[i];
    if (load.id != static_cast<int>(i))
      throw ValidationError("loads: ids must be unique and contiguous from 0");
    if (!std::isfinite(load.origin.x) || !std::isfinite(load.origin.y) ||
        !std::isfinite(load.destination.x) || !std::isfinite(load.destination.y))
      throw ValidationError("loads[" + std::to_string(i) + "]: coordinates must be finite");
    if (load.origin == load.destination)
      throw ValidationError("loads[" + std::to_string(i) + "]: origin equals destination");
    if (load.release_time < 0 || load.release_time > params.horizon_minutes)
      throw ValidationError("loads[" + std::to_string(i) +
                            "]: release_time outside [0, horizon_minutes]");
  }
}

Instance generate_synthetic(const GeneratorConfig& config, const Params& params,
                            std::uint64_t seed) {
  if (config.num_loads < 0) throw ConfigError("generator: num_loads must be >= 0");
  if (config.num_regions < 1) throw ConfigError("generator: num_regions must be >= 1");
  if (!(config.bounding_box_x_miles > 0.0) || !(config.bounding_box_y_miles > 0.0))
    throw ConfigError("generator: bounding box must be positive");
  if (config.horizon_minutes <= 0) throw ConfigError("generator: horizon must be positive");
  if (!(config.region_spread_miles >= 0.0))
    throw ConfigError("generator: region spread must be nonnegative");

  Instance instance;
  instance.seed = seed;
  instance.params = params;
  instance.params.horizon_minutes = config.horizon_minutes;
  instance.params.validate();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, config.bounding_box_x_miles);
  std::uniform_real_distribution<double> uy(0.0, config.bounding_box_y_miles);
  std::vector<GeoPoint> centers(static_cast<std::size_t>(config.num_regions));
  for (auto& c : centers) c = {ux(rng), uy(rng)};

  std::uniform_int_distribution<int> pick_region(0, config.num_regions - 1);
  std::normal_distribution<double> jitter(0.0, config.region_spread_miles);
  std::uniform_int_distribution<int> release(0, config.horizon_minutes - 1);

  auto clip = [&](double v, double hi) { return std::clamp(v, 0.0, hi); };
  auto sample_point = [&]() -> GeoPoint {
    const GeoPoint& c = centers[static_cast<std::size_t>(pick_region(rng))];
    return {clip(c.x + jitter(rng), config.bounding_box_x_miles),
            clip(c.y + jitter(rng), config.bounding_box_y_miles)};
  };

  instance.loads.reserve(static_cast<std::size_t>(config.num_loads));
  for (int i = 0; i < config.num_loads; ++i) {
    Load load;
    load.id = i;
    load.origin = sample_point();
    do {
      load.destination = sample_point();
    } while (load.destination == load.origin);
    load.release_time = release(rng);
    instance.loads.push_back(load);
  }
  instance.validate();
  return instance;
}

namespace {

void reject_unknown(const ordered_json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key))
      throw ParseError("unknown field \"" + where + "." + key + "\"");
  }
}

template <typename T>
T get_field(const ordered_json& obj, const std::string& where, const std::string& name) {
  if (!obj.contains(name)) throw ParseError("missing field \"" + where + "." + name + "\"");
  try {
    return obj.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError("field \"" + where + "." + name + "\" has the wrong type");
  }
}

GeoPoint parse_point(const ordered_json& obj, const std::string& where) {
  if (!obj.is_object()) throw ParseError("field \"" + where + "\" must be an object");
  reject_unknown(obj, {"x", "y"}, where);
  return {get_field<double>(obj, where, "x"), get_field<double>(obj, where, "y")};
}

}  // namespace

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path.string());
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance file must be a JSON object");
  reject_unknown(doc, {"params", "loads", "seed"}, "");

  if (!doc.contains("params")) throw ParseError("missing field \"params\"");
  const ordered_json& p = doc.at("params");
  reject_unknown(p,
                 {"alpha", "beta", "gamma", "delta_minutes", "sigma_minutes", "num_trucks",
                  "num_hubs", "horizon_minutes", "speed_mph"},
                 "params");
  Instance instance;
  instance.params.alpha = get_field<double>(p, "params", "alpha");
  instance.params.beta = get_field<double>(p, "params", "beta");
  instance.params.gamma = get_field<double>(p, "params", "gamma");
  instance.params.delta_minutes = get_field<int>(p, "params", "delta_minutes");
  instance.params.sigma_minutes = get_field<int>(p, "params", "sigma_minutes");
  instance.params.num_trucks = get_field<int>(p, "params", "num_trucks");
  instance.params.num_hubs = get_field<int>(p, "params", "num_hubs");
  instance.params.horizon_minutes = get_field<int>(p, "params", "horizon_minutes");
  instance.params.speed_mph = get_field<double>(p, "params", "speed_mph");

  instance.seed = get_field<std::uint64_t>(doc, "", "seed");

  if (!doc.contains("loads")) throw ParseError("missing field \"loads\"");
  const ordered_json& loads = doc.at("loads");
  if (!loads.is_array()) throw ParseError("field \"loads\" must be an array");
  for (std::size_t i = 0; i < loads.size(); ++i) {
    const std::string where = "loads[" + std::to_string(i) + "]";
    const ordered_json& entry = loads.at(i);
    if (!entry.is_object()) throw ParseError("field \"" + where + "\" must be an object");
    reject_unknown(entry, {"id", "origin", "destination", "release_time"}, where);
    Load load;
    load.id = get_field<int>(entry, where, "id");
    if (!entry.contains("origin")) throw ParseError("missing field \"" + where + ".origin\"");
    load.origin = parse_point(entry.at("origin"), where + ".origin");
    if (!entry.contains("destination"))
      throw ParseError("missing field \"" + where + ".destination\"");
    load.destination = parse_point(entry.at("destination"), where + ".destination");
    load.release_time = get_field<int>(entry, where, "release_time");
    instance.loads.push_back(load);
  }

  instance.validate();
  return instance;
}

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  ordered_json doc;
  doc["params"] = {{"alpha", instance.params.alpha},
                   {"beta", instance.params.beta},
                   {"gamma", instance.params.gamma},
                   {"delta_minutes", instance.params.delta_minutes},
                   {"sigma_minutes", instance.params.sigma_minutes},
                   {"num_trucks", instance.params.num_trucks},
                   {"num_hubs", instance.params.num_hubs},
                   {"horizon_minutes", instance.params.horizon_minutes},
                   {"speed_mph", instance.params.speed_mph}};
  doc["loads"] = ordered_json::array();
  for (const Load& load : instance.loads) {
    doc["loads"].push_back({{"id", load.id},
                            {"origin", {{"x", load.origin.x}, {"y", load.origin.y}}},
                            {"destination",
                             {{"x", load.destination.x}, {"y", load.destination.y}}},
                            {"release_time", load.release_time}});
  }
  doc["seed"] = instance.seed;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write instance file: " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace athn
