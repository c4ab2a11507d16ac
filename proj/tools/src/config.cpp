#include "spacesplit_cli/config.hpp"

#include "spacesplit/map_model.hpp"
#include "spacesplit/observable.hpp"

#include <cmath>
#include <set>

namespace spacesplit::cli {

namespace {

using nlohmann::json;

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field '") + key + "' has the wrong type");
  }
}

long get_integer(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError(std::string("config field '") + key + "' must be an integer");
  }
  return v.get<long>();
}

}  // namespace

void merge_json(RunConfig& c, const json& root) {
  const json& j = root.contains("config") ? root.at("config") : root;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known{
      "command", "map", "s", "param", "direction", "observable", "runup", "N", "K", "seed",
      "diagnostics", "out", "frames", "trajectory", "oracle", "workers", "grid", "bins",
      "ensemble"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) throw ConfigError("unknown config field '" + item.key() + "'");
  }

  if (j.contains("command")) c.command = get_as<std::string>(j, "command");
  if (j.contains("map")) c.map = get_as<std::string>(j, "map");
  if (j.contains("s")) c.s = get_as<std::vector<double>>(j, "s");
  if (j.contains("param")) {
    if (j.at("param").is_null()) {
      c.param.reset();
    } else {
      c.param = static_cast<int>(get_integer(j, "param"));
    }
  }
  if (j.contains("direction")) {
    if (j.at("direction").is_null()) {
      c.direction.reset();
    } else {
      c.direction = get_as<std::vector<double>>(j, "direction");
    }
  }
  if (j.contains("observable")) c.observable = get_as<std::string>(j, "observable");
  if (j.contains("runup")) c.runup = get_integer(j, "runup");
  if (j.contains("N")) c.N = get_integer(j, "N");
  if (j.contains("K")) c.K = static_cast<int>(get_integer(j, "K"));
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
      throw ConfigError("config field 'seed' must be an integer");
    }
    if (j.at("seed").is_number_integer() && j.at("seed").get<long long>() < 0) {
      throw ConfigError("config field 'seed' must be non-negative");
    }
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("diagnostics")) c.diagnostics = get_as<bool>(j, "diagnostics");
  if (j.contains("out")) c.out = get_as<std::string>(j, "out");
  if (j.contains("frames")) c.frames = get_as<std::string>(j, "frames");
  if (j.contains("trajectory")) c.trajectory = get_as<std::string>(j, "trajectory");
  if (j.contains("oracle")) {
    const json& o = j.at("oracle");
    if (!o.is_object()) throw ConfigError("config field 'oracle' must be an object");
    for (const auto& item : o.items()) {
      if (item.key() != "delta" && item.key() != "orbits" && item.key() != "orbit_length") {
        throw ConfigError("unknown oracle field '" + item.key() + "'");
      }
    }
    if (o.contains("delta")) c.oracle_delta = get_as<double>(o, "delta");
    if (o.contains("orbits")) c.oracle_orbits = get_integer(o, "orbits");
    if (o.contains("orbit_length")) c.oracle_orbit_length = get_integer(o, "orbit_length");
  }
  if (j.contains("workers")) c.workers = static_cast<int>(get_integer(j, "workers"));
  if (j.contains("grid")) c.grid = get_as<std::vector<double>>(j, "grid");
  if (j.contains("bins")) c.bins = static_cast<int>(get_integer(j, "bins"));
  if (j.contains("ensemble")) c.ensemble = get_integer(j, "ensemble");
}

void validate(const RunConfig& c) {
  const auto model = make_model(c.map);
  make_observable(c.observable);
  const int P = model->param_dim();
  if (static_cast<int>(c.s.size()) != P) {
    throw ConfigError("s must have " + std::to_string(P) + " entries for map '" + c.map + "'");
  }
  for (double v : c.s) {
    if (!std::isfinite(v)) throw ConfigError("s must be finite");
  }
  if (c.N < 1) throw ConfigError("N must be at least 1");
  if (c.K < 1) throw ConfigError("K must be at least 1");
  if (c.runup < 0) throw ConfigError("runup must be non-negative");
  if (c.workers < 1) throw ConfigError("workers must be at least 1");

  const bool needs_direction = c.command != "histogram";
  if (needs_direction) {
    if (c.direction) {
      if (static_cast<int>(c.direction->size()) != P) {
        throw ConfigError("direction must have " + std::to_string(P) + " entries");
      }
      bool any = false;
      for (double w : *c.direction) {
        if (!std::isfinite(w)) throw ConfigError("direction must be finite");
        any = any || w != 0.0;
      }
      if (!any) throw ConfigError("direction must be nonzero");
    } else if (!c.param) {
      throw ConfigError("missing field 'param' (or 'direction')");
    } else if (*c.param < 1 || *c.param > P) {
      throw ConfigError("param must be in 1.." + std::to_string(P));
    }
  }
  if (c.command == "validate" || c.command == "response-curve") {
    if (c.oracle_orbits < 2) throw ConfigError("oracle.orbits must be at least 2");
    if (c.oracle_orbit_length < 1) throw ConfigError("oracle.orbit_length must be at least 1");
    if (c.grid.empty()) throw ConfigError("grid must not be empty");
    for (std::size_t i = 1; i < c.grid.size(); ++i) {
      if (!(c.grid[i] > c.grid[i - 1])) throw ConfigError("grid must be strictly increasing");
    }
  }
  if (c.command == "validate" && !(c.oracle_delta != 0.0 && std::isfinite(c.oracle_delta))) {
    throw ConfigError("oracle.delta must be finite and nonzero");
  }
  if (c.command == "histogram" && c.bins < 1) throw ConfigError("bins must be at least 1");
  if (c.command == "variance-profile" && c.ensemble < 2) {
    throw ConfigError("ensemble must be at least 2");
  }
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  j["map"] = c.map;
  j["s"] = c.s;
  j["param"] = c.param ? nlohmann::ordered_json(*c.param) : nlohmann::ordered_json(nullptr);
  j["direction"] =
      c.direction ? nlohmann::ordered_json(*c.direction) : nlohmann::ordered_json(nullptr);
  j["observable"] = c.observable;
  j["runup"] = c.runup;
  j["N"] = c.N;
  j["K"] = c.K;
  j["seed"] = c.seed;
  j["diagnostics"] = c.diagnostics;
  j["out"] = c.out;
  j["frames"] = c.frames;
  j["trajectory"] = c.trajectory;
  j["oracle"] = {{"delta", c.oracle_delta},
                 {"orbits", c.oracle_orbits},
                 {"orbit_length", c.oracle_orbit_length}};
  j["workers"] = c.workers;
  j["grid"] = c.grid;
  j["bins"] = c.bins;
  j["ensemble"] = c.ensemble;
  return j;
}

Vector direction_weights(const RunConfig& c, int param_dim) {
  Vector w = Vector::Zero(param_dim);
  if (c.direction) {
    for (int k = 0; k < param_dim; ++k) w[k] = (*c.direction)[static_cast<std::size_t>(k)];
  } else {
    w[*c.param - 1] = 1.0;
  }
  return w;
}

}  // namespace spacesplit::cli
