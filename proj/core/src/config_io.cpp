#include "rotoblur/config_io.hpp"

#include <fstream>
#include <iterator>

#include <nlohmann/json.hpp>

#include "rotoblur/error.hpp"

namespace rotoblur {

namespace {

using nlohmann::json;

double as_number(const json& value, const std::string& key) {
  if (!value.is_number()) throw Error(ErrorCode::kInvalidConfig, key + " must be a number");
  return value.get<double>();
}

}  // namespace

ControllerConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kInvalidConfig, "config must be a JSON object");

  ControllerConfig c;
  for (const auto& [key, value] : doc.items()) {
    if (key == "a_min_deg_s2") {
      c.a_min_deg_s2 = as_number(value, key);
    } else if (key == "activation_frames") {
      if (!value.is_number_integer()) {
        throw Error(ErrorCode::kInvalidConfig, "activation_frames must be an integer");
      }
      c.activation_frames = value.get<int>();
    } else if (key == "gain_px_per_deg_s2") {
      c.gain_px_per_deg_s2 = as_number(value, key);
    } else if (key == "sigma_max_px") {
      c.sigma_max_px = as_number(value, key);
    } else if (key == "ema_alpha") {
      c.ema_alpha = as_number(value, key);
    } else if (key == "attack_tau_s") {
      c.attack_tau_s = as_number(value, key);
    } else if (key == "release_tau_s") {
      c.release_tau_s = as_number(value, key);
    } else if (key == "v_stop_deg_s") {
      c.v_stop_deg_s = as_number(value, key);
    } else if (key == "sigma_eps_px") {
      c.sigma_eps_px = as_number(value, key);
    } else if (key == "deg_per_count") {
      c.deg_per_count = as_number(value, key);
    } else {
      throw Error(ErrorCode::kInvalidConfig, "unknown key `" + key + "`");
    }
  }
  validate(c);
  return c;
}

std::string write_config(const ControllerConfig& c) {
  json doc = {
      {"a_min_deg_s2", c.a_min_deg_s2},
      {"activation_frames", c.activation_frames},
      {"gain_px_per_deg_s2", c.gain_px_per_deg_s2},
      {"sigma_max_px", c.sigma_max_px},
      {"ema_alpha", c.ema_alpha},
      {"attack_tau_s", c.attack_tau_s},
      {"release_tau_s", c.release_tau_s},
      {"v_stop_deg_s", c.v_stop_deg_s},
      {"sigma_eps_px", c.sigma_eps_px},
      {"deg_per_count", c.deg_per_count},
  };
  return doc.dump(2) + "\n";
}

ControllerConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path);
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return parse_config(text);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail(), e.line());
  }
}

}  // namespace rotoblur
