#include "sdcm/scenario.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sdcm {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw std::runtime_error(origin + ": " + what);
}

void check_keys(const json& obj, const std::string& origin,
                const std::string& path,
                const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      fail(origin, "unknown key '" + item.key() + "' in " + path);
    }
  }
}

double get_num(const json& obj, const std::string& origin,
               const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(origin, path + "." + key + " must be a number");
  return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& origin, const std::string& path,
            const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    fail(origin, path + "." + key + " must be an integer");
  }
  return obj[key].get<int>();
}

bool get_bool(const json& obj, const std::string& origin,
              const std::string& path, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) fail(origin, path + "." + key + " must be a boolean");
  return obj[key].get<bool>();
}

Vec3 get_vec3(const json& v, const std::string& origin,
              const std::string& path) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() ||
      !v[1].is_number() || !v[2].is_number()) {
    fail(origin, path + " must be an array of 3 numbers");
  }
  return Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
}

RefMode parse_ref_mode(const json& obj, const std::string& origin,
                       const std::string& path, const char* key,
                       RefMode fallback) {
  if (!obj.contains(key)) return fallback;
  const std::string v = obj[key].get<std::string>();
  if (v == "recursion") return RefMode::kRecursion;
  if (v == "setpoint") return RefMode::kSetpoint;
  fail(origin, path + "." + key + " must be 'recursion' or 'setpoint'");
}

FootstepPlan parse_plan(const json& p, const std::string& origin) {
  if (!p.is_object()) fail(origin, "plan must be an object");
  if (!p.contains("type")) fail(origin, "plan.type is required");
  const std::string type = p["type"].get<std::string>();
  if (type == "walking" || type == "standing") {
    check_keys(p, origin, "plan",
               {"type", "v_x", "t_step", "n_steps", "lateral_offset",
                "vro_amplitude", "final_hold", "final_vro"});
    WalkingPlanOptions opts;
    opts.vro_amplitude = get_num(p, origin, "plan", "vro_amplitude", 0.0);
    opts.final_hold = get_num(p, origin, "plan", "final_hold", 0.0);
    opts.final_vro = get_num(p, origin, "plan", "final_vro", 0.0);
    const double v_x =
        (type == "standing") ? 0.0 : get_num(p, origin, "plan", "v_x", 0.0);
    return generate_walking_plan(v_x, get_num(p, origin, "plan", "t_step", 1.0),
                                 get_int(p, origin, "plan", "n_steps", 1),
                                 get_num(p, origin, "plan", "lateral_offset",
                                         0.0),
                                 opts);
  }
  if (type == "custom") {
    check_keys(p, origin, "plan", {"type", "steps"});
    if (!p.contains("steps") || !p["steps"].is_array() || p["steps"].empty()) {
      fail(origin, "plan.steps must be a non-empty array");
    }
    FootstepPlan plan;
    int i = 0;
    for (const auto& s : p["steps"]) {
      const std::string path = "plan.steps[" + std::to_string(i++) + "]";
      check_keys(s, origin, path, {"foot", "phi_vro", "duration"});
      Footstep step;
      if (!s.contains("foot")) fail(origin, path + ".foot is required");
      step.r_foot = get_vec3(s["foot"], origin, path + ".foot");
      step.phi_vro = get_num(s, origin, path, "phi_vro", 0.0);
      step.duration = get_num(s, origin, path, "duration", 1.0);
      plan.steps.push_back(step);
    }
    plan.validate();
    return plan;
  }
  fail(origin, "plan.type must be 'walking', 'standing' or 'custom'");
}

}  // namespace

SimConfig parse_scenario(const std::string& json_text,
                         const std::string& origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(origin, e.what());
  }
  if (!doc.is_object()) fail(origin, "top level must be an object");
  check_keys(doc, origin, "document",
             {"version", "name", "description", "params", "plan", "control",
              "sim", "initial_state"});
  const int version = get_int(doc, origin, "document", "version", 1);
  if (version != 1) fail(origin, "unsupported config version");

  SimConfig config;
  if (doc.contains("name")) config.scenario_id = doc["name"].get<std::string>();

  PlannerParams defaults;
  if (doc.contains("params")) {
    const json& p = doc["params"];
    check_keys(p, origin, "params",
               {"m", "g", "h", "I", "eta", "k_l", "k_a", "r_cop_thres"});
    config.params.m = get_num(p, origin, "params", "m", defaults.m);
    config.params.g = get_num(p, origin, "params", "g", defaults.g);
    config.params.h = get_num(p, origin, "params", "h", defaults.h);
    config.params.inertia = get_num(p, origin, "params", "I", defaults.inertia);
    config.params.eta = get_num(p, origin, "params", "eta", 0.0);
    config.params.k_l = get_num(p, origin, "params", "k_l", defaults.k_l);
    config.params.k_a = get_num(p, origin, "params", "k_a", defaults.k_a);
    config.params.r_cop_thres =
        get_num(p, origin, "params", "r_cop_thres", defaults.r_cop_thres);
  }
  try {
    config.params.finalize();
  } catch (const std::exception& e) {
    fail(origin, std::string("params: ") + e.what());
  }

  if (!doc.contains("plan")) fail(origin, "plan is required");
  config.plan = parse_plan(doc["plan"], origin);

  if (doc.contains("control")) {
    const json& c = doc["control"];
    check_keys(c, origin, "control",
               {"mode", "rate", "linear_reference", "angular_reference",
                "feedforward_linear", "feedforward_angular", "cop_constraint"});
    if (c.contains("mode")) {
      const std::string mode = c["mode"].get<std::string>();
      if (mode == "continuous") {
        config.continuous_control = true;
      } else if (mode != "zoh") {
        fail(origin, "control.mode must be 'zoh' or 'continuous'");
      }
    }
    config.control_rate = get_num(c, origin, "control", "rate", 1000.0);
    config.control.lin_ref = parse_ref_mode(c, origin, "control",
                                            "linear_reference",
                                            RefMode::kRecursion);
    config.control.ang_ref = parse_ref_mode(c, origin, "control",
                                            "angular_reference",
                                            RefMode::kRecursion);
    config.control.feedforward_lin =
        get_bool(c, origin, "control", "feedforward_linear", true);
    config.control.feedforward_ang =
        get_bool(c, origin, "control", "feedforward_angular", true);
    config.control.cop_constraint =
        get_bool(c, origin, "control", "cop_constraint", true);
  }

  if (doc.contains("sim")) {
    const json& s = doc["sim"];
    check_keys(s, origin, "sim",
               {"dt", "divergence_pos", "divergence_angle", "out_of_range"});
    config.dt = get_num(s, origin, "sim", "dt", 1e-3);
    config.divergence_pos =
        get_num(s, origin, "sim", "divergence_pos", 100.0);
    config.divergence_angle =
        get_num(s, origin, "sim", "divergence_angle", 10.0);
    if (s.contains("out_of_range")) {
      const std::string v = s["out_of_range"].get<std::string>();
      if (v == "clamp") {
        config.out_of_range = OutOfRangePolicy::kClamp;
      } else if (v == "error") {
        config.out_of_range = OutOfRangePolicy::kError;
      } else {
        fail(origin, "sim.out_of_range must be 'clamp' or 'error'");
      }
    }
  }

  if (doc.contains("initial_state")) {
    const json& s = doc["initial_state"];
    check_keys(s, origin, "initial_state", {"x", "xdot", "theta", "thetadot"});
    SpatialState init;
    if (s.contains("x")) init.x = get_vec3(s["x"], origin, "initial_state.x");
    if (s.contains("xdot")) {
      init.xdot = get_vec3(s["xdot"], origin, "initial_state.xdot");
    }
    init.theta = get_num(s, origin, "initial_state", "theta", 0.0);
    init.thetadot = get_num(s, origin, "initial_state", "thetadot", 0.0);
    config.initial_state = init;
  }

  try {
    config.validate();
  } catch (const std::exception& e) {
    fail(origin, e.what());
  }
  return config;
}

std::string scenario_to_json(const SimConfig& config) {
  json doc;
  doc["version"] = 1;
  if (!config.scenario_id.empty()) doc["name"] = config.scenario_id;
  doc["params"] = {{"m", config.params.m},
                   {"g", config.params.g},
                   {"h", config.params.h},
                   {"I", config.params.inertia},
                   {"eta", config.params.eta},
                   {"k_l", config.params.k_l},
                   {"k_a", config.params.k_a},
                   {"r_cop_thres", config.params.r_cop_thres}};
  json steps = json::array();
  for (const auto& s : config.plan.steps) {
    steps.push_back({{"foot", {s.r_foot.x(), s.r_foot.y(), s.r_foot.z()}},
                     {"phi_vro", s.phi_vro},
                     {"duration", s.duration}});
  }
  doc["plan"] = {{"type", "custom"}, {"steps", steps}};
  auto mode_name = [](RefMode m) {
    return m == RefMode::kRecursion ? "recursion" : "setpoint";
  };
  doc["control"] = {
      {"mode", config.continuous_control ? "continuous" : "zoh"},
      {"rate", config.control_rate},
      {"linear_reference", mode_name(config.control.lin_ref)},
      {"angular_reference", mode_name(config.control.ang_ref)},
      {"feedforward_linear", config.control.feedforward_lin},
      {"feedforward_angular", config.control.feedforward_ang},
      {"cop_constraint", config.control.cop_constraint}};
  doc["sim"] = {{"dt", config.dt},
                {"divergence_pos", config.divergence_pos},
                {"divergence_angle", config.divergence_angle},
                {"out_of_range", config.out_of_range == OutOfRangePolicy::kClamp
                                     ? "clamp"
                                     : "error"}};
  if (config.initial_state) {
    const auto& s = *config.initial_state;
    doc["initial_state"] = {{"x", {s.x.x(), s.x.y(), s.x.z()}},
                            {"xdot", {s.xdot.x(), s.xdot.y(), s.xdot.z()}},
                            {"theta", s.theta},
                            {"thetadot", s.thetadot}};
  }
  return doc.dump(2) + "\n";
}

namespace {

constexpr const char* kWalkingPi6 = R"json({
  "version": 1,
  "name": "walking_pi6",
  "description": "Forward walking at 0.25 m/s with the pitch objective alternating at +/-pi/6 each step.",
  "params": {"m": 65.1, "g": 9.81, "h": 0.981, "I": 2.3, "k_l": 3.0, "k_a": 3.0, "r_cop_thres": 0.12},
  "plan": {
    "type": "walking",
    "v_x": 0.25, "t_step": 1.0, "n_steps": 8, "lateral_offset": 0.0,
    "vro_amplitude": 0.5235987755982988, "final_hold": 1.0, "final_vro": 0.0
  },
  "control": {
    "mode": "zoh", "rate": 1000.0,
    "linear_reference": "recursion", "angular_reference": "setpoint",
    "feedforward_linear": true, "feedforward_angular": true,
    "cop_constraint": true
  },
  "sim": {"dt": 0.001}
})json";

constexpr const char* kStandingPi8 = R"json({
  "version": 1,
  "name": "standing_pi8",
  "description": "Standing in place, pitch objective switching between +/-pi/8 every 1 s for 5 setpoints, then returning to the origin.",
  "params": {"m": 79.2, "g": 9.81, "h": 0.981, "I": 3.96, "eta": 0.1, "k_l": 3.0, "k_a": 8.0, "r_cop_thres": 0.12},
  "plan": {
    "type": "standing",
    "t_step": 1.0, "n_steps": 5,
    "vro_amplitude": 0.39269908169872414, "final_hold": 2.0, "final_vro": 0.0
  },
  "control": {
    "mode": "zoh", "rate": 1000.0,
    "linear_reference": "recursion", "angular_reference": "recursion",
    "feedforward_linear": true, "feedforward_angular": true,
    "cop_constraint": false
  },
  "sim": {"dt": 0.001}
})json";

}  // namespace

const std::vector<BundledScenario>& bundled_scenarios() {
  static const std::vector<BundledScenario> scenarios = {
      {"walking_pi6",
       "forward walking, VRO +/-pi/6 per step, CoP constraint on",
       kWalkingPi6},
      {"standing_pi8",
       "standing, VRO +/-pi/8 every 1 s for 5 setpoints, then back to 0",
       kStandingPi8},
  };
  return scenarios;
}

SimConfig load_scenario(const std::string& name_or_path) {
  for (const auto& s : bundled_scenarios()) {
    if (s.name == name_or_path) return parse_scenario(s.json, s.name);
  }
  std::ifstream in(name_or_path);
  if (!in) {
    throw std::runtime_error("no bundled scenario or readable file named '" +
                             name_or_path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), name_or_path);
}

}  // namespace sdcm
