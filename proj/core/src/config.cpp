#include "kinfluid/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "format_detail.hpp"

namespace kinfluid {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ConfigError("config field '" + field + "': " + why);
}

template <class T>
T get_as(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    fail(field, e.what());
  }
}

Vec get_vec(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() > 3) fail(field, "expected an array of up to 3 numbers");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = get_as<double>(j[i], field);
  return v;
}

void parse_kernel(const json& j, RunConfig& c) {
  for (const auto& [key, value] : j.items()) {
    if (key == "kind")
      c.kernel_kind = get_as<std::string>(value, "collision.kernel.kind");
    else if (key == "constant")
      c.kernel_constant = get_as<double>(value, "collision.kernel.constant");
    else if (key == "amplitude")
      c.kernel_amplitude = get_as<double>(value, "collision.kernel.amplitude");
    else if (key == "base")
      c.kernel_base = get_as<double>(value, "collision.kernel.base");
    else
      fail("collision.kernel." + key, "unknown key");
  }
}

void parse_collision(const json& j, RunConfig& c) {
  if (j.is_string()) {
    c.collision = j.get<std::string>();
    return;
  }
  if (!j.is_object()) fail("collision", "expected a string or an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "type")
      c.collision = get_as<std::string>(value, "collision.type");
    else if (key == "kernel")
      parse_kernel(value, c);
    else
      fail("collision." + key, "unknown key");
  }
}

void parse_scenario_params(const json& j, ScenarioParams& p) {
  for (const auto& [key, value] : j.items()) {
    const std::string field = "scenario_params." + key;
    if (key == "rho_c")
      p.rho_c = get_as<double>(value, field);
    else if (key == "f_c")
      p.f_c = get_as<double>(value, field);
    else if (key == "gap")
      p.gap = get_vec(value, field);
    else if (key == "spread_a")
      p.spread_a = get_as<double>(value, field);
    else if (key == "lattice_mean")
      p.lattice_mean = get_vec(value, field);
    else if (key == "epsilon")
      p.epsilon = get_as<double>(value, field);
    else if (key == "velocity_spread")
      p.velocity_spread = get_as<double>(value, field);
    else if (key == "velocity_mean")
      p.velocity_mean = get_vec(value, field);
    else if (key == "e0_cap")
      p.e0_cap = get_as<double>(value, field);
    else
      fail(field, "unknown key");
  }
}

const std::set<std::string> kScenarios = {"equilibrium", "homogeneous_relaxation",
                                          "two_temperature", "perturbed"};
const std::set<std::string> kCollisions = {"none", "local_alignment", "nonlocal_alignment"};
const std::set<std::string> kKernels = {"constant", "cosine_bump"};

}  // namespace

ModelParams RunConfig::model_params() const {
  ModelParams p;
  p.gamma = gamma;
  p.mu = mu;
  p.lambda = lambda;
  p.sigma = sigma;
  p.rho_floor = rho_floor;
  p.rho_f_floor = rho_f_floor;
  p.cfl = cfl;
  if (collision == "none")
    p.collision = CollisionType::None;
  else if (collision == "local_alignment")
    p.collision = CollisionType::LocalAlignment;
  else if (collision == "nonlocal_alignment")
    p.collision = CollisionType::NonlocalAlignment;
  else
    fail("collision", "unknown type '" + collision + "'");
  if (kernel_kind == "constant")
    p.kernel = AlignmentKernel::constant(kernel_constant);
  else if (kernel_kind == "cosine_bump")
    p.kernel = AlignmentKernel::cosine_bump(kernel_amplitude, kernel_base);
  else
    fail("collision.kernel.kind", "unknown kind '" + kernel_kind + "'");
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return p;
}

void RunConfig::validate() const {
  if (dimension < 1 || dimension > 3) fail("dimension", "must be 1, 2, or 3");
  if (grid_n < 4) fail("grid_n", "must be at least 4");
  if (particles_per_cell < 1) fail("particles_per_cell", "must be at least 1");
  if (!(gamma > 1.0)) fail("gamma", "gamma must exceed 1 (pressure law)");
  if (!(mu > 0.0)) fail("mu", "must be positive");
  if (!(2.0 * mu + lambda > 0.0)) fail("lambda", "2*mu + lambda must be positive");
  if (!(sigma >= 0.0)) fail("sigma", "must be nonnegative");
  if (!(cfl > 0.0 && cfl <= 1.0)) fail("cfl", "must lie in (0, 1]");
  if (fixed_dt && !(*fixed_dt > 0.0)) fail("fixed_dt", "must be positive when set");
  if (!(t_end >= 0.0)) fail("t_end", "must be nonnegative");
  if (output_stride < 1) fail("output_stride", "must be at least 1");
  if (!kScenarios.contains(scenario)) fail("scenario", "unknown scenario '" + scenario + "'");
  if (!kCollisions.contains(collision)) fail("collision", "unknown type '" + collision + "'");
  if (!kKernels.contains(kernel_kind)) fail("collision.kernel.kind", "unknown kind");
  if (!(rho_floor > 0.0)) fail("rho_floor", "must be positive");
  if (!(rho_f_floor > 0.0)) fail("rho_f_floor", "must be positive");
  if (!(scenario_params.rho_c > 0.0)) fail("scenario_params.rho_c", "must be positive");
  if (!(scenario_params.f_c > 0.0)) fail("scenario_params.f_c", "must be positive");
  if (!(scenario_params.spread_a >= 0.0)) fail("scenario_params.spread_a", "must be nonnegative");
  if (!(scenario_params.epsilon >= 0.0 && scenario_params.epsilon < 1.0))
    fail("scenario_params.epsilon", "must lie in [0, 1) to keep rho positive");
  if (!(scenario_params.velocity_spread >= 0.0))
    fail("scenario_params.velocity_spread", "must be nonnegative");
  if (!(scenario_params.e0_cap > 0.0)) fail("scenario_params.e0_cap", "must be positive");

  // full model-parameter validation, including kernel admissibility
  const ModelParams p = model_params();
  if (p.collision == CollisionType::NonlocalAlignment) {
    try {
      p.kernel.validate_on(grid());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config field 'collision.kernel': ") + e.what());
    }
  }
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");

  RunConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "dimension")
      c.dimension = get_as<int>(value, key);
    else if (key == "grid_n")
      c.grid_n = get_as<int>(value, key);
    else if (key == "particles_per_cell")
      c.particles_per_cell = get_as<int>(value, key);
    else if (key == "gamma")
      c.gamma = get_as<double>(value, key);
    else if (key == "mu")
      c.mu = get_as<double>(value, key);
    else if (key == "lambda")
      c.lambda = get_as<double>(value, key);
    else if (key == "sigma")
      c.sigma = get_as<double>(value, key);
    else if (key == "collision")
      parse_collision(value, c);
    else if (key == "cfl")
      c.cfl = get_as<double>(value, key);
    else if (key == "fixed_dt") {
      if (!value.is_null()) c.fixed_dt = get_as<double>(value, key);
    } else if (key == "t_end")
      c.t_end = get_as<double>(value, key);
    else if (key == "output_stride")
      c.output_stride = get_as<int>(value, key);
    else if (key == "scenario")
      c.scenario = get_as<std::string>(value, key);
    else if (key == "scenario_params")
      parse_scenario_params(value, c.scenario_params);
    else if (key == "seed")
      c.seed = get_as<std::uint64_t>(value, key);
    else if (key == "deterministic")
      c.deterministic = get_as<bool>(value, key);
    else if (key == "output_path")
      c.output_path = get_as<std::string>(value, key);
    else if (key == "rho_floor")
      c.rho_floor = get_as<double>(value, key);
    else if (key == "rho_f_floor")
      c.rho_f_floor = get_as<double>(value, key);
    else
      fail(key, "unknown key");
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string config_echo_json(const RunConfig& c) {
  using detail::fmt_double;
  using detail::fmt_vec;
  using detail::json_escape;
  std::string out;
  out += "{\n";
  out += "  \"dimension\": " + std::to_string(c.dimension) + ",\n";
  out += "  \"grid_n\": " + std::to_string(c.grid_n) + ",\n";
  out += "  \"particles_per_cell\": " + std::to_string(c.particles_per_cell) + ",\n";
  out += "  \"gamma\": " + fmt_double(c.gamma) + ",\n";
  out += "  \"mu\": " + fmt_double(c.mu) + ",\n";
  out += "  \"lambda\": " + fmt_double(c.lambda) + ",\n";
  out += "  \"sigma\": " + fmt_double(c.sigma) + ",\n";
  out += "  \"collision\": {\"type\": \"" + json_escape(c.collision) +
         "\", \"kernel\": {\"kind\": \"" + json_escape(c.kernel_kind) +
         "\", \"constant\": " + fmt_double(c.kernel_constant) +
         ", \"amplitude\": " + fmt_double(c.kernel_amplitude) +
         ", \"base\": " + fmt_double(c.kernel_base) + "}},\n";
  out += "  \"cfl\": " + fmt_double(c.cfl) + ",\n";
  out += "  \"fixed_dt\": " + (c.fixed_dt ? fmt_double(*c.fixed_dt) : std::string("null")) + ",\n";
  out += "  \"t_end\": " + fmt_double(c.t_end) + ",\n";
  out += "  \"output_stride\": " + std::to_string(c.output_stride) + ",\n";
  out += "  \"scenario\": \"" + json_escape(c.scenario) + "\",\n";
  out += "  \"scenario_params\": {\n";
  out += "    \"rho_c\": " + fmt_double(c.scenario_params.rho_c) + ",\n";
  out += "    \"f_c\": " + fmt_double(c.scenario_params.f_c) + ",\n";
  out += "    \"gap\": " + fmt_vec(c.scenario_params.gap) + ",\n";
  out += "    \"spread_a\": " + fmt_double(c.scenario_params.spread_a) + ",\n";
  out += "    \"lattice_mean\": " + fmt_vec(c.scenario_params.lattice_mean) + ",\n";
  out += "    \"epsilon\": " + fmt_double(c.scenario_params.epsilon) + ",\n";
  out += "    \"velocity_spread\": " + fmt_double(c.scenario_params.velocity_spread) + ",\n";
  out += "    \"velocity_mean\": " + fmt_vec(c.scenario_params.velocity_mean) + ",\n";
  out += "    \"e0_cap\": " + fmt_double(c.scenario_params.e0_cap) + "\n";
  out += "  },\n";
  out += "  \"seed\": " + std::to_string(c.seed) + ",\n";
  out += "  \"deterministic\": " + std::string(c.deterministic ? "true" : "false") + ",\n";
  out += "  \"output_path\": \"" + json_escape(c.output_path) + "\",\n";
  out += "  \"rho_floor\": " + fmt_double(c.rho_floor) + ",\n";
  out += "  \"rho_f_floor\": " + fmt_double(c.rho_f_floor) + "\n";
  out += "}\n";
  return out;
}

}  // namespace kinfluid
