#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "qnet/cli.hpp"

namespace qnet::cli {

using nlohmann::json;

network::MemoryParams RunConfig::memory_params(double omega) const {
  network::MemoryParams p;
  p.omega = omega;
  p.alpha = alpha_for(omega);
  p.gamma_flip = gamma_flip;
  p.variant = variant;
  p.stark_compensated = stark_compensated;
  p.relay_dephasing = relay_dephasing;
  return p;
}

lindblad::IntegratorOptions RunConfig::integrator_options() const {
  lindblad::IntegratorOptions o;
  o.method = method;
  o.dt = dt;
  o.rtol = rtol;
  o.atol = atol;
  o.t_max = t_max;
  o.sample_interval = sample_interval;
  return o;
}

void RunConfig::validate() const {
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (omegas.empty()) throw ConfigError("omega list is empty");
  for (double w : omegas)
    if (!finite_nonneg(w)) throw ConfigError("omega must be finite and >= 0, got " + format_double(w));
  if (alpha && !finite_nonneg(*alpha)) throw ConfigError("alpha must be finite and >= 0");
  if (!finite_nonneg(gamma_flip)) throw ConfigError("gamma must be finite and >= 0");
  if (!finite_nonneg(relay_dephasing)) throw ConfigError("relay_dephasing must be finite and >= 0");
  if (!finite_nonneg(t_max)) throw ConfigError("tmax must be finite and >= 0");
  if (!(std::isfinite(sample_interval) && sample_interval > 0.0)) throw ConfigError("sample_interval must be > 0");
  if (method == lindblad::Method::Rk4Fixed) {
    if (!(std::isfinite(dt) && dt > 0.0)) throw ConfigError("rk4 needs dt > 0");
  } else if (!(rtol > 0.0 && atol > 0.0)) {
    throw ConfigError("rtol and atol must be > 0");
  }
}

namespace {

const char* method_name(lindblad::Method m) { return m == lindblad::Method::Rk4Fixed ? "rk4" : "dopri45"; }

lindblad::Method parse_method(const std::string& s) {
  if (s == "rk4") return lindblad::Method::Rk4Fixed;
  if (s == "dopri45") return lindblad::Method::DormandPrince45;
  throw ConfigError("unknown method '" + s + "' (rk4 or dopri45)");
}

template <class T>
T get_as(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "variant") {
        cfg.variant = components::parse_variant(get_as<std::string>(v, key));
      } else if (key == "omega") {
        if (v.is_array()) {
          cfg.omegas.clear();
          for (const auto& w : v) cfg.omegas.push_back(get_number(w, key));
        } else {
          cfg.omegas = {get_number(v, key)};
        }
      } else if (key == "alpha") {
        if (v.is_null())
          cfg.alpha.reset();
        else
          cfg.alpha = get_number(v, key);
      } else if (key == "gamma") {
        cfg.gamma_flip = get_number(v, key);
      } else if (key == "compensated") {
        if (!v.is_boolean()) throw ConfigError("config key 'compensated' must be a boolean");
        cfg.stark_compensated = v.get<bool>();
      } else if (key == "relay_dephasing") {
        cfg.relay_dephasing = get_number(v, key);
      } else if (key == "initial_state") {
        cfg.initial = network::parse_initial_state(get_as<std::string>(v, key));
      } else if (key == "tmax") {
        cfg.t_max = get_number(v, key);
      } else if (key == "sample_interval") {
        cfg.sample_interval = get_number(v, key);
      } else if (key == "method") {
        cfg.method = parse_method(get_as<std::string>(v, key));
      } else if (key == "dt") {
        cfg.dt = get_number(v, key);
      } else if (key == "rtol") {
        cfg.rtol = get_number(v, key);
      } else if (key == "atol") {
        cfg.atol = get_number(v, key);
      } else if (key == "out") {
        cfg.out = get_as<std::string>(v, key);
      } else if (key == "jobs") {
        if (!v.is_number_unsigned()) throw ConfigError("config key 'jobs' must be a non-negative integer");
        cfg.jobs = v.get<unsigned>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  RunConfig cfg;
  apply_json(cfg, j);
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json j;
  j["variant"] = components::variant_name(cfg.variant);
  j["omega"] = cfg.omegas;
  j["alpha"] = cfg.alpha ? json(*cfg.alpha) : json(nullptr);
  j["gamma"] = cfg.gamma_flip;
  j["compensated"] = cfg.stark_compensated;
  j["relay_dephasing"] = cfg.relay_dephasing;
  j["initial_state"] = network::initial_state_name(cfg.initial);
  j["tmax"] = cfg.t_max;
  j["sample_interval"] = cfg.sample_interval;
  j["method"] = method_name(cfg.method);
  if (cfg.method == lindblad::Method::Rk4Fixed) {
    j["dt"] = cfg.dt;
  } else {
    j["rtol"] = cfg.rtol;
    j["atol"] = cfg.atol;
  }
  j["out"] = cfg.out;
  return j;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const lindblad::FidelityTrace& trace) {
  os << "t,fidelity,trace_error,min_eig\n";
  for (const auto& s : trace.samples)
    os << format_double(s.t) << ',' << format_double(s.fidelity) << ',' << format_double(s.trace_error) << ','
       << format_double(s.min_eigenvalue) << '\n';
}

}  // namespace qnet::cli
