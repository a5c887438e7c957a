#pragma once

// Command-line front end: run configuration, simulate / sweep / verify /
// stark-table, and CSV + JSON emission.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qnet/lindblad.hpp"
#include "qnet/network.hpp"

namespace qnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIntegration = 3;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  components::Variant variant = components::Variant::BitFlip;
  std::vector<double> omegas{0.0};
  /// Unset means omega / 8.
  std::optional<double> alpha;
  double gamma_flip = 0.1;
  bool stark_compensated = false;
  double relay_dephasing = 0.0;
  network::InitialState initial = network::InitialState::Codeword;
  double t_max = 20.0;
  double sample_interval = 0.5;
  lindblad::Method method = lindblad::Method::DormandPrince45;
  double dt = 0.0;
  double rtol = 1e-10;
  double atol = 1e-12;
  std::string out;
  unsigned jobs = 0;  // 0: hardware concurrency

  double alpha_for(double omega) const { return alpha ? *alpha : omega / 8.0; }
  network::MemoryParams memory_params(double omega) const;
  lindblad::IntegratorOptions integrator_options() const;
  void validate() const;
};

/// Applies the keys of a JSON object; unknown keys and bad types throw ConfigError.
void apply_json(RunConfig& cfg, const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

/// Shortest round-trip form, at most 17 significant digits, "C" locale.
std::string format_double(double v);

void write_csv(std::ostream& os, const lindblad::FidelityTrace& trace);

struct PointResult {
  double omega = 0.0;
  std::string csv_path;
  std::string sidecar_path;
  bool ok = false;
  bool accepted = false;
  std::string error;
};

/// Runs one Omega and writes `csv_path` plus a JSON sidecar next to it.
PointResult run_point(const RunConfig& cfg, double omega, const std::string& csv_path);

int cmd_simulate(const RunConfig& cfg, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, std::ostream& log);
int cmd_stark_table(double omega, std::ostream& out);

struct VerifyOptions {
  /// Test hook: flips the sign of one relay scattering entry.
  bool corrupt_relay_sign = false;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CheckResult> run_verify(const VerifyOptions& opts, std::ostream* progress = nullptr);
int cmd_verify(const VerifyOptions& opts, std::ostream& out);

/// Entry point for the `qnet` executable.
int run(int argc, char** argv);

}  // namespace qnet::cli
