#include <algorithm>
#include <atomic>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qnet/cli.hpp"
#include "qnet/kernels.hpp"

namespace qnet::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<double> kSweepDefault{0.0, 30.0, 90.0, 210.0};

std::string sidecar_for(const std::string& csv_path) {
  fs::path p(csv_path);
  if (p.extension() == ".csv") return p.replace_extension(".json").string();
  return csv_path + ".json";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

json trace_summary(const lindblad::FidelityTrace& tr) {
  json j;
  j["samples"] = tr.samples.size();
  j["steps"] = tr.steps;
  j["rejected_steps"] = tr.rejected_steps;
  j["rhs_evaluations"] = tr.rhs_evaluations;
  if (!tr.samples.empty()) {
    j["max_trace_error"] = tr.max_trace_error();
    j["max_hermiticity_error"] = tr.max_hermiticity_error();
    j["min_eigenvalue"] = tr.min_eigenvalue();
  }
  return j;
}

}  // namespace

PointResult run_point(const RunConfig& cfg, double omega, const std::string& csv_path) {
  PointResult res;
  res.omega = omega;
  res.csv_path = csv_path;
  res.sidecar_path = sidecar_for(csv_path);

  const auto params = cfg.memory_params(omega);
  json meta;
  RunConfig echo = cfg;
  echo.omegas = {omega};
  echo.alpha = params.alpha;
  meta["config"] = to_json(echo);
  meta["isa"] = kernels::isa_name(kernels::active_isa());

  lindblad::FidelityTrace trace;
  try {
    const auto model = network::assemble_memory(params);
    trace = lindblad::integrate_projected(model, network::initial_density(cfg.variant, cfg.initial),
                                          cfg.integrator_options(), network::fidelity_projector(cfg.variant));
    res.ok = true;
    res.accepted = trace.accepted();
    meta["status"] = "ok";
  } catch (const lindblad::IntegrationError& e) {
    trace = e.partial();
    res.error = e.what();
    meta["status"] = "failed";
    meta["error"] = e.what();
  }
  meta["accepted"] = res.accepted;
  meta["trace"] = trace_summary(trace);

  std::ostringstream csv;
  write_csv(csv, trace);
  write_text(csv_path, csv.str());
  write_text(res.sidecar_path, meta.dump(2) + "\n");
  return res;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (cfg.omegas.size() != 1) throw ConfigError("simulate takes exactly one omega (use sweep for several)");
  if (cfg.out.empty()) throw ConfigError("simulate needs --out <file.csv>");
  const PointResult r = run_point(cfg, cfg.omegas.front(), cfg.out);
  if (!r.ok) {
    log << "error: integration failed: " << r.error << " (partial output in " << r.csv_path << ")\n";
    return kExitIntegration;
  }
  if (!r.accepted) log << "warning: run flagged by the trace/Hermiticity/positivity monitors; see " << r.sidecar_path << "\n";
  log << "wrote " << r.csv_path << " and " << r.sidecar_path << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg_in, std::ostream& log) {
  RunConfig cfg = cfg_in;
  cfg.validate();
  std::vector<double> omegas;
  for (double w : cfg.omegas) {
    if (std::find(omegas.begin(), omegas.end(), w) != omegas.end())
      log << "warning: duplicate omega " << format_double(w) << " ignored\n";
    else
      omegas.push_back(w);
  }
  const fs::path dir = cfg.out.empty() ? fs::path("sweep") : fs::path(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());

  std::vector<PointResult> results(omegas.size());
  std::vector<std::string> names(omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i) names[i] = "omega_" + format_double(omegas[i]) + ".csv";

  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < omegas.size(); i = next++) {
      try {
        results[i] = run_point(cfg, omegas[i], (dir / names[i]).string());
      } catch (const std::exception& e) {
        results[i].omega = omegas[i];
        results[i].error = e.what();
      }
      std::lock_guard lock(log_mutex);
      log << "omega=" << format_double(omegas[i]) << ": " << (results[i].ok ? "ok" : "failed: " + results[i].error)
          << "\n";
    }
  };
  unsigned n_threads = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, omegas.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  json manifest;
  manifest["variant"] = components::variant_name(cfg.variant);
  manifest["gamma"] = cfg.gamma_flip;
  manifest["compensated"] = cfg.stark_compensated;
  manifest["initial_state"] = network::initial_state_name(cfg.initial);
  manifest["tmax"] = cfg.t_max;
  manifest["runs"] = json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    json run;
    run["omega"] = omegas[i];
    run["alpha"] = cfg.alpha_for(omegas[i]);
    run["csv"] = names[i];
    run["status"] = results[i].ok ? "ok" : "failed";
    run["accepted"] = results[i].accepted;
    if (!results[i].ok) {
      run["error"] = results[i].error;
      all_ok = false;
    }
    manifest["runs"].push_back(run);
  }
  const std::string manifest_path = (dir / "manifest.json").string();
  write_text(manifest_path, manifest.dump(2) + "\n");
  log << "wrote " << manifest_path << "\n";
  return all_ok ? kExitOk : kExitIntegration;
}

int cmd_stark_table(double omega, std::ostream& out) {
  if (!(std::isfinite(omega) && omega >= 0.0)) throw ConfigError("omega must be finite and >= 0");
  network::MemoryParams p;
  p.omega = omega;
  const auto rows = network::stark_shift_table(p);
  const auto ref = network::published_stark_table();
  auto lv = [](int l) { return l == level::g ? 'g' : 'h'; };
  out << "Q1Q2Q3  R1R2  " << std::setw(10) << "SS1" << std::setw(10) << "SS2" << std::setw(10) << "SS3"
      << std::setw(10) << "total" << "  reference\n";
  bool all_match = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << lv(r.qubits[0]) << lv(r.qubits[1]) << lv(r.qubits[2]) << "     " << lv(r.relays[0]) << lv(r.relays[1])
        << "    ";
    double total = 0.0;
    for (double s : r.shift) {
      out << std::setw(10) << format_double(s);
      total += s;
    }
    out << std::setw(10) << format_double(total);
    bool match = r.qubits == ref[i].qubits && r.relays == ref[i].relays;
    for (std::size_t q = 0; q < 3; ++q) match = match && std::abs(r.shift[q] - omega * ref[i].shift[q]) < 1e-12;
    all_match = all_match && match;
    out << "  " << (match ? "same" : "differs") << "\n";
  }
  out << "(shifts for omega = " << format_double(omega) << "; reference rows "
      << (all_match ? "all reproduced" : "not all reproduced") << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"qnet: SLH network composition and Lindblad simulation of a three-qubit memory"};
  app.require_subcommand(1);

  struct Flags {
    std::string config;
    std::vector<std::string> omega;
    std::optional<double> alpha, gamma, tmax, sample_interval, dt, rtol, atol, relay_dephasing;
    std::optional<std::string> variant, initial, method, out;
    std::optional<unsigned> jobs;
    bool compensated = false;
  } f;
  auto add_run_flags = [&f](CLI::App* sub) {
    sub->add_option("--config", f.config, "JSON config file; flags override its keys");
    sub->add_option("--omega", f.omega, "feedback parameter(s), comma separated for sweep (sweep default 0,30,90,210)")->delimiter(',');
    sub->add_option("--alpha", f.alpha, "probe amplitude (default omega/8)");
    sub->add_option("--gamma", f.gamma, "bit/phase-flip error rate (default 0.1)");
    sub->add_option("--variant", f.variant, "bitflip | phaseflip");
    sub->add_flag("--compensated", f.compensated, "drop the Stark-shift terms");
    sub->add_option("--initial", f.initial, "codeword | flip-q1 | flip-q2 | flip-q3");
    sub->add_option("--tmax", f.tmax, "final time (default 20)");
    sub->add_option("--sample-interval", f.sample_interval, "sampling interval (default 0.5)");
    sub->add_option("--method", f.method, "dopri45 | rk4");
    sub->add_option("--dt", f.dt, "fixed step; implies --method rk4");
    sub->add_option("--rtol", f.rtol, "adaptive relative tolerance");
    sub->add_option("--atol", f.atol, "adaptive absolute tolerance");
    sub->add_option("--relay-dephasing", f.relay_dephasing, "k*beta of the relay dephasing channels (default off)");
    sub->add_option("--out", f.out, "output CSV (simulate) or directory (sweep)");
    sub->add_option("--jobs", f.jobs, "sweep worker threads (default: hardware concurrency)");
  };

  auto* simulate = app.add_subcommand("simulate", "integrate one network run and write a CSV + JSON sidecar");
  add_run_flags(simulate);
  auto* sweep = app.add_subcommand("sweep", "run several omegas concurrently and write a manifest");
  add_run_flags(sweep);

  auto* verify = app.add_subcommand("verify", "run the oracle suite");
  VerifyOptions vopts;
  verify->add_flag("--corrupt-relay-sign", vopts.corrupt_relay_sign, "test hook: flip a sign in the relay S");

  auto* stark = app.add_subcommand("stark-table", "print the diagonal Stark shifts per basis state");
  double stark_omega = 1.0;
  stark->add_option("--omega", stark_omega, "feedback parameter (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  auto build_config = [&](bool sweep_defaults) {
    RunConfig cfg;
    bool omega_given = false;
    if (!f.config.empty()) {
      cfg = load_config_file(f.config);
      std::ifstream in(f.config);
      omega_given = json::parse(in).contains("omega");
    }
    if (sweep_defaults && !omega_given) cfg.omegas = kSweepDefault;
    try {
      if (sweep->count("--omega") + simulate->count("--omega") > 0) {
        cfg.omegas.clear();
        for (const auto& w : f.omega) {
          if (w.empty()) continue;
          double v = 0.0;
          const auto res = std::from_chars(w.data(), w.data() + w.size(), v);
          if (res.ec != std::errc{} || res.ptr != w.data() + w.size()) throw ConfigError("bad omega value '" + w + "'");
          cfg.omegas.push_back(v);
        }
      }
      if (f.alpha) cfg.alpha = f.alpha;
      if (f.gamma) cfg.gamma_flip = *f.gamma;
      if (f.variant) cfg.variant = components::parse_variant(*f.variant);
      if (f.compensated) cfg.stark_compensated = true;
      if (f.initial) cfg.initial = network::parse_initial_state(*f.initial);
      if (f.tmax) cfg.t_max = *f.tmax;
      if (f.sample_interval) cfg.sample_interval = *f.sample_interval;
      if (f.dt) {
        cfg.dt = *f.dt;
        cfg.method = lindblad::Method::Rk4Fixed;
      }
      if (f.method) {
        RunConfig tmp;
        apply_json(tmp, json{{"method", *f.method}});
        cfg.method = tmp.method;
      }
      if (f.rtol) cfg.rtol = *f.rtol;
      if (f.atol) cfg.atol = *f.atol;
      if (f.relay_dephasing) cfg.relay_dephasing = *f.relay_dephasing;
      if (f.out) cfg.out = *f.out;
      if (f.jobs) cfg.jobs = *f.jobs;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    return cfg;
  };

  try {
    if (*simulate) return cmd_simulate(build_config(false), std::cerr);
    if (*sweep) return cmd_sweep(build_config(true), std::cerr);
    if (*verify) return cmd_verify(vopts, std::cout);
    if (*stark) return cmd_stark_table(stark_omega, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitConfig;
}

}  // namespace qnet::cli
