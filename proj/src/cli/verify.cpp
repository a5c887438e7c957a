#include <functional>
#include <iostream>
#include <sstream>

#include "qnet/cli.hpp"
#include "qnet/oracles.hpp"

namespace qnet::cli {

namespace {

using components::Variant;

constexpr double kTol = 1e-12;

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

CheckResult bound(std::string name, double value, double tol) {
  return {std::move(name), value <= tol, "defect " + sci(value) + " (tol " + sci(tol) + ")"};
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opts, std::ostream* progress) {
  std::vector<std::pair<std::string, std::function<CheckResult()>>> checks;
  const bool corrupt = opts.corrupt_relay_sign;

  checks.emplace_back("relay unitarity", [&] {
    return bound("relay unitarity", oracles::relay_unitarity_defect(corrupt), kTol);
  });
  checks.emplace_back("slh decomposition identities", [] {
    sampling::Engine rng(20240611);
    const auto d = oracles::slh_identity_defects(rng, 100);
    const double worst = std::max({d.split_scattering_last, d.split_scattering_first, d.associativity});
    return bound("slh decomposition identities", worst, kTol);
  });
  checks.emplace_back("displacement round-trip", [] {
    sampling::Engine rng(7);
    return bound("displacement round-trip", oracles::displacement_roundtrip_defect(rng, 100), kTol);
  });
  checks.emplace_back("probe subnet closed form", [&] {
    double worst = 0.0;
    for (Variant v : {Variant::BitFlip, Variant::PhaseFlip})
      worst = std::max(worst, oracles::probe_subnet_defect(1.7, v, corrupt));
    return bound("probe subnet closed form", worst, kTol);
  });
  checks.emplace_back("probe couplings L1..L4", [&] {
    double worst = 0.0;
    for (Variant v : {Variant::BitFlip, Variant::PhaseFlip})
      worst = std::max(worst, oracles::probe_coupling_defect(1.7, v, corrupt));
    return bound("probe couplings L1..L4", worst, kTol);
  });
  checks.emplace_back("feedback subnet closed forms", [] {
    double worst = 0.0;
    for (Variant v : {Variant::BitFlip, Variant::PhaseFlip}) {
      const auto d = oracles::feedback_defects(oracles::feedback_test_params(v));
      worst = std::max({worst, d.closed_form, d.roundtrip, d.inner});
    }
    return bound("feedback subnet closed forms", worst, kTol);
  });
  checks.emplace_back("stark table", [] {
    const auto c = oracles::compare_stark_table();
    CheckResult r{"stark table", c.mismatched_rows == 0 && c.worst_row_sum_error < kTol, ""};
    r.detail = std::to_string(c.mismatched_rows) + " of 8 rows differ from the reference table; worst |row sum + 2| = " +
               sci(c.worst_row_sum_error);
    return r;
  });
  checks.emplace_back("codeword stationarity", [] {
    double worst = 0.0;
    for (Variant v : {Variant::BitFlip, Variant::PhaseFlip})
      for (bool comp : {false, true}) worst = std::max(worst, oracles::stationarity_residual(90.0, v, comp));
    return bound("codeword stationarity", worst, 1e-10);
  });
  checks.emplace_back("phase-flip equivalence", [] {
    network::MemoryParams p;
    p.omega = 30.0;
    p.alpha = 30.0 / 8.0;
    const auto d = oracles::phase_flip_defects(p);
    return bound("phase-flip equivalence", std::max({d.hamiltonian, d.collapse, d.generator}), kTol);
  });
  checks.emplace_back("bare-qubit baseline", [] {
    return bound("bare-qubit baseline", oracles::bare_qubit_defect(0.1, 30.0, 0.5), 1e-8);
  });
  checks.emplace_back("probe convergence", [] {
    const auto c = oracles::probe_convergence({1, 2, 4, 8});
    CheckResult r{"probe convergence", c.monotone() && c.final_error() < 0.05 && c.final_amplitude_error() < 0.01, ""};
    r.detail = "at k=8 phase error " + sci(c.final_error()) + ", |r - r_lim| " + sci(c.final_amplitude_error()) +
               (c.monotone() ? ", monotone" : ", NOT monotone");
    return r;
  });
  checks.emplace_back("raman convergence", [] {
    const auto c = oracles::raman_convergence({4, 8});
    const double err = c.rabi_relative_error.back();
    const double expo = c.leakage_exponent();
    CheckResult r{"raman convergence", err < 0.05 && std::abs(expo - 2.0) < 0.2, ""};
    r.detail = "Rabi error at k=8 " + sci(err) + ", leakage exponent " + sci(expo);
    return r;
  });

  std::vector<CheckResult> out;
  for (auto& [name, fn] : checks) {
    CheckResult r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = {name, false, std::string("threw: ") + e.what()};
    }
    if (progress) *progress << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << std::endl;
    out.push_back(std::move(r));
  }
  return out;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out) {
  const auto results = run_verify(opts, &out);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  out << (results.size() - static_cast<std::size_t>(failed)) << "/" << results.size() << " checks passed\n";
  return failed == 0 ? kExitOk : kExitFailed;
}

}  // namespace qnet::cli
