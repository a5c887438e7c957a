#pragma once

// Defect measures shared by `qnet verify` and the acceptance suite. Each
// returns the largest deviation from an oracle; the caller owns the threshold.

#include <vector>

#include "qnet/components.hpp"
#include "qnet/network.hpp"
#include "qnet/sampling.hpp"

namespace qnet::oracles {

using components::Variant;

/// relay_set for `relay`; `corrupt` flips the sign of its S_12 entry.
slh::SlhTriple relay_set(const SpacePtr& space, const char* relay, bool corrupt);

/// Worst unitarity defect over the set and routing relays R1, R2.
double relay_unitarity_defect(bool corrupt);

struct IdentityDefects {
  double split_scattering_last = 0.0;   // (I,L,H) <| (S,0,0) vs (S,L,H)
  double split_scattering_first = 0.0;  // (S,0,0) <| (I,S^dag L,H) vs (S,L,H)
  double associativity = 0.0;
};

/// Random triples with 1..3 channels on a 2 x 3 space.
IdentityDefects slh_identity_defects(sampling::Engine& rng, int trials);

/// recompose(extract(G0, d)) vs coherent_drive(G0, d) on random triples.
double displacement_roundtrip_defect(sampling::Engine& rng, int trials);

/// A representative pre-limit feedback parameter set (complex beta, k > 1).
network::FeedbackParams feedback_test_params(Variant variant);

struct FeedbackDefects {
  double closed_form = 0.0;  // composed G_f vs printed G_f
  double roundtrip = 0.0;    // recompose vs composed G_f
  double inner = 0.0;        // extracted inner vs printed inner
};

/// Both sides, on the prelimit space.
FeedbackDefects feedback_defects(const network::FeedbackParams& p);

/// Composed probe subnet (both sides) vs printed closed form.
double probe_subnet_defect(double alpha, Variant variant, bool corrupt_relay = false);

/// Composed L1..L4 vs the reduced master-equation closed forms, each up to a global sign.
double probe_coupling_defect(double alpha, Variant variant, bool corrupt_relay = false);

struct StarkComparison {
  int mismatched_rows = 0;
  double worst_row_sum_error = 0.0;  // |sum + 2| in units of omega, computed table
  std::vector<network::StarkRow> computed;  // units of omega
};

StarkComparison compare_stark_table();

/// ||rhs(codeword (x) |hh><hh|)||_max with Gamma = 0.
double stationarity_residual(double omega, Variant variant, bool compensated);

struct PhaseFlipDefects {
  double hamiltonian = 0.0;
  double collapse = 0.0;
  double generator = 0.0;  // dense Liouvillians
  double generator_scale = 0.0;  // largest |entry| of the phase-flip generator
};

PhaseFlipDefects phase_flip_defects(const network::MemoryParams& bitflip);

/// Single qubit under sqrt(Gamma) X against (1 + exp(-2 Gamma t))/2.
double bare_qubit_defect(double gamma_flip, double t_max, double sample_interval);

struct ProbeConvergence {
  std::vector<double> ks;
  std::vector<double> coupled_error;    // |phase - pi|
  std::vector<double> uncoupled_error;  // |phase - 0|
  /// |r - r_lim| for both atom states. On resonance r is real, so the phase
  /// sits at 0 or pi once the cooperativity exceeds one and the approach to
  /// the limit shows up in the amplitude.
  std::vector<double> coupled_amplitude_error;
  std::vector<double> uncoupled_amplitude_error;

  /// Phase and amplitude errors non-increasing in k.
  bool monotone() const;
  double final_error() const;
  double final_amplitude_error() const;
};

/// Stationary reflection phases over k with the default cavity parameters.
ProbeConvergence probe_convergence(const std::vector<double>& ks, Variant variant = Variant::BitFlip);

struct RamanConvergence {
  std::vector<double> ks;
  std::vector<double> rabi_relative_error;
  std::vector<double> leakage;

  /// log(leak_{n-1} / leak_n) / log(k_n / k_{n-1}) over the two largest k; 2 for 1/k^2.
  double leakage_exponent() const;
};

RamanConvergence raman_convergence(const std::vector<double>& ks);

}  // namespace qnet::oracles
