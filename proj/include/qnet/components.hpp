#pragma once

// Component catalog. Limit (small-volume) triples compose into the memory
// network; the pre-limit physical models exist only for convergence checks on
// private single-component spaces.

#include <string>
#include <string_view>
#include <vector>

#include "qnet/lindblad.hpp"
#include "qnet/opalg.hpp"
#include "qnet/slh.hpp"

namespace qnet::components {

using slh::SlhTriple;

/// Bit-flip networks use Z probes and g/h Raman transitions; phase-flip
/// networks use X probes and the rotated Raman couplings.
enum class Variant { BitFlip, PhaseFlip };

const char* variant_name(Variant v);
Variant parse_variant(std::string_view s);

enum class RamanTransition { GR, HR };
enum class ErrorKind { X, Z };

/// (diag(Z, I), 0, 0); X replaces Z for the phase-flip variant.
SlhTriple probe_limit(const SpacePtr& space, std::string_view qubit, Variant variant);

/// One-channel part of probe_limit: (Z, 0, 0) or (X, 0, 0).
SlhTriple probe_subsystem(const SpacePtr& space, std::string_view qubit, Variant variant);

/// S = [[Pg, -Ph], [-Ph, Pg]]: the relay state routes the power field.
SlhTriple relay_routing(const SpacePtr& space, std::string_view relay);
/// S = [[Pg, -s_hg], [-s_gh, Ph]]: probe light sets the relay state.
SlhTriple relay_set(const SpacePtr& space, std::string_view relay);

/// 50/50 splitter, S = [[1, 1], [-1, 1]] / sqrt(2).
SlhTriple beamsplitter(const SpacePtr& space);

/// Raman coupling operator sqrt(gamma) s_{gr} or sqrt(gamma) s_{hr}, with the
/// phase-flip rotation s_hr -> (s_hr + s_gr)/sqrt2, s_gr -> (s_hr - s_gr)/sqrt2.
Operator raman_lowering(const SpacePtr& space, std::string_view qubit, RamanTransition transition, Variant variant);

/// (1, sqrt(gamma) s, Delta/2 Pr) on a three-level qubit.
SlhTriple raman_subsystem(const SpacePtr& space, std::string_view qubit, RamanTransition transition, Variant variant,
                          double gamma, double delta);

/// (I, sqrt(Gamma) P, 0) with P = X or Z on `qubit`.
SlhTriple error_channel(const SpacePtr& space, std::string_view qubit, ErrorKind kind, double gamma_flip);

// ---------------------------------------------------------------------------
// Pre-limit models

struct ProbePhysicalParams {
  double g_c = 10.0;
  double kappa = 10.0;
  double gamma_perp = 1.0;
  double k = 1.0;
  int n_fock = 6;
  double alpha = 0.5;
  Variant variant = Variant::BitFlip;

  void validate() const;
};

/// Atom "A" (g, h, e) and cavity "C" (n_fock levels).
SpacePtr probe_space(const ProbePhysicalParams& p);

/// Driven cavity: H = k^2 i g_c (s^dag a - s a^dag) plus the drive term of
/// (I, [k sqrt(2 kappa) a, sqrt(2 gamma_perp) s], H) <| (I, [alpha, 0], 0).
/// Throws if the empty-cavity photon distribution does not fit in n_fock.
lindblad::LindbladModel probe_physical(const ProbePhysicalParams& p);

/// The cavity output operator k sqrt(2 kappa) a + alpha.
Operator probe_output(const ProbePhysicalParams& p);

struct ProbeResponse {
  cplx reflection;        // <L_out>_ss / alpha
  double phase_shift;     // arg(-reflection) in (-pi, pi]: 0 for an empty cavity
  double limit_phase;     // 0 uncoupled, pi coupled
  double phase_error;     // |phase_shift - limit_phase| wrapped to [0, pi]
  double amplitude_error; // |reflection - limit reflection|
  double photon_number;
};

/// Stationary response with the atom prepared in the coupled (g, or |+> for
/// X probes) or uncoupled (h, or |->) ground state and the cavity empty.
ProbeResponse probe_response(const ProbePhysicalParams& p, bool coupled);

struct RamanPhysicalParams {
  double gamma = 1.0;
  double gamma_par = 10.0;
  double delta = 50.0;
  double k = 1.0;
  cplx beta1{7.0710678118654755, 0.0};
  cplx beta2{7.0710678118654755, 0.0};
  /// Adds levels H, G detuned by -k^2 Delta to cancel the ground Stark shifts.
  bool compensated = false;

  void validate() const;
};

/// Atom "A" with levels (g, h, r) or (g, h, r, H, G) when compensated.
SpacePtr raman_space(const RamanPhysicalParams& p);

/// Level indices of the compensating pair.
inline constexpr int kLevelH = 3;
inline constexpr int kLevelG = 4;

lindblad::LindbladModel raman_physical(const RamanPhysicalParams& p);

/// 2x2 effective ground Hamiltonian in (g, h):
/// -(gamma/Delta)(|b1|^2 Ph + |b2|^2 Pg + b1 b2* s_gh + h.c.), Stark terms
/// omitted when compensated.
Matrix raman_effective_hamiltonian(const RamanPhysicalParams& p);

/// 2 gamma |b1 b2| / Delta
double raman_rabi_prediction(const RamanPhysicalParams& p);

struct RamanResponse {
  double rabi_frequency = 0.0;  // angular frequency of the g <-> h population cycle
  double mean_leakage = 0.0;    // time-averaged population of r (and H, G)
  double max_transfer = 0.0;    // max population reached in h
};

/// Integrates from |g> over one and a half predicted transfer cycles.
RamanResponse raman_response(const RamanPhysicalParams& p);

/// Rate of change of arg(rho_hg) starting from (|g> + |h>)/sqrt2, over t_max.
double raman_phase_rate(const RamanPhysicalParams& p, double t_max);

}  // namespace qnet::components
