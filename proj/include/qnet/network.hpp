#pragma once

// The three-qubit memory: probe subnets that write qubit parities into two
// relays, the feedback subnet that flips qubits conditioned on the relays,
// and the error processes, assembled into one master equation on
// {Q1, Q2, Q3, R1, R2}.

#include <array>
#include <vector>

#include "qnet/components.hpp"
#include "qnet/lindblad.hpp"
#include "qnet/slh.hpp"

namespace qnet::network {

using components::Variant;
using slh::SlhTriple;

/// Left subnet acts on (Q1, Q2, R1); right subnet on (Q3, Q2, R2).
enum class Side { Left, Right };

struct MemoryParams {
  double omega = 0.0;
  double alpha = 0.0;
  double gamma_flip = 0.1;
  Variant variant = Variant::BitFlip;
  bool stark_compensated = false;
  /// Amplitude k*beta of the relay-dephasing channels of the feedback subnet;
  /// 0 omits them as the reduced master equation does.
  double relay_dephasing = 0.0;

  void validate() const;
};

/// Q1, Q2, Q3, R1, R2, all two-level: 32 dimensions.
SpacePtr network_space();
/// Same labels with three-level qubits (g, h, r): 108 dimensions.
SpacePtr prelimit_space();

struct ParityOperators {
  Operator E12, O12, E32, O32;
};

/// E = PP + 1, O = PP - 1 with P = Z (bit-flip) or X (phase-flip).
ParityOperators parity_operators(const SpacePtr& space, Variant variant);

/// R_set <| B <| ((Qa <| Qb) [+] (I,0,0)) <| B <| (W_{sqrt2 alpha} [+] (I,0,0)).
SlhTriple build_probe_subnet(const SpacePtr& space, Side side, double alpha, Variant variant);
/// Same chain with a caller-supplied relay set component (mutation testing).
SlhTriple build_probe_subnet(const SpacePtr& space, Side side, double alpha, Variant variant, const SlhTriple& relay);

/// Closed form of the probe subnet as printed with the appendix calculation.
SlhTriple printed_probe_subnet(const SpacePtr& space, Side side, double alpha, Variant variant);

/// Closed-form L1..L4 of the reduced master equation.
std::array<Operator, 4> printed_probe_couplings(const SpacePtr& space, double alpha, Variant variant);

struct FeedbackParams {
  cplx beta{1.0, 0.0};
  double gamma = 1.0;
  double delta = 1.0;
  double k = 1.0;
  Variant variant = Variant::BitFlip;
};

/// (Qa [+] Qb [+] Qc) <| (B [+]_2 (I,0,0)) <| (R_route [+] (I,0,0)), with
/// beta -> k beta and Delta -> k^2 Delta; vacuum inputs.
SlhTriple build_feedback_vacuum(const SpacePtr& space, Side side, const FeedbackParams& p);
/// The displacement (k beta, 0, 0) driving the feedback subnet.
slh::Displacement feedback_drive(const FeedbackParams& p);
/// build_feedback_vacuum <| (W_{k beta} [+] (I_2,0,0)).
SlhTriple build_feedback_subnet_prelimit(const SpacePtr& space, Side side, const FeedbackParams& p);

/// Printed closed forms of G_f and of the inner system after displacement extraction.
SlhTriple printed_feedback_subnet(const SpacePtr& space, Side side, const FeedbackParams& p);
SlhTriple printed_feedback_inner(const SpacePtr& space, Side side, const FeedbackParams& p);

enum class TermKind { Flip, Stark };

struct HamiltonianTerm {
  TermKind kind;
  int qubit;  // 0, 1, 2 for Q1, Q2, Q3
  Operator op;
};

/// The seven Omega terms of the limit feedback Hamiltonian (three when
/// stark_compensated), each attributed to the qubit it acts on.
std::vector<HamiltonianTerm> feedback_terms(const SpacePtr& space, const MemoryParams& p);
Operator feedback_limit_hamiltonian(const SpacePtr& space, const MemoryParams& p);

struct StarkRow {
  std::array<int, 3> qubits;  // level::g or level::h
  std::array<int, 2> relays;
  std::array<double, 3> shift;
};

/// Relay levels that reflect the parities of a qubit basis state: h when
/// the pair agrees, g otherwise.
std::array<int, 2> parity_relays(const std::array<int, 3>& qubits);

/// Diagonal Stark shifts per qubit, read from the Hamiltonian, for the eight
/// qubit basis states in the order (hhh, ggg, hgg, ghh, hgh, ghg, hhg, ggh).
std::vector<StarkRow> stark_shift_table(const MemoryParams& p);

/// The published table, in units of Omega.
std::vector<StarkRow> published_stark_table();

/// Collapse operators in order: L1..L4 probe, optional relay dephasing, then
/// sqrt(Gamma) X (or Z) on Q1..Q3.
lindblad::LindbladModel assemble_memory(const MemoryParams& p);
/// The same model as a single SLH triple before dropping S.
SlhTriple assemble_network(const MemoryParams& p);

/// (|ggg> - i|hhh>)/sqrt2, Hadamard-rotated on each qubit for phase-flip.
Vector codeword(Variant variant);

enum class InitialState { Codeword, FlipQ1, FlipQ2, FlipQ3 };
InitialState parse_initial_state(std::string_view s);
const char* initial_state_name(InitialState s);

/// |psi><psi| (x) |hh><hh| where psi is the codeword, optionally with one
/// error (X, or Z for phase-flip) applied to a qubit.
Matrix initial_density(Variant variant, InitialState s = InitialState::Codeword);
/// |codeword><codeword| (x) I on the relays.
Matrix fidelity_projector(Variant variant);

/// H (x) H (x) H on the qubits, identity on the relays.
Operator qubit_hadamard(const SpacePtr& space);

}  // namespace qnet::network
