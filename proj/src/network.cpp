#include "qnet/network.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace qnet::network {

using components::RamanTransition;
using slh::Displacement;

void MemoryParams::validate() const {
  if (!(omega >= 0.0)) throw std::invalid_argument("omega must be >= 0");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!(gamma_flip >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  if (!(relay_dephasing >= 0.0)) throw std::invalid_argument("relay dephasing amplitude must be >= 0");
}

SpacePtr network_space() {
  static const SpacePtr space = make_space({{"Q1", 2}, {"Q2", 2}, {"Q3", 2}, {"R1", 2}, {"R2", 2}});
  return space;
}

SpacePtr prelimit_space() {
  static const SpacePtr space = make_space({{"Q1", 3}, {"Q2", 3}, {"Q3", 3}, {"R1", 2}, {"R2", 2}});
  return space;
}

namespace {

struct ProbeLabels {
  const char* qa;
  const char* qb;
  const char* relay;
};

ProbeLabels probe_labels(Side side) {
  return side == Side::Left ? ProbeLabels{"Q1", "Q2", "R1"} : ProbeLabels{"Q3", "Q2", "R2"};
}

struct RamanSlot {
  const char* qubit;
  RamanTransition transition;
};

struct FeedbackLabels {
  RamanSlot a, b, c;
  const char* relay;
};

FeedbackLabels feedback_labels(Side side) {
  if (side == Side::Left)
    return {{"Q1", RamanTransition::GR}, {"Q3", RamanTransition::GR}, {"Q2", RamanTransition::HR}, "R1"};
  return {{"Q2", RamanTransition::GR}, {"Q1", RamanTransition::HR}, {"Q3", RamanTransition::HR}, "R2"};
}

Operator parity_product(const SpacePtr& space, const char* a, const char* b, Variant variant) {
  const Matrix p = variant == Variant::BitFlip ? local::pauli_z() : local::pauli_x();
  return embed(p, a, space) * embed(p, b, space);
}

struct RelayOps {
  Operator pg, ph, s_hg, s_gh;
};

RelayOps relay_ops(const SpacePtr& space, const char* relay) {
  return {projector(space, relay, level::g), projector(space, relay, level::h),
          transition(space, relay, level::h, level::g), transition(space, relay, level::g, level::h)};
}

Operator sum_pr(const SpacePtr& space) {
  return projector(space, "Q1", level::r) + projector(space, "Q2", level::r) + projector(space, "Q3", level::r);
}

}  // namespace

ParityOperators parity_operators(const SpacePtr& space, Variant variant) {
  const Operator one = Operator::identity(space);
  const Operator p12 = parity_product(space, "Q1", "Q2", variant);
  const Operator p32 = parity_product(space, "Q3", "Q2", variant);
  return {p12 + one, p12 - one, p32 + one, p32 - one};
}

SlhTriple build_probe_subnet(const SpacePtr& space, Side side, double alpha, Variant variant) {
  return build_probe_subnet(space, side, alpha, variant, components::relay_set(space, probe_labels(side).relay));
}

SlhTriple build_probe_subnet(const SpacePtr& space, Side side, double alpha, Variant variant, const SlhTriple& relay) {
  const auto lbl = probe_labels(side);
  const SlhTriple b = components::beamsplitter(space);
  const SlhTriple probes = slh::series(components::probe_subsystem(space, lbl.qa, variant),
                                       components::probe_subsystem(space, lbl.qb, variant));
  SlhTriple g = slh::weyl(space, Displacement{{std::sqrt(2.0) * alpha, 0.0}});
  g = slh::series(b, g);
  g = slh::series(slh::pad(probes, 2, 1), g);
  g = slh::series(b, g);
  return slh::series(relay, g);
}

SlhTriple printed_probe_subnet(const SpacePtr& space, Side side, double alpha, Variant variant) {
  const auto lbl = probe_labels(side);
  const auto par = parity_operators(space, variant);
  const Operator& e = side == Side::Left ? par.E12 : par.E32;
  const Operator& o = side == Side::Left ? par.O12 : par.O32;
  const auto r = relay_ops(space, lbl.relay);
  std::vector<Operator> s{
      0.5 * (o * r.pg + e * r.s_hg),
      0.5 * (e * r.pg + o * r.s_hg),
      0.5 * (-(e * r.ph) - o * r.s_gh),
      0.5 * (-(o * r.ph) - e * r.s_gh),
  };
  const double c = alpha / std::sqrt(2.0);
  std::vector<Operator> l{c * (r.pg * o + r.s_hg * e), c * (-(r.s_gh * o) - r.ph * e)};
  return SlhTriple(std::move(s), std::move(l), Operator::zero(space));
}

std::array<Operator, 4> printed_probe_couplings(const SpacePtr& space, double alpha, Variant variant) {
  const auto par = parity_operators(space, variant);
  const auto r1 = relay_ops(space, "R1");
  const auto r2 = relay_ops(space, "R2");
  const double c = alpha / std::sqrt(2.0);
  return {
      c * (r1.pg * par.O12 + r1.s_hg * par.E12),
      c * (-(r1.s_gh * par.O12) - r1.ph * par.E12),
      c * (r2.pg * par.O32 + r2.s_hg * par.E32),
      c * (-(r2.s_gh * par.O32) - r2.ph * par.E32),
  };
}

SlhTriple build_feedback_vacuum(const SpacePtr& space, Side side, const FeedbackParams& p) {
  const auto lbl = feedback_labels(side);
  const double delta = p.k * p.k * p.delta;
  auto raman = [&](const RamanSlot& s) {
    return components::raman_subsystem(space, s.qubit, s.transition, p.variant, p.gamma, delta);
  };
  const SlhTriple qubits = slh::concatenate(slh::concatenate(raman(lbl.a), raman(lbl.b)), raman(lbl.c));
  const SlhTriple split = slh::pad(components::beamsplitter(space), 2, 1);
  const SlhTriple route = slh::pad(components::relay_routing(space, lbl.relay), 3, 1);
  return slh::series(qubits, slh::series(split, route));
}

Displacement feedback_drive(const FeedbackParams& p) { return Displacement{{p.k * p.beta, 0.0, 0.0}}; }

SlhTriple build_feedback_subnet_prelimit(const SpacePtr& space, Side side, const FeedbackParams& p) {
  return slh::coherent_drive(build_feedback_vacuum(space, side, p), feedback_drive(p));
}

namespace {

struct FeedbackPieces {
  Operator sa, sb, sc;  // Raman lowering operators without sqrt(gamma)
  RelayOps r;
};

FeedbackPieces feedback_pieces(const SpacePtr& space, Side side, Variant variant) {
  const auto lbl = feedback_labels(side);
  auto lower = [&](const RamanSlot& s) { return components::raman_lowering(space, s.qubit, s.transition, variant); };
  return {lower(lbl.a), lower(lbl.b), lower(lbl.c), relay_ops(space, lbl.relay)};
}

// sqrt(gamma/2) k beta (sa^dag Pg - sc^dag Pg - sqrt2 sb^dag Ph)
Operator feedback_cross(const FeedbackPieces& f, const FeedbackParams& p) {
  const cplx c = std::sqrt(p.gamma / 2.0) * p.k * p.beta;
  return c * (f.sa.adjoint() * f.r.pg - f.sc.adjoint() * f.r.pg - std::sqrt(2.0) * (f.sb.adjoint() * f.r.ph));
}

}  // namespace

SlhTriple printed_feedback_subnet(const SpacePtr& space, Side side, const FeedbackParams& p) {
  const auto f = feedback_pieces(space, side, p.variant);
  const Operator one = Operator::identity(space);
  const Operator zero = Operator::zero(space);
  const double r2 = std::sqrt(2.0);
  std::vector<Operator> s{f.r.pg / r2, -f.r.ph / r2, one / r2, -f.r.ph, f.r.pg, zero, -f.r.pg / r2, f.r.ph / r2, one / r2};
  const double sg = std::sqrt(p.gamma);
  const cplx kb = p.k * p.beta;
  std::vector<Operator> l{sg * f.sa + (kb / r2) * f.r.pg, sg * f.sb - kb * f.r.ph, sg * f.sc - (kb / r2) * f.r.pg};
  const Operator h = 0.5 * p.k * p.k * p.delta * sum_pr(space) + imag_part(feedback_cross(f, p));
  return SlhTriple(std::move(s), std::move(l), h);
}

SlhTriple printed_feedback_inner(const SpacePtr& space, Side side, const FeedbackParams& p) {
  const auto f = feedback_pieces(space, side, p.variant);
  const double r2 = std::sqrt(2.0);
  const double c = std::sqrt(p.gamma / 2.0);
  std::vector<Operator> l{
      c * (f.sa * f.r.pg - r2 * (f.sb * f.r.ph) - f.sc * f.r.pg),
      c * (-(f.sa * f.r.ph) + r2 * (f.sb * f.r.pg) + f.sc * f.r.ph),
      c * (f.sa + f.sc),
  };
  const Operator h = 0.5 * p.k * p.k * p.delta * sum_pr(space) + 2.0 * imag_part(feedback_cross(f, p));
  return SlhTriple(SlhTriple::trivial(space, 3).scattering(), std::move(l), h);
}

std::vector<HamiltonianTerm> feedback_terms(const SpacePtr& space, const MemoryParams& p) {
  struct Qubit {
    Operator flip, pg, ph;
  };
  const Operator one = Operator::identity(space);
  std::vector<Qubit> q;
  for (const char* name : {"Q1", "Q2", "Q3"}) {
    const Operator x = embed(local::pauli_x(), name, space);
    if (p.variant == Variant::BitFlip)
      q.push_back({x, projector(space, name, level::g), projector(space, name, level::h)});
    else
      q.push_back({embed(local::pauli_z(), name, space), 0.5 * (one - x), 0.5 * (one + x)});
  }
  const auto r1 = relay_ops(space, "R1");
  const auto r2 = relay_ops(space, "R2");
  const double w = p.omega;
  const double s2 = std::sqrt(2.0);

  std::vector<HamiltonianTerm> terms{
      {TermKind::Flip, 0, w * s2 * (q[0].flip * r1.pg * r2.ph)},
      {TermKind::Flip, 1, w * (q[1].flip * r1.pg * r2.pg)},
      {TermKind::Flip, 2, -w * s2 * (q[2].flip * r1.ph * r2.pg)},
  };
  if (p.stark_compensated) return terms;
  terms.push_back({TermKind::Stark, 0, -w * (r1.pg * q[0].pg)});
  terms.push_back({TermKind::Stark, 1, -w * (r1.pg * q[1].ph)});
  terms.push_back({TermKind::Stark, 2, -2.0 * w * (r1.ph * q[2].pg)});
  terms.push_back({TermKind::Stark, 1, -w * (r2.pg * q[1].pg)});
  terms.push_back({TermKind::Stark, 2, -w * (r2.pg * q[2].ph)});
  terms.push_back({TermKind::Stark, 0, -2.0 * w * (r2.ph * q[0].ph)});
  return terms;
}

Operator feedback_limit_hamiltonian(const SpacePtr& space, const MemoryParams& p) {
  p.validate();
  Operator h = Operator::zero(space);
  for (const auto& t : feedback_terms(space, p)) h += t.op;
  return h;
}

std::array<int, 2> parity_relays(const std::array<int, 3>& q) {
  return {q[0] == q[1] ? level::h : level::g, q[2] == q[1] ? level::h : level::g};
}

std::vector<StarkRow> stark_shift_table(const MemoryParams& p) {
  if (p.variant != Variant::BitFlip || p.stark_compensated)
    throw std::invalid_argument("stark_shift_table: defined for the uncompensated bit-flip network");
  const SpacePtr space = network_space();
  const auto terms = feedback_terms(space, p);
  constexpr int g = level::g;
  constexpr int h = level::h;
  const std::array<std::array<int, 3>, 8> states{{
      {h, h, h}, {g, g, g}, {h, g, g}, {g, h, h}, {h, g, h}, {g, h, g}, {h, h, g}, {g, g, h},
  }};
  std::vector<StarkRow> rows;
  for (const auto& qs : states) {
    StarkRow row{qs, parity_relays(qs), {0.0, 0.0, 0.0}};
    const std::array<int, 5> levels{qs[0], qs[1], qs[2], row.relays[0], row.relays[1]};
    const auto idx = static_cast<Eigen::Index>(space->basis_index(levels));
    for (const auto& t : terms)
      if (t.kind == TermKind::Stark) row.shift[static_cast<std::size_t>(t.qubit)] += t.op.matrix()(idx, idx).real();
    rows.push_back(row);
  }
  return rows;
}

std::vector<StarkRow> published_stark_table() {
  constexpr int g = level::g;
  constexpr int h = level::h;
  return {
      {{h, h, h}, {h, h}, {0, 0, -2}},  {{g, g, g}, {h, h}, {-2, 0, 0}},
      {{h, g, g}, {g, h}, {-2, 0, 0}},  {{g, h, h}, {g, h}, {-1, -1, 0}},
      {{h, g, h}, {g, g}, {-1, -1, 0}}, {{g, h, g}, {g, g}, {0, -1, -1}},
      {{h, h, g}, {h, g}, {0, -1, -1}}, {{g, g, h}, {h, g}, {0, 0, -2}},
  };
}

SlhTriple assemble_network(const MemoryParams& p) {
  p.validate();
  const SpacePtr space = network_space();
  SlhTriple net = slh::concatenate(build_probe_subnet(space, Side::Left, p.alpha, p.variant),
                                   build_probe_subnet(space, Side::Right, p.alpha, p.variant));
  net = slh::concatenate(net, SlhTriple::hamiltonian_only(feedback_limit_hamiltonian(space, p)));

  if (p.relay_dephasing > 0.0) {
    const double kb = p.relay_dephasing;
    const double r2 = std::sqrt(2.0);
    std::vector<Operator> l;
    for (const char* relay : {"R1", "R2"}) {
      const auto r = relay_ops(space, relay);
      l.push_back(kb / r2 * r.pg);
      l.push_back(-kb * r.ph);
      l.push_back(-kb / r2 * r.pg);
    }
    auto pass_through = SlhTriple::trivial(space, l.size()).scattering();
    net = slh::concatenate(net, SlhTriple(std::move(pass_through), std::move(l), Operator::zero(space)));
  }

  const auto kind = p.variant == Variant::BitFlip ? components::ErrorKind::X : components::ErrorKind::Z;
  for (const char* q : {"Q1", "Q2", "Q3"})
    net = slh::concatenate(net, components::error_channel(space, q, kind, p.gamma_flip));
  return net;
}

lindblad::LindbladModel assemble_memory(const MemoryParams& p) { return slh::to_lindblad(assemble_network(p)); }

namespace {

Matrix three_qubit(const Matrix& single) {
  Matrix two = Eigen::kroneckerProduct(single, single);
  return Eigen::kroneckerProduct(two, single);
}

Matrix single_qubit_error(Variant variant, int qubit) {
  const Matrix p = variant == Variant::BitFlip ? local::pauli_x() : local::pauli_z();
  const Matrix id = local::identity(2);
  Matrix out = qubit == 0 ? p : id;
  for (int i = 1; i < 3; ++i) out = Eigen::kroneckerProduct(out, i == qubit ? p : id).eval();
  return out;
}

}  // namespace

Vector codeword(Variant variant) {
  Vector psi = lindblad::codeword_state();
  if (variant == Variant::PhaseFlip) psi = three_qubit(local::hadamard()) * psi;
  return psi;
}

InitialState parse_initial_state(std::string_view s) {
  if (s == "codeword") return InitialState::Codeword;
  if (s == "flip-q1") return InitialState::FlipQ1;
  if (s == "flip-q2") return InitialState::FlipQ2;
  if (s == "flip-q3") return InitialState::FlipQ3;
  throw std::invalid_argument("unknown initial state '" + std::string(s) + "' (codeword, flip-q1, flip-q2, flip-q3)");
}

const char* initial_state_name(InitialState s) {
  switch (s) {
    case InitialState::Codeword: return "codeword";
    case InitialState::FlipQ1: return "flip-q1";
    case InitialState::FlipQ2: return "flip-q2";
    case InitialState::FlipQ3: return "flip-q3";
  }
  return "?";
}

Matrix initial_density(Variant variant, InitialState s) {
  Vector psi = codeword(variant);
  if (s != InitialState::Codeword) psi = single_qubit_error(variant, static_cast<int>(s) - 1) * psi;
  Vector relays = Vector::Zero(4);
  relays(2 * level::h + level::h) = 1.0;
  const Vector full = Eigen::kroneckerProduct(psi, relays);
  return full * full.adjoint();
}

Matrix fidelity_projector(Variant variant) {
  const Vector psi = codeword(variant);
  return Eigen::kroneckerProduct(Matrix(psi * psi.adjoint()), Matrix::Identity(4, 4));
}

Operator qubit_hadamard(const SpacePtr& space) {
  Operator u = Operator::identity(space);
  for (const char* q : {"Q1", "Q2", "Q3"}) u = u * embed(local::hadamard(), q, space);
  return u;
}

}  // namespace qnet::network
