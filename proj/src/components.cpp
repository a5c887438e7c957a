#include "qnet/components.hpp"

#include <cmath>

namespace qnet::components {

using slh::Displacement;
using slh::Validation;

const char* variant_name(Variant v) { return v == Variant::BitFlip ? "bitflip" : "phaseflip"; }

Variant parse_variant(std::string_view s) {
  if (s == "bitflip") return Variant::BitFlip;
  if (s == "phaseflip") return Variant::PhaseFlip;
  throw std::invalid_argument("unknown variant '" + std::string(s) + "' (expected bitflip or phaseflip)");
}

namespace {

void require_dim(const SpacePtr& space, std::string_view label, int dim, const char* what) {
  const int d = space->label(label).dim;
  if (d != dim)
    throw std::invalid_argument(std::string(what) + ": '" + std::string(label) + "' has dim " + std::to_string(d) +
                                ", expected " + std::to_string(dim));
}

Operator probe_operator(const SpacePtr& space, std::string_view qubit, Variant variant) {
  require_dim(space, qubit, 2, "probe");
  return embed(variant == Variant::BitFlip ? local::pauli_z() : local::pauli_x(), qubit, space);
}

}  // namespace

SlhTriple probe_subsystem(const SpacePtr& space, std::string_view qubit, Variant variant) {
  return SlhTriple({probe_operator(space, qubit, variant)}, {Operator::zero(space)}, Operator::zero(space));
}

SlhTriple probe_limit(const SpacePtr& space, std::string_view qubit, Variant variant) {
  return slh::pad(probe_subsystem(space, qubit, variant), 2, 1);
}

SlhTriple relay_routing(const SpacePtr& space, std::string_view relay) {
  require_dim(space, relay, 2, "relay_routing");
  const Operator pg = projector(space, relay, level::g);
  const Operator ph = projector(space, relay, level::h);
  const Operator zero = Operator::zero(space);
  return SlhTriple({pg, -ph, -ph, pg}, {zero, zero}, zero);
}

SlhTriple relay_set(const SpacePtr& space, std::string_view relay) {
  require_dim(space, relay, 2, "relay_set");
  const Operator pg = projector(space, relay, level::g);
  const Operator ph = projector(space, relay, level::h);
  const Operator s_hg = transition(space, relay, level::h, level::g);
  const Operator s_gh = transition(space, relay, level::g, level::h);
  const Operator zero = Operator::zero(space);
  return SlhTriple({pg, -s_hg, -s_gh, ph}, {zero, zero}, zero);
}

SlhTriple beamsplitter(const SpacePtr& space) {
  Matrix b(2, 2);
  b << 1.0, 1.0, -1.0, 1.0;
  return SlhTriple::scalar_scattering(space, b / std::sqrt(2.0));
}

Operator raman_lowering(const SpacePtr& space, std::string_view qubit, RamanTransition transition_kind,
                        Variant variant) {
  if (space->label(qubit).dim < 3)
    throw std::invalid_argument("raman: '" + std::string(qubit) + "' has no r level");
  const Operator s_gr = transition(space, qubit, level::g, level::r);
  const Operator s_hr = transition(space, qubit, level::h, level::r);
  if (variant == Variant::BitFlip) return transition_kind == RamanTransition::GR ? s_gr : s_hr;
  const double c = 1.0 / std::sqrt(2.0);
  return transition_kind == RamanTransition::GR ? c * (s_hr - s_gr) : c * (s_hr + s_gr);
}

SlhTriple raman_subsystem(const SpacePtr& space, std::string_view qubit, RamanTransition transition_kind,
                          Variant variant, double gamma, double delta) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("raman_subsystem: gamma must be >= 0");
  const Operator l = std::sqrt(gamma) * raman_lowering(space, qubit, transition_kind, variant);
  return SlhTriple({Operator::identity(space)}, {l}, 0.5 * delta * projector(space, qubit, level::r));
}

SlhTriple error_channel(const SpacePtr& space, std::string_view qubit, ErrorKind kind, double gamma_flip) {
  if (!(gamma_flip >= 0.0)) throw std::invalid_argument("error_channel: rate must be >= 0");
  require_dim(space, qubit, 2, "error_channel");
  const Matrix p = kind == ErrorKind::X ? local::pauli_x() : local::pauli_z();
  return SlhTriple({Operator::identity(space)}, {std::sqrt(gamma_flip) * embed(p, qubit, space)},
                   Operator::zero(space));
}

// ---------------------------------------------------------------------------

void ProbePhysicalParams::validate() const {
  if (!(g_c > 0.0 && kappa > 0.0 && gamma_perp > 0.0)) throw std::invalid_argument("probe: rates must be > 0");
  if (!(k >= 1.0)) throw std::invalid_argument("probe: k must be >= 1");
  if (n_fock < 3) throw std::invalid_argument("probe: n_fock must be >= 3");
  if (!(alpha >= 0.0)) throw std::invalid_argument("probe: alpha must be >= 0");
}

SpacePtr probe_space(const ProbePhysicalParams& p) { return make_space({{"A", 3}, {"C", p.n_fock}}); }

namespace {

Operator cavity_annihilation(const SpacePtr& space, int n_fock) {
  Matrix a = Matrix::Zero(n_fock, n_fock);
  for (int n = 1; n < n_fock; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return embed(a, "C", space);
}

Operator probe_lowering(const SpacePtr& space, Variant variant) {
  const Operator s_ge = transition(space, "A", level::g, level::e);
  if (variant == Variant::BitFlip) return s_ge;
  return (s_ge + transition(space, "A", level::h, level::e)) / std::sqrt(2.0);
}

// Poisson tail of the empty-cavity coherent state beyond the truncation.
void check_truncation(const ProbePhysicalParams& p) {
  const double c = p.k * std::sqrt(2.0 * p.kappa);
  const double nbar = std::pow(2.0 * p.alpha / c, 2);
  double term = std::exp(-nbar);
  double kept = 0.0;
  for (int n = 0; n < p.n_fock; ++n) {
    kept += term;
    term *= nbar / (n + 1);
  }
  if (1.0 - kept > 1e-8)
    throw std::invalid_argument("probe: n_fock=" + std::to_string(p.n_fock) + " truncates a mean photon number of " +
                                std::to_string(nbar));
}

}  // namespace

Operator probe_output(const ProbePhysicalParams& p) {
  const SpacePtr space = probe_space(p);
  return p.k * std::sqrt(2.0 * p.kappa) * cavity_annihilation(space, p.n_fock) + p.alpha * Operator::identity(space);
}

lindblad::LindbladModel probe_physical(const ProbePhysicalParams& p) {
  p.validate();
  check_truncation(p);
  const SpacePtr space = probe_space(p);
  const Operator a = cavity_annihilation(space, p.n_fock);
  const Operator s = probe_lowering(space, p.variant);
  const Operator h = p.k * p.k * kI * p.g_c * (s.adjoint() * a - s * a.adjoint());
  const SlhTriple vacuum({Operator::identity(space), Operator::zero(space), Operator::zero(space), Operator::identity(space)},
                         {p.k * std::sqrt(2.0 * p.kappa) * a, std::sqrt(2.0 * p.gamma_perp) * s}, h);
  return slh::to_lindblad(slh::coherent_drive(vacuum, Displacement{{p.alpha, 0.0}}));
}

// ---------------------------------------------------------------------------

void RamanPhysicalParams::validate() const {
  if (!(gamma > 0.0 && gamma_par > 0.0 && delta > 0.0)) throw std::invalid_argument("raman: rates must be > 0");
  if (!(k >= 1.0)) throw std::invalid_argument("raman: k must be >= 1");
}

SpacePtr raman_space(const RamanPhysicalParams& p) { return make_space({{"A", p.compensated ? 5 : 3}}); }

lindblad::LindbladModel raman_physical(const RamanPhysicalParams& p) {
  p.validate();
  const SpacePtr space = raman_space(p);
  auto sigma = [&](int to, int from) { return transition(space, "A", to, from); };
  const double sg = std::sqrt(p.gamma);

  Operator l1 = sg * sigma(level::h, level::r);
  Operator l2 = sg * sigma(level::g, level::r);
  Operator h = p.k * p.k * p.delta * projector(space, "A", level::r);
  if (p.compensated) {
    l1 += sg * sigma(level::h, kLevelH);
    l2 += sg * sigma(level::g, kLevelG);
    h -= p.k * p.k * p.delta * (projector(space, "A", kLevelH) + projector(space, "A", kLevelG));
  }
  const Operator id = Operator::identity(space);
  const Operator zero = Operator::zero(space);
  const SlhTriple raman({id, zero, zero, id}, {l1, l2}, h);
  const SlhTriple driven = slh::coherent_drive(raman, Displacement{{p.k * p.beta1, p.k * p.beta2}});

  const double sp = std::sqrt(p.gamma_par);
  const SlhTriple decay({id, zero, zero, id}, {sp * sigma(level::h, level::r), sp * sigma(level::g, level::r)}, zero);
  return slh::to_lindblad(slh::concatenate(driven, decay));
}

Matrix raman_effective_hamiltonian(const RamanPhysicalParams& p) {
  const double f = p.gamma / p.delta;
  Matrix h = Matrix::Zero(2, 2);
  if (!p.compensated) {
    h(level::h, level::h) = -f * std::norm(p.beta1);
    h(level::g, level::g) = -f * std::norm(p.beta2);
  }
  h(level::g, level::h) = -f * p.beta1 * std::conj(p.beta2);
  h(level::h, level::g) = std::conj(h(level::g, level::h));
  return h;
}

double raman_rabi_prediction(const RamanPhysicalParams& p) {
  return 2.0 * p.gamma * std::abs(p.beta1 * p.beta2) / p.delta;
}

}  // namespace qnet::components
