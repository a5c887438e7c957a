#include "qnet/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qnet::oracles {

using slh::SlhTriple;

SlhTriple relay_set(const SpacePtr& space, const char* relay, bool corrupt) {
  const SlhTriple r = components::relay_set(space, relay);
  if (!corrupt) return r;
  std::vector<Operator> s = r.scattering();
  s[1] = -s[1];
  return SlhTriple(std::move(s), r.coupling(), r.H(), slh::Validation::Skip);
}

double relay_unitarity_defect(bool corrupt) {
  const SpacePtr space = network::network_space();
  double worst = 0.0;
  for (const char* relay : {"R1", "R2"}) {
    worst = std::max(worst, relay_set(space, relay, corrupt).unitarity_defect());
    worst = std::max(worst, components::relay_routing(space, relay).unitarity_defect());
  }
  return worst;
}

namespace {

SpacePtr small_space() {
  static const SpacePtr space = make_space({{"A", 2}, {"B", 3}});
  return space;
}

std::size_t draw_channels(sampling::Engine& rng) { return std::uniform_int_distribution<std::size_t>(1, 3)(rng); }

std::vector<Operator> zeros(const SpacePtr& space, std::size_t n) {
  return std::vector<Operator>(n, Operator::zero(space));
}

// S^dag L for an operator-valued S and L.
std::vector<Operator> sdag_l(const SlhTriple& g) {
  const std::size_t n = g.n_channels();
  std::vector<Operator> out = zeros(g.space(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += g.S(j, i).adjoint() * g.L(j);
  return out;
}

}  // namespace

IdentityDefects slh_identity_defects(sampling::Engine& rng, int trials) {
  const SpacePtr space = small_space();
  IdentityDefects d;
  for (int t = 0; t < trials; ++t) {
    const std::size_t n = draw_channels(rng);
    const SlhTriple g = sampling::triple(rng, space, n);
    const SlhTriple s_only(g.scattering(), zeros(space, n), Operator::zero(space));
    const SlhTriple lh(SlhTriple::trivial(space, n).scattering(), g.coupling(), g.H());
    const SlhTriple lh_rot(SlhTriple::trivial(space, n).scattering(), sdag_l(g), g.H());
    d.split_scattering_last = std::max(d.split_scattering_last, slh::max_abs_diff(slh::series(lh, s_only), g));
    d.split_scattering_first =
        std::max(d.split_scattering_first, slh::max_abs_diff(slh::series(s_only, lh_rot), g));

    const SlhTriple b = sampling::triple(rng, space, n);
    const SlhTriple c = sampling::triple(rng, space, n);
    d.associativity = std::max(
        d.associativity, slh::max_abs_diff(slh::series(slh::series(g, b), c), slh::series(g, slh::series(b, c))));
  }
  return d;
}

double displacement_roundtrip_defect(sampling::Engine& rng, int trials) {
  const SpacePtr space = small_space();
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const std::size_t n = draw_channels(rng);
    const SlhTriple g0 = sampling::triple(rng, space, n);
    const slh::Displacement d = sampling::displacement(rng, n);
    const auto f = slh::extract_displacements(g0, d);
    worst = std::max(worst, slh::max_abs_diff(f.recompose(), slh::coherent_drive(g0, d)));
  }
  return worst;
}

network::FeedbackParams feedback_test_params(Variant variant) {
  network::FeedbackParams p;
  p.beta = cplx(1.3, -0.4);
  p.gamma = 0.7;
  p.delta = 2.5;
  p.k = 1.7;
  p.variant = variant;
  return p;
}

FeedbackDefects feedback_defects(const network::FeedbackParams& p) {
  const SpacePtr space = network::prelimit_space();
  FeedbackDefects d;
  for (auto side : {network::Side::Left, network::Side::Right}) {
    const SlhTriple vac = network::build_feedback_vacuum(space, side, p);
    const SlhTriple g = network::build_feedback_subnet_prelimit(space, side, p);
    const auto f = slh::extract_displacements(vac, network::feedback_drive(p));
    d.closed_form = std::max(d.closed_form, slh::max_abs_diff(g, network::printed_feedback_subnet(space, side, p)));
    d.roundtrip = std::max(d.roundtrip, slh::max_abs_diff(f.recompose(), g));
    d.inner = std::max(d.inner, slh::max_abs_diff(f.inner, network::printed_feedback_inner(space, side, p)));
  }
  return d;
}

namespace {

SlhTriple probe_subnet(network::Side side, double alpha, Variant variant, bool corrupt) {
  const SpacePtr space = network::network_space();
  const char* relay = side == network::Side::Left ? "R1" : "R2";
  return network::build_probe_subnet(space, side, alpha, variant, relay_set(space, relay, corrupt));
}

}  // namespace

double probe_subnet_defect(double alpha, Variant variant, bool corrupt_relay) {
  const SpacePtr space = network::network_space();
  double worst = 0.0;
  for (auto side : {network::Side::Left, network::Side::Right})
    worst = std::max(worst, slh::max_abs_diff(probe_subnet(side, alpha, variant, corrupt_relay),
                                              network::printed_probe_subnet(space, side, alpha, variant)));
  return worst;
}

double probe_coupling_defect(double alpha, Variant variant, bool corrupt_relay) {
  const auto printed = network::printed_probe_couplings(network::network_space(), alpha, variant);
  const SlhTriple left = probe_subnet(network::Side::Left, alpha, variant, corrupt_relay);
  const SlhTriple right = probe_subnet(network::Side::Right, alpha, variant, corrupt_relay);
  const std::array<const Operator*, 4> composed{&left.L(0), &left.L(1), &right.L(0), &right.L(1)};
  double worst = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    const double plus = max_abs_diff(*composed[j], printed[j]);
    const double minus = max_abs_diff(*composed[j], -printed[j]);
    worst = std::max(worst, std::min(plus, minus));
  }
  return worst;
}

StarkComparison compare_stark_table() {
  network::MemoryParams p;
  p.omega = 1.0;
  StarkComparison c;
  c.computed = network::stark_shift_table(p);
  const auto ref = network::published_stark_table();
  for (std::size_t i = 0; i < c.computed.size(); ++i) {
    const auto& row = c.computed[i];
    bool match = i < ref.size() && row.qubits == ref[i].qubits && row.relays == ref[i].relays;
    for (std::size_t q = 0; q < 3 && match; ++q) match = row.shift[q] == ref[i].shift[q];
    if (!match) ++c.mismatched_rows;
    c.worst_row_sum_error =
        std::max(c.worst_row_sum_error, std::abs(row.shift[0] + row.shift[1] + row.shift[2] + 2.0));
  }
  if (c.computed.size() != ref.size()) c.mismatched_rows = std::max<int>(c.mismatched_rows, 8);
  return c;
}

double stationarity_residual(double omega, Variant variant, bool compensated) {
  network::MemoryParams p;
  p.omega = omega;
  p.alpha = omega / 8.0;
  p.gamma_flip = 0.0;
  p.variant = variant;
  p.stark_compensated = compensated;
  const auto model = network::assemble_memory(p);
  return lindblad::rhs(model, network::initial_density(variant)).cwiseAbs().maxCoeff();
}

PhaseFlipDefects phase_flip_defects(const network::MemoryParams& bitflip) {
  network::MemoryParams pf = bitflip;
  pf.variant = Variant::PhaseFlip;
  network::MemoryParams bf = bitflip;
  bf.variant = Variant::BitFlip;
  const auto mb = network::assemble_memory(bf);
  const auto mp = network::assemble_memory(pf);
  const Operator u = network::qubit_hadamard(mb.space);
  auto conj = [&](const Operator& a) { return u * a * u.adjoint(); };

  PhaseFlipDefects d;
  d.hamiltonian = max_abs_diff(conj(mb.H), mp.H);
  if (mb.collapse_ops.size() != mp.collapse_ops.size()) {
    d.collapse = d.generator = std::numeric_limits<double>::infinity();
    return d;
  }
  std::vector<Operator> rotated;
  for (std::size_t j = 0; j < mb.collapse_ops.size(); ++j) {
    rotated.push_back(conj(mb.collapse_ops[j]));
    d.collapse = std::max(d.collapse, max_abs_diff(rotated.back(), mp.collapse_ops[j]));
  }
  const lindblad::LindbladModel conjugated(conj(mb.H), std::move(rotated));
  const Matrix a = lindblad::Liouvillian(conjugated).to_dense();
  const Matrix b = lindblad::Liouvillian(mp).to_dense();
  d.generator = (a - b).cwiseAbs().maxCoeff();
  d.generator_scale = b.cwiseAbs().maxCoeff();
  return d;
}

double bare_qubit_defect(double gamma_flip, double t_max, double sample_interval) {
  const SpacePtr space = make_space({{"Q", 2}});
  const lindblad::LindbladModel model(Operator::zero(space), {std::sqrt(gamma_flip) * embed(local::pauli_x(), "Q", space)});
  Vector psi(2);
  psi << 1.0 / std::sqrt(2.0), -kI / std::sqrt(2.0);
  lindblad::IntegratorOptions o;
  o.t_max = t_max;
  o.sample_interval = sample_interval;
  o.rtol = 1e-12;
  o.atol = 1e-14;
  const auto tr = lindblad::integrate(model, psi * psi.adjoint(), o, psi);
  double worst = 0.0;
  for (const auto& s : tr.samples)
    worst = std::max(worst, std::abs(s.fidelity - lindblad::bare_qubit_fidelity(gamma_flip, s.t)));
  return worst;
}

}  // namespace qnet::oracles

namespace qnet::oracles {

bool ProbeConvergence::monotone() const {
  for (const auto* e : {&coupled_error, &uncoupled_error, &coupled_amplitude_error, &uncoupled_amplitude_error})
    for (std::size_t i = 1; i < e->size(); ++i)
      if ((*e)[i] > (*e)[i - 1]) return false;
  return true;
}

double ProbeConvergence::final_error() const {
  return ks.empty() ? std::numeric_limits<double>::infinity() : std::max(coupled_error.back(), uncoupled_error.back());
}

ProbeConvergence probe_convergence(const std::vector<double>& ks, Variant variant) {
  ProbeConvergence c;
  c.ks = ks;
  for (double k : ks) {
    components::ProbePhysicalParams p;
    p.k = k;
    p.variant = variant;
    const auto on = components::probe_response(p, true);
    const auto off = components::probe_response(p, false);
    c.coupled_error.push_back(on.phase_error);
    c.uncoupled_error.push_back(off.phase_error);
    c.coupled_amplitude_error.push_back(on.amplitude_error);
    c.uncoupled_amplitude_error.push_back(off.amplitude_error);
  }
  return c;
}

double ProbeConvergence::final_amplitude_error() const {
  if (ks.empty()) return std::numeric_limits<double>::infinity();
  return std::max(coupled_amplitude_error.back(), uncoupled_amplitude_error.back());
}

double RamanConvergence::leakage_exponent() const {
  const std::size_t n = ks.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  return std::log(leakage[n - 2] / leakage[n - 1]) / std::log(ks[n - 1] / ks[n - 2]);
}

RamanConvergence raman_convergence(const std::vector<double>& ks) {
  RamanConvergence c;
  c.ks = ks;
  for (double k : ks) {
    components::RamanPhysicalParams p;
    p.k = k;
    const auto r = components::raman_response(p);
    const double w0 = components::raman_rabi_prediction(p);
    c.rabi_relative_error.push_back(std::abs(r.rabi_frequency - w0) / w0);
    c.leakage.push_back(r.mean_leakage);
  }
  return c;
}

}  // namespace qnet::oracles
