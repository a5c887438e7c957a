#include "helpers.hpp"
#include "qnet/network.hpp"
#include "qnet/oracles.hpp"
#include "qnet/sampling.hpp"

using namespace qnet;
using namespace qnet::network;
using components::Variant;

namespace {

Vector basis(const SpacePtr& space, std::array<int, 5> levels) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space->total_dim()));
  v(static_cast<Eigen::Index>(space->basis_index(levels))) = 1.0;
  return v;
}

constexpr int g = level::g;
constexpr int h = level::h;

}  // namespace

TEST_SUITE("network") {

TEST_CASE("parity algebra") {
  const auto space = network_space();
  const Operator one = Operator::identity(space);
  const auto p = parity_operators(space, Variant::BitFlip);
  CHECK((p.E12 * p.O12).is_zero(1e-15));
  CHECK(approx_equal(p.E12 * p.E12, 2.0 * p.E12));
  CHECK(approx_equal(p.E32 - p.O32, 2.0 * one));
}

TEST_CASE("composed probe subnet equals the closed forms") {
  for (Variant v : {Variant::BitFlip, Variant::PhaseFlip}) {
    CHECK(oracles::probe_subnet_defect(0.8, v) < 1e-12);
    CHECK(oracles::probe_coupling_defect(0.8, v) < 1e-12);
  }
}

TEST_CASE("L1 writes even parity into R1") {
  const auto space = network_space();
  const double alpha = 1.3;
  const auto gp = build_probe_subnet(space, Side::Left, alpha, Variant::BitFlip);
  const Vector in = basis(space, {g, g, g, g, g});
  const Vector out = gp.L(0).matrix() * in;
  const Vector expect = std::sqrt(2.0) * alpha * basis(space, {g, g, g, h, g});
  CHECK(test::max_diff(out, expect) < 1e-12);
  CHECK(build_probe_subnet(space, Side::Left, 0.0, Variant::BitFlip).L(1).is_zero());
}

TEST_CASE("mutated relay breaks the closed-form equality") {
  CHECK(oracles::probe_subnet_defect(0.8, Variant::BitFlip, true) > 0.1);
  CHECK(oracles::probe_coupling_defect(0.8, Variant::BitFlip, true) > 0.1);
}

TEST_CASE("feedback subnet closed forms") {
  for (Variant v : {Variant::BitFlip, Variant::PhaseFlip}) {
    const auto d = oracles::feedback_defects(oracles::feedback_test_params(v));
    CHECK(d.closed_form < 1e-12);
    CHECK(d.roundtrip < 1e-12);
    CHECK(d.inner < 1e-12);
  }
  const auto space = prelimit_space();
  FeedbackParams p;
  const auto gf = build_feedback_subnet_prelimit(space, Side::Left, p);
  CHECK(approx_equal(gf.S(1, 0), -projector(space, "R1", level::h)));

  p.beta = 0.0;
  p.delta = 4.0;
  const auto quiet = build_feedback_subnet_prelimit(space, Side::Right, p);
  Operator pr = Operator::zero(space);
  for (const char* q : {"Q1", "Q2", "Q3"}) pr += projector(space, q, level::r);
  CHECK(approx_equal(quiet.H(), 0.5 * p.delta * pr));
}

TEST_CASE("feedback Hamiltonian") {
  const auto space = network_space();
  MemoryParams p;
  p.omega = 2.0;
  const Operator ham = feedback_limit_hamiltonian(space, p);
  CHECK(is_hermitian(ham));
  p.omega = 6.0;
  CHECK(approx_equal(feedback_limit_hamiltonian(space, p), 3.0 * ham));

  // Flip on Q1 with relays (g, h).
  const cplx elem = basis(space, {h, g, g, g, h}).dot(ham.matrix() * basis(space, {g, g, g, g, h}));
  CHECK(elem.real() == doctest::Approx(2.0 * std::sqrt(2.0)));

  p.omega = 1.0;
  MemoryParams comp = p;
  comp.stark_compensated = true;
  const auto lib = pauli_library(space);
  const Operator stark = -(lib["R1"].Pg * (lib["Q1"].Pg + lib["Q2"].Ph)) - 2.0 * (lib["R1"].Ph * lib["Q3"].Pg) -
                         lib["R2"].Pg * (lib["Q2"].Pg + lib["Q3"].Ph) - 2.0 * (lib["R2"].Ph * lib["Q1"].Ph);
  CHECK(approx_equal(feedback_limit_hamiltonian(space, p) - feedback_limit_hamiltonian(space, comp), stark));
}

TEST_CASE("stark table read from the Hamiltonian") {
  MemoryParams p;
  p.omega = 1.0;
  const auto rows = stark_shift_table(p);
  REQUIRE(rows.size() == 8);
  for (const auto& r : rows) CHECK(r.shift[0] + r.shift[1] + r.shift[2] == doctest::Approx(-2.0));
  // hhh with relays hh: only -2 Ph(R2) Ph(Q1) is diagonal-active.
  CHECK(rows[0].relays == std::array<int, 2>{h, h});
  CHECK(rows[0].shift == std::array<double, 3>{-2.0, 0.0, 0.0});
  // ghh with relays gh agrees with the reference row.
  CHECK(rows[3].shift == std::array<double, 3>{-1.0, -1.0, 0.0});
  CHECK(oracles::compare_stark_table().worst_row_sum_error < 1e-15);
  p.stark_compensated = true;
  CHECK_THROWS(stark_shift_table(p));
}

TEST_CASE("assembled model") {
  MemoryParams p;
  p.omega = 30.0;
  p.alpha = 30.0 / 8.0;
  const auto m = assemble_memory(p);
  CHECK(m.collapse_ops.size() == 7);
  const auto lib = pauli_library(m.space);
  const Operator zz = lib["Q1"].Z * lib["Q2"].Z;
  const Operator one = Operator::identity(m.space);
  const Operator l2 = p.alpha / std::sqrt(2.0) * (lib["R1"].s_gh * (one - zz) - lib["R1"].Ph * (one + zz));
  CHECK(std::min(max_abs_diff(m.collapse_ops[1], l2), max_abs_diff(m.collapse_ops[1], -l2)) < 1e-12);
  CHECK(approx_equal(m.collapse_ops[4], std::sqrt(0.1) * lib["Q1"].X));

  p.relay_dephasing = 2.0;
  CHECK(assemble_memory(p).collapse_ops.size() == 13);

  MemoryParams zero;
  zero.gamma_flip = 0.0;
  const auto z = assemble_memory(zero);
  sampling::Engine rng(1);
  CHECK(lindblad::rhs(z, sampling::density(rng, 32)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("collapse-operator sign does not change the generator") {
  MemoryParams p;
  p.omega = 30.0;
  p.alpha = 3.75;
  auto m = assemble_memory(p);
  sampling::Engine rng(2);
  const Matrix rho = sampling::density(rng, 32);
  const Matrix before = lindblad::rhs(m, rho);
  m.collapse_ops[0] = -m.collapse_ops[0];
  m.collapse_ops[3] = -m.collapse_ops[3];
  CHECK(test::max_diff(lindblad::rhs(m, rho), before) < 1e-12);
}

TEST_CASE("codeword with relays hh is stationary without errors") {
  for (Variant v : {Variant::BitFlip, Variant::PhaseFlip})
    for (bool comp : {false, true}) CHECK(oracles::stationarity_residual(90.0, v, comp) < 1e-10);

  MemoryParams p;
  p.omega = 90.0;
  p.alpha = 90.0 / 8.0;
  p.gamma_flip = 0.0;
  p.relay_dephasing = 5.0;
  CHECK(lindblad::rhs(assemble_memory(p), initial_density(Variant::BitFlip)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("phase-flip network is the Hadamard-rotated bit-flip network") {
  MemoryParams p;
  p.omega = 90.0;
  p.alpha = 11.25;
  for (bool comp : {false, true}) {
    p.stark_compensated = comp;
    const auto d = oracles::phase_flip_defects(p);
    CHECK(d.hamiltonian < 1e-12);
    CHECK(d.collapse < 1e-12);
    CHECK(d.generator < 1e-12);
  }
}

TEST_CASE("initial states and fidelity projector") {
  for (Variant v : {Variant::BitFlip, Variant::PhaseFlip}) {
    const Matrix rho = initial_density(v);
    const Matrix proj = fidelity_projector(v);
    CHECK(rho.trace().real() == doctest::Approx(1.0));
    CHECK(test::max_diff(proj * proj, proj) < 1e-15);
    CHECK((proj * rho).trace().real() == doctest::Approx(1.0));
    const Matrix flipped = initial_density(v, InitialState::FlipQ2);
    CHECK(std::abs((proj * flipped).trace()) < 1e-15);
  }
  CHECK(parse_initial_state("flip-q3") == InitialState::FlipQ3);
  CHECK_THROWS(parse_initial_state("flip-q4"));
}

}
