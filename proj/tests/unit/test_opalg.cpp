#include "helpers.hpp"
#include "qnet/sampling.hpp"

using namespace qnet;
using qnet::test::max_diff;

TEST_SUITE("opalg") {

TEST_CASE("basis order puts the first subsystem most significant") {
  const auto space = test::net_space();
  CHECK(space->total_dim() == 32);
  const std::array<int, 5> q1h{1, 0, 0, 0, 0};
  const std::array<int, 5> r2h{0, 0, 0, 0, 1};
  CHECK(space->basis_index(q1h) == 16);
  CHECK(space->basis_index(r2h) == 1);
  CHECK(space->levels_of(16) == std::vector<int>{1, 0, 0, 0, 0});
}

TEST_CASE("embed examples") {
  const auto space = test::net_space();
  const Operator z = embed(local::pauli_z(), "Q1", space);
  CHECK(std::abs(z.trace()) < 1e-15);
  CHECK(approx_equal(z * z, Operator::identity(space)));
  CHECK(approx_equal(embed(local::identity(2), "Q2", space), Operator::identity(space)));
  const Operator pg = projector(space, "R1", level::g);
  CHECK(approx_equal(pg * pg, pg));
  CHECK(pg.trace().real() == doctest::Approx(16.0));
}

TEST_CASE("embed rejects unknown labels and wrong local dimension") {
  const auto space = test::net_space();
  CHECK_THROWS(embed(local::pauli_z(), "Q9", space));
  CHECK_THROWS(embed(local::identity(3), "Q1", space));
}

TEST_CASE("pauli library conventions") {
  const auto space = test::net_space();
  const auto lib = pauli_library(space, {"Q1", "Q2"});
  const auto& q1 = lib["Q1"];
  CHECK(approx_equal(q1.Z, q1.Ph - q1.Pg));
  CHECK(approx_equal(q1.X * q1.X, Operator::identity(space)));
  CHECK(approx_equal(q1.X * q1.Z, -(q1.Z * q1.X)));
  CHECK(approx_equal(q1.s_gh.adjoint(), q1.s_hg));
  CHECK(commutator(q1.Z, lib["Q2"].X).is_zero(1e-15));
  CHECK(commutator(q1.Z, q1.Z).is_zero());

  const auto mixed = make_space({{"Q", 2}, {"A", 3}});
  CHECK_THROWS_AS(pauli_library(mixed, {"A"}), std::invalid_argument);
  CHECK(pauli_library(mixed).contains("Q"));
  CHECK_FALSE(pauli_library(mixed).contains("A"));
}

TEST_CASE("embed is an algebra homomorphism and scales the trace") {
  sampling::Engine rng(11);
  const auto space = test::net_space();
  for (int i = 0; i < 20; ++i) {
    const Matrix a = sampling::gaussian(rng, 2, 2);
    const Matrix b = sampling::gaussian(rng, 2, 2);
    CHECK(max_diff(embed(a * b, "Q2", space).matrix(), (embed(a, "Q2", space) * embed(b, "Q2", space)).matrix()) <
          1e-12);
    CHECK(approx_equal(embed(a.adjoint(), "Q2", space), embed(a, "Q2", space).adjoint()));
    CHECK(std::abs(embed(a, "R1", space).trace() - a.trace() * 16.0) < 1e-12);
  }
}

TEST_CASE("generators on distinct labels commute") {
  const auto space = test::net_space();
  const auto lib = pauli_library(space);
  const std::vector<std::string> labels{"Q1", "Q2", "Q3", "R1", "R2"};
  for (const auto& a : labels)
    for (const auto& b : labels) {
      if (a == b) continue;
      const auto& x = lib[a];
      const auto& y = lib[b];
      for (const Operator* p : {&x.X, &x.Z, &x.Pg, &x.Ph, &x.s_gh, &x.s_hg})
        for (const Operator* q : {&y.X, &y.Z, &y.Pg, &y.Ph, &y.s_gh, &y.s_hg})
          CHECK(commutator(*p, *q).is_zero(1e-15));
    }
}

TEST_CASE("space mismatch is an error") {
  const auto a = test::net_space();
  const auto b = make_space({{"Q", 2}});
  CHECK_THROWS_AS(Operator::identity(a) + Operator::identity(b), SpaceMismatch);
  CHECK_THROWS_AS(Operator::identity(a) * Operator::identity(b), SpaceMismatch);
}

TEST_CASE("predicates") {
  const auto space = make_space({{"Q", 2}});
  Matrix b(2, 2);
  b << 1.0, 1.0, -1.0, 1.0;
  CHECK(is_unitary(Operator(space, b / std::sqrt(2.0)), 1e-12));
  CHECK_FALSE(is_unitary(Operator(space, b), 1e-12));
  CHECK(is_hermitian(imag_part(Operator(space, b))));
  CHECK(is_hermitian(real_part(Operator(space, b))));
  CHECK(max_diff(local::hadamard() * local::pauli_x() * local::hadamard(), local::pauli_z()) < 1e-15);
}

}
