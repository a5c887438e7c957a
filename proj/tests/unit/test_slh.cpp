#include "helpers.hpp"
#include "qnet/components.hpp"
#include "qnet/oracles.hpp"
#include "qnet/sampling.hpp"
#include "qnet/slh.hpp"

using namespace qnet;
using slh::SlhTriple;
using qnet::test::max_diff;

namespace {

SpacePtr small() { return make_space({{"A", 2}, {"B", 2}}); }

Operator scalar(const SpacePtr& s, cplx c) { return c * Operator::identity(s); }

}  // namespace

TEST_SUITE("slh") {

TEST_CASE("concatenation stacks channels") {
  const auto s = small();
  const SlhTriple one = SlhTriple::trivial(s, 1);
  const SlhTriple two = slh::concatenate(one, one);
  CHECK(slh::approx_equal(two, SlhTriple::trivial(s, 2)));
  CHECK(slh::concatenate(one, two).n_channels() == 3);

  const auto net = test::net_space();
  const SlhTriple r = slh::concatenate(components::relay_set(net, "R1"), components::relay_routing(net, "R1"));
  CHECK(r.n_channels() == 4);
  CHECK(r.S(0, 2).is_zero());
  CHECK(r.S(3, 1).is_zero());
  CHECK(approx_equal(r.S(2, 2), projector(net, "R1", level::g)));
}

TEST_CASE("B <| B is [[0, 1], [-1, 0]]") {
  const auto s = small();
  const SlhTriple b = components::beamsplitter(s);
  const SlhTriple bb = slh::series(b, b);
  Matrix expect(2, 2);
  expect << 0.0, 1.0, -1.0, 0.0;
  CHECK(slh::approx_equal(bb, SlhTriple::scalar_scattering(s, expect)));
}

TEST_CASE("series of scalar couplings: H picks up Im{L2^dag L1}") {
  // L1 = 1, L2 = i: Im{(-i)(1)} = -1.
  const auto s = small();
  const SlhTriple g1({scalar(s, 1.0)}, {scalar(s, 1.0)}, Operator::zero(s));
  const SlhTriple g2({scalar(s, 1.0)}, {scalar(s, kI)}, Operator::zero(s));
  const SlhTriple g = slh::series(g2, g1);
  CHECK(approx_equal(g.H(), -Operator::identity(s)));
  CHECK(approx_equal(g.L(0), scalar(s, cplx(1.0, 1.0))));
}

TEST_CASE("decomposition identities and associativity on random triples") {
  sampling::Engine rng(3);
  const auto d = oracles::slh_identity_defects(rng, 100);
  CHECK(d.split_scattering_last < 1e-12);
  CHECK(d.split_scattering_first < 1e-12);
  CHECK(d.associativity < 1e-12);
}

TEST_CASE("series of valid triples is a valid triple") {
  sampling::Engine rng(5);
  const auto s = small();
  for (int i = 0; i < 20; ++i) {
    const SlhTriple a = sampling::triple(rng, s, 2);
    const SlhTriple b = sampling::triple(rng, s, 2);
    const SlhTriple g = slh::series(a, b);
    CHECK(g.unitarity_defect() < 1e-12);
    CHECK(g.hermiticity_defect() < 1e-12);
  }
}

TEST_CASE("validation modes") {
  const auto s = small();
  const std::vector<Operator> bad_s{scalar(s, 2.0)};
  const std::vector<Operator> l{Operator::zero(s)};
  CHECK_THROWS_AS(SlhTriple(bad_s, l, Operator::zero(s)), std::invalid_argument);
  CHECK_NOTHROW(SlhTriple(bad_s, l, Operator::zero(s), slh::Validation::Warn));
  CHECK_NOTHROW(SlhTriple(bad_s, l, Operator::zero(s), slh::Validation::Skip));
  const Operator non_herm = transition(s, "A", level::g, level::h);
  CHECK_THROWS_AS(SlhTriple({scalar(s, 1.0)}, l, non_herm), std::invalid_argument);
}

TEST_CASE("shape and space errors") {
  const auto s = small();
  CHECK_THROWS(slh::series(SlhTriple::trivial(s, 1), SlhTriple::trivial(s, 2)));
  CHECK_THROWS(slh::concatenate(SlhTriple::trivial(s, 1), SlhTriple::trivial(test::net_space(), 1)));
  CHECK_THROWS(slh::coherent_drive(SlhTriple::trivial(s, 2), slh::Displacement{{1.0}}));
  CHECK_THROWS(slh::pad(SlhTriple::trivial(s, 2), 4, 1));
}

TEST_CASE("coherent drive matches the series formula") {
  sampling::Engine rng(8);
  const auto s = small();
  const SlhTriple g = sampling::triple(rng, s, 2);
  const slh::Displacement d{{cplx(0.3, -1.1), cplx(2.0, 0.5)}};
  const SlhTriple driven = slh::coherent_drive(g, d);
  CHECK(slh::approx_equal(driven, slh::series(g, slh::weyl(s, d))));
  Operator sd0 = d.amplitudes[0] * g.S(0, 0) + d.amplitudes[1] * g.S(0, 1);
  CHECK(approx_equal(driven.L(0), g.L(0) + sd0));
}

TEST_CASE("pad inserts pass-through channels; drop removes them") {
  sampling::Engine rng(9);
  const auto s = small();
  const SlhTriple g = sampling::triple(rng, s, 2);
  const SlhTriple p = slh::pad(g, 2, 1);
  REQUIRE(p.n_channels() == 3);
  CHECK(approx_equal(p.S(1, 1), Operator::identity(s)));
  CHECK(p.S(0, 1).is_zero());
  CHECK(p.L(1).is_zero());
  CHECK(approx_equal(p.S(2, 0), g.S(1, 0)));
  CHECK(slh::approx_equal(slh::drop_channels(p, 2, 1), g));
  CHECK_THROWS(slh::drop_channels(p, 1, 1));
  CHECK(slh::approx_equal(slh::pad(g, 3, 2), slh::concatenate(g, SlhTriple::trivial(s, 2))));
}

TEST_CASE("permutation relabels outputs") {
  sampling::Engine rng(10);
  const auto s = small();
  const SlhTriple g = sampling::triple(rng, s, 3);
  const SlhTriple p = slh::permute_outputs(g, {2, 0, 1});
  CHECK(approx_equal(p.L(0), g.L(2)));
  CHECK(approx_equal(p.L(1), g.L(0)));
  CHECK(approx_equal(p.S(0, 1), g.S(2, 1)));
  CHECK(approx_equal(p.H(), g.H()));
  CHECK_THROWS(slh::permutation(s, {0, 0, 1}));
}

TEST_CASE("displacement extraction round-trips") {
  sampling::Engine rng(12);
  CHECK(oracles::displacement_roundtrip_defect(rng, 100) < 1e-12);

  const auto s = small();
  const SlhTriple g0 = sampling::triple(rng, s, 2);
  const auto d = sampling::displacement(rng, 2);
  const auto f = slh::extract_displacements(g0, d);
  CHECK(f.static_part.coupling()[0].is_zero());
  CHECK(f.inner.unitarity_defect() < 1e-12);
  CHECK(approx_equal(f.inner.S(0, 0), Operator::identity(s)));
}

TEST_CASE("to_lindblad drops S and keeps L, H") {
  sampling::Engine rng(13);
  const SlhTriple g = sampling::triple(rng, small(), 3);
  const auto m = slh::to_lindblad(g);
  REQUIRE(m.collapse_ops.size() == 3);
  CHECK(approx_equal(m.collapse_ops[2], g.L(2)));
  CHECK(approx_equal(m.H, g.H()));
}

}
