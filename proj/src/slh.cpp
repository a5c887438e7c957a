#include "qnet/slh.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>

namespace qnet::slh {

namespace {

void check_space(const SpacePtr& expected, const Operator& op, const char* what) {
  if (!same_space(expected, op.space_ptr())) throw SpaceMismatch(std::string(what) + ": entries live on different spaces");
}

void require_same(const SlhTriple& a, const SlhTriple& b, const char* what) {
  if (!same_space(a.space(), b.space())) throw SpaceMismatch(std::string(what) + ": triples live on different spaces");
}

void report(Validation mode, const std::string& msg) {
  if (mode == Validation::Strict) throw std::invalid_argument(msg);
  std::cerr << "warning: " << msg << '\n';
}

}  // namespace

SlhTriple::SlhTriple(std::vector<Operator> scattering, std::vector<Operator> coupling, Operator hamiltonian,
                     Validation validation)
    : S_(std::move(scattering)), L_(std::move(coupling)), H_(std::move(hamiltonian)) {
  const std::size_t n = L_.size();
  if (S_.size() != n * n)
    throw std::invalid_argument("SlhTriple: scattering has " + std::to_string(S_.size()) + " entries for " +
                                std::to_string(n) + " channels");
  for (const auto& s : S_) check_space(space(), s, "SlhTriple");
  for (const auto& l : L_) check_space(space(), l, "SlhTriple");
  if (validation == Validation::Skip) return;

  const double u = unitarity_defect();
  if (u > kValidationTol) report(validation, "SlhTriple: S is not unitary (defect " + std::to_string(u) + ")");
  const double h = hermiticity_defect();
  if (h > kValidationTol) report(validation, "SlhTriple: H is not Hermitian (defect " + std::to_string(h) + ")");
}

SlhTriple SlhTriple::trivial(const SpacePtr& space, std::size_t n) {
  return scalar_scattering(space, Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)),
                           Validation::Skip);
}

SlhTriple SlhTriple::scalar_scattering(const SpacePtr& space, const Matrix& s, Validation validation) {
  if (s.rows() != s.cols()) throw std::invalid_argument("scalar_scattering: matrix is not square");
  const auto n = static_cast<std::size_t>(s.rows());
  const Operator id = Operator::identity(space);
  std::vector<Operator> S;
  S.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) S.push_back(id * s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  std::vector<Operator> L(n, Operator::zero(space));
  return SlhTriple(std::move(S), std::move(L), Operator::zero(space), validation);
}

SlhTriple SlhTriple::hamiltonian_only(Operator hamiltonian) {
  return SlhTriple({}, {}, std::move(hamiltonian));
}

Matrix SlhTriple::scattering_block() const {
  const std::size_t n = n_channels();
  const auto d = static_cast<Eigen::Index>(H_.dim());
  const auto nd = static_cast<Eigen::Index>(n) * d;
  Matrix out(nd, nd);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.block(static_cast<Eigen::Index>(i) * d, static_cast<Eigen::Index>(j) * d, d, d) = S(i, j).matrix();
  return out;
}

double SlhTriple::unitarity_defect() const {
  if (n_channels() == 0) return 0.0;
  const Matrix s = scattering_block();
  const Matrix id = Matrix::Identity(s.rows(), s.cols());
  return std::max((s.adjoint() * s - id).cwiseAbs().maxCoeff(), (s * s.adjoint() - id).cwiseAbs().maxCoeff());
}

double SlhTriple::hermiticity_defect() const {
  return (H_.matrix() - H_.matrix().adjoint()).cwiseAbs().maxCoeff();
}

SlhTriple concatenate(const SlhTriple& g1, const SlhTriple& g2) {
  require_same(g1, g2, "concatenate");
  const std::size_t n1 = g1.n_channels();
  const std::size_t n2 = g2.n_channels();
  const std::size_t n = n1 + n2;
  const Operator zero = Operator::zero(g1.space());
  std::vector<Operator> S(n * n, zero);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) S[i * n + j] = g1.S(i, j);
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j) S[(n1 + i) * n + n1 + j] = g2.S(i, j);
  std::vector<Operator> L = g1.coupling();
  L.insert(L.end(), g2.coupling().begin(), g2.coupling().end());
  return SlhTriple(std::move(S), std::move(L), g1.H() + g2.H(), Validation::Skip);
}

SlhTriple series(const SlhTriple& g2, const SlhTriple& g1) {
  require_same(g1, g2, "series");
  const std::size_t n = g1.n_channels();
  if (g2.n_channels() != n)
    throw std::invalid_argument("series: channel counts differ (" + std::to_string(g2.n_channels()) + " vs " +
                                std::to_string(n) + ")");
  const Operator zero = Operator::zero(g1.space());
  std::vector<Operator> S(n * n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix acc = Matrix::Zero(static_cast<Eigen::Index>(zero.dim()), static_cast<Eigen::Index>(zero.dim()));
      for (std::size_t k = 0; k < n; ++k) acc.noalias() += g2.S(i, k).matrix() * g1.S(k, j).matrix();
      S[i * n + j] = Operator(g1.space(), std::move(acc));
    }

  std::vector<Operator> L;
  L.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Operator li = g2.L(i);
    for (std::size_t k = 0; k < n; ++k) li += g2.S(i, k) * g1.L(k);
    L.push_back(std::move(li));
  }

  // Im{L2^dag S2 L1}; the vector S2 L1 is L - L2.
  Operator cross = zero;
  for (std::size_t i = 0; i < n; ++i) cross += g2.L(i).adjoint() * (L[i] - g2.L(i));
  return SlhTriple(std::move(S), std::move(L), g1.H() + g2.H() + imag_part(cross), Validation::Skip);
}

SlhTriple weyl(const SpacePtr& space, const Displacement& d) {
  SlhTriple id = SlhTriple::trivial(space, d.size());
  std::vector<Operator> L;
  L.reserve(d.size());
  const Operator one = Operator::identity(space);
  for (cplx a : d.amplitudes) L.push_back(one * a);
  return SlhTriple(id.scattering(), std::move(L), Operator::zero(space), Validation::Skip);
}

SlhTriple coherent_drive(const SlhTriple& g, const Displacement& d) {
  if (d.size() != g.n_channels())
    throw std::invalid_argument("coherent_drive: displacement has " + std::to_string(d.size()) + " entries for " +
                                std::to_string(g.n_channels()) + " channels");
  return series(g, weyl(g.space(), d));
}

SlhTriple pad(const SlhTriple& g, std::size_t at, std::size_t count) {
  const std::size_t n = g.n_channels();
  if (at < 1 || at > n + 1)
    throw std::out_of_range("pad: position " + std::to_string(at) + " outside 1.." + std::to_string(n + 1));
  const std::size_t m = n + count;
  // Old channel c maps to slot(c); new channels fill at-1 .. at+count-2.
  auto slot = [&](std::size_t c) { return c < at - 1 ? c : c + count; };
  const Operator zero = Operator::zero(g.space());
  const Operator one = Operator::identity(g.space());
  std::vector<Operator> S(m * m, zero);
  std::vector<Operator> L(m, zero);
  for (std::size_t i = 0; i < n; ++i) {
    L[slot(i)] = g.L(i);
    for (std::size_t j = 0; j < n; ++j) S[slot(i) * m + slot(j)] = g.S(i, j);
  }
  for (std::size_t k = 0; k < count; ++k) S[(at - 1 + k) * m + at - 1 + k] = one;
  return SlhTriple(std::move(S), std::move(L), g.H(), Validation::Skip);
}

SlhTriple drop_channels(const SlhTriple& g, std::size_t at, std::size_t count) {
  const std::size_t n = g.n_channels();
  if (at < 1 || at - 1 + count > n) throw std::out_of_range("drop_channels: range outside the channel list");
  const Operator one = Operator::identity(g.space());
  auto dropped = [&](std::size_t c) { return c + 1 >= at && c + 1 < at + count; };
  for (std::size_t i = 0; i < n; ++i) {
    if (!dropped(i)) continue;
    if (!g.L(i).is_zero(kOperatorTol)) throw std::invalid_argument("drop_channels: channel has nonzero coupling");
    for (std::size_t j = 0; j < n; ++j) {
      const bool diag = i == j;
      if (!approx_equal(g.S(i, j), diag ? one : Operator::zero(g.space())) ||
          !approx_equal(g.S(j, i), diag ? one : Operator::zero(g.space())))
        throw std::invalid_argument("drop_channels: channel is not pass-through");
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (!dropped(i)) keep.push_back(i);
  std::vector<Operator> S;
  std::vector<Operator> L;
  for (std::size_t i : keep) {
    L.push_back(g.L(i));
    for (std::size_t j : keep) S.push_back(g.S(i, j));
  }
  return SlhTriple(std::move(S), std::move(L), g.H(), Validation::Skip);
}

SlhTriple permutation(const SpacePtr& space, const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  std::vector<bool> seen(n, false);
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (perm[i] >= n || seen[perm[i]]) throw std::invalid_argument("permutation: not a permutation of 0..n-1");
    seen[perm[i]] = true;
    p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(perm[i])) = 1.0;
  }
  return SlhTriple::scalar_scattering(space, p, Validation::Skip);
}

SlhTriple permute_outputs(const SlhTriple& g, const std::vector<std::size_t>& perm) {
  return series(permutation(g.space(), perm), g);
}

SlhTriple DisplacementFactorization::recompose() const {
  return series(series(static_part, weyl(inner.space(), drive)), inner);
}

DisplacementFactorization extract_displacements(const SlhTriple& g0, const Displacement& d) {
  const std::size_t n = g0.n_channels();
  if (d.size() != n) throw std::invalid_argument("extract_displacements: displacement length does not match channels");
  const SpacePtr& space = g0.space();
  const Operator zero = Operator::zero(space);

  std::vector<Operator> L(n, zero);  // S^dag L0
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) L[i] += g0.S(k, i).adjoint() * g0.L(k);
  Operator dl = zero;
  for (std::size_t i = 0; i < n; ++i) dl += std::conj(d.amplitudes[i]) * L[i];

  SlhTriple static_part(g0.scattering(), std::vector<Operator>(n, zero), zero, Validation::Skip);
  // H of the driven system is H0 + Im{L0^dag S d}.
  const Operator driven_h = coherent_drive(g0, d).H();
  SlhTriple inner(SlhTriple::trivial(space, n).scattering(), std::move(L), driven_h - imag_part(dl), Validation::Skip);
  return {std::move(static_part), d, std::move(inner)};
}

lindblad::LindbladModel to_lindblad(const SlhTriple& g) { return lindblad::LindbladModel(g.H(), g.coupling()); }

double max_abs_diff(const SlhTriple& a, const SlhTriple& b) {
  if (a.n_channels() != b.n_channels() || !same_space(a.space(), b.space()))
    return std::numeric_limits<double>::infinity();
  double m = max_abs_diff(a.H(), b.H());
  for (std::size_t i = 0; i < a.n_channels(); ++i) {
    m = std::max(m, max_abs_diff(a.L(i), b.L(i)));
    for (std::size_t j = 0; j < a.n_channels(); ++j) m = std::max(m, max_abs_diff(a.S(i, j), b.S(i, j)));
  }
  return m;
}

bool approx_equal(const SlhTriple& a, const SlhTriple& b, double tol) { return max_abs_diff(a, b) <= tol; }

}  // namespace qnet::slh
