#include "qnet/sampling.hpp"

namespace qnet::sampling {

Matrix gaussian(Engine& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

Matrix unitary(Engine& rng, Eigen::Index n) {
  const Eigen::HouseholderQR<Matrix> qr(gaussian(rng, n, n));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

Matrix hermitian(Engine& rng, Eigen::Index n) {
  const Matrix g = gaussian(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

Matrix density(Engine& rng, Eigen::Index n) {
  const Matrix g = gaussian(rng, n, n);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

slh::SlhTriple triple(Engine& rng, const SpacePtr& space, std::size_t n) {
  const auto d = static_cast<Eigen::Index>(space->total_dim());
  const Matrix u = unitary(rng, static_cast<Eigen::Index>(n) * d);
  std::vector<Operator> s;
  std::vector<Operator> l;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      s.emplace_back(space, u.block(static_cast<Eigen::Index>(i) * d, static_cast<Eigen::Index>(j) * d, d, d));
    l.emplace_back(space, gaussian(rng, d, d));
  }
  return slh::SlhTriple(std::move(s), std::move(l), Operator(space, hermitian(rng, d)));
}

slh::Displacement displacement(Engine& rng, std::size_t n) {
  std::normal_distribution<double> nd(0.0, 1.0);
  slh::Displacement out;
  for (std::size_t i = 0; i < n; ++i) out.amplitudes.emplace_back(nd(rng), nd(rng));
  return out;
}

}  // namespace qnet::sampling
