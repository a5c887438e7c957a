#include <Eigen/LU>

#include "qnet/lindblad.hpp"

namespace qnet::lindblad {

namespace {

constexpr double kRankThreshold = 1e-11;

Matrix kernel_of(const Matrix& m) {
  Eigen::FullPivLU<Matrix> lu(m);
  lu.setThreshold(kRankThreshold);
  if (lu.dimensionOfKernel() == 0) return Matrix(m.cols(), 0);
  return lu.kernel();
}

Matrix unvec(const Vector& v, Eigen::Index d) { return Eigen::Map<const Matrix>(v.data(), d, d); }

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

// Hermitian basis of the span of the given kernel vectors (Hermiticity-preserving
// generators have kernels closed under conjugation).
std::vector<Matrix> hermitian_basis(const Matrix& kernel, Eigen::Index d) {
  std::vector<Vector> basis;
  auto try_add = [&](const Matrix& herm) {
    Vector v = vec(herm);
    for (const auto& b : basis) v -= b.dot(v) * b;
    const double nrm = v.norm();
    if (nrm > 1e-8) basis.push_back(v / nrm);
  };
  for (Eigen::Index c = 0; c < kernel.cols() && static_cast<Eigen::Index>(basis.size()) < kernel.cols(); ++c) {
    const Matrix a = unvec(kernel.col(c), d);
    try_add(0.5 * (a + a.adjoint()));
    try_add((a - a.adjoint()) / (2.0 * kI));
  }
  std::vector<Matrix> out;
  for (const auto& b : basis) {
    Matrix m = unvec(b, d);
    m = 0.5 * (m + m.adjoint());
    const cplx tr = m.trace();
    if (std::abs(tr) > 1e-8) m /= tr.real();
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

SteadyStateResult steady_state(const LindbladModel& model) {
  const auto d = static_cast<Eigen::Index>(model.space->total_dim());
  const Liouvillian liou(model);
  const Matrix dense = liou.to_dense();
  const Matrix kernel = kernel_of(dense);

  SteadyStateResult out;
  out.nullity = static_cast<std::size_t>(kernel.cols());
  out.states = hermitian_basis(kernel, d);
  for (const auto& s : out.states) out.residual = std::max(out.residual, rhs(model, s).cwiseAbs().maxCoeff());
  return out;
}

Matrix stationary_limit(const LindbladModel& model, const Matrix& rho0) {
  const auto d = static_cast<Eigen::Index>(model.space->total_dim());
  if (rho0.rows() != d || rho0.cols() != d) throw SpaceMismatch("stationary_limit: dimension mismatch");
  const Liouvillian liou(model);
  const Matrix dense = liou.to_dense();
  const Matrix right = kernel_of(dense);
  const Matrix left = kernel_of(dense.adjoint());
  if (right.cols() != left.cols() || right.cols() == 0)
    throw std::runtime_error("stationary_limit: left/right null spaces disagree (" + std::to_string(left.cols()) + " vs " +
                             std::to_string(right.cols()) + ")");
  const Matrix gram = left.adjoint() * right;
  const Vector coeffs = gram.fullPivLu().solve(left.adjoint() * vec(rho0));
  return unvec(right * coeffs, d);
}

}  // namespace qnet::lindblad
