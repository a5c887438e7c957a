#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qnet/lindblad.hpp"

namespace qnet::lindblad {

LindbladModel::LindbladModel(Operator hamiltonian, std::vector<Operator> collapse)
    : space(hamiltonian.space_ptr()), H(std::move(hamiltonian)), collapse_ops(std::move(collapse)) {
  if (!is_hermitian(H, 1e-10)) throw std::invalid_argument("LindbladModel: H is not Hermitian");
  for (const auto& l : collapse_ops)
    if (!same_space(l.space_ptr(), space)) throw SpaceMismatch("LindbladModel: collapse operator on a different space");
}

Matrix rhs(const LindbladModel& model, const Matrix& rho) {
  const auto n = static_cast<Eigen::Index>(model.space->total_dim());
  if (rho.rows() != n || rho.cols() != n) throw SpaceMismatch("rhs: density matrix dimension does not match the model");
  const Matrix& h = model.H.matrix();
  Matrix out = -kI * (h * rho - rho * h);
  for (const auto& op : model.collapse_ops) {
    const Matrix& l = op.matrix();
    const Matrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

double stiffness_bound(const LindbladModel& model) {
  auto spectral = [](const Matrix& herm) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  };
  double bound = spectral(model.H.matrix());
  for (const auto& l : model.collapse_ops) bound += spectral(l.matrix().adjoint() * l.matrix());
  return bound;
}

double bare_qubit_fidelity(double gamma_flip, double t) { return 0.5 * (1.0 + std::exp(-2.0 * gamma_flip * t)); }

double baseline_three_qubit(double gamma_flip, const Vector& psi0, double t) {
  if (psi0.size() != 8) throw std::invalid_argument("baseline_three_qubit: psi0 must be an 8-dim three-qubit state");
  const double decay = std::exp(-2.0 * gamma_flip * t);
  const std::array<double, 2> p{0.5 * (1.0 + decay), 0.5 * (1.0 - decay)};
  double fid = 0.0;
  for (int mask = 0; mask < 8; ++mask) {
    // X on qubit q flips bit (2 - q) of the basis index (Q1 most significant).
    double prob = 1.0;
    for (int q = 0; q < 3; ++q) prob *= p[(mask >> (2 - q)) & 1];
    cplx overlap{};
    for (int i = 0; i < 8; ++i) overlap += std::conj(psi0[i]) * psi0[i ^ mask];
    fid += prob * std::norm(overlap);
  }
  return fid;
}

Vector codeword_state() {
  Vector psi = Vector::Zero(8);
  psi[0] = 1.0 / std::sqrt(2.0);
  psi[7] = -kI / std::sqrt(2.0);
  return psi;
}

}  // namespace qnet::lindblad
