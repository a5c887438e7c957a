#include <Eigen/SparseCore>

#include "qnet/kernels.hpp"
#include "qnet/lindblad.hpp"

namespace qnet::lindblad {

namespace {

struct Entry {
  Eigen::Index row;
  Eigen::Index col;
  cplx value;
};

std::vector<Entry> entries_of(const Matrix& m) {
  std::vector<Entry> out;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (m(r, c) != cplx{}) out.push_back({r, c, m(r, c)});
  return out;
}

// Appends kron(P, Q) to the triplet list.
void add_kron(std::vector<Eigen::Triplet<cplx>>& trips, const std::vector<Entry>& p, const std::vector<Entry>& q,
              Eigen::Index d) {
  for (const auto& a : p)
    for (const auto& b : q) trips.emplace_back(a.row * d + b.row, a.col * d + b.col, a.value * b.value);
}

}  // namespace

Liouvillian::Liouvillian(const LindbladModel& model) : dim_(model.space->total_dim()) {
  const auto d = static_cast<Eigen::Index>(dim_);
  const Matrix id = Matrix::Identity(d, d);

  Matrix k = -kI * model.H.matrix();
  for (const auto& l : model.collapse_ops) k -= 0.5 * l.matrix().adjoint() * l.matrix();

  std::vector<Eigen::Triplet<cplx>> trips;
  const auto id_nz = entries_of(id);
  add_kron(trips, id_nz, entries_of(k), d);
  add_kron(trips, entries_of(k.conjugate()), id_nz, d);
  for (const auto& l : model.collapse_ops) {
    const auto l_nz = entries_of(l.matrix());
    if (l_nz.empty()) continue;
    add_kron(trips, entries_of(l.matrix().conjugate()), l_nz, d);
  }

  Eigen::SparseMatrix<cplx, Eigen::RowMajor> sp(d * d, d * d);
  sp.setFromTriplets(trips.begin(), trips.end());
  double scale = 0.0;
  for (Eigen::Index i = 0; i < sp.outerSize(); ++i)
    for (decltype(sp)::InnerIterator it(sp, i); it; ++it) scale = std::max(scale, std::abs(it.value()));
  // Drops rounding residue of exact cancellations (e.g. scalar parts of displaced couplings).
  sp.prune(cplx{}, 1e-14 * std::max(scale, 1.0));
  sp.makeCompressed();

  row_ptr_.assign(sp.outerIndexPtr(), sp.outerIndexPtr() + sp.outerSize() + 1);
  cols_.assign(sp.innerIndexPtr(), sp.innerIndexPtr() + sp.nonZeros());
  values_.assign(sp.valuePtr(), sp.valuePtr() + sp.nonZeros());
}

void Liouvillian::apply(const cplx* in, cplx* out) const {
  kernels::CsrView view{size(), row_ptr_.data(), cols_.data(), values_.data()};
  kernels::spmv(view, in, out);
}

Matrix Liouvillian::apply(const Matrix& rho) const {
  const auto d = static_cast<Eigen::Index>(dim_);
  if (rho.rows() != d || rho.cols() != d) throw SpaceMismatch("Liouvillian::apply: dimension mismatch");
  Matrix out(d, d);
  apply(rho.data(), out.data());
  return out;
}

Matrix Liouvillian::to_dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (std::int64_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) m(r, cols_[k]) = values_[k];
  return m;
}

}  // namespace qnet::lindblad
