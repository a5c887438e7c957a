#include "qnet/opalg.hpp"

#include <cmath>
#include <set>

namespace qnet {

CompositeSpace::CompositeSpace(std::vector<SubsystemLabel> subsystems) : subsystems_(std::move(subsystems)) {
  if (subsystems_.empty()) throw std::invalid_argument("CompositeSpace: no subsystems");
  std::set<std::string, std::less<>> names;
  for (const auto& s : subsystems_) {
    if (s.dim < 1) throw std::invalid_argument("CompositeSpace: subsystem '" + s.name + "' has dim < 1");
    if (!names.insert(s.name).second) throw std::invalid_argument("CompositeSpace: duplicate label '" + s.name + "'");
  }
  strides_.assign(subsystems_.size(), 1);
  for (std::size_t i = subsystems_.size(); i-- > 0;) {
    strides_[i] = total_dim_;
    total_dim_ *= static_cast<std::size_t>(subsystems_[i].dim);
  }
}

bool CompositeSpace::contains(std::string_view name) const {
  for (const auto& s : subsystems_)
    if (s.name == name) return true;
  return false;
}

std::size_t CompositeSpace::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < subsystems_.size(); ++i)
    if (subsystems_[i].name == name) return i;
  throw std::invalid_argument("unknown subsystem label '" + std::string(name) + "'");
}

std::size_t CompositeSpace::basis_index(std::span<const int> levels) const {
  if (levels.size() != subsystems_.size()) throw std::invalid_argument("basis_index: wrong number of levels");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 0 || levels[i] >= subsystems_[i].dim) throw std::out_of_range("basis_index: level out of range");
    idx += strides_[i] * static_cast<std::size_t>(levels[i]);
  }
  return idx;
}

std::vector<int> CompositeSpace::levels_of(std::size_t basis_index) const {
  if (basis_index >= total_dim_) throw std::out_of_range("levels_of: index out of range");
  std::vector<int> out(subsystems_.size());
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    out[i] = static_cast<int>(basis_index / strides_[i]);
    basis_index %= strides_[i];
  }
  return out;
}

SpacePtr make_space(std::vector<SubsystemLabel> subsystems) {
  return std::make_shared<const CompositeSpace>(std::move(subsystems));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) { return a == b || (a && b && *a == *b); }

namespace {

void require_same(const Operator& a, const Operator& b, const char* what) {
  if (!same_space(a.space_ptr(), b.space_ptr())) throw SpaceMismatch(std::string(what) + ": operands live on different spaces");
}

}  // namespace

Operator::Operator(SpacePtr space, Matrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
  if (!space_) throw std::invalid_argument("Operator: null space");
  const auto n = static_cast<Eigen::Index>(space_->total_dim());
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw std::invalid_argument("Operator: matrix is " + std::to_string(matrix_.rows()) + "x" +
                                std::to_string(matrix_.cols()) + ", space dimension is " + std::to_string(n));
  if (!matrix_.allFinite()) throw std::invalid_argument("Operator: non-finite entries");
}

Operator Operator::zero(SpacePtr space) {
  const auto n = static_cast<Eigen::Index>(space->total_dim());
  return Operator(std::move(space), Matrix::Zero(n, n));
}

Operator Operator::identity(SpacePtr space) {
  const auto n = static_cast<Eigen::Index>(space->total_dim());
  return Operator(std::move(space), Matrix::Identity(n, n));
}

Operator Operator::adjoint() const { return Operator(space_, matrix_.adjoint()); }

bool Operator::is_zero(double tol) const { return matrix_.cwiseAbs().maxCoeff() <= tol; }

Operator& Operator::operator+=(const Operator& rhs) {
  require_same(*this, rhs, "add");
  matrix_ += rhs.matrix_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  require_same(*this, rhs, "subtract");
  matrix_ -= rhs.matrix_;
  return *this;
}

Operator& Operator::operator*=(cplx s) {
  matrix_ *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same(a, b, "multiply");
  return Operator(a.space_, a.matrix_ * b.matrix_);
}

Operator embed(const Matrix& local, std::string_view label, const SpacePtr& space) {
  const std::size_t idx = space->index_of(label);
  const int d = space->subsystems()[idx].dim;
  if (local.rows() != d || local.cols() != d)
    throw std::invalid_argument("embed: local operator is " + std::to_string(local.rows()) + "x" +
                                std::to_string(local.cols()) + " but '" + std::string(label) + "' has dim " +
                                std::to_string(d));
  const std::size_t right = space->stride(idx);
  const std::size_t left = space->total_dim() / (right * static_cast<std::size_t>(d));
  const auto n = static_cast<Eigen::Index>(space->total_dim());
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t l = 0; l < left; ++l) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const cplx v = local(a, b);
        if (v == cplx{}) continue;
        const std::size_t row0 = (l * d + a) * right;
        const std::size_t col0 = (l * d + b) * right;
        for (std::size_t r = 0; r < right; ++r) m(row0 + r, col0 + r) = v;
      }
    }
  }
  return Operator(space, std::move(m));
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator anticommutator(const Operator& a, const Operator& b) { return a * b + b * a; }

Operator imag_part(const Operator& m) { return (m - m.adjoint()) * (1.0 / (2.0 * kI)); }

Operator real_part(const Operator& m) { return (m + m.adjoint()) * 0.5; }

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same(a, b, "compare");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

bool approx_equal(const Operator& a, const Operator& b, double tol) { return max_abs_diff(a, b) <= tol; }

bool is_hermitian(const Operator& a, double tol) {
  return (a.matrix() - a.matrix().adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Operator& a, double tol) {
  const Matrix id = Matrix::Identity(a.matrix().rows(), a.matrix().cols());
  return (a.matrix().adjoint() * a.matrix() - id).cwiseAbs().maxCoeff() <= tol &&
         (a.matrix() * a.matrix().adjoint() - id).cwiseAbs().maxCoeff() <= tol;
}

namespace local {

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix projector(int dim, int lvl) { return transition(dim, lvl, lvl); }

Matrix transition(int dim, int to, int from) {
  if (to < 0 || to >= dim || from < 0 || from >= dim) throw std::out_of_range("transition: level out of range");
  Matrix m = Matrix::Zero(dim, dim);
  m(to, from) = 1.0;
  return m;
}

Matrix pauli_x() { return transition(2, level::h, level::g) + transition(2, level::g, level::h); }

Matrix pauli_z() { return projector(2, level::h) - projector(2, level::g); }

Matrix hadamard() { return (pauli_x() + pauli_z()) / std::sqrt(2.0); }

}  // namespace local

Operator projector(const SpacePtr& space, std::string_view label, int lvl) {
  return embed(local::projector(space->label(label).dim, lvl), label, space);
}

Operator transition(const SpacePtr& space, std::string_view label, int to, int from) {
  return embed(local::transition(space->label(label).dim, to, from), label, space);
}

const QubitOps& PauliLibrary::operator[](std::string_view label) const {
  auto it = ops_.find(label);
  if (it == ops_.end()) throw std::invalid_argument("pauli library has no label '" + std::string(label) + "'");
  return it->second;
}

bool PauliLibrary::contains(std::string_view label) const { return ops_.find(label) != ops_.end(); }

PauliLibrary pauli_library(const SpacePtr& space, const std::vector<std::string>& labels) {
  std::vector<std::string> wanted = labels;
  if (wanted.empty()) {
    for (const auto& s : space->subsystems())
      if (s.dim == 2) wanted.push_back(s.name);
  }
  PauliLibrary lib;
  for (const auto& name : wanted) {
    if (space->label(name).dim != 2)
      throw std::invalid_argument("pauli_library: '" + name + "' is not a two-level subsystem");
    lib.ops_.emplace(name, QubitOps{
                               embed(local::pauli_x(), name, space),
                               embed(local::pauli_z(), name, space),
                               embed(local::projector(2, level::g), name, space),
                               embed(local::projector(2, level::h), name, space),
                               embed(local::transition(2, level::g, level::h), name, space),
                               embed(local::transition(2, level::h, level::g), name, space),
                           });
  }
  return lib;
}

}  // namespace qnet
