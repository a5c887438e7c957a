#pragma once

// Dense operator algebra over labeled tensor-product spaces.
//
// A CompositeSpace is an ordered list of subsystems; the global basis is the
// lexicographic tensor order of that list (first subsystem most significant).
// Two-level subsystems use the basis order (g, h): index 0 is |g>, index 1 is |h>.
// Three-level atoms append r (or e) as index 2.

#include <complex>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qnet {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

/// Default entrywise tolerance for operator-equality checks.
inline constexpr double kOperatorTol = 1e-12;

class SpaceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SubsystemLabel {
  std::string name;
  int dim = 2;

  bool operator==(const SubsystemLabel&) const = default;
};

/// Level indices used throughout the component models.
namespace level {
inline constexpr int g = 0;
inline constexpr int h = 1;
inline constexpr int r = 2;  // Raman excited level of a register atom
inline constexpr int e = 2;  // probe excited level of a cavity atom
}  // namespace level

class CompositeSpace {
 public:
  explicit CompositeSpace(std::vector<SubsystemLabel> subsystems);

  const std::vector<SubsystemLabel>& subsystems() const { return subsystems_; }
  std::size_t size() const { return subsystems_.size(); }
  std::size_t total_dim() const { return total_dim_; }

  bool contains(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;
  const SubsystemLabel& label(std::string_view name) const { return subsystems_[index_of(name)]; }

  /// Distance in the global basis between consecutive levels of subsystem `index`.
  std::size_t stride(std::size_t index) const { return strides_[index]; }

  std::size_t basis_index(std::span<const int> levels) const;
  std::vector<int> levels_of(std::size_t basis_index) const;

  bool operator==(const CompositeSpace& other) const { return subsystems_ == other.subsystems_; }

 private:
  std::vector<SubsystemLabel> subsystems_;
  std::vector<std::size_t> strides_;
  std::size_t total_dim_ = 1;
};

using SpacePtr = std::shared_ptr<const CompositeSpace>;

SpacePtr make_space(std::vector<SubsystemLabel> subsystems);

bool same_space(const SpacePtr& a, const SpacePtr& b);

/// Square complex matrix acting on a CompositeSpace. Immutable value type.
class Operator {
 public:
  Operator(SpacePtr space, Matrix matrix);

  static Operator zero(SpacePtr space);
  static Operator identity(SpacePtr space);

  const Matrix& matrix() const { return matrix_; }
  const SpacePtr& space_ptr() const { return space_; }
  const CompositeSpace& space() const { return *space_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  Operator adjoint() const;
  cplx trace() const { return matrix_.trace(); }
  bool is_zero(double tol = 0.0) const;

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(cplx s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator-(Operator a) { return a *= -1.0; }
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(Operator a, cplx s) { return a *= s; }
  friend Operator operator*(cplx s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, double s) { return a *= s; }
  friend Operator operator*(double s, Operator a) { return a *= s; }
  friend Operator operator/(Operator a, double s) { return a *= 1.0 / s; }

 private:
  SpacePtr space_;
  Matrix matrix_;
};

/// I (x) ... (x) local (x) ... (x) I, with `local` placed on subsystem `label`.
Operator embed(const Matrix& local, std::string_view label, const SpacePtr& space);

Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

/// Im{M} = (M - M^dagger) / 2i. Hermitian for any M.
Operator imag_part(const Operator& m);
/// Re{M} = (M + M^dagger) / 2.
Operator real_part(const Operator& m);

double max_abs_diff(const Operator& a, const Operator& b);
bool approx_equal(const Operator& a, const Operator& b, double tol = kOperatorTol);
bool is_hermitian(const Operator& a, double tol = kOperatorTol);
bool is_unitary(const Operator& a, double tol = kOperatorTol);

/// Small local matrices in the (g, h[, r]) basis.
namespace local {
Matrix identity(int dim);
Matrix projector(int dim, int lvl);
/// |to><from|
Matrix transition(int dim, int to, int from);
/// X = |h><g| + |g><h|
Matrix pauli_x();
/// Z = |h><h| - |g><g|
Matrix pauli_z();
/// (X + Z)/sqrt(2): exchanges X and Z under conjugation in this basis.
Matrix hadamard();
}  // namespace local

Operator projector(const SpacePtr& space, std::string_view label, int lvl);
/// |to><from| on subsystem `label`.
Operator transition(const SpacePtr& space, std::string_view label, int to, int from);

/// Embedded single-qubit generators for one two-level subsystem.
struct QubitOps {
  Operator X;
  Operator Z;
  Operator Pg;
  Operator Ph;
  Operator s_gh;  // |g><h|
  Operator s_hg;  // |h><g|
};

class PauliLibrary {
 public:
  const QubitOps& operator[](std::string_view label) const;
  bool contains(std::string_view label) const;

 private:
  friend PauliLibrary pauli_library(const SpacePtr& space, const std::vector<std::string>& labels);
  std::map<std::string, QubitOps, std::less<>> ops_;
};

/// Builds the generator set for the requested labels (all two-level labels if empty).
/// Throws std::invalid_argument for a label that is not two-dimensional.
PauliLibrary pauli_library(const SpacePtr& space, const std::vector<std::string>& labels = {});

}  // namespace qnet
