#pragma once

// Lindblad master equation: generator, time integration, observables and
// stationary states.
//
//   d rho/dt = -i[H, rho] + sum_j ( L_j rho L_j^dag - 1/2 {L_j^dag L_j, rho} )

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qnet/opalg.hpp"

namespace qnet::lindblad {

struct LindbladModel {
  LindbladModel(Operator hamiltonian, std::vector<Operator> collapse);

  SpacePtr space;
  Operator H;
  std::vector<Operator> collapse_ops;
};

/// Reference right-hand side in commutator form.
Matrix rhs(const LindbladModel& model, const Matrix& rho);

/// ||H|| + sum_j ||L_j^dag L_j|| (spectral norms); the fixed-step stability scale.
double stiffness_bound(const LindbladModel& model);

/// Sparse superoperator acting on column-major vec(rho), so that
/// vec(A rho B) = (B^T kron A) vec(rho).
class Liouvillian {
 public:
  explicit Liouvillian(const LindbladModel& model);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ * dim_; }
  std::size_t nonzeros() const { return values_.size(); }

  /// out = L in; both of length dim^2.
  void apply(const cplx* in, cplx* out) const;
  Matrix apply(const Matrix& rho) const;
  Matrix to_dense() const;

 private:
  std::size_t dim_;
  std::vector<std::int64_t> row_ptr_;
  std::vector<std::int32_t> cols_;
  std::vector<cplx> values_;
};

enum class Method { Rk4Fixed, DormandPrince45 };

struct IntegratorOptions {
  Method method = Method::DormandPrince45;
  double dt = 0.0;  // fixed step (Rk4Fixed)
  double rtol = 1e-10;
  double atol = 1e-12;
  double t_max = 1.0;
  double sample_interval = 0.1;
  /// Upper bound on the adaptive step.
  double max_step = std::numeric_limits<double>::infinity();
  /// false selects the commutator-form rhs() instead of the sparse superoperator.
  bool use_superoperator = true;
  /// Optional hook invoked at every sample time with the current state.
  std::function<void(double, const Matrix&)> observer;
};

/// Monitoring thresholds for an accepted run.
inline constexpr double kTraceTol = 1e-8;
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kPositivityTol = -1e-7;
inline constexpr double kFidelitySlack = 1e-8;

struct TraceSample {
  double t = 0.0;
  double fidelity = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  double hermiticity_error = 0.0;
};

struct FidelityTrace {
  std::vector<TraceSample> samples;
  std::size_t steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t rhs_evaluations = 0;
  Matrix final_state;

  double max_trace_error() const;
  double max_hermiticity_error() const;
  double min_eigenvalue() const;
  bool trace_ok() const { return max_trace_error() < kTraceTol; }
  bool hermiticity_ok() const { return max_hermiticity_error() < kHermiticityTol; }
  bool positivity_ok() const { return min_eigenvalue() >= kPositivityTol; }
  bool fidelity_in_range() const;
  bool accepted() const { return trace_ok() && hermiticity_ok() && positivity_ok() && fidelity_in_range(); }
};

class IntegrationError : public std::runtime_error {
 public:
  enum class Kind { StabilityGuard, StepUnderflow, NonFinite };

  IntegrationError(Kind kind, const std::string& what, FidelityTrace partial)
      : std::runtime_error(what), kind_(kind), partial_(std::move(partial)) {}

  Kind kind() const { return kind_; }
  const FidelityTrace& partial() const { return partial_; }

 private:
  Kind kind_;
  FidelityTrace partial_;
};

/// Integrates from t = 0 to opts.t_max, sampling <psi0|rho|psi0>, |tr rho - 1|,
/// the minimum eigenvalue and the Hermiticity defect every sample_interval
/// (plus t_max). rho is never renormalized.
FidelityTrace integrate(const LindbladModel& model, const Matrix& rho0, const IntegratorOptions& opts,
                        const Vector& psi0);

/// Same, with fidelity tr(P rho) for an orthogonal projector P, e.g.
/// |psi0><psi0| (x) I when ancillas are traced out.
FidelityTrace integrate_projected(const LindbladModel& model, const Matrix& rho0, const IntegratorOptions& opts,
                                  const Matrix& projector);

/// Fidelity of (|g> - i|h>)/sqrt(2) under L = sqrt(gamma) X: (1 + exp(-2 gamma t)) / 2.
double bare_qubit_fidelity(double gamma_flip, double t);

/// Closed-form fidelity of an 8-dim three-qubit state under independent X
/// flips at rate gamma_flip on each qubit.
double baseline_three_qubit(double gamma_flip, const Vector& psi0, double t);

/// (|ggg> - i|hhh>)/sqrt(2) in the (Q1, Q2, Q3) basis.
Vector codeword_state();

struct SteadyStateResult {
  /// One normalized state when unique; otherwise a Hermitian basis of the
  /// stationary space (unit trace where the trace is nonzero).
  std::vector<Matrix> states;
  std::size_t nullity = 0;
  double residual = 0.0;

  bool unique() const { return nullity == 1; }
};

SteadyStateResult steady_state(const LindbladModel& model);

/// t -> infinity limit of exp(t L) rho0 via the left and right null spaces of L.
Matrix stationary_limit(const LindbladModel& model, const Matrix& rho0);

}  // namespace qnet::lindblad
