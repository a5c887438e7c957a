#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include <Eigen/Eigenvalues>

#include "qnet/kernels.hpp"
#include "qnet/lindblad.hpp"

namespace qnet::lindblad {

double FidelityTrace::max_trace_error() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.trace_error);
  return m;
}

double FidelityTrace::max_hermiticity_error() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.hermiticity_error);
  return m;
}

double FidelityTrace::min_eigenvalue() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) m = std::min(m, s.min_eigenvalue);
  return m;
}

bool FidelityTrace::fidelity_in_range() const {
  return std::all_of(samples.begin(), samples.end(), [](const TraceSample& s) {
    return s.fidelity >= -kFidelitySlack && s.fidelity <= 1.0 + kFidelitySlack;
  });
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// 5th-order solution minus embedded 4th-order solution.
constexpr std::array<double, 7> kE{71.0 / 57600,     0.0,           -71.0 / 16695, 71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525,   -1.0 / 40};

std::vector<double> sample_times(double t_max, double interval) {
  std::vector<double> ts{0.0};
  if (t_max <= 0.0) return ts;
  for (std::size_t k = 1;; ++k) {
    const double t = static_cast<double>(k) * interval;
    if (t >= t_max * (1.0 - 1e-12)) break;
    ts.push_back(t);
  }
  ts.push_back(t_max);
  return ts;
}

class Stepper {
 public:
  Stepper(const LindbladModel& model, const IntegratorOptions& opts, const Matrix& observable)
      : model_(model), opts_(opts), observable_(observable), d_(static_cast<Eigen::Index>(model.space->total_dim())) {
    if (opts.use_superoperator) liouvillian_.emplace(model);
  }

  void derivative(const cplx* y, cplx* dy) {
    ++trace_.rhs_evaluations;
    if (liouvillian_) {
      liouvillian_->apply(y, dy);
      return;
    }
    Eigen::Map<const Matrix> rho(y, d_, d_);
    Eigen::Map<Matrix>(dy, d_, d_) = rhs(model_, rho);
  }

  void record(double t, const Vector& y) {
    Eigen::Map<const Matrix> rho(y.data(), d_, d_);
    if (!rho.allFinite())
      throw IntegrationError(IntegrationError::Kind::NonFinite, "integrate: state became non-finite at t=" + std::to_string(t),
                             trace_);
    TraceSample s;
    s.t = t;
    s.fidelity = observable_.cwiseProduct(rho.transpose()).sum().real();
    s.trace_error = std::abs(rho.trace() - 1.0);
    s.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const Matrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    s.min_eigenvalue = es.eigenvalues().minCoeff();
    trace_.samples.push_back(s);
    if (opts_.observer) opts_.observer(t, Matrix(rho));
  }

  FidelityTrace finish(const Vector& y) {
    trace_.final_state = Eigen::Map<const Matrix>(y.data(), d_, d_);
    return std::move(trace_);
  }

  FidelityTrace& trace() { return trace_; }

 private:
  const LindbladModel& model_;
  const IntegratorOptions& opts_;
  const Matrix& observable_;
  Eigen::Index d_;
  std::optional<Liouvillian> liouvillian_;
  FidelityTrace trace_;
};

FidelityTrace run_rk4(Stepper& st, Vector y, const std::vector<double>& ts, const IntegratorOptions& opts,
                      double bound) {
  const auto n = static_cast<std::size_t>(y.size());
  // Pick a uniform step per sample interval no larger than dt, then check the guard.
  std::vector<std::size_t> substeps(ts.size(), 0);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double span = ts[i] - ts[i - 1];
    substeps[i] = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / opts.dt - 1e-9)));
    const double h = span / static_cast<double>(substeps[i]);
    if (h * bound >= 0.1)
      throw IntegrationError(IntegrationError::Kind::StabilityGuard,
                             "integrate: fixed step " + std::to_string(h) + " violates dt*(|H|+sum|L^dag L|) < 0.1 (scale " +
                                 std::to_string(bound) + ")",
                             st.trace());
  }

  Vector k1(n), k2(n), k3(n), k4(n), tmp(n);
  st.record(ts[0], y);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double h = (ts[i] - ts[i - 1]) / static_cast<double>(substeps[i]);
    for (std::size_t s = 0; s < substeps[i]; ++s) {
      st.derivative(y.data(), k1.data());
      std::array<const cplx*, 1> v1{k1.data()};
      kernels::lincomb(n, y.data(), std::array{0.5 * h}, v1, tmp.data());
      st.derivative(tmp.data(), k2.data());
      std::array<const cplx*, 1> v2{k2.data()};
      kernels::lincomb(n, y.data(), std::array{0.5 * h}, v2, tmp.data());
      st.derivative(tmp.data(), k3.data());
      std::array<const cplx*, 1> v3{k3.data()};
      kernels::lincomb(n, y.data(), std::array{h}, v3, tmp.data());
      st.derivative(tmp.data(), k4.data());
      std::array<const cplx*, 4> vs{k1.data(), k2.data(), k3.data(), k4.data()};
      kernels::lincomb(n, y.data(), std::array{h / 6, h / 3, h / 3, h / 6}, vs, y.data());
      ++st.trace().steps;
    }
    st.record(ts[i], y);
  }
  return st.finish(y);
}

FidelityTrace run_dopri(Stepper& st, Vector y, const std::vector<double>& ts, const IntegratorOptions& opts) {
  const auto n = static_cast<std::size_t>(y.size());
  std::array<Vector, 7> k;
  for (auto& v : k) v.resize(static_cast<Eigen::Index>(n));
  Vector stage(n), ynew(n), err(n);
  const Vector zero = Vector::Zero(static_cast<Eigen::Index>(n));

  st.record(ts[0], y);
  if (ts.size() == 1) return st.finish(y);

  st.derivative(y.data(), k[0].data());
  double h;
  {
    const double d0 = kernels::scaled_rms(n, y.data(), y.data(), y.data(), opts.atol, opts.rtol);
    const double d1 = kernels::scaled_rms(n, k[0].data(), y.data(), y.data(), opts.atol, opts.rtol);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min({h, opts.max_step, ts[1] - ts[0]});
  }

  double t = 0.0;
  bool last_rejected = false;
  for (std::size_t next = 1; next < ts.size();) {
    const double target = ts[next];
    const double step = std::min(h, target - t);
    if (step < 1e-14 * std::max(1.0, std::abs(t)))
      throw IntegrationError(IntegrationError::Kind::StepUnderflow,
                             "integrate: adaptive step underflow at t=" + std::to_string(t), st.trace());

    for (int s = 1; s < 7; ++s) {
      std::array<double, 6> w{};
      std::array<const cplx*, 6> vs{};
      for (int j = 0; j < s; ++j) {
        w[j] = step * kA[s][j];
        vs[j] = k[j].data();
      }
      cplx* out = (s == 6) ? ynew.data() : stage.data();
      kernels::lincomb(n, y.data(), std::span<const double>(w.data(), s), std::span<const cplx* const>(vs.data(), s), out);
      st.derivative(out, k[s].data());
    }
    std::array<double, 7> we{};
    std::array<const cplx*, 7> ve{};
    for (int j = 0; j < 7; ++j) {
      we[j] = step * kE[j];
      ve[j] = k[j].data();
    }
    kernels::lincomb(n, zero.data(), we, ve, err.data());
    double e = kernels::scaled_rms(n, err.data(), y.data(), ynew.data(), opts.atol, opts.rtol);
    if (!std::isfinite(e)) e = 1e10;

    if (e <= 1.0) {
      t = (step == target - t) ? target : t + step;
      y.swap(ynew);
      k[0].swap(k[6]);
      ++st.trace().steps;
      if (t == target) {
        st.record(t, y);
        ++next;
      }
      double fac = (e == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
      if (last_rejected) fac = std::min(fac, 1.0);
      double proposal = step * fac;
      // A step clipped to land on a sample time does not shrink the proposal.
      if (step < h) proposal = std::max(proposal, h);
      h = std::min(proposal, opts.max_step);
      last_rejected = false;
    } else {
      ++st.trace().rejected_steps;
      h = step * std::clamp(0.9 * std::pow(e, -0.2), 0.1, 1.0);
      last_rejected = true;
    }
  }
  return st.finish(y);
}

}  // namespace

FidelityTrace integrate(const LindbladModel& model, const Matrix& rho0, const IntegratorOptions& opts,
                        const Vector& psi0) {
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw std::invalid_argument("integrate: psi0 is not normalized");
  return integrate_projected(model, rho0, opts, psi0 * psi0.adjoint());
}

FidelityTrace integrate_projected(const LindbladModel& model, const Matrix& rho0, const IntegratorOptions& opts,
                                  const Matrix& projector) {
  const auto d = static_cast<Eigen::Index>(model.space->total_dim());
  if (rho0.rows() != d || rho0.cols() != d) throw SpaceMismatch("integrate: rho0 dimension does not match the model");
  if (projector.rows() != d || projector.cols() != d)
    throw SpaceMismatch("integrate: fidelity projector dimension does not match the model");
  if ((projector * projector - projector).cwiseAbs().maxCoeff() > 1e-10 ||
      (projector - projector.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("integrate: fidelity observable is not an orthogonal projector");
  if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-10 || std::abs(rho0.trace() - 1.0) > 1e-10)
    throw std::invalid_argument("integrate: rho0 is not a unit-trace Hermitian operator");
  if (!(opts.t_max >= 0.0) || !(opts.sample_interval > 0.0)) throw std::invalid_argument("integrate: need t_max >= 0 and sample_interval > 0");

  const auto ts = sample_times(opts.t_max, opts.sample_interval);
  Stepper st(model, opts, projector);
  Vector y = Eigen::Map<const Vector>(rho0.data(), d * d);

  if (opts.method == Method::Rk4Fixed) {
    if (!(opts.dt > 0.0)) throw std::invalid_argument("integrate: fixed-step method needs dt > 0");
    return run_rk4(st, std::move(y), ts, opts, stiffness_bound(model));
  }
  if (!(opts.rtol > 0.0) || !(opts.atol > 0.0)) throw std::invalid_argument("integrate: adaptive method needs rtol, atol > 0");
  return run_dopri(st, std::move(y), ts, opts);
}

}  // namespace qnet::lindblad
