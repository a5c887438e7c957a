#include <cmath>
#include <limits>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "qnet/components.hpp"

namespace qnet::components {

namespace {

double wrap_abs(double x) { return std::abs(std::remainder(x, 2.0 * std::numbers::pi)); }

// Linear least-squares residual of y ~ c0 + c1 cos(w t) + c2 sin(w t).
double harmonic_residual(const std::vector<double>& t, const std::vector<double>& y, double w) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(t.size()), 3);
  Eigen::VectorXd b(static_cast<Eigen::Index>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    a(r, 0) = 1.0;
    a(r, 1) = std::cos(w * t[i]);
    a(r, 2) = std::sin(w * t[i]);
    b(r) = y[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  return (a * c - b).squaredNorm();
}

// Best-fitting angular frequency in [lo, hi]: grid scan, then golden section.
double fit_frequency(const std::vector<double>& t, const std::vector<double>& y, double lo, double hi) {
  constexpr int kGrid = 200;
  double best = lo;
  double best_r = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double w = lo + (hi - lo) * i / kGrid;
    const double r = harmonic_residual(t, y, w);
    if (r < best_r) {
      best_r = r;
      best = w;
    }
  }
  const double step = (hi - lo) / kGrid;
  double a = std::max(lo, best - step);
  double b = std::min(hi, best + step);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = harmonic_residual(t, y, x1);
  double f2 = harmonic_residual(t, y, x2);
  while (b - a > 1e-10 * std::max(1.0, best)) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = harmonic_residual(t, y, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = harmonic_residual(t, y, x2);
    }
  }
  return 0.5 * (a + b);
}

lindblad::IntegratorOptions tight_options(double t_max, double interval) {
  lindblad::IntegratorOptions o;
  o.t_max = t_max;
  o.sample_interval = interval;
  o.rtol = 1e-9;
  o.atol = 1e-11;
  return o;
}

}  // namespace

ProbeResponse probe_response(const ProbePhysicalParams& p, bool coupled) {
  if (!(p.alpha > 0.0)) throw std::invalid_argument("probe_response: alpha must be > 0");
  const auto model = probe_physical(p);
  const SpacePtr& space = model.space;

  Matrix atom = Matrix::Zero(3, 3);
  if (p.variant == Variant::BitFlip) {
    const int lvl = coupled ? level::g : level::h;
    atom(lvl, lvl) = 1.0;
  } else {
    const double sign = coupled ? 1.0 : -1.0;
    Eigen::Vector3cd v(1.0, sign, 0.0);
    v /= std::sqrt(2.0);
    atom = v * v.adjoint();
  }
  Matrix vac = Matrix::Zero(p.n_fock, p.n_fock);
  vac(0, 0) = 1.0;
  Matrix rho0 = Eigen::kroneckerProduct(atom, vac);

  const Matrix rho = lindblad::stationary_limit(model, rho0);
  const Operator out = probe_output(p);
  const Operator a = (out - p.alpha * Operator::identity(space)) / (p.k * std::sqrt(2.0 * p.kappa));

  ProbeResponse r;
  r.reflection = (out.matrix() * rho).trace() / p.alpha;
  r.phase_shift = std::arg(-r.reflection);
  r.limit_phase = coupled ? std::numbers::pi : 0.0;
  r.phase_error = wrap_abs(r.phase_shift - r.limit_phase);
  r.amplitude_error = std::abs(r.reflection - (coupled ? 1.0 : -1.0));
  r.photon_number = (a.adjoint().matrix() * a.matrix() * rho).trace().real();
  return r;
}

RamanResponse raman_response(const RamanPhysicalParams& p) {
  const auto model = raman_physical(p);
  const double w0 = raman_rabi_prediction(p);
  if (!(w0 > 0.0)) throw std::invalid_argument("raman_response: both drive amplitudes must be nonzero");
  const auto d = static_cast<Eigen::Index>(model.space->total_dim());

  Matrix rho0 = Matrix::Zero(d, d);
  rho0(level::g, level::g) = 1.0;
  Vector psi0 = Vector::Zero(d);
  psi0(level::g) = 1.0;

  const double period = 2.0 * std::numbers::pi / w0;
  std::vector<double> ts;
  std::vector<double> ph;
  double leak_sum = 0.0;
  RamanResponse out;
  auto opts = tight_options(1.5 * period, period / 400.0);
  opts.observer = [&](double t, const Matrix& rho) {
    ts.push_back(t);
    ph.push_back(rho(level::h, level::h).real());
    out.max_transfer = std::max(out.max_transfer, ph.back());
    leak_sum += 1.0 - rho(level::g, level::g).real() - rho(level::h, level::h).real();
  };
  lindblad::integrate(model, rho0, opts, psi0);

  out.mean_leakage = leak_sum / static_cast<double>(ts.size());
  out.rabi_frequency = fit_frequency(ts, ph, 0.5 * w0, 1.5 * w0);
  return out;
}

double raman_phase_rate(const RamanPhysicalParams& p, double t_max) {
  if (!(t_max > 0.0)) throw std::invalid_argument("raman_phase_rate: t_max must be > 0");
  const auto model = raman_physical(p);
  const auto d = static_cast<Eigen::Index>(model.space->total_dim());
  Vector psi0 = Vector::Zero(d);
  psi0(level::g) = psi0(level::h) = 1.0 / std::sqrt(2.0);
  const Matrix rho0 = psi0 * psi0.adjoint();

  // Unwrapped arg(rho_hg) sampled finely, then a least-squares slope.
  std::vector<double> ts;
  std::vector<double> phase;
  auto opts = tight_options(t_max, t_max / 1000.0);
  opts.observer = [&](double t, const Matrix& rho) {
    double ph = std::arg(rho(level::h, level::g));
    if (!phase.empty()) ph = phase.back() + std::remainder(ph - phase.back(), 2.0 * std::numbers::pi);
    ts.push_back(t);
    phase.push_back(ph);
  };
  lindblad::integrate(model, rho0, opts, psi0);

  const auto n = static_cast<double>(ts.size());
  double st = 0.0, sp = 0.0, stt = 0.0, stp = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sp += phase[i];
    stt += ts[i] * ts[i];
    stp += ts[i] * phase[i];
  }
  return (n * stp - st * sp) / (n * stt - st * st);
}

}  // namespace qnet::components
