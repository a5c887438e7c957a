#include <algorithm>
#include <cmath>

#include "qnet/kernels.hpp"

namespace qnet::kernels::scalar {

void spmv(const CsrView& a, const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < a.rows; ++r) {
    cplx acc{};
    for (std::int64_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) acc += a.values[k] * x[a.cols[k]];
    y[r] = acc;
  }
}

void lincomb(std::size_t n, const cplx* base, std::span<const double> weights, std::span<const cplx* const> vecs,
             cplx* out) {
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc = base[i];
    for (std::size_t j = 0; j < weights.size(); ++j) acc += weights[j] * vecs[j][i];
    out[i] = acc;
  }
}

double scaled_rms(std::size_t n, const cplx* err, const cplx* a, const cplx* b, double atol, double rtol) {
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sr = atol + rtol * std::max(std::abs(a[i].real()), std::abs(b[i].real()));
    const double si = atol + rtol * std::max(std::abs(a[i].imag()), std::abs(b[i].imag()));
    const double er = err[i].real() / sr;
    const double ei = err[i].imag() / si;
    sum += er * er + ei * ei;
  }
  return std::sqrt(sum / static_cast<double>(2 * n));
}

}  // namespace qnet::kernels::scalar
