#pragma once

// Data-parallel inner loops of the master-equation integrator.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2/FMA variant. The public entry points dispatch at runtime on the
// detected CPU; the per-ISA namespaces are exposed for equivalence testing.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

namespace qnet::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);
bool isa_supported(Isa isa);
/// Best supported ISA unless overridden by set_isa() or QNET_FORCE_SCALAR=1.
Isa active_isa();
/// Throws std::runtime_error if `isa` is not supported on this CPU.
void set_isa(Isa isa);

/// Read-only view of a square CSR matrix.
struct CsrView {
  std::size_t rows = 0;
  const std::int64_t* row_ptr = nullptr;  // rows + 1 entries
  const std::int32_t* cols = nullptr;
  const cplx* values = nullptr;
};

/// y = A x
void spmv(const CsrView& a, const cplx* x, cplx* y);

/// out = base + sum_j weights[j] * vecs[j]; all arrays have length n. `out` may alias `base`.
void lincomb(std::size_t n, const cplx* base, std::span<const double> weights, std::span<const cplx* const> vecs,
             cplx* out);

/// sqrt(mean_k (e_k / (atol + rtol * max(|a_k|, |b_k|)))^2) over the 2n real components.
double scaled_rms(std::size_t n, const cplx* err, const cplx* a, const cplx* b, double atol, double rtol);

namespace scalar {
void spmv(const CsrView& a, const cplx* x, cplx* y);
void lincomb(std::size_t n, const cplx* base, std::span<const double> weights, std::span<const cplx* const> vecs,
             cplx* out);
double scaled_rms(std::size_t n, const cplx* err, const cplx* a, const cplx* b, double atol, double rtol);
}  // namespace scalar

namespace avx2 {
void spmv(const CsrView& a, const cplx* x, cplx* y);
void lincomb(std::size_t n, const cplx* base, std::span<const double> weights, std::span<const cplx* const> vecs,
             cplx* out);
double scaled_rms(std::size_t n, const cplx* err, const cplx* a, const cplx* b, double atol, double rtol);
}  // namespace avx2

}  // namespace qnet::kernels
