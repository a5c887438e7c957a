#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "qnet/kernels.hpp"

namespace qnet::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(QNET_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(__i386__)) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  const char* force = std::getenv("QNET_FORCE_SCALAR");
  if (force != nullptr && std::strcmp(force, "0") != 0 && force[0] != '\0') return Isa::Scalar;
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) { return isa == Isa::Scalar || cpu_has_avx2(); }

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::runtime_error(std::string("ISA not supported on this CPU: ") + isa_name(isa));
  selected().store(isa, std::memory_order_relaxed);
}

void spmv(const CsrView& a, const cplx* x, cplx* y) {
  if (active_isa() == Isa::Avx2) return avx2::spmv(a, x, y);
  scalar::spmv(a, x, y);
}

void lincomb(std::size_t n, const cplx* base, std::span<const double> weights, std::span<const cplx* const> vecs,
             cplx* out) {
  if (weights.size() != vecs.size()) throw std::invalid_argument("lincomb: weights/vectors length mismatch");
  if (active_isa() == Isa::Avx2) return avx2::lincomb(n, base, weights, vecs, out);
  scalar::lincomb(n, base, weights, vecs, out);
}

double scaled_rms(std::size_t n, const cplx* err, const cplx* a, const cplx* b, double atol, double rtol) {
  if (active_isa() == Isa::Avx2) return avx2::scaled_rms(n, err, a, b, atol, rtol);
  return scalar::scaled_rms(n, err, a, b, atol, rtol);
}

}  // namespace qnet::kernels
