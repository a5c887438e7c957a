#pragma once

// SLH triples (S, L, H) and their composition algebra.
//
//   concatenation  G1 [+] G2 = (diag(S1, S2), [L1; L2], H1 + H2)
//   series         G2 <| G1  = (S2 S1, S2 L1 + L2, H1 + H2 + Im{L2^dag S2 L1})
//
// with Im{M} = (M - M^dag)/2i. Scattering entries are operators; nothing is
// assumed to commute across components.

#include <cstddef>
#include <vector>

#include "qnet/lindblad.hpp"
#include "qnet/opalg.hpp"

namespace qnet::slh {

enum class Validation {
  Strict,  // throw on a non-unitary S or non-Hermitian H
  Warn,    // report on stderr and continue
  Skip,
};

inline constexpr double kValidationTol = 1e-10;

struct Displacement {
  std::vector<cplx> amplitudes;

  std::size_t size() const { return amplitudes.size(); }
};

class SlhTriple {
 public:
  /// `scattering` is row-major n x n; `coupling` has n entries.
  SlhTriple(std::vector<Operator> scattering, std::vector<Operator> coupling, Operator hamiltonian,
            Validation validation = Validation::Strict);

  /// (I_n, 0, 0)
  static SlhTriple trivial(const SpacePtr& space, std::size_t n);
  /// (s (x) I, 0, 0) for a scalar n x n matrix s.
  static SlhTriple scalar_scattering(const SpacePtr& space, const Matrix& s, Validation validation = Validation::Strict);
  /// Channel-free system carrying only a Hamiltonian.
  static SlhTriple hamiltonian_only(Operator hamiltonian);

  const SpacePtr& space() const { return H_.space_ptr(); }
  std::size_t n_channels() const { return L_.size(); }

  const Operator& S(std::size_t row, std::size_t col) const { return S_[row * n_channels() + col]; }
  const Operator& L(std::size_t i) const { return L_[i]; }
  const Operator& H() const { return H_; }
  const std::vector<Operator>& scattering() const { return S_; }
  const std::vector<Operator>& coupling() const { return L_; }

  /// S as an (n dim) x (n dim) block matrix.
  Matrix scattering_block() const;
  /// max(|S^dag S - I|, |S S^dag - I|), entrywise.
  double unitarity_defect() const;
  double hermiticity_defect() const;

 private:
  std::vector<Operator> S_;
  std::vector<Operator> L_;
  Operator H_;
};

SlhTriple concatenate(const SlhTriple& g1, const SlhTriple& g2);
/// G2 <| G1: the output of g1 feeds g2.
SlhTriple series(const SlhTriple& g2, const SlhTriple& g1);

/// (I, d, 0)
SlhTriple weyl(const SpacePtr& space, const Displacement& d);
/// G <| (I, d, 0) = (S, L + S d, H + Im{L^dag S d}).
SlhTriple coherent_drive(const SlhTriple& g, const Displacement& d);

/// Inserts `count` pass-through channels so that they occupy positions
/// at .. at+count-1 (1-based); requires 1 <= at <= n+1.
SlhTriple pad(const SlhTriple& g, std::size_t at, std::size_t count);
/// Removes channels at .. at+count-1 (1-based); they must be pass-through.
SlhTriple drop_channels(const SlhTriple& g, std::size_t at, std::size_t count);

/// Scalar permutation (P, 0, 0) with output channel i carrying input perm[i].
SlhTriple permutation(const SpacePtr& space, const std::vector<std::size_t>& perm);
/// Relabels the output channels of g: series(permutation(perm), g).
SlhTriple permute_outputs(const SlhTriple& g, const std::vector<std::size_t>& perm);

/// G = coherent_drive(G0, d) written as static <| (I, d, 0) <| inner, where
/// static = (S, 0, 0) and inner = (I, S^dag L0, H_G - Im{d^dag S^dag L0}).
struct DisplacementFactorization {
  SlhTriple static_part;
  Displacement drive;
  SlhTriple inner;

  SlhTriple recompose() const;
};

DisplacementFactorization extract_displacements(const SlhTriple& g0, const Displacement& d);

/// Drops S; returns (H, [L_1 .. L_n]) for the master equation.
lindblad::LindbladModel to_lindblad(const SlhTriple& g);

/// Largest entrywise difference over S, L and H; infinity on a shape mismatch.
double max_abs_diff(const SlhTriple& a, const SlhTriple& b);
bool approx_equal(const SlhTriple& a, const SlhTriple& b, double tol = kOperatorTol);

}  // namespace qnet::slh
