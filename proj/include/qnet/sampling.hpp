#pragma once

// Random operators and triples for property checks. All draws come from a
// caller-owned engine so runs are reproducible.

#include <random>

#include "qnet/opalg.hpp"
#include "qnet/slh.hpp"

namespace qnet::sampling {

using Engine = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
Matrix gaussian(Engine& rng, Eigen::Index rows, Eigen::Index cols);
/// Haar-distributed unitary (QR of a Gaussian matrix with phase fix).
Matrix unitary(Engine& rng, Eigen::Index n);
Matrix hermitian(Engine& rng, Eigen::Index n);
/// Random pure-state density matrix mixed with a random full-rank one.
Matrix density(Engine& rng, Eigen::Index n);

/// (S, L, H) with S an (n d) x (n d) unitary split into d x d operator blocks.
slh::SlhTriple triple(Engine& rng, const SpacePtr& space, std::size_t n);
slh::Displacement displacement(Engine& rng, std::size_t n);

}  // namespace qnet::sampling
