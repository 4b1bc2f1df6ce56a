#pragma once

#include "algpaths/rng.hpp"
#include "algpaths/spectrum.hpp"

#include <utility>
#include <vector>

namespace algpaths {

/// Uniformly random multiplicity vector with n parts summing to dim.
std::vector<int> random_signature(Rng& rng, int n_roots, int dim);

/**
 * Random algebraic element with the prescribed multiplicities: the diagonal
 * model conjugated by a seeded invertible (or unitary, in self-adjoint mode)
 * basis change. spread controls the conditioning of the conjugator.
 */
ComplexMatrix random_algebraic(Rng& rng, const SpectrumSpec& spec,
                               const std::vector<int>& multiplicities, bool selfadjoint,
                               double spread = 0.3);

/**
 * A pair in the same component at controlled distance: the second element is
 * a small (unitary, in self-adjoint mode) conjugation of the first, with the
 * perturbation scaled until ||a1 - a0|| <= target_gap.
 */
std::pair<ComplexMatrix, ComplexMatrix>
random_close_pair(Rng& rng, const SpectrumSpec& spec, const std::vector<int>& multiplicities,
                  bool selfadjoint, double target_gap, double spread = 0.3);

/// Random idempotent pair at controlled distance (two-root convenience).
std::pair<ComplexMatrix, ComplexMatrix> random_projection_pair(Rng& rng, int dim, int rank,
                                                               bool selfadjoint, double target_gap);

} // namespace algpaths
