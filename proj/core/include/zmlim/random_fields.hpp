#pragma once

#include <cstdint>

#include "zmlim/field.hpp"

namespace zmlim {

/// Counter-based generator: splitmix64 finalizer applied to seed ^ counter
/// stream position. Stateless, order-independent, reproducible across
/// platforms.
std::uint64_t counterHash(std::uint64_t seed, std::uint64_t counter);

/// Uniform in [-1, 1), derived from counterHash.
double counterUniform(std::uint64_t seed, std::uint64_t counter);

/// Mean-zero real band-limited field: modes 0 < |k|_inf <= kmax with
/// (1+|k|^2)^-2 spectral decay, scaled to the requested L^2 norm.
/// `stream` separates independent fields drawn from one seed.
ScalarField randomScalar(const Grid& grid, double l2_amplitude, int kmax,
                         std::uint64_t seed, std::uint64_t stream);

/// Component-wise random band-limited vector field, scaled to the requested
/// L^2 norm.
VectorField randomVector(const Grid& grid, double l2_amplitude, int kmax,
                         std::uint64_t seed, std::uint64_t stream);

}  // namespace zmlim
