#pragma once

#include <complex>
#include <vector>

#include "zmlim/grid.hpp"

namespace zmlim::detail {

/// Forward d-dimensional DFT of real samples, normalized by 1/N^d so that
/// f(x) = sum_k spec[k] e^{i k.x}. Plans are cached per (d, N).
std::vector<std::complex<double>> forwardTransform(const Grid& grid,
                                                   const std::vector<double>& values);

/// Inverse of forwardTransform; returns the real part of the reconstruction.
std::vector<double> inverseTransform(const Grid& grid,
                                     const std::vector<std::complex<double>>& spectrum);

}  // namespace zmlim::detail
