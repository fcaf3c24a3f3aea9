#pragma once

#include <array>
#include <cstddef>

namespace zmlim {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform periodic grid on [0, 2*pi)^d.
class Grid {
 public:
  Grid(int dim, int points_per_dim);

  int dim() const { return dim_; }
  int n() const { return n_; }
  std::size_t size() const { return size_; }

  double dx() const { return kTwoPi / n_; }
  /// (2*pi)^d
  double volume() const;
  /// dx^d, quadrature weight of one node
  double cellVolume() const;

  /// Signed integer wavenumber of FFT index i along one dimension.
  int wavenumber(int i) const { return i <= n_ / 2 - 1 ? i : i - n_; }
  bool isNyquist(int i) const { return i == n_ / 2; }

  bool operator==(const Grid& o) const { return dim_ == o.dim_ && n_ == o.n_; }
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  int dim_;
  int n_;
  std::size_t size_;
};

}  // namespace zmlim
