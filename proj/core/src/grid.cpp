#include "zmlim/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace zmlim {

Grid::Grid(int dim, int points_per_dim) : dim_(dim), n_(points_per_dim) {
  if (dim_ != 2 && dim_ != 3) throw std::invalid_argument("Grid: dim must be 2 or 3");
  if (n_ < 8 || n_ % 2 != 0) throw std::invalid_argument("Grid: N must be >= 8 and even");
  size_ = 1;
  for (int j = 0; j < dim_; ++j) size_ *= static_cast<std::size_t>(n_);
}

double Grid::volume() const { return std::pow(kTwoPi, dim_); }

double Grid::cellVolume() const { return std::pow(dx(), dim_); }

}  // namespace zmlim
