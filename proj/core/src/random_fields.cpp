#include "zmlim/random_fields.hpp"

#include <cmath>
#include <complex>

#include "zmlim/spectral_ops.hpp"

namespace zmlim {

std::uint64_t counterHash(std::uint64_t seed, std::uint64_t counter) {
  // splitmix64 finalizer
  std::uint64_t z = seed ^ (counter * 0x9e3779b97f4a7c15ULL) ^
                    0x5851f42d4c957f2dULL;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double counterUniform(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t bits = counterHash(seed, counter) >> 11;  // 53 bits
  return 2.0 * (double(bits) * 0x1.0p-53) - 1.0;
}

ScalarField randomScalar(const Grid& grid, double l2_amplitude, int kmax,
                         std::uint64_t seed, std::uint64_t stream) {
  const int d = grid.dim();
  std::vector<double> values(grid.size(), 0.0);
  const double dx = grid.dx();

  // Sum of low modes with random amplitude/phase per mode; real by
  // construction, mean-zero since k = 0 is excluded.
  std::uint64_t counter = stream * 1000003ULL;
  std::array<int, 3> k{0, 0, 0};
  auto add_mode = [&](const std::array<int, 3>& kk) {
    const double k2 = double(kk[0]) * kk[0] + double(kk[1]) * kk[1] +
                      double(kk[2]) * kk[2];
    if (k2 == 0.0) return;
    const double amp =
        counterUniform(seed, counter++) / ((1.0 + k2) * (1.0 + k2));
    const double phase = kTwoPi / 2.0 * counterUniform(seed, counter++);
    const int n = grid.n();
    if (d == 2) {
      std::size_t idx = 0;
      for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1, ++idx)
          values[idx] +=
              amp * std::cos(kk[0] * i0 * dx + kk[1] * i1 * dx + phase);
    } else {
      std::size_t idx = 0;
      for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1)
          for (int i2 = 0; i2 < n; ++i2, ++idx)
            values[idx] += amp * std::cos(kk[0] * i0 * dx + kk[1] * i1 * dx +
                                          kk[2] * i2 * dx + phase);
    }
  };

  // Half-space of modes (the cosine form already supplies the conjugates):
  // keep k whose first nonzero component is positive.
  auto in_half_space = [&](const std::array<int, 3>& kk) {
    for (int j = 0; j < d; ++j) {
      if (kk[j] > 0) return true;
      if (kk[j] < 0) return false;
    }
    return false;  // zero mode
  };
  const int k2max = (d == 3) ? kmax : 0;
  for (k[0] = -kmax; k[0] <= kmax; ++k[0])
    for (k[1] = -kmax; k[1] <= kmax; ++k[1])
      for (k[2] = -k2max; k[2] <= k2max; ++k[2])
        if (in_half_space(k)) add_mode(k);

  ScalarField f(grid, std::move(values));
  const double norm = l2Norm(f);
  if (norm > 0.0) f *= l2_amplitude / norm;
  return f;
}

VectorField randomVector(const Grid& grid, double l2_amplitude, int kmax,
                         std::uint64_t seed, std::uint64_t stream) {
  std::vector<ScalarField> comps;
  for (int j = 0; j < grid.dim(); ++j)
    comps.push_back(randomScalar(grid, 1.0, kmax, seed,
                                 stream * 131ULL + std::uint64_t(j) + 1ULL));
  VectorField f(std::move(comps));
  const double norm = l2Norm(f);
  if (norm > 0.0) f *= l2_amplitude / norm;
  return f;
}

}  // namespace zmlim
