#include "zmlim/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace zmlim::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

std::mutex g_plan_mutex;
std::map<std::pair<int, int>, PlanPair>& planCache() {
  static std::map<std::pair<int, int>, PlanPair> cache;
  return cache;
}

// Plans are created once per (d, N) with FFTW_UNALIGNED so they can be
// executed on arbitrary caller buffers via fftw_execute_dft (thread-safe).
PlanPair getPlans(const Grid& grid) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_pair(grid.dim(), grid.n());
  auto it = planCache().find(key);
  if (it != planCache().end()) return it->second;

  std::vector<std::complex<double>> scratch_in(grid.size());
  std::vector<std::complex<double>> scratch_out(grid.size());
  auto* in = reinterpret_cast<fftw_complex*>(scratch_in.data());
  auto* out = reinterpret_cast<fftw_complex*>(scratch_out.data());
  std::vector<int> dims(grid.dim(), grid.n());

  PlanPair p;
  p.forward = fftw_plan_dft(grid.dim(), dims.data(), in, out, FFTW_FORWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.backward = fftw_plan_dft(grid.dim(), dims.data(), in, out, FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p.forward || !p.backward) throw std::runtime_error("fftw plan creation failed");
  planCache()[key] = p;
  return p;
}

}  // namespace

std::vector<std::complex<double>> forwardTransform(const Grid& grid,
                                                   const std::vector<double>& values) {
  PlanPair plans = getPlans(grid);
  std::vector<std::complex<double>> in(values.begin(), values.end());
  std::vector<std::complex<double>> out(grid.size());
  fftw_execute_dft(plans.forward, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : out) c *= scale;
  return out;
}

std::vector<double> inverseTransform(const Grid& grid,
                                     const std::vector<std::complex<double>>& spectrum) {
  PlanPair plans = getPlans(grid);
  std::vector<std::complex<double>> in(spectrum);
  std::vector<std::complex<double>> out(grid.size());
  fftw_execute_dft(plans.backward, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = out[i].real();
  return values;
}

}  // namespace zmlim::detail
