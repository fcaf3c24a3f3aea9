#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zmlim/config.hpp"
#include "zmlim/dynamics.hpp"
#include "zmlim/time_integration.hpp"

namespace zmlim {

struct Amplitudes {
  double v = 0.15;        // divergence-free slow velocity seed
  double qu = 0.15;       // oscillatory velocity potential gradient Qu_I
  double psi = 0.1;       // initial potential psi_I (sigma slow part = lap psi_I)
  double T = 0.05;        // temperature fluctuation around T_bar
  double sigmaE = 0.1;    // O(eps) density perturbation
  double uE = 0.1;        // O(eps) velocity perturbation
  double TE = 0.1;        // O(eps) temperature perturbation
};

struct ExperimentConfig {
  int dim = 2;
  int n = 64;
  double sobolev_s = 3.0;
  double tau = 0.5;
  std::vector<double> eps_list = {0.1, 0.05, 0.025, 0.0125};
  std::uint64_t seed = 2024;
  // Band limit of generated fields. Keep the viscous-friction rate
  // 1 + (4/3) T_bar |k|^2 below the rotation rate 1/eps for the largest
  // eps in the ladder, otherwise the high modes are overdamped and sit
  // outside the oscillatory regime the rate fits assume.
  int kmax = 1;
  Amplitudes amp;
  double T_L = 0.5;
  double T_bar = 1.0;
  double T0 = 1.0;
  StepperConfig stepper;
  double slope_min = 0.8;
  bool second_order = false;  // also report refined u_app metrics
  int min_snapshots_per_period = 16;
};

/// Parses and validates an experiment config; throws ConfigError on unknown
/// keys or invalid values (including the CFL bound on stepper.dt).
ExperimentConfig parseExperimentConfig(const KeyValueConfig& kv);
std::vector<std::string> experimentConfigKnownKeys();
/// Fully resolved key=value form, suitable for a reproducible manifest.
std::vector<std::pair<std::string, std::string>> resolvedEntries(const ExperimentConfig& cfg);

struct InitialData {
  CompressibleState comp;
  SlowState slow;
  OscPotentials osc;
  double hypothesis_norm;  // H^{s+1} size of the prepared data
};
InitialData buildInitialData(const ExperimentConfig& cfg, double eps);

struct ErrorMetrics {
  double sup_eps_sigma_hs = 0.0;   // sup ||eps (sigma - sigma1f)||_{H^s}
  double sup_u_hs = 0.0;           // sup ||u - v - u1f||_{H^s}
  double sup_T_hs = 0.0;           // sup ||T - T_slow||_{H^s}
  double sup_gradpsi_hs = 0.0;     // sup ||grad psi - grad psi1f||_{H^s}
  double l2t_u_hs1 = 0.0;          // L^2-in-time H^{s+1} of u - v - u1f
  double l2t_T_hs1 = 0.0;          // L^2-in-time H^{s+1} of T - T_slow
  double sup_u_app_hs = 0.0;       // optional second-order refined metric
  double sup_approx_hs = 0.0;      // H^s size of the composed approximation
  bool completed = false;
  std::string failure;
};

/// Integrates the scaled system and co-integrates the limit/oscillation
/// systems on one clock; measures all convergence error norms.
ErrorMetrics runSingleEps(const ExperimentConfig& cfg, double eps);

struct RateFit {
  std::string metric;
  double slope = 0.0;
  double intercept = 0.0;
  bool pass = false;
};

struct SweepResult {
  std::vector<double> eps;
  std::vector<ErrorMetrics> metrics;
  std::vector<RateFit> rates;
  bool all_pass = false;
};

/// Per-eps runs execute concurrently (capped by max_threads); rate fit
/// requires >= 3 surviving runs.
SweepResult runConvergenceSweep(const ExperimentConfig& cfg, int max_threads = 0);

std::string sweepCsv(const SweepResult& r);
std::string ratesCsv(const SweepResult& r);

/// Trapezoid fast-time average of the rotated oscillatory-sector
/// nonlinearity against the closed-form envelope RHS; returns the combined
/// L^2 residual of both slots.
double resonanceAverageCheck(const SlowState& slow, const OscPotentials& p,
                             int n_quad);

/// Weighted multiderivative energy sum_{|alpha|<=s} ||U_alpha||_e with
/// ||U_alpha||_e^2 = int(|eps D^a sigma|^2 + |D^a u|^2 + |D^a T|^2).
double energyNormDiag(const CompressibleState& state, int s_index);

}  // namespace zmlim
