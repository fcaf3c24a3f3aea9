#pragma once

#include <functional>
#include <vector>

#include "zmlim/dynamics.hpp"

namespace zmlim {

enum class Scheme { IFRK2, IFRK4 };

struct StepperConfig {
  double dt = 1e-3;
  double t_final = 0.5;
  Scheme scheme = Scheme::IFRK4;
  int snapshot_stride = 10;
  Floors floors;
  /// Test hook: drop nonlinear, diffusive and friction terms so the stepper
  /// reduces to the exact plasma-oscillation rotation.
  bool linear_only = false;
};

/// Advection/diffusion step-size bound for the explicit remainder.
double cflMaxDt(const Grid& grid, double u_max, double diffusion_residual_max);

struct DiagnosticsRow {
  double t;
  double mean_sigma;
  double min_T;
  double hs_sigma;
  double hs_u;
  double hs_T;
  double energy_se;
};

/// One step of the scaled system. The 1/eps skew pair on (Qu, grad psi) plus
/// friction plus mean diffusion are applied exactly per mode; the variable-
/// coefficient remainder goes through an integrating-factor RK stage loop.
CompressibleState stepScaled(const CompressibleState& state, const StepperConfig& cfg);

SlowState stepIncompressible(const SlowState& state, const StepperConfig& cfg);

/// Slow fields are held fixed over the step; pass the midpoint state for
/// second-order coupling.
OscPotentials stepOscPotentials(const OscPotentials& p, const SlowState& slow,
                                const StepperConfig& cfg);

struct SecondOrderSample {
  double s;
  double norm_sigma;
  double norm_u;
  double norm_T;
};

struct SecondOrderTrajectory {
  std::vector<SecondOrderSample> samples;
  SecondOrderState final_state;
};

/// Integrates the forced corrector system in fast time from zero data with a
/// nonstiff RK4; suppliers give slow fields and first-order profiles at any s.
SecondOrderTrajectory integrateSecondOrder(
    double horizon_s, const StepperConfig& cfg,
    const std::function<SlowState(double)>& slow_supplier,
    const std::function<FirstOrderProfile(double)>& profile_supplier);

}  // namespace zmlim
