#pragma once

#include "zmlim/field.hpp"
#include "zmlim/spectral_ops.hpp"

namespace zmlim {

struct Floors {
  double rho_floor = 0.1;
  double T_floor = 0.125;  // T_L / 4 at the default T_L = 0.5
  double mean_tol = 1e-10;
};

/// State of the scaled compressible system at one time instant.
/// sigma is the scaled density fluctuation (n-1)/eps; psi is derived.
struct CompressibleState {
  ScalarField sigma;
  VectorField u;
  ScalarField T;
  double eps;
  double T0_ref;
};

/// Self-consistent potential, laplacian(psi) = sigma, mean-zero.
ScalarField potentialOf(const CompressibleState& s, double mean_tol = 1e-10);

/// State of the limiting incompressible system; pressure is derived.
struct SlowState {
  VectorField v;
  ScalarField T;
};

/// Mean-zero potentials (q, phi) of the slow oscillation envelope.
struct OscPotentials {
  ScalarField q;
  ScalarField phi;
};

/// Fast-phase materialization of the first-order oscillation.
struct FirstOrderProfile {
  VectorField u1f;
  VectorField grad_psi1f;
  ScalarField psi1f;
  ScalarField sigma1f;
};

struct SecondOrderState {
  ScalarField sigma2f;
  VectorField u2f;
  ScalarField T2f;
  double s = 0.0;  // fast time
};

struct ApproxState {
  ScalarField sigma_app;
  VectorField u_app;
  ScalarField T_app;
  ScalarField psi_app;
};

struct CompressibleRhs {
  ScalarField dsigma;
  VectorField du;
  ScalarField dT;
};

/// Full right-hand side of the scaled system, products dealiased.
/// Throws DensityFloor/TemperatureFloor when the state invariants fail.
CompressibleRhs rhsScaled(const CompressibleState& state, const Floors& floors = {});

struct SlowRhs {
  VectorField dv;  // Leray-projected
  ScalarField dT;
};
SlowRhs rhsIncompressible(const SlowState& state, double T_floor = 0.125);

/// Mean-zero pressure making the unprojected momentum RHS divergence-free.
ScalarField recoverPressure(const SlowState& state);

struct OscRhs {
  ScalarField dq;
  ScalarField dphi;
};
/// Potential-level increments of the slow oscillation-envelope equations
/// (the gradient-level envelope equations are gradients of these).
OscRhs rhsOscPotentials(const OscPotentials& p, const SlowState& slow);

/// (u1f, grad psi1f) = rotation by -t/eps of (grad q, grad phi);
/// sigma1f = laplacian(psi1f).
FirstOrderProfile composeFirstOrder(double t, double eps, const OscPotentials& p);

struct SecondOrderForcing {
  ScalarField f_sigma;
  VectorField f_u;
  ScalarField f_T;
};
SecondOrderForcing forcingSecondOrder(const SlowState& slow,
                                      const FirstOrderProfile& prof);

struct SecondOrderRhs {
  ScalarField dsigma;
  VectorField du;
  ScalarField dT;
};
SecondOrderRhs rhsSecondOrder(const SecondOrderState& st,
                              const SecondOrderForcing& f,
                              double mean_tol = 1e-10);

/// sigma_app = sigma1f + eps*sigma2f, u_app = v + u1f + eps*u2f,
/// T_app = T + eps*T2f. st2 may be null (first-order approximation only).
/// Throws TemperatureFloor if T_app drops below T_L/2.
ApproxState composeApproximation(double t, double eps, const SlowState& slow,
                                 const OscPotentials& p,
                                 const SecondOrderState* st2, double T_L);

/// Max over grid nodes and directions j of the infinity-norm asymmetry of
/// A_0 A_j for the quasilinear symmetrizer.
double symmetrizerCheck(const CompressibleState& state, const Floors& floors = {});

/// A_0 A_j evaluated at a single point (n, T, velocity); row-major
/// (d+2) x (d+2). Exposed for the constant-state identity test.
std::vector<double> symmetrizedFluxMatrix(int dim, int j, double n, double T,
                                          const std::vector<double>& vel, double eps);

namespace detail {
/// Scaled-system RHS with the stiff 1/eps pair, friction, and the
/// constant-coefficient diffusion nu_u*lap(u), nu_T*(5/6)*lap(T) omitted;
/// this is the explicit remainder used by the integrating-factor steppers.
CompressibleRhs rhsScaledExplicit(const CompressibleState& state, double nu_u,
                                  double nu_T, const Floors& floors);
/// Incompressible RHS minus friction and nu*lap parts; dv Leray-projected.
SlowRhs rhsIncompressibleExplicit(const SlowState& state, double nu,
                                  double T_floor);
/// Oscillation-potential RHS minus damping and (2/3)*nu*lap parts.
OscRhs rhsOscPotentialsExplicit(const OscPotentials& p, const SlowState& slow,
                                double nu);
}  // namespace detail

}  // namespace zmlim
