#pragma once

#include "zmlim/field.hpp"

namespace zmlim {

/// Exact spectral gradient; the zero mode has no derivative.
VectorField grad(const ScalarField& f);
ScalarField div(const VectorField& f);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& f);

/// Row-wise divergence of a symmetric tensor: out_i = sum_j d_j S_ij.
VectorField div(const TensorField& s);

/// Solves laplacian(psi) = sigma with mean(psi) = 0.
/// Throws NonZeroMeanError if |mean(sigma)| > mean_tol.
ScalarField poissonSolve(const ScalarField& sigma, double mean_tol = 1e-10);

/// Same inversion without the solvability guard; the zero mode is dropped.
ScalarField inverseLaplacian(const ScalarField& f);

struct LerayParts {
  VectorField div_free;   // P u, carries the constant mode
  VectorField gradient;   // Q u = grad(potential)
  ScalarField potential;  // mean-zero
};
LerayParts lerayDecompose(const VectorField& u);
VectorField lerayP(const VectorField& u);
VectorField lerayQ(const VectorField& u);
/// Mean-zero potential q with Q u = grad(q).
ScalarField lerayPotential(const VectorField& u);

/// S(u) = grad u + (grad u)^T - (2/3) div(u) I.
TensorField strain(const VectorField& u);

/// Full (non-symmetric) Jacobian, J[i][j] = d_i u_j.
std::vector<std::vector<ScalarField>> jacobian(const VectorField& u);

/// sum_ij S_ij d_j u_i (equals sum_ij S_ij d_i u_j for symmetric S).
ScalarField doubleContraction(const TensorField& s, const VectorField& u);

/// H^s norm via the Fourier weight (1+|k|^2)^s, Parseval-matched to the
/// continuum L^2 integral over [0,2pi)^d. s = 0 is the L^2 norm.
double sobolevNorm(const ScalarField& f, double s);
double sobolevNorm(const VectorField& f, double s);

double l2Norm(const ScalarField& f);
double l2Norm(const VectorField& f);
double l2InnerProduct(const ScalarField& a, const ScalarField& b);
double l2InnerProduct(const VectorField& a, const VectorField& b);

/// 2/3-rule truncation: zero all modes with any |k_j| > N/3. Idempotent.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& f);

/// u . grad f, dealiased.
ScalarField advect(const VectorField& u, const ScalarField& f);
/// (u . grad) w componentwise, dealiased.
VectorField advect(const VectorField& u, const VectorField& w);

}  // namespace zmlim
