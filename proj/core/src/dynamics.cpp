#include "zmlim/dynamics.hpp"

#include <cmath>
#include <string>

#include "zmlim/errors.hpp"
#include "zmlim/oscillation.hpp"

namespace zmlim {
namespace {

void checkDensity(const ScalarField& sigma, double eps, double rho_floor) {
  const double n_min = 1.0 + eps * sigma.minValue();
  const double n_min2 = 1.0 + eps * sigma.maxValue();
  if (std::min(n_min, n_min2) < rho_floor)
    throw DensityFloorError("density " + std::to_string(std::min(n_min, n_min2)) +
                            " below floor " + std::to_string(rho_floor));
}

void checkTemperature(const ScalarField& T, double T_floor) {
  if (T.minValue() < T_floor)
    throw TemperatureFloorError("temperature " + std::to_string(T.minValue()) +
                                " below floor " + std::to_string(T_floor));
}

// div[ coeff * S(u) ], coeff a nodal scalar; each product dealiased.
VectorField divCoeffStrain(const ScalarField& coeff, const VectorField& u) {
  TensorField s = strain(u);
  TensorField cs(u.grid());
  for (int i = 0; i < u.dim(); ++i)
    for (int j = i; j < u.dim(); ++j)
      cs.set(i, j, dealias(pointwiseMul(coeff, s(i, j))));
  return div(cs);
}

}  // namespace

ScalarField potentialOf(const CompressibleState& s, double mean_tol) {
  return poissonSolve(s.sigma, mean_tol);
}

namespace detail {

CompressibleRhs rhsScaledExplicit(const CompressibleState& state, double nu_u,
                                  double nu_T, const Floors& floors) {
  checkDensity(state.sigma, state.eps, floors.rho_floor);
  checkTemperature(state.T, floors.T_floor);
  const double eps = state.eps;
  const VectorField& u = state.u;
  const ScalarField& T = state.T;
  const ScalarField n = addConstant(eps * state.sigma, 1.0);
  const ScalarField inv_n = pointwiseInv(n);
  const ScalarField nT = dealias(pointwiseMul(n, T));

  ScalarField dsigma = -div(dealias(pointwiseMul(state.sigma, u)));

  VectorField du = -advect(u, u);
  du -= eps * dealias(pointwiseMul(dealias(pointwiseMul(T, inv_n)), grad(state.sigma)));
  du -= grad(T);
  VectorField visc = divCoeffStrain(nT, u);
  du += dealias(pointwiseMul(inv_n, visc));
  if (nu_u != 0.0) du -= nu_u * laplacian(u);

  ScalarField dT = (-2.0 / 3.0) * dealias(pointwiseMul(T, div(u)));
  dT -= advect(u, T);
  VectorField heat_flux = dealias(pointwiseMul(nT, grad(T)));
  dT += (5.0 / 6.0) * dealias(pointwiseMul(inv_n, div(heat_flux)));
  if (nu_T != 0.0) dT -= nu_T * (5.0 / 6.0) * laplacian(T);
  dT -= (2.0 / 3.0) * dealias(pointwiseMul(T, doubleContraction(strain(u), u)));
  ScalarField speed2 = dealias(dot(u, u));
  dT += (1.0 / 3.0) * speed2;
  dT += (eps * eps / 2.0) * (addConstant(-1.0 * T, state.T0_ref));

  return CompressibleRhs{std::move(dsigma), std::move(du), std::move(dT)};
}

SlowRhs rhsIncompressibleExplicit(const SlowState& state, double nu,
                                  double T_floor) {
  checkTemperature(state.T, T_floor);
  const VectorField& v = state.v;
  const ScalarField& T = state.T;

  VectorField dv = -advect(v, v) - grad(T) + divCoeffStrain(T, v);
  if (nu != 0.0) dv -= nu * laplacian(v);
  dv = lerayP(dv);

  ScalarField dT = -advect(v, T);
  dT += (5.0 / 6.0) * div(dealias(pointwiseMul(T, grad(T))));
  if (nu != 0.0) dT -= nu * (5.0 / 6.0) * laplacian(T);
  dT -= (2.0 / 3.0) * dealias(pointwiseMul(T, doubleContraction(strain(v), v)));
  dT += (1.0 / 3.0) * dealias(dot(v, v));
  return SlowRhs{std::move(dv), std::move(dT)};
}

OscRhs rhsOscPotentialsExplicit(const OscPotentials& p, const SlowState& slow,
                                double nu) {
  const VectorField& v = slow.v;
  auto half_envelope = [&](const ScalarField& pot) {
    VectorField g = grad(pot);
    VectorField rhs = -advect(g, v) - advect(v, g);
    rhs -= dealias(pointwiseMul(laplacian(pot), v));
    rhs += divCoeffStrain(slow.T, g);
    ScalarField dpot = 0.5 * inverseLaplacian(div(rhs));
    if (nu != 0.0) dpot -= nu * (2.0 / 3.0) * laplacian(pot);
    return dpot;
  };
  return OscRhs{half_envelope(p.q), half_envelope(p.phi)};
}

}  // namespace detail

CompressibleRhs rhsScaled(const CompressibleState& state, const Floors& floors) {
  CompressibleRhs rhs = detail::rhsScaledExplicit(state, 0.0, 0.0, floors);
  ScalarField psi = poissonSolve(state.sigma, floors.mean_tol);
  const double inv_eps = 1.0 / state.eps;
  rhs.dsigma -= inv_eps * div(state.u);
  rhs.du += inv_eps * grad(psi);
  rhs.du -= state.u;
  return rhs;
}

SlowRhs rhsIncompressible(const SlowState& state, double T_floor) {
  SlowRhs rhs = detail::rhsIncompressibleExplicit(state, 0.0, T_floor);
  rhs.dv -= lerayP(state.v);
  return rhs;
}

ScalarField recoverPressure(const SlowState& state) {
  const VectorField& v = state.v;
  VectorField unprojected =
      -advect(v, v) - grad(state.T) + divCoeffStrain(state.T, v) - v;
  return inverseLaplacian(div(unprojected));
}

OscRhs rhsOscPotentials(const OscPotentials& p, const SlowState& slow) {
  OscRhs rhs = detail::rhsOscPotentialsExplicit(p, slow, 0.0);
  rhs.dq -= 0.5 * p.q;
  rhs.dphi -= 0.5 * p.phi;
  return rhs;
}

FirstOrderProfile composeFirstOrder(double t, double eps, const OscPotentials& p) {
  const Grid& g = p.q.grid();
  VectorField zv(g);
  PhasePair pair = PhasePair::fromParts(zv, zv, p.q, p.phi);
  PhasePair rot = expTauL(-t / eps, pair);
  ScalarField psi1f = rot.phiPotential();
  return FirstOrderProfile{grad(rot.qPotential()), grad(psi1f),
                           psi1f, laplacian(psi1f)};
}

SecondOrderForcing forcingSecondOrder(const SlowState& slow,
                                      const FirstOrderProfile& prof) {
  const VectorField& v = slow.v;
  const ScalarField& T = slow.T;
  const VectorField& u1 = prof.u1f;
  const VectorField& gp1 = prof.grad_psi1f;
  const ScalarField& s1 = prof.sigma1f;

  // density forcing
  VectorField bs = advect(gp1, v) + advect(v, gp1);
  bs += dealias(pointwiseMul(s1, v));
  bs -= divCoeffStrain(T, gp1);
  ScalarField f_sigma = 0.5 * div(bs) + 0.5 * s1;
  f_sigma -= div(dealias(pointwiseMul(s1, v + u1)));

  // velocity forcing
  VectorField bu = advect(u1, v) + advect(v, u1);
  bu += dealias(pointwiseMul(div(u1), v));
  bu -= divCoeffStrain(T, u1);
  VectorField f_u = 0.5 * lerayQ(bu);
  f_u -= 0.5 * u1;
  f_u -= advect(u1, v + u1);
  f_u -= advect(v, u1);
  f_u += divCoeffStrain(T, u1);

  // temperature forcing
  ScalarField f_T = (-2.0 / 3.0) * dealias(pointwiseMul(T, div(u1)));
  f_T -= advect(u1, T);
  ScalarField contraction =
      doubleContraction(strain(v), u1) + doubleContraction(strain(u1), v + u1);
  f_T -= (2.0 / 3.0) * dealias(pointwiseMul(T, contraction));
  f_T -= (1.0 / 3.0) * dealias(dot(v, v));
  f_T += (1.0 / 3.0) * dealias(dot(v + u1, v + u1));

  return SecondOrderForcing{std::move(f_sigma), std::move(f_u), std::move(f_T)};
}

SecondOrderRhs rhsSecondOrder(const SecondOrderState& st,
                              const SecondOrderForcing& f, double mean_tol) {
  ScalarField psi2 = poissonSolve(st.sigma2f, mean_tol);
  return SecondOrderRhs{f.f_sigma - div(st.u2f), f.f_u + grad(psi2), f.f_T};
}

ApproxState composeApproximation(double t, double eps, const SlowState& slow,
                                 const OscPotentials& p,
                                 const SecondOrderState* st2, double T_L) {
  FirstOrderProfile prof = composeFirstOrder(t, eps, p);
  ScalarField sigma_app = prof.sigma1f;
  VectorField u_app = slow.v + prof.u1f;
  ScalarField T_app = slow.T;
  ScalarField psi_app = prof.psi1f;
  if (st2 != nullptr) {
    sigma_app += eps * st2->sigma2f;
    u_app += eps * st2->u2f;
    T_app += eps * st2->T2f;
    psi_app += eps * poissonSolve(st2->sigma2f);
  }
  if (T_app.minValue() < T_L / 2.0)
    throw TemperatureFloorError("composed temperature " +
                                std::to_string(T_app.minValue()) +
                                " below T_L/2 = " + std::to_string(T_L / 2.0));
  return ApproxState{std::move(sigma_app), std::move(u_app), std::move(T_app),
                     std::move(psi_app)};
}

std::vector<double> symmetrizedFluxMatrix(int dim, int j, double n, double T,
                                          const std::vector<double>& vel,
                                          double eps) {
  const int m = dim + 2;
  const double e2 = eps * eps;
  std::vector<double> aj(m * m, 0.0);
  aj[0 * m + (1 + j)] = n;
  for (int i = 0; i < dim; ++i) {
    if (i == j) {
      aj[(1 + i) * m + 0] = T / (e2 * n);
      aj[(1 + i) * m + (dim + 1)] = 1.0 / e2;
      aj[(dim + 1) * m + (1 + i)] = (2.0 / 3.0) * T;
    }
  }
  for (int r = 0; r < m; ++r) aj[r * m + r] += vel[j];

  std::vector<double> a0(m, 1.0);
  a0[0] = T / (e2 * n * n);
  a0[m - 1] = 3.0 / (2.0 * e2 * T);

  std::vector<double> out(m * m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) out[r * m + c] = a0[r] * aj[r * m + c];
  return out;
}

double symmetrizerCheck(const CompressibleState& state, const Floors& floors) {
  checkDensity(state.sigma, state.eps, floors.rho_floor);
  checkTemperature(state.T, floors.T_floor);
  const Grid& g = state.sigma.grid();
  const int d = g.dim();
  const int m = d + 2;
  std::vector<double> vel(d);
  double worst = 0.0;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const double n = 1.0 + state.eps * state.sigma.values()[idx];
    const double T = state.T.values()[idx];
    for (int j = 0; j < d; ++j) vel[j] = state.u[j].values()[idx];
    for (int j = 0; j < d; ++j) {
      std::vector<double> a = symmetrizedFluxMatrix(d, j, n, T, vel, state.eps);
      for (int r = 0; r < m; ++r)
        for (int c = r + 1; c < m; ++c)
          worst = std::max(worst, std::abs(a[r * m + c] - a[c * m + r]));
    }
  }
  return worst;
}

}  // namespace zmlim
