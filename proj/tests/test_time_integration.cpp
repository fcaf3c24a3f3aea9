#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "zmlim/dynamics.hpp"
#include "zmlim/grid.hpp"
#include "zmlim/random_fields.hpp"
#include "zmlim/spectral_ops.hpp"
#include "zmlim/time_integration.hpp"

using namespace zmlim;

namespace {

template <typename Fn>
ScalarField sample(const Grid& g, Fn fn) {
  std::vector<double> vals(g.size());
  std::vector<double> x(g.dim());
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    std::size_t rem = idx;
    for (int j = g.dim() - 1; j >= 0; --j) {
      x[j] = (rem % g.n()) * g.dx();
      rem /= g.n();
    }
    vals[idx] = fn(x);
  }
  return ScalarField(g, std::move(vals));
}

CompressibleState randomState(const Grid& g, double eps, std::uint64_t seed) {
  return CompressibleState{
      randomScalar(g, 0.2, 2, seed, 1u),
      randomVector(g, 0.2, 2, seed, 2u),
      addConstant(randomScalar(g, 0.05, 2, seed, 3u), 1.0),
      eps,
      1.0,
  };
}

double stateDistance(const CompressibleState& a, const CompressibleState& b) {
  return l2Norm(a.sigma - b.sigma) + l2Norm(a.u - b.u) + l2Norm(a.T - b.T);
}

double oscillatoryEnergy(const CompressibleState& st) {
  double qu = l2Norm(lerayQ(st.u));
  double gp = l2Norm(grad(poissonSolve(st.sigma)));
  return qu * qu + gp * gp;
}

}  // namespace

TEST_CASE("cflMaxDt shrinks with velocity and resolution") {
  Grid g32(2, 32), g64(2, 64);
  CHECK(cflMaxDt(g32, 2.0, 0.1) < cflMaxDt(g32, 1.0, 0.1));
  CHECK(cflMaxDt(g64, 1.0, 0.1) < cflMaxDt(g32, 1.0, 0.1));
}

TEST_CASE("stepScaled: equilibrium is a fixed point") {
  Grid g(2, 32);
  CompressibleState eq{ScalarField(g), VectorField(g),
                       addConstant(ScalarField(g), 1.0), 0.1, 1.0};
  StepperConfig cfg;
  cfg.dt = 1e-2;
  CompressibleState next = stepScaled(eq, cfg);
  CHECK(stateDistance(next, eq) < 1e-13);
}

TEST_CASE("stepScaled: exact rotation with nonlinearities disabled") {
  Grid g(2, 32);
  const double eps = 0.05;
  ScalarField q = sample(g, [](const std::vector<double>& x) { return std::sin(x[0]); });
  CompressibleState st{ScalarField(g), grad(q),
                       addConstant(ScalarField(g), 1.0), eps, 1.0};
  StepperConfig cfg;
  cfg.linear_only = true;
  const int steps = 200;
  cfg.dt = kTwoPi * eps / steps;  // one full oscillation period

  double e0 = oscillatoryEnergy(st);
  CompressibleState cur = st;
  double max_drift = 0.0;
  for (int i = 0; i < steps; ++i) {
    cur = stepScaled(cur, cfg);
    max_drift = std::max(max_drift, std::fabs(oscillatoryEnergy(cur) - e0) / e0);
  }
  CHECK(max_drift <= 1e-12);
  CHECK(stateDistance(cur, st) < 1e-10);  // back to the start after a period
}

TEST_CASE("stepScaled: dt halving reduces error by at least 3.5x") {
  Grid g(2, 32);
  const double eps = 0.1, horizon = 0.02;
  CompressibleState st = randomState(g, eps, 201u);
  for (Scheme scheme : {Scheme::IFRK2, Scheme::IFRK4}) {
    auto integrate = [&](double dt) {
      StepperConfig cfg;
      cfg.dt = dt;
      cfg.scheme = scheme;
      CompressibleState cur = st;
      int n = static_cast<int>(std::round(horizon / dt));
      for (int i = 0; i < n; ++i) cur = stepScaled(cur, cfg);
      return cur;
    };
    CompressibleState ref = integrate(horizon / 64.0);
    double e_coarse = stateDistance(integrate(horizon / 8.0), ref);
    double e_fine = stateDistance(integrate(horizon / 16.0), ref);
    CHECK(e_coarse / e_fine >= 3.5);
  }
}

TEST_CASE("stepIncompressible: rest state, analytic decay, self-convergence") {
  Grid g(2, 32);
  SUBCASE("rest state unchanged") {
    SlowState rest{VectorField(g), addConstant(ScalarField(g), 1.0)};
    StepperConfig cfg;
    cfg.dt = 1e-2;
    SlowState next = stepIncompressible(rest, cfg);
    CHECK(l2Norm(next.v - rest.v) < 1e-13);
    CHECK(l2Norm(next.T - rest.T) < 1e-13);
  }
  SUBCASE("small single-mode velocity decays at rate 1 + nu k^2") {
    const double nu = 0.8, amp = 1e-8;
    VectorField v(g);
    v[0] = amp * sample(g, [](const std::vector<double>& x) { return std::sin(x[1]); });
    SlowState st{v, addConstant(ScalarField(g), nu)};
    StepperConfig cfg;
    cfg.dt = 1e-3;
    SlowState cur = st;
    for (int i = 0; i < 1000; ++i) cur = stepIncompressible(cur, cfg);
    double expect = l2Norm(v) * std::exp(-(1.0 + nu));
    CHECK(l2Norm(cur.v) == doctest::Approx(expect).epsilon(0.01));
  }
  SUBCASE("dt halving reduces error by at least 3.5x") {
    SlowState st{lerayP(randomVector(g, 0.3, 2, 211u, 1u)),
                 addConstant(randomScalar(g, 0.05, 2, 211u, 2u), 1.0)};
    const double horizon = 0.08;
    auto integrate = [&](double dt) {
      StepperConfig cfg;
      cfg.dt = dt;
      SlowState cur = st;
      int n = static_cast<int>(std::round(horizon / dt));
      for (int i = 0; i < n; ++i) cur = stepIncompressible(cur, cfg);
      return cur;
    };
    SlowState ref = integrate(horizon / 64.0);
    auto dist = [](const SlowState& a, const SlowState& b) {
      return l2Norm(a.v - b.v) + l2Norm(a.T - b.T);
    };
    double e_coarse = dist(integrate(horizon / 8.0), ref);
    double e_fine = dist(integrate(horizon / 16.0), ref);
    CHECK(e_coarse / e_fine >= 3.5);
  }
  SUBCASE("divergence stays at roundoff over many steps") {
    SlowState st{lerayP(randomVector(g, 0.3, 2, 221u, 1u)),
                 addConstant(randomScalar(g, 0.05, 2, 221u, 2u), 1.0)};
    StepperConfig cfg;
    cfg.dt = 2e-3;
    SlowState cur = st;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      cur = stepIncompressible(cur, cfg);
      worst = std::max(worst, l2Norm(div(cur.v)));
    }
    CHECK(worst <= 1e-11);
  }
}

TEST_CASE("stepOscPotentials: zero case, pure damping, self-convergence") {
  Grid g(2, 32);
  SUBCASE("zero potentials stay zero") {
    SlowState rest{VectorField(g), addConstant(ScalarField(g), 1.0)};
    StepperConfig cfg;
    cfg.dt = 1e-2;
    OscPotentials p{ScalarField(g), ScalarField(g)};
    OscPotentials next = stepOscPotentials(p, rest, cfg);
    CHECK(l2Norm(next.q) < 1e-14);
    CHECK(l2Norm(next.phi) < 1e-14);
  }
  SUBCASE("vanishing slow fields leave exponential damping") {
    SlowState trivial{VectorField(g), ScalarField(g)};
    ScalarField q0 = sample(g, [](const std::vector<double>& x) { return std::sin(x[0]); });
    OscPotentials p{q0, ScalarField(g)};
    StepperConfig cfg;
    cfg.dt = 1e-3;
    OscPotentials cur = p;
    const double t_final = 0.5;
    int n = static_cast<int>(std::round(t_final / cfg.dt));
    for (int i = 0; i < n; ++i) cur = stepOscPotentials(cur, trivial, cfg);
    ScalarField expect = std::exp(-t_final / 2.0) * q0;
    double err = l2Norm(cur.q - expect);
    CHECK(err < 1e-10);
    CHECK(l2Norm(cur.phi) < 1e-13);
  }
  SUBCASE("dt halving reduces error by at least 3.5x") {
    SlowState slow{lerayP(randomVector(g, 0.3, 2, 231u, 1u)),
                   addConstant(randomScalar(g, 0.05, 2, 231u, 2u), 1.0)};
    OscPotentials p{randomScalar(g, 0.3, 2, 233u, 1u),
                    randomScalar(g, 0.3, 2, 233u, 2u)};
    const double horizon = 0.08;
    auto integrate = [&](double dt) {
      StepperConfig cfg;
      cfg.dt = dt;
      OscPotentials cur = p;
      int n = static_cast<int>(std::round(horizon / dt));
      for (int i = 0; i < n; ++i) cur = stepOscPotentials(cur, slow, cfg);
      return cur;
    };
    OscPotentials ref = integrate(horizon / 64.0);
    auto dist = [](const OscPotentials& a, const OscPotentials& b) {
      return l2Norm(a.q - b.q) + l2Norm(a.phi - b.phi);
    };
    double e_coarse = dist(integrate(horizon / 8.0), ref);
    double e_fine = dist(integrate(horizon / 16.0), ref);
    CHECK(e_coarse / e_fine >= 3.5);
  }
}

TEST_CASE("integrateSecondOrder: zero forcing gives the zero trajectory") {
  Grid g(2, 16);
  SlowState rest{VectorField(g), addConstant(ScalarField(g), 1.0)};
  FirstOrderProfile zero{VectorField(g), VectorField(g), ScalarField(g), ScalarField(g)};
  StepperConfig cfg;
  cfg.dt = 0.05;
  cfg.snapshot_stride = 4;
  SecondOrderTrajectory traj = integrateSecondOrder(
      5.0, cfg, [&](double) { return rest; }, [&](double) { return zero; });
  REQUIRE(!traj.samples.empty());
  for (const SecondOrderSample& s : traj.samples) {
    CHECK(s.norm_sigma < 1e-13);
    CHECK(s.norm_u < 1e-13);
    CHECK(s.norm_T < 1e-13);
  }
}

TEST_CASE("unforced corrector dynamics conserve the oscillatory energy") {
  Grid g(2, 32);
  ScalarField psi = randomScalar(g, 0.4, 3, 241u, 1u);
  SecondOrderState st{laplacian(psi), grad(randomScalar(g, 0.4, 3, 241u, 2u)),
                      ScalarField(g), 0.0};
  SecondOrderForcing f0{ScalarField(g), VectorField(g), ScalarField(g)};
  auto energy = [](const SecondOrderState& s) {
    double a = l2Norm(grad(poissonSolve(s.sigma2f)));
    double b = l2Norm(s.u2f);
    return a * a + b * b;
  };
  const double dt = 1e-3;
  double e0 = energy(st);
  SecondOrderState cur = st;
  for (int i = 0; i < 200; ++i) {
    // plain RK4 on the skew system
    auto apply = [&](const SecondOrderState& s) { return rhsSecondOrder(s, f0); };
    SecondOrderRhs k1 = apply(cur);
    SecondOrderState s2{cur.sigma2f + 0.5 * dt * k1.dsigma, cur.u2f + 0.5 * dt * k1.du,
                        cur.T2f + 0.5 * dt * k1.dT, cur.s + 0.5 * dt};
    SecondOrderRhs k2 = apply(s2);
    SecondOrderState s3{cur.sigma2f + 0.5 * dt * k2.dsigma, cur.u2f + 0.5 * dt * k2.du,
                        cur.T2f + 0.5 * dt * k2.dT, cur.s + 0.5 * dt};
    SecondOrderRhs k3 = apply(s3);
    SecondOrderState s4{cur.sigma2f + dt * k3.dsigma, cur.u2f + dt * k3.du,
                        cur.T2f + dt * k3.dT, cur.s + dt};
    SecondOrderRhs k4 = apply(s4);
    cur = SecondOrderState{
        cur.sigma2f + (dt / 6.0) * (k1.dsigma + 2.0 * k2.dsigma + 2.0 * k3.dsigma + k4.dsigma),
        cur.u2f + (dt / 6.0) * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du),
        cur.T2f + (dt / 6.0) * (k1.dT + 2.0 * k2.dT + 2.0 * k3.dT + k4.dT),
        cur.s + dt};
  }
  CHECK(std::fabs(energy(cur) - e0) / e0 < 1e-10);
}
