// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "zmlim/config.hpp"
#include "zmlim/dynamics.hpp"
#include "zmlim/grid.hpp"
#include "zmlim/harness.hpp"
#include "zmlim/oscillation.hpp"
#include "zmlim/random_fields.hpp"
#include "zmlim/snapshot_io.hpp"
#include "zmlim/spectral_ops.hpp"
#include "zmlim/time_integration.hpp"

using namespace zmlim;

namespace {

int g_failures = 0;

void report(int idx, const std::string& label, bool pass, const std::string& detail) {
  std::printf("criterion %d (%s): %s  [%s]\n", idx, label.c_str(),
              pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double pairDistance(const PhasePair& a, const PhasePair& b) {
  return pairNorm(addPairs(a, scalePair(-1.0, b)));
}

// --- 1: operator algebra --------------------------------------------------
void criterion1() {
  Grid g(2, 32);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    std::uint64_t seed = 1000u + t;
    PhasePair p(randomVector(g, 1.0, 8, seed, 1u), randomVector(g, 1.0, 8, seed, 2u));
    const double a = counterUniform(seed, 11u) * 3.0;
    const double b = counterUniform(seed, 12u) * 3.0;

    worst = std::max(worst, pairDistance(expTauL(a, expTauL(b, p)), expTauL(a + b, p)));
    worst = std::max(worst, std::fabs(pairNorm(expTauL(a, p)) - pairNorm(p)));
    PhasePair osc = addPairs(p, scalePair(-1.0, projectP0(p)));
    worst = std::max(worst, pairDistance(applyL(applyL(p)), scalePair(-1.0, osc)));
    ComplexPair pi = projectPi(p);
    ComplexPair pmi = projectPmi(p);
    PhasePair re_sum = addPairs(projectP0(p), addPairs(pi.re, pmi.re));
    worst = std::max(worst, pairDistance(re_sum, p));
    worst = std::max(worst, pairNorm(addPairs(pi.im, pmi.im)));
  }
  report(1, "operator algebra", worst <= 1e-11,
         "max deviation " + formatG17(worst) + " <= 1e-11, 100 random pairs");
}

// --- 2: symmetrizer identity ----------------------------------------------
void criterion2() {
  Grid g(2, 32);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    std::uint64_t seed = 2000u + t;
    CompressibleState st{randomScalar(g, 0.3, 8, seed, 1u),
                         randomVector(g, 0.3, 8, seed, 2u),
                         addConstant(randomScalar(g, 0.1, 8, seed, 3u), 1.0),
                         0.05 + 0.01 * t, 1.0};
    worst = std::max(worst, symmetrizerCheck(st));
  }
  // constant reference state: the product must match the closed form exactly
  double exact = 0.0;
  for (int j = 0; j < 2; ++j) {
    std::vector<double> m = symmetrizedFluxMatrix(2, j, 1.0, 1.0, {0.0, 0.0}, 1.0);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        double expect = 0.0;
        if ((r == 0 && c == 1 + j) || (r == 1 + j && c == 0)) expect = 1.0;
        if ((r == 3 && c == 1 + j) || (r == 1 + j && c == 3)) expect = 1.0;
        exact = std::max(exact, std::fabs(m[r * 4 + c] - expect));
      }
    }
  }
  report(2, "symmetrizer identity", worst <= 1e-12 && exact == 0.0,
         "max asymmetry " + formatG17(worst) + " <= 1e-12, constant-state deviation " +
             formatG17(exact));
}

// --- 3: resonance averaging -----------------------------------------------
void criterion3() {
  Grid g(2, 32);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    std::uint64_t seed = 3000u + t;
    SlowState slow{lerayP(randomVector(g, 0.4, 4, seed, 1u)),
                   addConstant(randomScalar(g, 0.15, 4, seed, 2u), 1.0)};
    OscPotentials p{randomScalar(g, 0.4, 4, seed, 3u),
                    randomScalar(g, 0.4, 4, seed, 4u)};
    worst = std::max(worst, resonanceAverageCheck(slow, p, 64));
  }
  report(3, "resonance averaging", worst <= 1e-8,
         "max L2 residual " + formatG17(worst) + " <= 1e-8, 20 random configs");
}

// --- 4: conservation and structure ------------------------------------------
void criterion4() {
  ExperimentConfig cfg = parseExperimentConfig(KeyValueConfig::parseString(""));
  const double eps = 0.1;
  InitialData data = buildInitialData(cfg, eps);

  StepperConfig scfg = cfg.stepper;
  const int n_steps = static_cast<int>(std::round(cfg.tau / scfg.dt));
  const double mean0 = data.comp.sigma.mean();
  double drift = 0.0;
  CompressibleState comp = data.comp;
  for (int i = 0; i < n_steps; ++i) {
    comp = stepScaled(comp, scfg);
    drift = std::max(drift, std::fabs(comp.sigma.mean() - mean0));
  }

  SlowState slow = data.slow;
  double worst_div = l2Norm(div(slow.v));
  for (int i = 0; i < n_steps; ++i) {
    slow = stepIncompressible(slow, scfg);
    worst_div = std::max(worst_div, l2Norm(div(slow.v)));
  }

  // pure-rotation energy conservation with nonlinearities disabled
  Grid g(cfg.dim, cfg.n);
  CompressibleState rot{ScalarField(g), grad(randomScalar(g, 0.5, cfg.kmax, cfg.seed, 40u)),
                        addConstant(ScalarField(g), 1.0), eps, cfg.T0};
  StepperConfig lcfg = scfg;
  lcfg.linear_only = true;
  auto energy = [](const CompressibleState& st) {
    double a = l2Norm(lerayQ(st.u));
    double b = l2Norm(grad(poissonSolve(st.sigma, 1e-8)));
    return a * a + b * b;
  };
  const double e0 = energy(rot);
  double e_drift = 0.0;
  for (int i = 0; i < 200; ++i) {
    rot = stepScaled(rot, lcfg);
    e_drift = std::max(e_drift, std::fabs(energy(rot) - e0) / e0);
  }

  bool pass = drift <= 1e-10 && worst_div <= 1e-11 && e_drift <= 1e-12;
  report(4, "conservation and structure", pass,
         "mean-sigma drift " + formatG17(drift) + " <= 1e-10, div v " +
             formatG17(worst_div) + " <= 1e-11, rotation energy drift/step " +
             formatG17(e_drift) + " <= 1e-12");
}

// --- 5: empirical first-order rate ------------------------------------------
void criterion5() {
  ExperimentConfig cfg = parseExperimentConfig(KeyValueConfig::parseString(""));
  SweepResult r = runConvergenceSweep(cfg);

  bool rates_ok = r.all_pass;
  double min_slope = 1e300;
  for (const RateFit& f : r.rates) min_slope = std::min(min_slope, f.slope);

  // the smallest eps must give the strictly smallest value of every metric
  bool strict = true;
  auto metric_values = [&](auto getter) {
    std::vector<double> v;
    for (const ErrorMetrics& m : r.metrics) v.push_back(getter(m));
    return v;
  };
  std::vector<std::vector<double>> all = {
      metric_values([](const ErrorMetrics& m) { return m.sup_eps_sigma_hs; }),
      metric_values([](const ErrorMetrics& m) { return m.sup_u_hs; }),
      metric_values([](const ErrorMetrics& m) { return m.sup_T_hs; }),
      metric_values([](const ErrorMetrics& m) { return m.sup_gradpsi_hs; }),
      metric_values([](const ErrorMetrics& m) { return m.l2t_u_hs1; }),
      metric_values([](const ErrorMetrics& m) { return m.l2t_T_hs1; }),
  };
  for (const auto& vals : all) {
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
      if (!(vals.back() < vals[i])) strict = false;
    }
  }

  report(5, "first-order convergence rate", rates_ok && strict,
         "min fitted slope " + formatG17(min_slope) +
             " >= 0.8, smallest-eps metrics strictly smallest: " +
             (strict ? "yes" : "no"));
}

// --- 6: corrector has no secular growth -------------------------------------
void criterion6() {
  ExperimentConfig cfg = parseExperimentConfig(KeyValueConfig::parseString(""));
  cfg.n = 32;
  const double eps = 0.05;
  InitialData data = buildInitialData(cfg, eps);

  StepperConfig scfg;
  scfg.dt = 0.05;  // fast-time step; skew frequency is 1
  scfg.snapshot_stride = 20;
  SecondOrderTrajectory traj = integrateSecondOrder(
      100.0, scfg, [&](double) { return data.slow; },
      [&](double s) { return composeFirstOrder(eps * s, eps, data.osc); });

  // least-squares linear fit of the combined norm against fast time
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(traj.samples.size());
  for (const SecondOrderSample& smp : traj.samples) {
    const double y = smp.norm_sigma + smp.norm_u + smp.norm_T;
    sx += smp.s;
    sy += y;
    sxx += smp.s * smp.s;
    sxy += smp.s * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double mean = sy / n;
  const bool pass = n >= 10 && mean > 0.0 && std::fabs(slope) <= 1e-2 * mean;
  report(6, "corrector boundedness", pass,
         "growth slope " + formatG17(slope) + " vs mean norm " + formatG17(mean) +
             " over s in [0,100]");
}

// --- 7: stepper self-convergence --------------------------------------------
void criterion7() {
  Grid g(2, 32);
  const double horizon = 0.02;
  double worst_ratio = 1e300;
  std::string detail;

  {  // scaled system
    CompressibleState st{randomScalar(g, 0.2, 2, 7001u, 1u),
                         randomVector(g, 0.2, 2, 7001u, 2u),
                         addConstant(randomScalar(g, 0.05, 2, 7001u, 3u), 1.0),
                         0.1, 1.0};
    auto run = [&](double dt) {
      StepperConfig cfg;
      cfg.dt = dt;
      CompressibleState cur = st;
      for (int i = 0; i < int(std::round(horizon / dt)); ++i) cur = stepScaled(cur, cfg);
      return cur;
    };
    auto dist = [](const CompressibleState& a, const CompressibleState& b) {
      return l2Norm(a.sigma - b.sigma) + l2Norm(a.u - b.u) + l2Norm(a.T - b.T);
    };
    CompressibleState ref = run(horizon / 64.0);
    double ratio = dist(run(horizon / 8.0), ref) / dist(run(horizon / 16.0), ref);
    worst_ratio = std::min(worst_ratio, ratio);
    detail += "scaled " + formatG17(ratio);
  }
  {  // incompressible limit
    SlowState st{lerayP(randomVector(g, 0.3, 2, 7003u, 1u)),
                 addConstant(randomScalar(g, 0.05, 2, 7003u, 2u), 1.0)};
    auto run = [&](double dt) {
      StepperConfig cfg;
      cfg.dt = dt;
      SlowState cur = st;
      for (int i = 0; i < int(std::round(0.08 / dt)); ++i) cur = stepIncompressible(cur, cfg);
      return cur;
    };
    auto dist = [](const SlowState& a, const SlowState& b) {
      return l2Norm(a.v - b.v) + l2Norm(a.T - b.T);
    };
    SlowState ref = run(0.08 / 64.0);
    double ratio = dist(run(0.08 / 8.0), ref) / dist(run(0.08 / 16.0), ref);
    worst_ratio = std::min(worst_ratio, ratio);
    detail += ", limit " + formatG17(ratio);
  }
  {  // oscillation envelope
    SlowState slow{lerayP(randomVector(g, 0.3, 2, 7005u, 1u)),
                   addConstant(randomScalar(g, 0.05, 2, 7005u, 2u), 1.0)};
    OscPotentials p{randomScalar(g, 0.3, 2, 7007u, 1u),
                    randomScalar(g, 0.3, 2, 7007u, 2u)};
    auto run = [&](double dt) {
      StepperConfig cfg;
      cfg.dt = dt;
      OscPotentials cur = p;
      for (int i = 0; i < int(std::round(0.08 / dt)); ++i)
        cur = stepOscPotentials(cur, slow, cfg);
      return cur;
    };
    auto dist = [](const OscPotentials& a, const OscPotentials& b) {
      return l2Norm(a.q - b.q) + l2Norm(a.phi - b.phi);
    };
    OscPotentials ref = run(0.08 / 64.0);
    double ratio = dist(run(0.08 / 8.0), ref) / dist(run(0.08 / 16.0), ref);
    worst_ratio = std::min(worst_ratio, ratio);
    detail += ", envelope " + formatG17(ratio);
  }

  report(7, "stepper self-convergence", worst_ratio >= 3.5,
         "dt-halving ratios: " + detail + " (all >= 3.5)");
}

// --- 8: well-prepared degeneration -------------------------------------------
void criterion8() {
  ExperimentConfig cfg = parseExperimentConfig(KeyValueConfig::parseString(""));
  cfg.n = 32;
  cfg.amp.qu = 0.0;
  cfg.amp.psi = 0.0;

  InitialData data = buildInitialData(cfg, cfg.eps_list.front());
  double prof_norm = l2Norm(data.osc.q) + l2Norm(data.osc.phi);
  OscPotentials p = data.osc;
  StepperConfig ocfg = cfg.stepper;
  for (int i = 0; i < 50; ++i) {
    p = stepOscPotentials(p, data.slow, ocfg);
    prof_norm = std::max(prof_norm, l2Norm(p.q) + l2Norm(p.phi));
  }

  SweepResult r = runConvergenceSweep(cfg);
  double u_slope = 0.0;
  bool u_pass = false;
  for (const RateFit& f : r.rates) {
    if (f.metric == "sup_u_Hs") {
      u_slope = f.slope;
      u_pass = f.slope >= cfg.slope_min;
    }
  }
  bool pass = prof_norm == 0.0 && u_pass;
  report(8, "well-prepared degeneration", pass,
         "oscillation profile norm " + formatG17(prof_norm) +
             " (exactly zero), velocity-metric slope " + formatG17(u_slope) + " >= 0.8");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
