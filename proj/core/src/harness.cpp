#include "zmlim/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <sstream>
#include <thread>

#include "zmlim/errors.hpp"
#include "zmlim/oscillation.hpp"
#include "zmlim/random_fields.hpp"
#include "zmlim/snapshot_io.hpp"

namespace zmlim {
namespace {

constexpr const char* kKnownKeys[] = {
    "grid.dim",       "grid.n",
    "sobolev.s",      "time.tau",
    "eps.list",       "seed",
    "kmax",           "amp.v",
    "amp.qu",         "amp.psi",
    "amp.T",          "amp.sigmaE",
    "amp.uE",         "amp.TE",
    "temperature.T_L", "temperature.T_bar",
    "temperature.T0", "stepper.dt",
    "stepper.scheme", "stepper.snapshot_stride",
    "floors.rho",     "floors.T",
    "floors.mean_tol", "sweep.slope_min",
    "sweep.second_order", "sweep.min_snapshots_per_period",
};

std::string fmtEps(const std::vector<double>& eps) {
  std::string out;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (i) out += ",";
    out += formatG17(eps[i]);
  }
  return out;
}

}  // namespace

std::vector<std::string> experimentConfigKnownKeys() {
  return std::vector<std::string>(std::begin(kKnownKeys), std::end(kKnownKeys));
}

ExperimentConfig parseExperimentConfig(const KeyValueConfig& kv) {
  const auto unknown = kv.unknownKeys(experimentConfigKnownKeys());
  if (!unknown.empty()) {
    std::string msg = "unknown config keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw ConfigError(msg);
  }

  ExperimentConfig cfg;
  cfg.dim = kv.getInt("grid.dim", cfg.dim);
  cfg.n = kv.getInt("grid.n", cfg.n);
  cfg.sobolev_s = kv.getDouble("sobolev.s", cfg.sobolev_s);
  cfg.tau = kv.getDouble("time.tau", cfg.tau);
  cfg.eps_list = kv.getDoubleList("eps.list", cfg.eps_list);
  cfg.seed = static_cast<std::uint64_t>(kv.getInt("seed", int(cfg.seed)));
  cfg.kmax = kv.getInt("kmax", cfg.kmax);
  cfg.amp.v = kv.getDouble("amp.v", cfg.amp.v);
  cfg.amp.qu = kv.getDouble("amp.qu", cfg.amp.qu);
  cfg.amp.psi = kv.getDouble("amp.psi", cfg.amp.psi);
  cfg.amp.T = kv.getDouble("amp.T", cfg.amp.T);
  cfg.amp.sigmaE = kv.getDouble("amp.sigmaE", cfg.amp.sigmaE);
  cfg.amp.uE = kv.getDouble("amp.uE", cfg.amp.uE);
  cfg.amp.TE = kv.getDouble("amp.TE", cfg.amp.TE);
  cfg.T_L = kv.getDouble("temperature.T_L", cfg.T_L);
  cfg.T_bar = kv.getDouble("temperature.T_bar", cfg.T_bar);
  cfg.T0 = kv.getDouble("temperature.T0", cfg.T0);
  cfg.stepper.dt = kv.getDouble("stepper.dt", 5e-4);
  const std::string scheme = kv.getString("stepper.scheme", "ifrk4");
  if (scheme == "ifrk4")
    cfg.stepper.scheme = Scheme::IFRK4;
  else if (scheme == "ifrk2")
    cfg.stepper.scheme = Scheme::IFRK2;
  else
    throw ConfigError("stepper.scheme must be ifrk2 or ifrk4, got: " + scheme);
  cfg.stepper.snapshot_stride = kv.getInt("stepper.snapshot_stride", 10);
  cfg.stepper.floors.rho_floor = kv.getDouble("floors.rho", 0.1);
  cfg.stepper.floors.T_floor = kv.getDouble("floors.T", cfg.T_L / 4.0);
  cfg.stepper.floors.mean_tol = kv.getDouble("floors.mean_tol", 1e-10);
  cfg.slope_min = kv.getDouble("sweep.slope_min", cfg.slope_min);
  cfg.second_order = kv.getBool("sweep.second_order", cfg.second_order);
  cfg.min_snapshots_per_period =
      kv.getInt("sweep.min_snapshots_per_period", cfg.min_snapshots_per_period);

  if (cfg.dim != 2 && cfg.dim != 3)
    throw ConfigError("grid.dim must be 2 or 3");
  if (cfg.n < 8 || cfg.n % 2 != 0)
    throw ConfigError("grid.n must be even and at least 8");
  if (cfg.sobolev_s <= cfg.dim / 2.0 + 1.0)
    throw ConfigError("sobolev.s must exceed d/2 + 1");
  if (cfg.eps_list.empty()) throw ConfigError("eps.list must be nonempty");
  for (std::size_t i = 0; i < cfg.eps_list.size(); ++i) {
    const double e = cfg.eps_list[i];
    if (!(e > 0.0 && e < 1.0))
      throw ConfigError("eps values must lie in (0, 1)");
    if (i > 0 && e >= cfg.eps_list[i - 1])
      throw ConfigError("eps.list must be strictly decreasing");
  }
  if (cfg.kmax < 1 || cfg.kmax > cfg.n / 3)
    throw ConfigError("kmax must be in [1, n/3] (inside the dealias band)");
  if (!(cfg.T_L > 0.0)) throw ConfigError("temperature.T_L must be positive");
  if (cfg.T_bar - cfg.amp.T * cfg.kmax < cfg.T_L)
    throw ConfigError("temperature fluctuation amplitude too large for T_L");
  if (!(cfg.stepper.dt > 0.0)) throw ConfigError("stepper.dt must be positive");
  if (cfg.tau < cfg.stepper.dt)
    throw ConfigError("time.tau must be at least one step");

  // CFL rule for the explicit remainder: advection plus the variable part of
  // the diffusion coefficient (the mean is handled exactly).
  Grid g(cfg.dim, cfg.n);
  const double u_est = cfg.amp.v + cfg.amp.qu + cfg.amp.uE + 0.5;
  const double diff_est = std::max(cfg.amp.T + cfg.amp.TE, 1e-6);
  const double dt_max = cflMaxDt(g, u_est, diff_est);
  if (cfg.stepper.dt > dt_max)
    throw ConfigError("stepper.dt = " + formatG17(cfg.stepper.dt) +
                      " violates the CFL bound dt <= " + formatG17(dt_max));
  return cfg;
}

std::vector<std::pair<std::string, std::string>> resolvedEntries(
    const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  auto add = [&](const std::string& k, const std::string& v) {
    out.emplace_back(k, v);
  };
  add("grid.dim", std::to_string(cfg.dim));
  add("grid.n", std::to_string(cfg.n));
  add("sobolev.s", formatG17(cfg.sobolev_s));
  add("time.tau", formatG17(cfg.tau));
  add("eps.list", fmtEps(cfg.eps_list));
  add("seed", std::to_string(cfg.seed));
  add("kmax", std::to_string(cfg.kmax));
  add("amp.v", formatG17(cfg.amp.v));
  add("amp.qu", formatG17(cfg.amp.qu));
  add("amp.psi", formatG17(cfg.amp.psi));
  add("amp.T", formatG17(cfg.amp.T));
  add("amp.sigmaE", formatG17(cfg.amp.sigmaE));
  add("amp.uE", formatG17(cfg.amp.uE));
  add("amp.TE", formatG17(cfg.amp.TE));
  add("temperature.T_L", formatG17(cfg.T_L));
  add("temperature.T_bar", formatG17(cfg.T_bar));
  add("temperature.T0", formatG17(cfg.T0));
  add("stepper.dt", formatG17(cfg.stepper.dt));
  add("stepper.scheme", cfg.stepper.scheme == Scheme::IFRK4 ? "ifrk4" : "ifrk2");
  add("stepper.snapshot_stride", std::to_string(cfg.stepper.snapshot_stride));
  add("floors.rho", formatG17(cfg.stepper.floors.rho_floor));
  add("floors.T", formatG17(cfg.stepper.floors.T_floor));
  add("floors.mean_tol", formatG17(cfg.stepper.floors.mean_tol));
  add("sweep.slope_min", formatG17(cfg.slope_min));
  add("sweep.second_order", cfg.second_order ? "true" : "false");
  add("sweep.min_snapshots_per_period",
      std::to_string(cfg.min_snapshots_per_period));
  return out;
}

InitialData buildInitialData(const ExperimentConfig& cfg, double eps) {
  Grid g(cfg.dim, cfg.n);
  const std::uint64_t seed = cfg.seed;

  VectorField v_I = lerayP(randomVector(g, cfg.amp.v, cfg.kmax, seed, 1));

  // Oscillatory velocity: gradient of a mean-zero potential, rescaled.
  ScalarField chi = randomScalar(g, 1.0, cfg.kmax, seed, 2);
  VectorField qu_I = grad(chi);
  const double qu_norm = l2Norm(qu_I);
  if (qu_norm > 0.0 && cfg.amp.qu > 0.0) {
    chi *= cfg.amp.qu / qu_norm;
    qu_I *= cfg.amp.qu / qu_norm;
  } else if (cfg.amp.qu == 0.0) {
    chi = ScalarField(g);
    qu_I = VectorField(g);
  }

  ScalarField psi_I = randomScalar(g, cfg.amp.psi, cfg.kmax, seed, 3);
  ScalarField T_fluct = randomScalar(g, cfg.amp.T, cfg.kmax, seed, 4);
  ScalarField T_I = addConstant(T_fluct, cfg.T_bar);
  ScalarField sigmaE = randomScalar(g, cfg.amp.sigmaE, cfg.kmax, seed, 5);
  VectorField uE = randomVector(g, cfg.amp.uE, cfg.kmax, seed, 6);
  ScalarField TE = randomScalar(g, cfg.amp.TE, cfg.kmax, seed, 7);

  ScalarField sigma0 = laplacian(psi_I) + eps * sigmaE;
  VectorField u0 = v_I + qu_I + eps * uE;
  ScalarField T0_field = T_I + eps * TE;

  if (T_I.minValue() < cfg.T_L)
    throw TemperatureFloorError("initial slow temperature below T_L");
  if (T0_field.minValue() < cfg.stepper.floors.T_floor)
    throw TemperatureFloorError("initial temperature below the floor");
  if (1.0 + eps * sigma0.minValue() < cfg.stepper.floors.rho_floor)
    throw DensityFloorError("initial density below the floor");

  const double s1 = cfg.sobolev_s + 1.0;
  const double hypothesis =
      sobolevNorm(laplacian(psi_I), s1) + sobolevNorm(qu_I, s1) +
      sobolevNorm(v_I, s1) + sobolevNorm(T_fluct, s1) +
      sobolevNorm(sigmaE, cfg.sobolev_s) + sobolevNorm(uE, cfg.sobolev_s) +
      sobolevNorm(TE, cfg.sobolev_s);

  CompressibleState comp{std::move(sigma0), std::move(u0), std::move(T0_field),
                         eps, cfg.T0};
  SlowState slow{std::move(v_I), std::move(T_I)};
  OscPotentials osc{std::move(chi), std::move(psi_I)};
  return InitialData{std::move(comp), std::move(slow), std::move(osc),
                     hypothesis};
}

namespace {

SlowState blendSlow(const SlowState& a, const SlowState& b, double w) {
  return SlowState{(1.0 - w) * a.v + w * b.v, (1.0 - w) * a.T + w * b.T};
}

OscPotentials blendOsc(const OscPotentials& a, const OscPotentials& b,
                       double w) {
  return OscPotentials{(1.0 - w) * a.q + w * b.q,
                       (1.0 - w) * a.phi + w * b.phi};
}

struct CorrectorState {
  ScalarField sigma;
  VectorField u;
  ScalarField T;
};

}  // namespace

ErrorMetrics runSingleEps(const ExperimentConfig& cfg, double eps) {
  ErrorMetrics m;
  try {
    InitialData init = buildInitialData(cfg, eps);
    CompressibleState comp = init.comp;
    SlowState slow = init.slow;
    OscPotentials osc = init.osc;
    const Grid& g = comp.sigma.grid();

    StepperConfig scfg = cfg.stepper;
    const double dt = scfg.dt;
    const long n_steps = std::lround(cfg.tau / dt);

    // Sampling fine enough to resolve the fast period 2*pi*eps.
    long stride = std::lround(std::floor(
        kTwoPi * eps / (cfg.min_snapshots_per_period * dt)));
    stride = std::max<long>(1, std::min(stride, n_steps));

    const double s = cfg.sobolev_s;
    double l2t_u_acc = 0.0, l2t_T_acc = 0.0;
    double prev_u2 = 0.0, prev_T2 = 0.0;
    double prev_t = 0.0;
    bool have_prev = false;

    CorrectorState corr{ScalarField(g), VectorField(g), ScalarField(g)};

    auto sample = [&](double t) {
      FirstOrderProfile prof = composeFirstOrder(t, eps, osc);
      ScalarField d_sigma = comp.sigma - prof.sigma1f;
      VectorField d_u = comp.u - slow.v - prof.u1f;
      ScalarField d_T = comp.T - slow.T;
      ScalarField psi = poissonSolve(comp.sigma, scfg.floors.mean_tol);
      VectorField d_gp = grad(psi) - prof.grad_psi1f;

      m.sup_eps_sigma_hs =
          std::max(m.sup_eps_sigma_hs, eps * sobolevNorm(d_sigma, s));
      m.sup_u_hs = std::max(m.sup_u_hs, sobolevNorm(d_u, s));
      m.sup_T_hs = std::max(m.sup_T_hs, sobolevNorm(d_T, s));
      m.sup_gradpsi_hs = std::max(m.sup_gradpsi_hs, sobolevNorm(d_gp, s));

      const double u2 = std::pow(sobolevNorm(d_u, s + 1.0), 2);
      const double T2 = std::pow(sobolevNorm(d_T, s + 1.0), 2);
      if (have_prev) {
        l2t_u_acc += 0.5 * (prev_u2 + u2) * (t - prev_t);
        l2t_T_acc += 0.5 * (prev_T2 + T2) * (t - prev_t);
      }
      prev_u2 = u2;
      prev_T2 = T2;
      prev_t = t;
      have_prev = true;

      const double napp_u = sobolevNorm(slow.v + prof.u1f, s);
      const double napp_T = sobolevNorm(slow.T, s);
      const double napp_s = eps * sobolevNorm(prof.sigma1f, s);
      m.sup_approx_hs = std::max(
          m.sup_approx_hs,
          std::sqrt(napp_u * napp_u + napp_T * napp_T + napp_s * napp_s));

      if (cfg.second_order) {
        VectorField u_app = slow.v + prof.u1f + eps * corr.u;
        m.sup_u_app_hs =
            std::max(m.sup_u_app_hs, sobolevNorm(comp.u - u_app, s));
      }
    };

    sample(0.0);
    for (long i = 0; i < n_steps; ++i) {
      const double t0 = i * dt;
      SlowState slow_next = stepIncompressible(slow, scfg);
      SlowState slow_mid = blendSlow(slow, slow_next, 0.5);
      OscPotentials osc_next = stepOscPotentials(osc, slow_mid, scfg);
      comp = stepScaled(comp, scfg);

      if (cfg.second_order) {
        // one fast-time RK4 substep of the corrector per slow step
        const double h = dt / eps;
        auto rhs = [&](double theta, const CorrectorState& y) {
          SlowState sl = blendSlow(slow, slow_next, theta);
          OscPotentials po = blendOsc(osc, osc_next, theta);
          FirstOrderProfile pr = composeFirstOrder(t0 + theta * dt, eps, po);
          SecondOrderForcing f = forcingSecondOrder(sl, pr);
          SecondOrderState st{y.sigma, y.u, y.T, (t0 + theta * dt) / eps};
          SecondOrderRhs r = rhsSecondOrder(st, f, scfg.floors.mean_tol);
          return CorrectorState{std::move(r.dsigma), std::move(r.du),
                                std::move(r.dT)};
        };
        CorrectorState k1 = rhs(0.0, corr);
        CorrectorState y2{corr.sigma + (h / 2) * k1.sigma,
                          corr.u + (h / 2) * k1.u, corr.T + (h / 2) * k1.T};
        CorrectorState k2 = rhs(0.5, y2);
        CorrectorState y3{corr.sigma + (h / 2) * k2.sigma,
                          corr.u + (h / 2) * k2.u, corr.T + (h / 2) * k2.T};
        CorrectorState k3 = rhs(0.5, y3);
        CorrectorState y4{corr.sigma + h * k3.sigma, corr.u + h * k3.u,
                          corr.T + h * k3.T};
        CorrectorState k4 = rhs(1.0, y4);
        corr.sigma += (h / 6) * (k1.sigma + 2.0 * (k2.sigma + k3.sigma) + k4.sigma);
        corr.u += (h / 6) * (k1.u + 2.0 * (k2.u + k3.u) + k4.u);
        corr.T += (h / 6) * (k1.T + 2.0 * (k2.T + k3.T) + k4.T);
      }

      slow = std::move(slow_next);
      osc = std::move(osc_next);

      if (std::abs(comp.sigma.mean()) > scfg.floors.mean_tol)
        throw NonZeroMeanError("mass drift exceeds tolerance at t = " +
                               formatG17((i + 1) * dt));
      if ((i + 1) % stride == 0 || i + 1 == n_steps) sample((i + 1) * dt);
    }
    m.completed = true;
    m.l2t_u_hs1 = std::sqrt(l2t_u_acc);
    m.l2t_T_hs1 = std::sqrt(l2t_T_acc);
  } catch (const std::exception& e) {
    m.completed = false;
    m.failure = e.what();
  }
  return m;
}

namespace {

RateFit fitRate(const std::string& name, const std::vector<double>& eps,
                const std::vector<double>& values, double slope_min) {
  RateFit fit;
  fit.metric = name;
  const std::size_t n = eps.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(eps[i]);
    const double y = std::log(std::max(values[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.pass = fit.slope >= slope_min;
  return fit;
}

}  // namespace

SweepResult runConvergenceSweep(const ExperimentConfig& cfg, int max_threads) {
  SweepResult result;
  result.eps = cfg.eps_list;
  result.metrics.resize(cfg.eps_list.size());

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  std::size_t n_threads = (max_threads > 0) ? std::size_t(max_threads) : hw;
  n_threads = std::min(n_threads, cfg.eps_list.size());

  if (n_threads <= 1) {
    for (std::size_t i = 0; i < cfg.eps_list.size(); ++i)
      result.metrics[i] = runSingleEps(cfg, cfg.eps_list[i]);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= cfg.eps_list.size()) return;
          result.metrics[i] = runSingleEps(cfg, cfg.eps_list[i]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<double> eps_ok;
  std::vector<std::size_t> ok_idx;
  for (std::size_t i = 0; i < result.metrics.size(); ++i) {
    if (result.metrics[i].completed) {
      eps_ok.push_back(result.eps[i]);
      ok_idx.push_back(i);
    }
  }
  result.all_pass = false;
  if (eps_ok.size() >= 3) {
    auto collect = [&](auto getter) {
      std::vector<double> v;
      for (std::size_t i : ok_idx) v.push_back(getter(result.metrics[i]));
      return v;
    };
    result.rates.push_back(fitRate(
        "sup_eps_sigma_Hs", eps_ok,
        collect([](const ErrorMetrics& e) { return e.sup_eps_sigma_hs; }),
        cfg.slope_min));
    result.rates.push_back(
        fitRate("sup_u_Hs", eps_ok,
                collect([](const ErrorMetrics& e) { return e.sup_u_hs; }),
                cfg.slope_min));
    result.rates.push_back(
        fitRate("sup_T_Hs", eps_ok,
                collect([](const ErrorMetrics& e) { return e.sup_T_hs; }),
                cfg.slope_min));
    result.rates.push_back(fitRate(
        "sup_gradpsi_Hs", eps_ok,
        collect([](const ErrorMetrics& e) { return e.sup_gradpsi_hs; }),
        cfg.slope_min));
    result.rates.push_back(
        fitRate("l2t_u_Hs1", eps_ok,
                collect([](const ErrorMetrics& e) { return e.l2t_u_hs1; }),
                cfg.slope_min));
    result.rates.push_back(
        fitRate("l2t_T_Hs1", eps_ok,
                collect([](const ErrorMetrics& e) { return e.l2t_T_hs1; }),
                cfg.slope_min));
    result.all_pass =
        eps_ok.size() == result.eps.size() &&
        std::all_of(result.rates.begin(), result.rates.end(),
                    [](const RateFit& r) { return r.pass; });
  }
  return result;
}

std::string sweepCsv(const SweepResult& r) {
  std::ostringstream out;
  out << "eps,sup_eps_sigma_Hs,sup_u_Hs,sup_T_Hs,sup_gradpsi_Hs,l2t_u_Hs1,"
         "l2t_T_Hs1,status\n";
  for (std::size_t i = 0; i < r.eps.size(); ++i) {
    const ErrorMetrics& m = r.metrics[i];
    out << formatG17(r.eps[i]) << "," << formatG17(m.sup_eps_sigma_hs) << ","
        << formatG17(m.sup_u_hs) << "," << formatG17(m.sup_T_hs) << ","
        << formatG17(m.sup_gradpsi_hs) << "," << formatG17(m.l2t_u_hs1) << ","
        << formatG17(m.l2t_T_hs1) << ","
        << (m.completed ? "ok" : ("failed: " + m.failure)) << "\n";
  }
  return out.str();
}

std::string ratesCsv(const SweepResult& r) {
  std::ostringstream out;
  out << "metric,slope,intercept,pass\n";
  for (const RateFit& f : r.rates)
    out << f.metric << "," << formatG17(f.slope) << ","
        << formatG17(f.intercept) << "," << (f.pass ? "true" : "false")
        << "\n";
  return out.str();
}

double resonanceAverageCheck(const SlowState& slow, const OscPotentials& p,
                             int n_quad) {
  const Grid& g = p.q.grid();
  VectorField gq = grad(p.q);
  VectorField gphi = grad(p.phi);
  ScalarField lq = laplacian(p.q);
  ScalarField lphi = laplacian(p.phi);

  VectorField avg1(g);
  VectorField avg2(g);
  for (int j = 0; j < n_quad; ++j) {
    const double tau = kTwoPi * j / n_quad;
    const double c = std::cos(tau);
    const double sn = std::sin(tau);
    VectorField u0 = slow.v + c * gq + sn * gphi;
    ScalarField sigma0 = c * lphi - sn * lq;

    // I1: convective + dissipative/friction + pressure-like slow forcing
    VectorField i1 = -advect(u0, u0);
    TensorField su = strain(u0);
    TensorField ts(g);
    for (int a = 0; a < g.dim(); ++a)
      for (int b = a; b < g.dim(); ++b)
        ts.set(a, b, dealias(pointwiseMul(slow.T, su(a, b))));
    i1 += div(ts);
    i1 -= u0;
    i1 -= grad(slow.T);
    // I2: density transport source
    VectorField i2 = -dealias(pointwiseMul(sigma0, u0));

    VectorField qi1 = lerayQ(i1);
    VectorField qi2 = lerayQ(i2);
    avg1 += (1.0 / n_quad) * (c * qi1 - sn * qi2);
    avg2 += (1.0 / n_quad) * (c * qi2 + sn * qi1);
  }

  OscRhs rhs = rhsOscPotentials(p, slow);
  VectorField r1 = avg1 - grad(rhs.dq);
  VectorField r2 = avg2 - grad(rhs.dphi);
  const double n1 = l2Norm(r1);
  const double n2 = l2Norm(r2);
  return std::sqrt(n1 * n1 + n2 * n2);
}

double energyNormDiag(const CompressibleState& state, int s_index) {
  const Grid& g = state.sigma.grid();
  const int d = g.dim();
  const auto& sig = state.sigma.spectrum();
  const auto& Ts = state.T.spectrum();
  std::vector<const std::vector<std::complex<double>>*> us(d);
  for (int j = 0; j < d; ++j) us[j] = &state.u[j].spectrum();

  // enumerate multi-indices |alpha| <= s_index
  std::vector<std::array<int, 3>> alphas;
  for (int a0 = 0; a0 <= s_index; ++a0)
    for (int a1 = 0; a1 + a0 <= s_index; ++a1) {
      if (d == 2) {
        alphas.push_back({a0, a1, 0});
      } else {
        for (int a2 = 0; a2 + a1 + a0 <= s_index; ++a2)
          alphas.push_back({a0, a1, a2});
      }
    }

  const int n = g.n();
  auto wavenumber = [&](int i) { return g.wavenumber(i); };
  double total = 0.0;
  for (const auto& alpha : alphas) {
    double acc = 0.0;
    std::size_t idx = 0;
    auto accumulate = [&](const std::array<int, 3>& k, std::size_t id) {
      double w = 1.0;
      for (int j = 0; j < d; ++j)
        w *= std::pow(double(k[j]) * k[j], alpha[j]);
      const double e2 = state.eps * state.eps * std::norm(sig[id]);
      double uu = 0.0;
      for (int j = 0; j < d; ++j) uu += std::norm((*us[j])[id]);
      acc += w * (e2 + uu + std::norm(Ts[id]));
    };
    std::array<int, 3> k{0, 0, 0};
    if (d == 2) {
      for (int i0 = 0; i0 < n; ++i0) {
        k[0] = wavenumber(i0);
        for (int i1 = 0; i1 < n; ++i1, ++idx) {
          k[1] = wavenumber(i1);
          accumulate(k, idx);
        }
      }
    } else {
      for (int i0 = 0; i0 < n; ++i0) {
        k[0] = wavenumber(i0);
        for (int i1 = 0; i1 < n; ++i1) {
          k[1] = wavenumber(i1);
          for (int i2 = 0; i2 < n; ++i2, ++idx) {
            k[2] = wavenumber(i2);
            accumulate(k, idx);
          }
        }
      }
    }
    total += std::sqrt(acc * g.volume());
  }
  return total;
}

}  // namespace zmlim
