// zmlim: pseudo-spectral solver suite for the scaled charge-transport
// system, its incompressible limit, and the fast-oscillation envelope.
#include <CLI11.hpp>

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "zmlim/config.hpp"
#include "zmlim/dynamics.hpp"
#include "zmlim/errors.hpp"
#include "zmlim/harness.hpp"
#include "zmlim/snapshot_io.hpp"
#include "zmlim/spectral_ops.hpp"
#include "zmlim/time_integration.hpp"

namespace fs = std::filesystem;
using namespace zmlim;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<long long> seed;
  std::optional<std::string> eps_list;
};

void addCommon(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "Path to the key = value config file")
      ->required();
  cmd->add_option("--out", opts.out_dir, "Output directory (created if missing)");
  cmd->add_option("--seed", opts.seed, "Override the config seed");
  cmd->add_option("--eps-list", opts.eps_list,
                  "Override eps.list, comma-separated, e.g. \"0.1,0.05,0.025\"");
}

int threadCap() {
  const char* env = std::getenv("ZMLIM_THREADS");
  if (env == nullptr) return 0;  // harness default: hardware concurrency
  int v = std::atoi(env);
  return v > 0 ? v : 1;
}

ExperimentConfig loadConfig(const CommonOpts& opts) {
  KeyValueConfig kv = KeyValueConfig::parseFile(opts.config_path);
  if (opts.seed) kv.set("seed", std::to_string(*opts.seed));
  if (opts.eps_list) kv.set("eps.list", *opts.eps_list);
  return parseExperimentConfig(kv);
}

// The manifest is written before any compute so a run directory is always
// reproducible: it holds the fully resolved configuration and provenance.
void writeManifest(const fs::path& dir, const ExperimentConfig& cfg,
                   const std::string& command) {
  fs::create_directories(dir);
  std::ofstream out(dir / "manifest.txt");
  out << "# zmlim run manifest\n";
  out << "artifact.version = 0.1.0\n";
  out << "command = " << command << "\n";
  std::time_t now = std::time(nullptr);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  out << "wall_clock_utc = " << buf << "\n";
  for (const auto& [k, v] : resolvedEntries(cfg)) out << k << " = " << v << "\n";
  if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
}

std::ofstream openDiagnostics(const fs::path& dir) {
  std::ofstream csv(dir / "diagnostics.csv");
  csv << "t,eps,mean_sigma,min_T,Hs_sigma,Hs_u,Hs_T,energy_se\n";
  return csv;
}

void diagRow(std::ofstream& csv, double t, double eps, double mean_sigma,
             double min_T, double hs_sigma, double hs_u, double hs_T,
             double energy_se) {
  csv << formatG17(t) << "," << formatG17(eps) << "," << formatG17(mean_sigma)
      << "," << formatG17(min_T) << "," << formatG17(hs_sigma) << ","
      << formatG17(hs_u) << "," << formatG17(hs_T) << ","
      << formatG17(energy_se) << "\n";
}

void writeVectorSnapshots(const fs::path& dir, const std::string& tag,
                          const VectorField& u, double t) {
  for (int j = 0; j < u.dim(); ++j)
    writeFieldSnapshot((dir / (tag + std::to_string(j) + ".zf")).string(), u[j],
                       tag + std::to_string(j), t);
}

int cmdRunScaled(const CommonOpts& opts) {
  ExperimentConfig cfg = loadConfig(opts);
  fs::path dir(opts.out_dir);
  writeManifest(dir, cfg, "run-scaled");

  const double eps = cfg.eps_list.front();
  InitialData data = buildInitialData(cfg, eps);
  std::ofstream csv = openDiagnostics(dir);

  CompressibleState st = data.comp;
  const int s_idx = static_cast<int>(cfg.sobolev_s);
  auto emit = [&](double t) {
    diagRow(csv, t, eps, st.sigma.mean(), st.T.minValue(),
            sobolevNorm(st.sigma, cfg.sobolev_s), sobolevNorm(st.u, cfg.sobolev_s),
            sobolevNorm(st.T, cfg.sobolev_s), energyNormDiag(st, s_idx));
  };
  emit(0.0);
  writeFieldSnapshot((dir / "sigma_initial.zf").string(), st.sigma, "sigma", 0.0);
  writeVectorSnapshots(dir, "u_initial_", st.u, 0.0);
  writeFieldSnapshot((dir / "T_initial.zf").string(), st.T, "T", 0.0);

  const int n_steps = static_cast<int>(std::llround(cfg.tau / cfg.stepper.dt));
  for (int i = 0; i < n_steps; ++i) {
    st = stepScaled(st, cfg.stepper);
    if ((i + 1) % cfg.stepper.snapshot_stride == 0 || i + 1 == n_steps)
      emit((i + 1) * cfg.stepper.dt);
  }
  writeFieldSnapshot((dir / "sigma_final.zf").string(), st.sigma, "sigma", cfg.tau);
  writeVectorSnapshots(dir, "u_final_", st.u, cfg.tau);
  writeFieldSnapshot((dir / "T_final.zf").string(), st.T, "T", cfg.tau);
  return 0;
}

int cmdRunLimit(const CommonOpts& opts) {
  ExperimentConfig cfg = loadConfig(opts);
  fs::path dir(opts.out_dir);
  writeManifest(dir, cfg, "run-limit");

  InitialData data = buildInitialData(cfg, cfg.eps_list.front());
  std::ofstream csv = openDiagnostics(dir);
  SlowState st = data.slow;
  auto emit = [&](double t) {
    diagRow(csv, t, 0.0, 0.0, st.T.minValue(), 0.0,
            sobolevNorm(st.v, cfg.sobolev_s), sobolevNorm(st.T, cfg.sobolev_s),
            0.0);
  };
  emit(0.0);
  const int n_steps = static_cast<int>(std::llround(cfg.tau / cfg.stepper.dt));
  for (int i = 0; i < n_steps; ++i) {
    st = stepIncompressible(st, cfg.stepper);
    if ((i + 1) % cfg.stepper.snapshot_stride == 0 || i + 1 == n_steps)
      emit((i + 1) * cfg.stepper.dt);
  }
  writeVectorSnapshots(dir, "v_final_", st.v, cfg.tau);
  writeFieldSnapshot((dir / "T_final.zf").string(), st.T, "T", cfg.tau);
  writeFieldSnapshot((dir / "pressure_final.zf").string(), recoverPressure(st),
                     "pressure", cfg.tau);
  return 0;
}

int cmdRunOsc(const CommonOpts& opts) {
  ExperimentConfig cfg = loadConfig(opts);
  fs::path dir(opts.out_dir);
  writeManifest(dir, cfg, "run-osc");

  const double eps = cfg.eps_list.front();
  InitialData data = buildInitialData(cfg, eps);
  std::ofstream csv = openDiagnostics(dir);
  SlowState slow = data.slow;
  OscPotentials p = data.osc;
  auto emit = [&](double t) {
    FirstOrderProfile prof = composeFirstOrder(t, eps, p);
    diagRow(csv, t, eps, prof.sigma1f.mean(), slow.T.minValue(),
            sobolevNorm(prof.sigma1f, cfg.sobolev_s),
            sobolevNorm(prof.u1f, cfg.sobolev_s), 0.0, 0.0);
  };
  emit(0.0);
  const int n_steps = static_cast<int>(std::llround(cfg.tau / cfg.stepper.dt));
  for (int i = 0; i < n_steps; ++i) {
    SlowState next_slow = stepIncompressible(slow, cfg.stepper);
    p = stepOscPotentials(p, slow, cfg.stepper);
    slow = next_slow;
    if ((i + 1) % cfg.stepper.snapshot_stride == 0 || i + 1 == n_steps)
      emit((i + 1) * cfg.stepper.dt);
  }
  writeFieldSnapshot((dir / "q_final.zf").string(), p.q, "q", cfg.tau);
  writeFieldSnapshot((dir / "phi_final.zf").string(), p.phi, "phi", cfg.tau);
  return 0;
}

int cmdSweep(const CommonOpts& opts) {
  ExperimentConfig cfg = loadConfig(opts);
  if (cfg.eps_list.size() < 3)
    throw ConfigError("sweep rate fit requires >= 3 eps values, got " +
                      std::to_string(cfg.eps_list.size()));
  fs::path dir(opts.out_dir);
  writeManifest(dir, cfg, "sweep");

  SweepResult r = runConvergenceSweep(cfg, threadCap());
  {
    std::ofstream out(dir / "sweep.csv");
    out << sweepCsv(r);
  }
  {
    std::ofstream out(dir / "rates.csv");
    out << ratesCsv(r);
  }
  std::cout << ratesCsv(r);
  for (const ErrorMetrics& m : r.metrics) {
    if (!m.completed) {
      std::cerr << "a sub-run aborted: " << m.failure << "\n";
      return 2;
    }
  }
  return r.all_pass ? 0 : 2;
}

int cmdAvgCheck(const CommonOpts& opts) {
  ExperimentConfig cfg = loadConfig(opts);
  fs::path dir(opts.out_dir);
  writeManifest(dir, cfg, "avg-check");

  InitialData data = buildInitialData(cfg, cfg.eps_list.front());
  const double residual = resonanceAverageCheck(data.slow, data.osc, 64);
  std::cout << "resonance-average residual = " << formatG17(residual) << "\n";
  return residual <= 1e-8 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zmlim: multiscale solver for the scaled charge-transport system"};
  app.require_subcommand(1);

  CommonOpts opts;
  CLI::App* run_scaled = app.add_subcommand(
      "run-scaled", "Integrate the scaled compressible system");
  CLI::App* run_limit = app.add_subcommand(
      "run-limit", "Integrate the incompressible limit system");
  CLI::App* run_osc = app.add_subcommand(
      "run-osc", "Integrate the oscillation-envelope potentials");
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run the eps-convergence sweep and fit rates");
  CLI::App* avg_check = app.add_subcommand(
      "avg-check", "Check the fast-time resonance average against the envelope");
  for (CLI::App* cmd : {run_scaled, run_limit, run_osc, sweep, avg_check})
    addCommon(cmd, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_scaled->parsed()) return cmdRunScaled(opts);
    if (run_limit->parsed()) return cmdRunLimit(opts);
    if (run_osc->parsed()) return cmdRunOsc(opts);
    if (sweep->parsed()) return cmdSweep(opts);
    if (avg_check->parsed()) return cmdAvgCheck(opts);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const DensityFloorError& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return 2;
  } catch (const TemperatureFloorError& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return 2;
  } catch (const NonZeroMeanError& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
