#include "zmlim/time_integration.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace zmlim {
namespace {

using Cmplx = std::complex<double>;

template <typename Fn>
void forEachMode(const Grid& g, Fn&& fn) {
  const int n = g.n();
  std::array<int, 3> k{0, 0, 0};
  if (g.dim() == 2) {
    std::size_t idx = 0;
    for (int i0 = 0; i0 < n; ++i0) {
      k[0] = g.wavenumber(i0);
      for (int i1 = 0; i1 < n; ++i1, ++idx) {
        k[1] = g.wavenumber(i1);
        fn(idx, k);
      }
    }
  } else {
    std::size_t idx = 0;
    for (int i0 = 0; i0 < n; ++i0) {
      k[0] = g.wavenumber(i0);
      for (int i1 = 0; i1 < n; ++i1) {
        k[1] = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2, ++idx) {
          k[2] = g.wavenumber(i2);
          fn(idx, k);
        }
      }
    }
  }
}

bool hasNyquist(const Grid& g, const std::array<int, 3>& k) {
  for (int j = 0; j < g.dim(); ++j)
    if (k[j] == -g.n() / 2) return true;
  return false;
}

// Entries of exp(h*[[-mu, 1/eps], [-1/eps, 0]]); exact for all parameter
// regimes (trig / hyperbolic / degenerate).
struct Rot2 {
  double e00, e01, e10, e11;
};

Rot2 gradientSectorExp(double h, double mu, double inv_eps) {
  const double w2 = inv_eps * inv_eps - 0.25 * mu * mu;
  double c, s;  // cos(w h), sin(w h)/w continued through w^2 <= 0
  if (w2 * h * h > 1e-8) {
    const double w = std::sqrt(w2);
    c = std::cos(w * h);
    s = std::sin(w * h) / w;
  } else if (w2 * h * h < -1e-8) {
    const double l = std::sqrt(-w2);
    c = std::cosh(l * h);
    s = std::sinh(l * h) / l;
  } else {
    c = 1.0 - 0.5 * w2 * h * h;
    s = h * (1.0 - w2 * h * h / 6.0);
  }
  const double damp = std::exp(-0.5 * mu * h);
  return Rot2{damp * (c - 0.5 * mu * s), damp * (s * inv_eps),
              damp * (-s * inv_eps), damp * (c + 0.5 * mu * s)};
}

// ---------------------------------------------------------------------------
// Scaled system: (sigma, u, T) triple with the exact per-mode propagator.

struct ScaledVec {
  ScalarField sigma;
  VectorField u;
  ScalarField T;
};

ScaledVec operator+(ScaledVec a, const ScaledVec& b) {
  a.sigma += b.sigma;
  a.u += b.u;
  a.T += b.T;
  return a;
}

ScaledVec operator*(double c, const ScaledVec& a) {
  return ScaledVec{c * a.sigma, c * a.u, c * a.T};
}

// exp(h * linear part): plasma rotation at 1/eps coupled with friction and
// mean diffusion on the gradient sector; friction/diffusion decay on the
// divergence-free sector; mean heat diffusion on T.
ScaledVec propagateScaled(const ScaledVec& p, double h, double eps, double nu,
                          bool friction) {
  const Grid& g = p.sigma.grid();
  const int d = g.dim();
  const double inv_eps = 1.0 / eps;
  const double fr = friction ? 1.0 : 0.0;

  const auto& sig = p.sigma.spectrum();
  std::vector<const std::vector<Cmplx>*> us(d);
  for (int j = 0; j < d; ++j) us[j] = &p.u[j].spectrum();
  const auto& Ts = p.T.spectrum();

  std::vector<Cmplx> sig_out(g.size());
  std::vector<std::vector<Cmplx>> u_out(d, std::vector<Cmplx>(g.size()));
  std::vector<Cmplx> T_out(g.size());

  forEachMode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
    const double k2 =
        double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
    const double mu = fr + nu * k2;
    const double heat = std::exp(-(5.0 / 6.0) * nu * k2 * h);
    T_out[idx] = Ts[idx] * heat;
    if (k2 == 0.0 || hasNyquist(g, k)) {
      // no gradient sector at these modes (spectral derivatives vanish)
      const double decay = std::exp(-mu * h);
      for (int j = 0; j < d; ++j) u_out[j][idx] = (*us[j])[idx] * decay;
      sig_out[idx] = sig[idx];
      return;
    }
    Cmplx kdotu(0.0);
    for (int j = 0; j < d; ++j) kdotu += double(k[j]) * (*us[j])[idx];
    const Cmplx alpha = kdotu / k2;             // Qu-hat = alpha * k
    const Cmplx beta = Cmplx(0.0, -1.0) * sig[idx] / k2;  // gradpsi-hat = beta * k
    const Rot2 e = gradientSectorExp(h, mu, inv_eps);
    const Cmplx alpha1 = e.e00 * alpha + e.e01 * beta;
    const Cmplx beta1 = e.e10 * alpha + e.e11 * beta;
    const double decay = std::exp(-mu * h);
    for (int j = 0; j < d; ++j) {
      const Cmplx up = (*us[j])[idx] - alpha * double(k[j]);
      u_out[j][idx] = up * decay + alpha1 * double(k[j]);
    }
    sig_out[idx] = Cmplx(0.0, k2) * beta1;
  });

  std::vector<ScalarField> uc;
  for (int j = 0; j < d; ++j)
    uc.push_back(ScalarField::fromSpectrum(g, std::move(u_out[j])));
  return ScaledVec{ScalarField::fromSpectrum(g, std::move(sig_out)),
                   VectorField(std::move(uc)),
                   ScalarField::fromSpectrum(g, std::move(T_out))};
}

// ---------------------------------------------------------------------------
// Generic Lawson (integrating-factor) RK2/RK4 driver. Vec needs +, scalar *;
// E(p, h) must be linear; N(p) is the explicit remainder.

template <typename Vec, typename Prop, typename Rhs>
Vec lawsonStep(const Vec& p, double h, Scheme scheme, const Prop& E,
               const Rhs& N) {
  if (scheme == Scheme::IFRK2) {
    Vec mid = E(p + (h / 2.0) * N(p), h / 2.0);
    return E(p, h) + h * E(N(mid), h / 2.0);
  }
  Vec k1 = N(p);
  Vec s2 = E(p + (h / 2.0) * k1, h / 2.0);
  Vec k2 = N(s2);
  Vec s3 = E(p, h / 2.0) + (h / 2.0) * k2;
  Vec k3 = N(s3);
  Vec s4 = E(p, h) + h * E(k3, h / 2.0);
  Vec k4 = N(s4);
  return E(p, h) +
         (h / 6.0) * (E(k1, h) + E(2.0 * (k2 + k3), h / 2.0) + k4);
}

// ---------------------------------------------------------------------------
// Incompressible and oscillation-potential state wrappers.

struct SlowVec {
  VectorField v;
  ScalarField T;
};

SlowVec operator+(SlowVec a, const SlowVec& b) {
  a.v += b.v;
  a.T += b.T;
  return a;
}

SlowVec operator*(double c, const SlowVec& a) { return SlowVec{c * a.v, c * a.T}; }

SlowVec propagateSlow(const SlowVec& p, double h, double nu) {
  const Grid& g = p.T.grid();
  const int d = g.dim();
  std::vector<const Cmplx*> dummy;
  std::vector<std::vector<Cmplx>> v_out(d);
  for (int j = 0; j < d; ++j) v_out[j].resize(g.size());
  std::vector<Cmplx> T_out(g.size());
  const auto& Ts = p.T.spectrum();
  std::vector<const std::vector<Cmplx>*> vs(d);
  for (int j = 0; j < d; ++j) vs[j] = &p.v[j].spectrum();
  forEachMode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
    const double k2 =
        double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
    const double vd = std::exp(-(1.0 + nu * k2) * h);
    const double td = std::exp(-(5.0 / 6.0) * nu * k2 * h);
    for (int j = 0; j < d; ++j) v_out[j][idx] = (*vs[j])[idx] * vd;
    T_out[idx] = Ts[idx] * td;
  });
  std::vector<ScalarField> vc;
  for (int j = 0; j < d; ++j)
    vc.push_back(ScalarField::fromSpectrum(g, std::move(v_out[j])));
  return SlowVec{VectorField(std::move(vc)),
                 ScalarField::fromSpectrum(g, std::move(T_out))};
}

struct OscVec {
  ScalarField q;
  ScalarField phi;
};

OscVec operator+(OscVec a, const OscVec& b) {
  a.q += b.q;
  a.phi += b.phi;
  return a;
}

OscVec operator*(double c, const OscVec& a) { return OscVec{c * a.q, c * a.phi}; }

OscVec propagateOsc(const OscVec& p, double h, double nu) {
  const Grid& g = p.q.grid();
  auto decayed = [&](const ScalarField& f) {
    const auto& spec = f.spectrum();
    std::vector<Cmplx> out(g.size());
    forEachMode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
      const double k2 =
          double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
      out[idx] = spec[idx] * std::exp(-(0.5 + (2.0 / 3.0) * nu * k2) * h);
    });
    return ScalarField::fromSpectrum(g, std::move(out));
  };
  return OscVec{decayed(p.q), decayed(p.phi)};
}

struct Vec2Order {
  ScalarField sigma;
  VectorField u;
  ScalarField T;
};

Vec2Order operator+(Vec2Order a, const Vec2Order& b) {
  a.sigma += b.sigma;
  a.u += b.u;
  a.T += b.T;
  return a;
}

Vec2Order operator*(double c, const Vec2Order& a) {
  return Vec2Order{c * a.sigma, c * a.u, c * a.T};
}

}  // namespace

double cflMaxDt(const Grid& grid, double u_max, double diffusion_residual_max) {
  const double dx = grid.dx();
  double bound = std::numeric_limits<double>::infinity();
  if (u_max > 0.0) bound = std::min(bound, 0.5 * dx / u_max);
  if (diffusion_residual_max > 0.0)
    bound = std::min(bound, 0.25 * dx * dx / diffusion_residual_max);
  return bound;
}

CompressibleState stepScaled(const CompressibleState& state,
                             const StepperConfig& cfg) {
  const double nu = cfg.linear_only ? 0.0 : state.T.mean();
  const bool friction = !cfg.linear_only;
  const double eps = state.eps;
  const double T0 = state.T0_ref;
  auto E = [&](const ScaledVec& p, double h) {
    return propagateScaled(p, h, eps, nu, friction);
  };
  auto N = [&](const ScaledVec& p) -> ScaledVec {
    if (cfg.linear_only)
      return ScaledVec{ScalarField(p.sigma.grid()), VectorField(p.u.grid()),
                       ScalarField(p.T.grid())};
    CompressibleState s{p.sigma, p.u, p.T, eps, T0};
    CompressibleRhs r = detail::rhsScaledExplicit(s, nu, nu, cfg.floors);
    return ScaledVec{std::move(r.dsigma), std::move(r.du), std::move(r.dT)};
  };
  ScaledVec p{state.sigma, state.u, state.T};
  ScaledVec next = lawsonStep(p, cfg.dt, cfg.scheme, E, N);
  return CompressibleState{std::move(next.sigma), std::move(next.u),
                           std::move(next.T), eps, T0};
}

SlowState stepIncompressible(const SlowState& state, const StepperConfig& cfg) {
  const double nu = state.T.mean();
  auto E = [&](const SlowVec& p, double h) { return propagateSlow(p, h, nu); };
  auto N = [&](const SlowVec& p) -> SlowVec {
    SlowState s{p.v, p.T};
    SlowRhs r = detail::rhsIncompressibleExplicit(s, nu, cfg.floors.T_floor);
    return SlowVec{std::move(r.dv), std::move(r.dT)};
  };
  SlowVec p{lerayP(state.v), state.T};
  SlowVec next = lawsonStep(p, cfg.dt, cfg.scheme, E, N);
  return SlowState{lerayP(next.v), std::move(next.T)};
}

OscPotentials stepOscPotentials(const OscPotentials& p, const SlowState& slow,
                                const StepperConfig& cfg) {
  const double nu = slow.T.mean();
  auto E = [&](const OscVec& o, double h) { return propagateOsc(o, h, nu); };
  auto N = [&](const OscVec& o) -> OscVec {
    OscPotentials pot{o.q, o.phi};
    OscRhs r = detail::rhsOscPotentialsExplicit(pot, slow, nu);
    return OscVec{std::move(r.dq), std::move(r.dphi)};
  };
  OscVec v{p.q, p.phi};
  OscVec next = lawsonStep(v, cfg.dt, cfg.scheme, E, N);
  return OscPotentials{std::move(next.q), std::move(next.phi)};
}

SecondOrderTrajectory integrateSecondOrder(
    double horizon_s, const StepperConfig& cfg,
    const std::function<SlowState(double)>& slow_supplier,
    const std::function<FirstOrderProfile(double)>& profile_supplier) {
  const double h = cfg.dt;
  auto rhs = [&](double s, const Vec2Order& y) -> Vec2Order {
    SecondOrderState st{y.sigma, y.u, y.T, s};
    SecondOrderForcing f =
        forcingSecondOrder(slow_supplier(s), profile_supplier(s));
    SecondOrderRhs r = rhsSecondOrder(st, f, cfg.floors.mean_tol);
    return Vec2Order{std::move(r.dsigma), std::move(r.du), std::move(r.dT)};
  };

  SlowState slow0 = slow_supplier(0.0);
  const Grid& g = slow0.T.grid();
  Vec2Order y{ScalarField(g), VectorField(g), ScalarField(g)};

  std::vector<SecondOrderSample> samples;
  const long n_steps = std::lround(horizon_s / h);
  double s = 0.0;
  auto record = [&](double at) {
    samples.push_back(
        SecondOrderSample{at, l2Norm(y.sigma), l2Norm(y.u), l2Norm(y.T)});
  };
  record(0.0);
  for (long i = 0; i < n_steps; ++i) {
    Vec2Order k1 = rhs(s, y);
    Vec2Order k2 = rhs(s + h / 2.0, y + (h / 2.0) * k1);
    Vec2Order k3 = rhs(s + h / 2.0, y + (h / 2.0) * k2);
    Vec2Order k4 = rhs(s + h, y + h * k3);
    y = y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
    s = (i + 1) * h;
    if ((i + 1) % cfg.snapshot_stride == 0 || i + 1 == n_steps) record(s);
  }
  return SecondOrderTrajectory{std::move(samples),
                               SecondOrderState{y.sigma, y.u, y.T, s}};
}

}  // namespace zmlim
