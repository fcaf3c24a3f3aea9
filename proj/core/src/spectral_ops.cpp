#include "zmlim/spectral_ops.hpp"

#include <cmath>
#include <complex>

#include "zmlim/errors.hpp"

namespace zmlim {
namespace {

using Cmplx = std::complex<double>;

// Calls fn(flat_index, k) for every mode; k is the signed wavevector.
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

double sqNorm(const std::array<int, 3>& k) {
  return double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
}

// Odd spectral derivatives zero the (unsigned) Nyquist mode.
bool hasNyquist(const Grid& g, const std::array<int, 3>& k) {
  for (int j = 0; j < g.dim(); ++j)
    if (k[j] == -g.n() / 2) return true;
  return false;
}

}  // namespace

VectorField grad(const ScalarField& f) {
  const Grid& g = f.grid();
  const auto& spec = f.spectrum();
  std::vector<std::vector<Cmplx>> out(g.dim(), std::vector<Cmplx>(g.size()));
  forEachMode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
    const Cmplx c = hasNyquist(g, k) ? Cmplx(0.0) : spec[idx];
    for (int j = 0; j < g.dim(); ++j)
      out[j][idx] = Cmplx(0.0, double(k[j])) * c;
  });
  std::vector<ScalarField> comps;
  comps.reserve(g.dim());
  for (int j = 0; j < g.dim(); ++j)
    comps.push_back(ScalarField::fromSpectrum(g, std::move(out[j])));
  return VectorField(std::move(comps));
}

ScalarField div(const VectorField& f) {
  const Grid& g = f.grid();
  std::vector<Cmplx> out(g.size(), Cmplx(0.0));
  for (int j = 0; j < g.dim(); ++j) {
    const auto& spec = f[j].spectrum();
    forEachMode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
      if (!hasNyquist(g, k))
        out[idx] += Cmplx(0.0, double(k[j])) * spec[idx];
    });
  }
  return ScalarField::fromSpectrum(g, std::move(out));
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  const auto& spec = f.spectrum();
  std::vector<Cmplx> out(g.size());
  forEachMode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
    out[idx] = -sqNorm(k) * spec[idx];
  });
  return ScalarField::fromSpectrum(g, std::move(out));
}

VectorField laplacian(const VectorField& f) {
  std::vector<ScalarField> comps;
  comps.reserve(f.dim());
  for (int j = 0; j < f.dim(); ++j) comps.push_back(laplacian(f[j]));
  return VectorField(std::move(comps));
}

VectorField div(const TensorField& s) {
  const Grid& g = s.grid();
  std::vector<ScalarField> rows;
  rows.reserve(g.dim());
  for (int i = 0; i < g.dim(); ++i) {
    std::vector<ScalarField> row;
    row.reserve(g.dim());
    for (int j = 0; j < g.dim(); ++j) row.push_back(s(i, j));
    rows.push_back(div(VectorField(std::move(row))));
  }
  return VectorField(std::move(rows));
}

ScalarField poissonSolve(const ScalarField& sigma, double mean_tol) {
  const double m = sigma.mean();
  if (std::abs(m) > mean_tol)
    throw NonZeroMeanError("poissonSolve: |mean| = " + std::to_string(std::abs(m)) +
                           " exceeds tolerance " + std::to_string(mean_tol));
  return inverseLaplacian(sigma);
}

ScalarField inverseLaplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  const auto& spec = f.spectrum();
  std::vector<Cmplx> out(g.size());
  forEachMode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
    const double k2 = sqNorm(k);
    out[idx] = k2 > 0.0 ? -spec[idx] / k2 : Cmplx(0.0);
  });
  return ScalarField::fromSpectrum(g, std::move(out));
}

LerayParts lerayDecompose(const VectorField& u) {
  const Grid& g = u.grid();
  const int d = g.dim();
  std::vector<const std::vector<Cmplx>*> uspec(d);
  for (int j = 0; j < d; ++j) uspec[j] = &u[j].spectrum();

  std::vector<std::vector<Cmplx>> pf(d, std::vector<Cmplx>(g.size()));
  std::vector<std::vector<Cmplx>> qf(d, std::vector<Cmplx>(g.size(), Cmplx(0.0)));
  std::vector<Cmplx> pot(g.size(), Cmplx(0.0));

  forEachMode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
    const double k2 = sqNorm(k);
    if (k2 == 0.0 || hasNyquist(g, k)) {
      // constant (and Nyquist) modes stay with the divergence-free part
      for (int j = 0; j < d; ++j) pf[j][idx] = (*uspec[j])[idx];
      return;
    }
    Cmplx kdotu(0.0);
    for (int j = 0; j < d; ++j) kdotu += double(k[j]) * (*uspec[j])[idx];
    const Cmplx alpha = kdotu / k2;  // Q part = alpha * k
    for (int j = 0; j < d; ++j) {
      const Cmplx qj = alpha * double(k[j]);
      qf[j][idx] = qj;
      pf[j][idx] = (*uspec[j])[idx] - qj;
    }
    // grad(pot) = Q part: i k pot = alpha k  =>  pot = -i alpha
    pot[idx] = Cmplx(0.0, -1.0) * alpha;
  });

  std::vector<ScalarField> pc, qc;
  for (int j = 0; j < d; ++j) {
    pc.push_back(ScalarField::fromSpectrum(g, std::move(pf[j])));
    qc.push_back(ScalarField::fromSpectrum(g, std::move(qf[j])));
  }
  return LerayParts{VectorField(std::move(pc)), VectorField(std::move(qc)),
                    ScalarField::fromSpectrum(g, std::move(pot))};
}

VectorField lerayP(const VectorField& u) { return lerayDecompose(u).div_free; }
VectorField lerayQ(const VectorField& u) { return lerayDecompose(u).gradient; }
ScalarField lerayPotential(const VectorField& u) { return lerayDecompose(u).potential; }

TensorField strain(const VectorField& u) {
  const Grid& g = u.grid();
  auto jac = jacobian(u);
  ScalarField divu = div(u);
  TensorField s(g);
  const double c = 2.0 / 3.0;
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = i; j < g.dim(); ++j) {
      ScalarField entry = jac[i][j] + jac[j][i];
      if (i == j) entry -= c * divu;
      s.set(i, j, std::move(entry));
    }
  }
  return s;
}

std::vector<std::vector<ScalarField>> jacobian(const VectorField& u) {
  std::vector<std::vector<ScalarField>> jac;
  jac.reserve(u.dim());
  // jac[i][j] = d_i u_j; grad(u_j) gives column j
  std::vector<VectorField> grads;
  for (int j = 0; j < u.dim(); ++j) grads.push_back(grad(u[j]));
  for (int i = 0; i < u.dim(); ++i) {
    std::vector<ScalarField> row;
    for (int j = 0; j < u.dim(); ++j) row.push_back(grads[j][i]);
    jac.push_back(std::move(row));
  }
  return jac;
}

ScalarField doubleContraction(const TensorField& s, const VectorField& u) {
  auto jac = jacobian(u);
  ScalarField out(s.grid());
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j)
      out += pointwiseMul(s(i, j), jac[j][i]);
  return dealias(out);
}

double sobolevNorm(const ScalarField& f, double s) {
  const Grid& g = f.grid();
  const auto& spec = f.spectrum();
  double acc = 0.0;
  forEachMode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
    acc += std::pow(1.0 + sqNorm(k), s) * std::norm(spec[idx]);
  });
  return std::sqrt(acc * g.volume());
}

double sobolevNorm(const VectorField& f, double s) {
  double acc = 0.0;
  for (int j = 0; j < f.dim(); ++j) {
    const double nj = sobolevNorm(f[j], s);
    acc += nj * nj;
  }
  return std::sqrt(acc);
}

double l2Norm(const ScalarField& f) { return sobolevNorm(f, 0.0); }
double l2Norm(const VectorField& f) { return sobolevNorm(f, 0.0); }

double l2InnerProduct(const ScalarField& a, const ScalarField& b) {
  double acc = 0.0;
  const auto& av = a.values();
  const auto& bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) acc += av[i] * bv[i];
  return acc * a.grid().cellVolume();
}

double l2InnerProduct(const VectorField& a, const VectorField& b) {
  double acc = 0.0;
  for (int j = 0; j < a.dim(); ++j) acc += l2InnerProduct(a[j], b[j]);
  return acc;
}

ScalarField dealias(const ScalarField& f) {
  const Grid& g = f.grid();
  const int cutoff = g.n() / 3;
  const auto& spec = f.spectrum();
  std::vector<Cmplx> out(spec);
  forEachMode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
    for (int j = 0; j < g.dim(); ++j) {
      if (std::abs(k[j]) > cutoff) {
        out[idx] = Cmplx(0.0);
        break;
      }
    }
  });
  return ScalarField::fromSpectrum(g, std::move(out));
}

VectorField dealias(const VectorField& f) {
  std::vector<ScalarField> comps;
  comps.reserve(f.dim());
  for (int j = 0; j < f.dim(); ++j) comps.push_back(dealias(f[j]));
  return VectorField(std::move(comps));
}

ScalarField advect(const VectorField& u, const ScalarField& f) {
  VectorField gf = grad(f);
  return dealias(dot(u, gf));
}

VectorField advect(const VectorField& u, const VectorField& w) {
  std::vector<ScalarField> comps;
  comps.reserve(w.dim());
  for (int j = 0; j < w.dim(); ++j) comps.push_back(advect(u, w[j]));
  return VectorField(std::move(comps));
}

}  // namespace zmlim
