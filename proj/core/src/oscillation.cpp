#include "zmlim/oscillation.hpp"

#include <cmath>
#include <utility>

namespace zmlim {

PhasePair::PhasePair(VectorField v, VectorField e, ScalarField q, ScalarField phi)
    : v_(std::move(v)), e_(std::move(e)), q_(std::move(q)), phi_(std::move(phi)) {}

PhasePair::PhasePair(const VectorField& u, const VectorField& e)
    : PhasePair([&] {
        auto pu = lerayDecompose(u);
        auto pe = lerayDecompose(e);
        return PhasePair(std::move(pu.div_free), std::move(pe.div_free),
                         std::move(pu.potential), std::move(pe.potential));
      }()) {}

PhasePair PhasePair::fromParts(VectorField v, VectorField e_df,
                               ScalarField q, ScalarField phi) {
  return PhasePair(std::move(v), std::move(e_df), std::move(q), std::move(phi));
}

VectorField PhasePair::uComp() const { return v_ + grad(q_); }
VectorField PhasePair::eComp() const { return e_ + grad(phi_); }

namespace {

VectorField zeroLike(const VectorField& f) {
  std::vector<ScalarField> comps(f.dim(), ScalarField(f.grid()));
  return VectorField(std::move(comps));
}

}  // namespace

PhasePair applyL(const PhasePair& p) {
  return PhasePair::fromParts(zeroLike(p.divFreeU()), zeroLike(p.divFreeE()),
                              -p.phiPotential(), p.qPotential());
}

PhasePair expTauL(double tau, const PhasePair& p) {
  const double c = std::cos(tau);
  const double s = std::sin(tau);
  return PhasePair::fromParts(p.divFreeU(), p.divFreeE(),
                              c * p.qPotential() - s * p.phiPotential(),
                              c * p.phiPotential() + s * p.qPotential());
}

PhasePair projectP0(const PhasePair& p) {
  ScalarField zq(p.grid());
  ScalarField zphi(p.grid());
  return PhasePair::fromParts(p.divFreeU(), p.divFreeE(), std::move(zq),
                              std::move(zphi));
}

// Eigenprojection for eigenvalue +i: on (grad q, grad phi) coordinates
//   P_i (q, phi) = ((q + i phi)/2, (phi - i q)/2)
ComplexPair projectPi(const PhasePair& p) {
  VectorField zv = zeroLike(p.divFreeU());
  const ScalarField& q = p.qPotential();
  const ScalarField& phi = p.phiPotential();
  PhasePair re = PhasePair::fromParts(zv, zv, 0.5 * q, 0.5 * phi);
  PhasePair im = PhasePair::fromParts(zv, zv, 0.5 * phi, -0.5 * q);
  return ComplexPair{std::move(re), std::move(im)};
}

ComplexPair projectPmi(const PhasePair& p) {
  VectorField zv = zeroLike(p.divFreeU());
  const ScalarField& q = p.qPotential();
  const ScalarField& phi = p.phiPotential();
  PhasePair re = PhasePair::fromParts(zv, zv, 0.5 * q, 0.5 * phi);
  PhasePair im = PhasePair::fromParts(zv, zv, -0.5 * phi, 0.5 * q);
  return ComplexPair{std::move(re), std::move(im)};
}

PhasePair addPairs(const PhasePair& a, const PhasePair& b) {
  return PhasePair::fromParts(a.divFreeU() + b.divFreeU(),
                              a.divFreeE() + b.divFreeE(),
                              a.qPotential() + b.qPotential(),
                              a.phiPotential() + b.phiPotential());
}

PhasePair scalePair(double c, const PhasePair& p) {
  return PhasePair::fromParts(c * p.divFreeU(), c * p.divFreeE(),
                              c * p.qPotential(), c * p.phiPotential());
}

double pairNorm(const PhasePair& p) {
  const double nu = l2Norm(p.uComp());
  const double ne = l2Norm(p.eComp());
  return std::sqrt(nu * nu + ne * ne);
}

}  // namespace zmlim
