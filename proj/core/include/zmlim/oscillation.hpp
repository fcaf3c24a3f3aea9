#pragma once

#include "zmlim/field.hpp"
#include "zmlim/spectral_ops.hpp"

namespace zmlim {

/// A (velocity-like, field-like) pair (u, E) with its Hodge split cached:
/// u = v + grad q, E = e + grad phi, div v = div e = 0, potentials mean-zero.
class PhasePair {
 public:
  PhasePair(const VectorField& u, const VectorField& e);

  /// Builds directly from the split; skips the decomposition.
  static PhasePair fromParts(VectorField v, VectorField e_df,
                             ScalarField q, ScalarField phi);

  const Grid& grid() const { return v_.grid(); }
  VectorField uComp() const;
  VectorField eComp() const;

  const VectorField& divFreeU() const { return v_; }
  const VectorField& divFreeE() const { return e_; }
  const ScalarField& qPotential() const { return q_; }
  const ScalarField& phiPotential() const { return phi_; }

 private:
  PhasePair(VectorField v, VectorField e, ScalarField q, ScalarField phi);
  VectorField v_, e_;
  ScalarField q_, phi_;
};

struct ComplexPair {
  PhasePair re;
  PhasePair im;
};

/// L kills divergence-free parts and maps (grad q, grad phi) to
/// (-grad phi, grad q).
PhasePair applyL(const PhasePair& p);

/// Rotation by angle tau on the gradient sector, identity on E_0.
PhasePair expTauL(double tau, const PhasePair& p);

PhasePair projectP0(const PhasePair& p);
ComplexPair projectPi(const PhasePair& p);
ComplexPair projectPmi(const PhasePair& p);

PhasePair addPairs(const PhasePair& a, const PhasePair& b);
PhasePair scalePair(double c, const PhasePair& p);

/// L^2 x L^2 norm of (u, E).
double pairNorm(const PhasePair& p);

}  // namespace zmlim
