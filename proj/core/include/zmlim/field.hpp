#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "zmlim/grid.hpp"

namespace zmlim {

/// Real-valued periodic grid function with a lazily cached spectrum.
///
/// Fields are value types; all arithmetic returns new fields. The cached
/// spectrum, when present, is always the exact discrete transform of the
/// node values (1/N^d normalization, Hermitian-symmetric).
class ScalarField {
 public:
  explicit ScalarField(const Grid& grid);  // zeros
  ScalarField(const Grid& grid, std::vector<double> values);

  static ScalarField fromSpectrum(const Grid& grid,
                                  std::vector<std::complex<double>> spectrum);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::complex<double>>& spectrum() const;

  double mean() const;
  double minValue() const;
  double maxValue() const;
  bool allFinite() const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double c);

 private:
  Grid grid_;
  std::vector<double> values_;
  mutable std::shared_ptr<const std::vector<std::complex<double>>> spectrum_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double c, ScalarField a);
ScalarField operator*(ScalarField a, double c);
ScalarField operator-(ScalarField a);

/// Pointwise (nodal) product; callers dealias the result where it matters.
ScalarField pointwiseMul(const ScalarField& a, const ScalarField& b);
/// Pointwise quotient a/b; b must be bounded away from zero.
ScalarField pointwiseDiv(const ScalarField& a, const ScalarField& b);
/// Pointwise reciprocal.
ScalarField pointwiseInv(const ScalarField& a);
ScalarField addConstant(ScalarField a, double c);

/// d scalar components sharing one grid.
class VectorField {
 public:
  explicit VectorField(const Grid& grid);  // zeros
  explicit VectorField(std::vector<ScalarField> components);

  const Grid& grid() const { return components_.front().grid(); }
  int dim() const { return static_cast<int>(components_.size()); }
  const ScalarField& operator[](int j) const { return components_[j]; }
  ScalarField& operator[](int j) { return components_[j]; }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double c);

 private:
  std::vector<ScalarField> components_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double c, VectorField a);
VectorField operator-(VectorField a);

/// Pointwise scalar-vector product.
VectorField pointwiseMul(const ScalarField& a, const VectorField& b);
/// Pointwise dot product.
ScalarField dot(const VectorField& a, const VectorField& b);

/// Symmetric d x d tensor of scalar fields, packed storage.
class TensorField {
 public:
  explicit TensorField(const Grid& grid);  // zeros

  const Grid& grid() const { return entries_.front().grid(); }
  int dim() const { return dim_; }
  const ScalarField& operator()(int i, int j) const { return entries_[pack(i, j)]; }
  void set(int i, int j, ScalarField f);

 private:
  int pack(int i, int j) const;
  int dim_;
  std::vector<ScalarField> entries_;
};

}  // namespace zmlim
