#include "zmlim/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "zmlim/fft.hpp"

namespace zmlim {

ScalarField::ScalarField(const Grid& grid)
    : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("ScalarField: value count does not match grid");
}

ScalarField ScalarField::fromSpectrum(const Grid& grid,
                                      std::vector<std::complex<double>> spectrum) {
  if (spectrum.size() != grid.size())
    throw std::invalid_argument("ScalarField: spectrum size does not match grid");
  ScalarField f(grid, detail::inverseTransform(grid, spectrum));
  f.spectrum_ = std::make_shared<const std::vector<std::complex<double>>>(std::move(spectrum));
  return f;
}

const std::vector<std::complex<double>>& ScalarField::spectrum() const {
  if (!spectrum_)
    spectrum_ = std::make_shared<const std::vector<std::complex<double>>>(
        detail::forwardTransform(grid_, values_));
  return *spectrum_;
}

double ScalarField::mean() const {
  double s = std::accumulate(values_.begin(), values_.end(), 0.0);
  return s / static_cast<double>(values_.size());
}

double ScalarField::minValue() const {
  return *std::min_element(values_.begin(), values_.end());
}

double ScalarField::maxValue() const {
  return *std::max_element(values_.begin(), values_.end());
}

bool ScalarField::allFinite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double x) { return std::isfinite(x); });
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  if (grid_ != o.grid_) throw std::invalid_argument("field grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  spectrum_.reset();
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  if (grid_ != o.grid_) throw std::invalid_argument("field grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  spectrum_.reset();
  return *this;
}

ScalarField& ScalarField::operator*=(double c) {
  for (auto& x : values_) x *= c;
  spectrum_.reset();
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double c, ScalarField a) { return a *= c; }
ScalarField operator*(ScalarField a, double c) { return a *= c; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }

ScalarField pointwiseMul(const ScalarField& a, const ScalarField& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("field grid mismatch");
  std::vector<double> out(a.values());
  const auto& bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= bv[i];
  return ScalarField(a.grid(), std::move(out));
}

ScalarField pointwiseDiv(const ScalarField& a, const ScalarField& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("field grid mismatch");
  std::vector<double> out(a.values());
  const auto& bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= bv[i];
  return ScalarField(a.grid(), std::move(out));
}

ScalarField pointwiseInv(const ScalarField& a) {
  std::vector<double> out(a.values());
  for (auto& x : out) x = 1.0 / x;
  return ScalarField(a.grid(), std::move(out));
}

ScalarField addConstant(ScalarField a, double c) {
  std::vector<double> out(a.values());
  for (auto& x : out) x += c;
  return ScalarField(a.grid(), std::move(out));
}

VectorField::VectorField(const Grid& grid)
    : components_(static_cast<std::size_t>(grid.dim()), ScalarField(grid)) {}

VectorField::VectorField(std::vector<ScalarField> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("VectorField: empty");
  for (const auto& c : components_)
    if (c.grid() != components_.front().grid())
      throw std::invalid_argument("VectorField: component grid mismatch");
  if (static_cast<int>(components_.size()) != components_.front().grid().dim())
    throw std::invalid_argument("VectorField: component count != grid dim");
}

VectorField& VectorField::operator+=(const VectorField& o) {
  for (int j = 0; j < dim(); ++j) components_[j] += o[j];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  for (int j = 0; j < dim(); ++j) components_[j] -= o[j];
  return *this;
}

VectorField& VectorField::operator*=(double c) {
  for (auto& f : components_) f *= c;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double c, VectorField a) { return a *= c; }
VectorField operator-(VectorField a) { return a *= -1.0; }

VectorField pointwiseMul(const ScalarField& a, const VectorField& b) {
  std::vector<ScalarField> out;
  out.reserve(b.dim());
  for (int j = 0; j < b.dim(); ++j) out.push_back(pointwiseMul(a, b[j]));
  return VectorField(std::move(out));
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  ScalarField out = pointwiseMul(a[0], b[0]);
  for (int j = 1; j < a.dim(); ++j) out += pointwiseMul(a[j], b[j]);
  return out;
}

TensorField::TensorField(const Grid& grid)
    : dim_(grid.dim()),
      entries_(static_cast<std::size_t>(grid.dim() * (grid.dim() + 1) / 2),
               ScalarField(grid)) {}

int TensorField::pack(int i, int j) const {
  if (i > j) std::swap(i, j);
  // upper-triangular row-major packing
  return i * dim_ - i * (i - 1) / 2 + (j - i);
}

void TensorField::set(int i, int j, ScalarField f) {
  entries_[pack(i, j)] = std::move(f);
}

}  // namespace zmlim
