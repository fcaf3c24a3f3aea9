#pragma once

#include <iosfwd>
#include <string>

#include "zmlim/field.hpp"

namespace zmlim {

/// `zmlim-field v1` snapshot: one UTF-8 header line followed by N^d raw
/// little-endian float64 values, row-major.
void writeFieldSnapshot(std::ostream& out, const ScalarField& f,
                        const std::string& name, double t);
void writeFieldSnapshot(const std::string& path, const ScalarField& f,
                        const std::string& name, double t);

struct FieldSnapshot {
  ScalarField field;
  std::string name;
  double t;
};
FieldSnapshot readFieldSnapshot(std::istream& in);
FieldSnapshot readFieldSnapshot(const std::string& path);

/// Formats a double with 17 significant digits.
std::string formatG17(double x);

}  // namespace zmlim
