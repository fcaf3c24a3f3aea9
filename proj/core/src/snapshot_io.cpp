#include "zmlim/snapshot_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zmlim {
namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

}  // namespace

std::string formatG17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void writeFieldSnapshot(std::ostream& out, const ScalarField& f,
                        const std::string& name, double t) {
  out << "zmlim-field v1 d=" << f.grid().dim() << " N=" << f.grid().n()
      << " name=" << name << " t=" << formatG17(t) << "\n";
  out.write(reinterpret_cast<const char*>(f.values().data()),
            static_cast<std::streamsize>(f.values().size() * sizeof(double)));
}

void writeFieldSnapshot(const std::string& path, const ScalarField& f,
                        const std::string& name, double t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  writeFieldSnapshot(out, f, name, t);
  if (!out) throw std::runtime_error("write failed: " + path);
}

FieldSnapshot readFieldSnapshot(std::istream& in) {
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("snapshot: missing header line");
  // header layout: zmlim-field v1 d=<d> N=<N> name=<label> t=<time>
  std::istringstream hs(header);
  std::string magic, vtok, dtok, ntok, nametok, ttok;
  hs >> magic >> vtok >> dtok >> ntok >> nametok >> ttok;
  auto field_after = [&](const std::string& tok, const std::string& prefix) {
    if (tok.rfind(prefix, 0) != 0)
      throw std::runtime_error("snapshot: malformed header: " + header);
    return tok.substr(prefix.size());
  };
  if (magic != "zmlim-field")
    throw std::runtime_error("snapshot: bad magic: " + header);
  if (vtok != "v1") throw std::runtime_error("snapshot: unknown version: " + vtok);
  const int d = std::stoi(field_after(dtok, "d="));
  const int n = std::stoi(field_after(ntok, "N="));
  const std::string name = field_after(nametok, "name=");
  const double t = std::stod(field_after(ttok, "t="));

  Grid grid(d, n);
  std::vector<double> values(grid.size());
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != values.size() * sizeof(double))
    throw std::runtime_error("snapshot: truncated payload");
  return FieldSnapshot{ScalarField(grid, std::move(values)), name, t};
}

FieldSnapshot readFieldSnapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return readFieldSnapshot(in);
}

}  // namespace zmlim
