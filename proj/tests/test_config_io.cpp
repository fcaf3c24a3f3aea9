#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "zmlim/config.hpp"
#include "zmlim/errors.hpp"
#include "zmlim/field.hpp"
#include "zmlim/grid.hpp"
#include "zmlim/random_fields.hpp"
#include "zmlim/snapshot_io.hpp"
#include "zmlim/spectral_ops.hpp"

using namespace zmlim;

TEST_CASE("key-value parser: comments, whitespace, dotted keys") {
  KeyValueConfig kv = KeyValueConfig::parseString(
      "# a comment line\n"
      "grid.n = 64\n"
      "  stepper.dt =  0.002   # trailing comment\n"
      "\n"
      "label = run one\n");
  CHECK(kv.getInt("grid.n", 0) == 64);
  CHECK(kv.getDouble("stepper.dt", 0.0) == doctest::Approx(0.002));
  CHECK(kv.getString("label", "") == "run one");
  CHECK(kv.getInt("missing", 7) == 7);
  CHECK(kv.has("grid.n"));
  CHECK(!kv.has("grid.m"));
}

TEST_CASE("key-value parser: malformed input and duplicates are rejected") {
  CHECK_THROWS_AS(KeyValueConfig::parseString("novalue\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueConfig::parseString("a = 1\na = 2\n"), ConfigError);
}

TEST_CASE("typed getters reject badly formed values") {
  KeyValueConfig kv = KeyValueConfig::parseString(
      "a = 12x\n"
      "b = 1.5.2\n"
      "c = maybe\n"
      "list = 0.1, 0.05, bad\n");
  CHECK_THROWS_AS(kv.getInt("a", 0), ConfigError);
  CHECK_THROWS_AS(kv.getDouble("b", 0.0), ConfigError);
  CHECK_THROWS_AS(kv.getBool("c", false), ConfigError);
  CHECK_THROWS_AS(kv.getDoubleList("list", {}), ConfigError);
}

TEST_CASE("double lists parse comma-separated values") {
  KeyValueConfig kv = KeyValueConfig::parseString("eps.list = 0.1,0.05, 0.025\n");
  std::vector<double> eps = kv.getDoubleList("eps.list", {});
  REQUIRE(eps.size() == 3);
  CHECK(eps[0] == doctest::Approx(0.1));
  CHECK(eps[2] == doctest::Approx(0.025));
}

TEST_CASE("unknown keys are reported") {
  KeyValueConfig kv = KeyValueConfig::parseString("known = 1\nmystery = 2\n");
  std::vector<std::string> unknown = kv.unknownKeys({"known"});
  REQUIRE(unknown.size() == 1);
  CHECK(unknown[0] == "mystery");
}

TEST_CASE("snapshot header format is stable") {
  Grid g(2, 16);
  ScalarField f = randomScalar(g, 1.0, 4, 5u, 1u);
  std::ostringstream out;
  writeFieldSnapshot(out, f, "sigma", 0.5);
  std::string data = out.str();
  std::string header = data.substr(0, data.find('\n'));
  CHECK(header == "zmlim-field v1 d=2 N=16 name=sigma t=0.5");
  // payload: N^d little-endian float64 values
  CHECK(data.size() == header.size() + 1 + g.size() * sizeof(double));
}

TEST_CASE("snapshot round-trip preserves values exactly") {
  Grid g(2, 16);
  ScalarField f = randomScalar(g, 1.3, 4, 9u, 2u);
  std::stringstream buf;
  writeFieldSnapshot(buf, f, "u0", 0.125);
  FieldSnapshot snap = readFieldSnapshot(buf);
  CHECK(snap.name == "u0");
  CHECK(snap.t == 0.125);
  REQUIRE(snap.field.grid() == g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(snap.field.values()[i] == f.values()[i]);
  }
}

TEST_CASE("snapshot reader rejects corrupt input") {
  CHECK_THROWS({
    std::stringstream buf("not-a-snapshot v9\n");
    readFieldSnapshot(buf);
  });
  // truncated payload
  Grid g(2, 16);
  ScalarField f = randomScalar(g, 1.0, 4, 11u, 3u);
  std::stringstream buf;
  writeFieldSnapshot(buf, f, "x", 0.0);
  std::string data = buf.str();
  std::stringstream cut(data.substr(0, data.size() - 8));
  CHECK_THROWS(readFieldSnapshot(cut));
}

TEST_CASE("snapshot file round-trip") {
  Grid g(2, 16);
  ScalarField f = randomScalar(g, 0.7, 4, 13u, 4u);
  const std::string path = "snapshot_roundtrip_test.zf";
  writeFieldSnapshot(path, f, "T", 1.75);
  FieldSnapshot snap = readFieldSnapshot(path);
  CHECK(snap.name == "T");
  CHECK(l2Norm(snap.field - f) == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("formatG17 round-trips doubles through text") {
  for (double x : {0.1, 1.0 / 3.0, 6.283185307179586, 1e-17, -2.5e300}) {
    CHECK(std::stod(formatG17(x)) == x);
  }
}
