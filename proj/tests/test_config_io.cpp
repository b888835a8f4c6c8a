#include <sstream>

#include "doctest.h"
#include "roelab/config.hpp"
#include "roelab/io.hpp"
#include "test_helpers.hpp"

using namespace roelab;
using roelab::testing::random_banded;

TEST_CASE("triplet round trip is exact") {
  Window win(2, 3);
  BlockOperator op = random_banded(win, 2, 2, 61);
  std::ostringstream out;
  write_triplets(out, op);
  std::istringstream in(out.str());
  BlockOperator back = read_triplets(in);
  CHECK(back.window().dim() == 2);
  CHECK(back.window().half_width() == 3);
  CHECK(back.internal_dim() == 2);
  CHECK((back.matrix() - op.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("triplet round trip preserves awkward doubles") {
  Window win(1, 1);
  BlockOperator op(win, 1);
  op.block(0, 0)(0, 0) = Complex(0.1, -1.0 / 3.0);
  op.block(1, 2)(0, 0) = Complex(1e-300, 6.02214076e23);
  op.block(2, 0)(0, 0) = Complex(-0.0, 2.2250738585072014e-308);
  std::ostringstream out;
  write_triplets(out, op);
  std::istringstream in(out.str());
  BlockOperator back = read_triplets(in);
  CHECK((back.matrix().array() == op.matrix().array()).all());
}

TEST_CASE("triplet reader rejects garbage") {
  std::istringstream bad_header("2");
  CHECK_THROWS_AS(read_triplets(bad_header), Error);
  std::istringstream out_of_range("1 1 1\n9 0 1.0 0.0\n");
  CHECK_THROWS_AS(read_triplets(out_of_range), Error);
}

TEST_CASE("fnv1a hash is stable") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("roelab") != fnv1a_hex("roelab "));
  CHECK(fnv1a_hex("same") == fnv1a_hex("same"));
}

TEST_CASE("ini parsing") {
  IniConfig cfg = IniConfig::parse(
      "# comment\n"
      "[model]\n"
      "kind = hofstadter\n"
      "d = 2\n"
      "L = 8\n"
      "flux_p = 1\n"
      "flux_q = 3\n"
      "\n"
      "[disorder]\n"
      "W = 0.25\n"
      "seed = 7\n"
      "[pairing]\n"
      "L_list = 6, 8\n");

  CHECK(cfg.get("model", "kind") == "hofstadter");
  CHECK(cfg.get_int("model", "L", 0) == 8);
  CHECK(cfg.get_double("disorder", "W", 0.0) == 0.25);
  CHECK(cfg.get_u64("disorder", "seed", 0) == 7);
  CHECK(cfg.get_int_list("pairing", "L_list", {}) == std::vector<int>{6, 8});

  ModelSpec spec = model_from_config(cfg);
  CHECK(spec.kind == ModelKind::hofstadter);
  CHECK(spec.L == 8);
  DisorderSpec dis = disorder_from_config(cfg);
  CHECK(dis.W == 0.25);
  CHECK(dis.seed == 7);
}

TEST_CASE("unknown keys and sections are rejected") {
  std::map<std::string, std::set<std::string>> schema = {{"model", kModelKeys},
                                                         {"disorder", kDisorderKeys}};
  IniConfig bad_key = IniConfig::parse("[model]\nkind = hofstadter\nbananas = 3\n");
  CHECK_THROWS_AS(bad_key.validate(schema), Error);
  IniConfig bad_section = IniConfig::parse("[mdoel]\nkind = hofstadter\n");
  CHECK_THROWS_AS(bad_section.validate(schema), Error);
  IniConfig good = IniConfig::parse("[model]\nkind = hofstadter\n[disorder]\nW = 0.1\n");
  CHECK_NOTHROW(good.validate(schema));
}

TEST_CASE("config syntax errors") {
  CHECK_THROWS_AS(IniConfig::parse("[model\nkind = x\n"), Error);
  CHECK_THROWS_AS(IniConfig::parse("[model]\nno_equals_here\n"), Error);
  CHECK_THROWS_AS(IniConfig::parse("[model]\nd = 2\nd = 3\n"), Error);
  CHECK_THROWS_AS(IniConfig::parse("[model]\nd = two\n").get_int("model", "d", 0), Error);
}

TEST_CASE("bad model configs map to config errors") {
  IniConfig cfg = IniConfig::parse("[model]\nkind = warp_drive\n");
  CHECK_THROWS_AS(model_from_config(cfg), Error);
  IniConfig cfg2 = IniConfig::parse("[model]\nkind = hofstadter\nflux_q = 200\n");
  CHECK_THROWS_AS(model_from_config(cfg2), Error);
}
