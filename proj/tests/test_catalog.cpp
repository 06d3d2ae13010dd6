#include <random>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "random_fixtures.hpp"
#include "trunk/catalog.hpp"
#include "trunk/error.hpp"

using namespace trunk;

TEST_CASE("builtin groups match the hand-built references") {
  CHECK(element_set(builtin_group("PSL(2,7)")) == element_set(fixtures::psl27()));
  CHECK(element_set(builtin_group("AGL(1,5)")) == element_set(fixtures::agl15()));
  CHECK(element_set(builtin_group("AGammaL(1,8)")) ==
        element_set(fixtures::agammal18()));
  CHECK(element_set(builtin_group("C6")) == element_set(fixtures::cyclic(6)));
  CHECK(element_set(builtin_group("S5")) == element_set(fixtures::sym(5)));
  CHECK(element_set(builtin_group("A6")) == element_set(fixtures::alt(6)));
  CHECK(group_order(builtin_group("S1")) == 1);
  CHECK(group_order(builtin_group("A2")) == 1);

  CHECK_THROWS_AS(builtin_group("D8"), IncompatibleParameters);
  CHECK_THROWS_AS(builtin_group("S"), IncompatibleParameters);
  CHECK_THROWS_AS(builtin_group("C0"), IncompatibleParameters);
  CHECK_THROWS_AS(builtin_group(""), IncompatibleParameters);

  for (const std::string& name : builtin_names()) {
    CHECK(group_order(builtin_group(name)) >= 1);
  }
}

TEST_CASE("catalog files parse both generator forms") {
  const std::string text = R"js([
    {"name": "rot", "degree": 3, "generators": ["(0 1 2)"], "tags": ["cyclic"]},
    {"name": "klein", "degree": 4, "generators": [[1, 0, 3, 2], [2, 3, 0, 1]]}
  ])js";
  auto entries = parse_catalog(text);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].name == "rot");
  CHECK(entries[0].tags == std::vector<std::string>{"cyclic"});
  CHECK(group_order(entry_group(entries[0])) == 3);
  CHECK(group_order(entry_group(entries[1])) == 4);

  CHECK_THROWS_AS(parse_catalog("{}"), ParseError);
  CHECK_THROWS_AS(parse_catalog("[{\"name\": \"x\"}]"), ParseError);
  CHECK_THROWS_AS(parse_catalog("[1, 2"), ParseError);
  CHECK_THROWS_AS(
      parse_catalog(
          R"js([{"name": "bad", "degree": 3, "generators": ["(0 1"]}])js"),
      ParseError);
  CHECK_THROWS_AS(
      parse_catalog(
          R"js([{"name": "short", "degree": 4, "generators": [[1, 0]]}])js"),
      ParseError);
  CHECK_THROWS_AS(
      parse_catalog(
          R"js([{"name": "dup", "degree": 2, "generators": []},
              {"name": "dup", "degree": 2, "generators": []}])js"),
      ParseError);
}

TEST_CASE("portrait JSON round-trips") {
  std::mt19937 rng(2024);
  auto local = make_tower_local(
      PermGroup::from_generators(3,
                                 {Perm::from_cycles("(0 1)", 3),
                                  Perm::from_cycles("(0 1 2)", 3)},
                                 "S3"));
  for (int trial = 0; trial < 25; ++trial) {
    Portrait p = testutil::random_coset_portrait(local, trial % 4, rng);
    const std::string text = portrait_to_json(p);
    Portrait q = portrait_from_json(text);
    CHECK(q == p);
    CHECK(portrait_to_json(q) == text);
  }

  Portrait parsed = portrait_from_json(
      R"js({"profile": [2, 3], "depth": 2, "labels": {"": "(0 1)", "1": [1, 0, 2]}})js");
  CHECK(parsed.profile() == ArityProfile{2, 3});
  CHECK(parsed.depth() == 2);
  CHECK(parsed.label_at({}) == Perm::from_cycles("(0 1)", 2));
  CHECK(parsed.label_at({1}) == Perm::from_cycles("(0 1)", 3));
  CHECK(parsed.label_at({0}).is_identity());

  CHECK_THROWS_AS(portrait_from_json("[]"), ParseError);
  CHECK_THROWS_AS(portrait_from_json(R"js({"profile": [2], "depth": 1})js"),
                  ParseError);
  CHECK_THROWS_AS(
      portrait_from_json(
          R"js({"profile": [2, 2], "depth": 1, "labels": {"0.1": "(0 1)"}})js"),
      ParseError);
}

TEST_CASE("germ JSON round-trips") {
  std::mt19937 rng(2025);
  for (int trial = 0; trial < 25; ++trial) {
    auto ctx = trial % 2 ? testutil::ctx_s3(2) : testutil::ctx_c3(2);
    GermElement g = testutil::random_germ(ctx, 1 + trial % 2, 2, rng);
    const std::string text = germ_to_json(g);
    GermElement h = germ_from_json(text);
    CHECK(h.pair.dom == g.pair.dom);
    CHECK(h.pair.cod == g.pair.cod);
    CHECK(h.pair.sigma == g.pair.sigma);
    REQUIRE(h.labels.size() == g.labels.size());
    for (std::size_t i = 0; i < g.labels.size(); ++i) {
      CHECK(h.labels[i] == g.labels[i]);
    }
    CHECK(germ_equal(h, g));
    CHECK(germ_to_json(h) == text);
  }

  GermElement parsed = germ_from_json(R"js({
    "D": "S3", "d": 3, "k": 2,
    "pair": "0 1\n0 1\n0 1\n",
    "labels": {"0": {"profile": [3, 3], "depth": 1, "labels": {"": "(0 1)"}}}
  })js");
  CHECK(parsed.ctx->root_arity == 2);
  CHECK(parsed.ctx->deep_arity() == 3);
  CHECK(germ_apply(parsed, {0, 0}) == Address{0, 1});
  CHECK(germ_apply(parsed, {1, 0}) == Address{1, 0});

  CHECK_THROWS_AS(germ_from_json("[]"), ParseError);
  CHECK_THROWS_AS(germ_from_json(R"js({"D": 7, "d": 3, "k": 2, "pair": ""})js"),
                  ParseError);
  CHECK_THROWS_AS(germ_from_json(R"js({
    "D": "S3", "d": 3, "k": 2,
    "pair": "0 1\n0 1\n0 1\n",
    "labels": {"1.0": {"profile": [3, 3], "depth": 0, "labels": {}}}
  })js"),
                  LeafAbsent);
}
