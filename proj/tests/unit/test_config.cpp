#include <gtest/gtest.h>

#include "openchain/config.hpp"
#include "openchain/errors.hpp"

using namespace openchain;

TEST(Config, EmptyObjectGivesDefaults) {
  const RunConfig c = parse_run_config(json::object());
  EXPECT_EQ(c.params.length(), 2);
  EXPECT_EQ(c.params.eta(), cx(1));
  EXPECT_TRUE(std::holds_alternative<TriangularBoundary>(c.right));
  EXPECT_EQ(c.n_bounds(), std::make_pair(0, 2));
}

TEST(Config, FullRoundTrip) {
  const json j = json::parse(R"({
    "eta": [0.8, 0.1], "L": 2, "xi": [[0.1, 0], -0.2],
    "right": {"general": {"alpha": 1, "beta": [0.2, 0.1], "gamma": 0.3, "delta": 0.4}},
    "left": {"triangular": [0.5, 0.6, 0.7]},
    "N_range": [1, 2], "seed": 42,
    "tolerances": {"spectrum": 1e-5},
    "solver": {"starts": 12, "newton_tol": 1e-10, "max_iter": 30},
    "output": "out.json"
  })");
  const RunConfig c = parse_run_config(j);
  EXPECT_EQ(c.params.eta(), cx(0.8, 0.1));
  EXPECT_EQ(c.params.xi()[1], cx(-0.2));
  const auto& g = std::get<GeneralBoundary>(c.right);
  EXPECT_EQ(g.beta, cx(0.2, 0.1));
  EXPECT_EQ(std::get<TriangularBoundary>(c.left).c, cx(0.7));
  EXPECT_EQ(c.n_bounds(), std::make_pair(1, 2));
  EXPECT_EQ(*c.seed, 42u);
  EXPECT_EQ(c.solver.starts, 12);
  EXPECT_DOUBLE_EQ(c.suite(1).tol("spectrum"), 1e-5);
  EXPECT_DOUBLE_EQ(c.suite(1).tol("newton"), 1e-10);
  EXPECT_EQ(c.output, "out.json");
}

TEST(Config, Rejections) {
  const char* bad[] = {
      R"([1, 2])",
      R"({"L": 0})",
      R"({"L": 3, "xi": [0, 0]})",
      R"({"right": {"general": [1, 2, 3]}})",
      R"({"right": {"general": [1, 2, 3, 4], "triangular": [1, 2, 3]}})",
      R"({"right": {"diagonal": [1, 2]}})",
      R"({"N": 1, "N_range": [0, 1]})",
      R"({"N_range": [2, 1]})",
      R"({"seed": -3})",
      R"({"tolerances": {"made_up": 1e-3}})",
      R"({"solver": {"starts": 0}})",
      R"({"colour": "blue"})",
      R"({"eta": "one"})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_run_config(json::parse(text)), InputError) << text;
}

TEST(Config, SeedPrecedence) {
  RunConfig c;
  EXPECT_EQ(resolve_seed(std::nullopt, nullptr, c), kDefaultSeed);
  c.seed = 5;
  EXPECT_EQ(resolve_seed(std::nullopt, nullptr, c), 5u);
  EXPECT_EQ(resolve_seed(std::nullopt, "17", c), 17u);
  EXPECT_EQ(resolve_seed(99, "17", c), 99u);
  EXPECT_THROW(resolve_seed(std::nullopt, "seventeen", c), InputError);
}

TEST(Config, ToleranceOverride) {
  const auto [name, value] = parse_tolerance_override("ybe=1e-10");
  EXPECT_EQ(name, "ybe");
  EXPECT_DOUBLE_EQ(value, 1e-10);
  EXPECT_THROW(parse_tolerance_override("ybe"), InputError);
  EXPECT_THROW(parse_tolerance_override("nope=1"), InputError);
  EXPECT_THROW(parse_tolerance_override("ybe=abc"), InputError);
  EXPECT_THROW(parse_tolerance_override("ybe=-1"), InputError);
}

TEST(Config, MissingFile) { EXPECT_THROW(load_run_config("/nonexistent/cfg.json"), InputError); }
