#include "doctest.h"
#include "fixtures.hpp"

#include "simplexlearn/config.hpp"
#include "simplexlearn/error.hpp"
#include "simplexlearn/io.hpp"

#include <filesystem>

using namespace simplexlearn;
using fixtures::pt;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "simplexlearn_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("double formatting round-trips") {
  for (double v : {0.1, 1.0 / 3, -2.5e-300, 6.02214076e23, 0.0})
    CHECK(std::stod(io::format_double(v)) == v);
  CHECK(io::format_double(0.5) == "0.5");
}

TEST_CASE("simplex files") {
  const Simplex s = fixtures::simplex({{0.1, 0.2}, {1.0 / 3, 4}, {-1, 2.5}});
  const Simplex a = io::simplex_from_json(io::simplex_to_json(s));
  const Simplex b = io::simplex_from_csv(io::simplex_to_csv(s));
  CHECK(a.vertices() == s.vertices());
  CHECK(b.vertices() == s.vertices());
  CHECK(io::simplex_to_csv(fixtures::interval(0, 1)) == "dim,1\n0\n1\n");

  io::save_simplex(scratch("s.json"), s);
  io::save_simplex(scratch("s.csv"), s);
  CHECK(io::load_simplex(scratch("s.json")).vertices() == s.vertices());
  CHECK(io::load_simplex(scratch("s.csv")).vertices() == s.vertices());

  CHECK(code_of([] { io::simplex_from_csv("dim,2\n0,0\n1,0\n"); }) == ErrorCode::kIo);
  CHECK(code_of([] { io::simplex_from_json(nlohmann::json::parse(R"({"dim":1})")); }) ==
        ErrorCode::kIo);
  CHECK(code_of([] { io::simplex_from_csv("dim,1\n0\n0\n"); }) == ErrorCode::kDegenerateSimplex);
  CHECK(code_of([] { io::load_simplex(scratch("missing.json")); }) == ErrorCode::kIo);
}

TEST_CASE("dataset files") {
  const NoisyDataset d = generate_dataset(standard_simplex(2), 25, 0.1, 4);
  const NoisyDataset c = io::dataset_from_csv(io::dataset_to_csv(d));
  CHECK(c.points == d.points);
  CHECK(c.sigma == d.sigma);
  CHECK(c.seed == d.seed);
  CHECK_FALSE(c.truth.has_value());

  io::save_dataset(scratch("d.json"), d);
  const NoisyDataset j = io::load_dataset(scratch("d.json"));
  CHECK(j.points == d.points);
  REQUIRE(j.truth.has_value());
  CHECK(j.truth->vertices() == d.truth->vertices());

  CHECK(code_of([] { io::dataset_from_csv("dim,n,sigma,seed\n1,2,0,0\n0.5\n"); }) ==
        ErrorCode::kIo);
  CHECK(code_of([] { io::dataset_from_csv("dim,n,sigma,seed\n1,1,0,0\n0.5,3\n"); }) ==
        ErrorCode::kIo);
  CHECK(code_of([] { io::dataset_from_csv("x,y\n"); }) == ErrorCode::kIo);
}

TEST_CASE("ball round trip") {
  BoundingBall b;
  b.center = pt({0.25, -1});
  b.radius = 3.5;
  b.diagnostics.snr_provenance = Provenance::kPlugIn;
  b.diagnostics.d_statistic = 0.125;
  const BoundingBall c = io::ball_from_json(io::ball_to_json(b));
  CHECK(c.center == b.center);
  CHECK(c.radius == b.radius);
  CHECK(c.diagnostics.snr_provenance == Provenance::kPlugIn);
  CHECK(c.diagnostics.d_statistic == 0.125);
}

TEST_CASE("config parsing") {
  const ConfigMap m = parse_config(
      "# comment\n"
      "seed = 12\n"
      "eps_rep=0.3   # trailing\n"
      "\n"
      "covering = random\n"
      "theta_lower = auto\n"
      "eps_rep = 0.25\n");
  CHECK(m.at("seed") == "12");
  CHECK(m.at("eps_rep") == "0.25");
  const RunConfig c = run_config_from_map(m);
  CHECK(c.seed == 12);
  CHECK(c.eps_rep == 0.25);
  CHECK(c.covering == CoverMethod::kRandom);
  CHECK_FALSE(c.theta_lower.has_value());
  CHECK(c.mc_budget == kDefaultMcBudget);

  ConfigMap o = m;
  apply_override(o, "seed=99");
  CHECK(run_config_from_map(o).seed == 99);
  CHECK(run_config_from_map(ConfigMap{{"covering_cap", "1e7"}}).covering_cap == 10000000);

  CHECK(code_of([] { parse_config("novalue\n"); }) == ErrorCode::kParameter);
  CHECK(code_of([] { run_config_from_map({{"bogus", "1"}}); }) == ErrorCode::kParameter);
  CHECK(code_of([] { run_config_from_map({{"eps_rep", "2"}}); }) == ErrorCode::kParameter);
  CHECK(code_of([] { run_config_from_map({{"delta", "x"}}); }) == ErrorCode::kParameter);
  CHECK(code_of([] { run_config_from_map({{"snr_mode", "config"}}); }) ==
        ErrorCode::kParameter);

  const auto echoed = run_config_to_json(c);
  for (const auto& key : run_config_keys()) CHECK(echoed.contains(key));
}
