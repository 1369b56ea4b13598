#include "doctest.h"
#include "fixtures.hpp"

#include "simplexlearn/cli.hpp"
#include "simplexlearn/error.hpp"
#include "simplexlearn/io.hpp"
#include "simplexlearn/pipeline.hpp"
#include "simplexlearn/sweep.hpp"

#include <filesystem>
#include <sstream>

using namespace simplexlearn;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "simplexlearn_pipeline";
  std::filesystem::create_directories(dir);
  return dir / name;
}

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "simplexlearn");
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("learn recovers an interval") {
  const Simplex truth = fixtures::interval(0, 1);
  const NoisyDataset d = generate_dataset(truth, 2000, 0.02, 11);
  RunConfig c;
  c.seed = 11;
  const RunResult r = learn(d, c, 1);
  REQUIRE(r.tv_to_truth.has_value());
  CHECK(r.tv_to_truth->value < 0.25);
  CHECK(r.config.theta_lower.has_value());
  CHECK(r.config.snr_mode == SnrMode::kOracle);
  CHECK(r.first_half == 1000);
  CHECK(r.selection.wins.size() == r.filters.subsets - r.filters.dropped_degenerate -
                                       r.filters.dropped_isoperimetry);
  REQUIRE(r.lemma3_bound.has_value());
  CHECK(r.guarantee.eps2 == c.eps_rep);

  const auto j1 = run_result_to_json(r).dump();
  const auto j4 = run_result_to_json(learn(d, c, 4)).dump();
  CHECK(j1 == j4);
  CHECK(run_result_to_json(r).contains("tv_to_truth"));
  CHECK_FALSE(run_result_to_json(r).contains("timings_ms"));
  CHECK(run_result_to_json(r, true).contains("timings_ms"));
}

TEST_CASE("learn without a truth simplex") {
  NoisyDataset d = generate_dataset(fixtures::interval(0, 1), 1000, 0.02, 3);
  d.truth.reset();
  CHECK_THROWS_AS(learn(d, RunConfig{}, 1), Error);
  RunConfig c;
  c.theta_lower = 1.0;
  c.theta_upper = 1.0;
  const RunResult r = learn(d, c, 1);
  CHECK_FALSE(r.tv_to_truth.has_value());
  CHECK(r.config.snr_mode == SnrMode::kPlugIn);
  CHECK_FALSE(run_result_to_json(r).contains("tv_to_truth"));
}

TEST_CASE("learn reports the failing stage") {
  const NoisyDataset d = generate_dataset(fixtures::interval(0, 1), 1, 0.0, 3);
  try {
    learn(d, RunConfig{}, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInsufficientData);
    CHECK(std::string(e.what()).find("stage split") != std::string::npos);
  }
  RunConfig c;
  c.eps_rep = 0.05;
  c.candidate_cap = 100;
  const NoisyDataset big = generate_dataset(fixtures::interval(0, 1), 200, 0.0, 3);
  try {
    learn(big, c, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooManyCandidates);
    CHECK(std::string(e.what()).find("hint") != std::string::npos);
  }
}

TEST_CASE("sweep rows") {
  ConfigMap m = parse_config(
      "dim = 1\n"
      "n = 1, 400, 400\n"
      "snr = 50\n"
      "seeds = 3..5\n");
  const SweepConfig c = sweep_config_from_map(m);
  CHECK(c.cells() == 3);
  const auto rows = run_sweep(c, 2);
  REQUIRE(rows.size() == 9);
  const auto& cols = sweep_columns();
  const auto err_col = std::find(cols.begin(), cols.end(), "error") - cols.begin();
  CHECK(!rows[0].fields[err_col].empty());
  CHECK(rows[3].fields[err_col].empty());
  // Duplicate cells agree on everything except the cell index and timings.
  for (int s = 0; s < 3; ++s)
    for (std::size_t k = 1; k < cols.size(); ++k)
      if (cols[k].rfind("t_", 0) != 0) CHECK(rows[3 + s].fields[k] == rows[6 + s].fields[k]);

  const auto lines = csv_lines(sweep_to_csv(rows));
  CHECK(lines.size() == 10);
  CHECK(fields(lines[0]).size() == cols.size());

  CHECK_THROWS_AS(sweep_config_from_map(parse_config("n = \nsnr = 5\n")), Error);
  CHECK_THROWS_AS(sweep_config_from_map(parse_config("n = 10\n")), Error);
  CHECK_THROWS_AS(sweep_config_from_map(parse_config("snr = 5\nbogus = 1\n")), Error);
}

TEST_CASE("cli") {
  const auto thm2 = cli({"complexity", "--formula", "thm2", "--dim", "1", "--theta-upper", "2",
                         "--ratio", "2", "--eps", "0.5", "--delta", "0.1"});
  CHECK(thm2.status == 0);
  const auto j = nlohmann::json::parse(thm2.out);
  CHECK(j.at("n") == 95);
  CHECK(j.at("formula") == "thm2");

  io::save_simplex(scratch("a.json"), fixtures::interval(0, 1));
  const auto same = cli({"eval", "--a", scratch("a.json").string(), "--b",
                         scratch("a.json").string()});
  CHECK(same.status == 0);
  CHECK(nlohmann::json::parse(same.out).at("tv") == 0.0);

  CHECK(cli({"eval", "--a", scratch("a.json").string()}).status == 2);
  CHECK(cli({"eval", "--a", "x", "--b", "y", "--nope"}).status == 2);
  CHECK(cli({}).status == 2);
  CHECK(cli({"complexity", "--formula", "thm2", "--dim", "1"}).status == 2);
  CHECK(cli({"complexity", "--formula", "thm1", "--M", "10", "--eps", "0.1", "--delta", "2"})
            .status == 2);
  CHECK(cli({"eval", "--a", scratch("missing.json").string(), "--b",
             scratch("a.json").string()})
            .status == 1);

  const auto data = scratch("d.csv").string();
  CHECK(cli({"gen", "--dim", "1", "--n", "600", "--snr", "50", "--seed", "2", "--out", data})
            .status == 0);
  const auto l1 = cli({"learn", "--data", data, "--truth", scratch("a.json").string(),
                       "--threads", "1"});
  const auto l3 = cli({"learn", "--data", data, "--truth", scratch("a.json").string(),
                       "--threads", "3"});
  CHECK(l1.status == 0);
  CHECK(l1.out == l3.out);
  const auto ball = scratch("ball.json").string();
  CHECK(cli({"bound", "--data", data, "--theta-lower", "1", "--theta-upper", "1", "--snr", "50",
             "--out", ball})
            .status == 0);
  const auto cover = cli({"cover", "--ball", ball, "--eps", "0.5", "--verify", "500"});
  CHECK(cover.status == 0);
  CHECK(nlohmann::json::parse(cover.out).at("verification").at("passed") == true);

  io::write_file(scratch("tiny.csv"), "dim,n,sigma,seed\n1,1,0,0\n0.5\n");
  CHECK(cli({"learn", "--data", scratch("tiny.csv").string(), "--truth",
             scratch("a.json").string()})
            .status == 1);
}
