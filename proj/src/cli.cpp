#include "simplexlearn/cli.hpp"

#include "simplexlearn/error.hpp"
#include "simplexlearn/io.hpp"
#include "simplexlearn/parallel.hpp"
#include "simplexlearn/pipeline.hpp"
#include "simplexlearn/sweep.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <optional>

namespace simplexlearn {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") out << text;
  else io::write_file(path, text);
}

struct GenArgs {
  int dim = 0;
  std::uint64_t n = 0;
  std::optional<double> sigma;
  std::optional<double> snr;
  std::uint64_t seed = 0;
  std::string truth;
  std::string out;
};

struct LearnArgs {
  std::string data;
  std::string config;
  std::vector<std::string> set;
  std::optional<std::uint64_t> seed;
  std::string truth;
  std::string out;
  bool timings = false;
};

struct EvalArgs {
  std::string a;
  std::string b;
  std::string mode = "auto";
  std::size_t budget = 200'000;
  std::uint64_t seed = 0;
};

struct BoundArgs {
  std::string data;
  double theta_lower = 0.0;
  double theta_upper = 0.0;
  std::optional<double> snr;
  std::optional<double> vol_root;
  double delta = 0.1;
  double plug_in_floor = 0.0;
  bool strict = false;
  std::string out;
};

struct CoverArgs {
  std::string ball;
  double eps = 0.0;
  std::string method = "grid";
  std::uint64_t seed = 0;
  std::uint64_t cap = kDefaultCoveringCap;
  std::size_t verify = 0;
  std::string out;
};

struct ComplexityArgs {
  std::string formula;
  std::optional<int> dim;
  std::optional<double> theta_lower;
  std::optional<double> theta_upper;
  std::optional<double> ratio;
  std::optional<double> eps;
  std::optional<double> delta;
  std::optional<std::uint64_t> candidates;
  bool radius_cap = false;
  std::optional<double> snr;
};

struct SweepArgs {
  std::string config;
  std::vector<std::string> set;
  std::string out;
};

void run_gen(const GenArgs& a, std::ostream& out) {
  if (a.sigma.has_value() == a.snr.has_value())
    throw UsageError("gen needs exactly one of --sigma and --snr");
  check_dimension(a.dim);
  const Simplex truth = a.truth.empty() ? standard_simplex(a.dim) : io::load_simplex(a.truth);
  require(truth.dim() == a.dim, ErrorCode::kDimension, "--truth dimension differs from --dim");
  double sigma = 0.0;
  if (a.sigma) {
    require(*a.sigma >= 0.0, ErrorCode::kParameter, "--sigma must be >= 0");
    sigma = *a.sigma;
  } else {
    require(*a.snr > 0.0, ErrorCode::kParameter, "--snr must be positive");
    sigma = std::pow(truth.volume(), 1.0 / a.dim) / *a.snr;
  }
  const NoisyDataset d = generate_dataset(truth, a.n, sigma, a.seed);
  if (a.out.empty() || a.out == "-") out << io::dataset_to_csv(d);
  else io::save_dataset(a.out, d);
}

void run_learn(const LearnArgs& a, int threads, std::ostream& out) {
  ConfigMap map = a.config.empty() ? ConfigMap{} : load_config(a.config);
  for (const auto& s : a.set) apply_override(map, s);
  if (a.seed) map["seed"] = std::to_string(*a.seed);
  if (!a.truth.empty()) map["truth"] = a.truth;
  const RunConfig config = run_config_from_map(map);
  const NoisyDataset data = io::load_dataset(a.data);
  const RunResult r = learn(data, config, threads);
  emit(run_result_to_json(r, a.timings).dump(2) + "\n", a.out, out);
}

void run_eval(const EvalArgs& a, std::ostream& out) {
  const Simplex s1 = io::load_simplex(a.a);
  const Simplex s2 = io::load_simplex(a.b);
  require(s1.dim() == s2.dim(), ErrorCode::kDimension, "simplices differ in dimension");
  RngStream rng(a.seed, stream_key(StreamKind::kMonteCarlo));
  const TvEstimate tv = tv_uniform(s1, s2, parse_measure_mode(a.mode), a.budget, rng);
  json j = io::tv_to_json(tv);
  j["tv"] = tv.value;
  out << j.dump(2) << "\n";
}

void run_bound(const BoundArgs& a, std::ostream& out) {
  if (a.snr && a.vol_root) throw UsageError("bound takes at most one of --snr and --vol-root");
  const NoisyDataset data = io::load_dataset(a.data);
  const auto [first, second] = split_half(data);
  std::optional<NoiseModel> noise;
  if (a.snr) noise = NoiseModel::from_snr(*a.snr, data.sigma);
  if (a.vol_root) noise = NoiseModel::from_vol_root(*a.vol_root, data.sigma);
  BoundingOptions opts;
  opts.delta = a.delta;
  opts.strict = a.strict;
  opts.plug_in_floor = a.plug_in_floor;
  const BoundingBall ball =
      bounding_ball(first, IsoperimetryParams{a.theta_lower, a.theta_upper}, noise, opts);
  emit(io::ball_to_json(ball).dump(2) + "\n", a.out, out);
}

void run_cover(const CoverArgs& a, std::ostream& out) {
  const BoundingBall ball = io::ball_from_json(json::parse(io::read_file(a.ball)));
  const CoverMethod method = parse_cover_method(a.method);
  CoveringSet cov;
  if (method == CoverMethod::kRandom) {
    RngStream rng(a.seed, stream_key(StreamKind::kCovering));
    cov = random_covering(ball, a.eps, rng, a.cap);
  } else {
    cov = grid_covering(ball, a.eps, a.cap);
  }
  json j = io::covering_to_json(cov);
  if (a.verify > 0) {
    RngStream rng(a.seed, stream_key(StreamKind::kProbe));
    j["verification"] = io::cover_report_to_json(verify_cover(cov, a.verify, rng));
  }
  emit(j.dump(2) + "\n", a.out, out);
}

template <class T>
T need(const std::optional<T>& v, const char* flag, const std::string& formula) {
  if (!v) throw UsageError("--formula " + formula + " requires " + flag);
  return *v;
}

void run_complexity(const ComplexityArgs& a, std::ostream& out) {
  const std::string& f = a.formula;
  json inputs = json::object();
  json flags = json::array({"natural-log"});
  double exact = 0.0;
  std::uint64_t n = 0;

  auto resolve_ratio = [&]() {
    if (a.radius_cap) {
      if (a.ratio) throw UsageError("--radius-cap and --ratio are mutually exclusive");
      const int dim = need(a.dim, "--dim", f);
      const double tl = need(a.theta_lower, "--theta-lower", f);
      const double snr = need(a.snr, "--snr", f);
      inputs["snr"] = snr;
      flags.push_back("ratio-from-radius-cap");
      return radius_cap_ratio(dim, tl, snr);
    }
    return need(a.ratio, "--ratio", f);
  };

  if (f == "thm1") {
    const auto m = need(a.candidates, "--M", f);
    const double eps = need(a.eps, "--eps", f);
    const double delta = need(a.delta, "--delta", f);
    inputs = {{"M", m}, {"eps", eps}, {"delta", delta}};
    exact = min_samples_selection_exact(m, eps, delta);
    n = min_samples_selection(m, eps, delta);
  } else if (f == "thm2") {
    const int dim = need(a.dim, "--dim", f);
    const double tu = need(a.theta_upper, "--theta-upper", f);
    const double ratio = resolve_ratio();
    const double eps = need(a.eps, "--eps", f);
    const double delta = need(a.delta, "--delta", f);
    inputs.update({{"dim", dim}, {"theta_upper", tu}, {"ratio", ratio}, {"eps", eps},
                   {"delta", delta}});
    flags.push_back("numerator-2K(K+1)-theorem-statement");
    exact = sample_complexity_thm2_exact(dim, tu, ratio, 1.0, eps, delta);
    n = sample_complexity_thm2(dim, tu, ratio, 1.0, eps, delta);
  } else if (f == "thm3") {
    const int dim = need(a.dim, "--dim", f);
    const double tl = need(a.theta_lower, "--theta-lower", f);
    const double tu = need(a.theta_upper, "--theta-upper", f);
    const double ratio = resolve_ratio();
    const double eps = need(a.eps, "--eps", f);
    const double delta = need(a.delta, "--delta", f);
    inputs.update({{"dim", dim}, {"theta_lower", tl}, {"theta_upper", tu}, {"ratio", ratio},
                   {"eps", eps}, {"delta", delta}});
    flags.push_back("numerator-K(K+1)-appendix");
    inputs["ball_term"] = thm3_ball_term(dim, tl, delta);
    exact = sample_complexity_thm3_exact(dim, tl, tu, ratio, 1.0, eps, delta);
    n = sample_complexity_thm3(dim, tl, tu, ratio, 1.0, eps, delta);
  } else if (f == "lemma1") {
    const int dim = need(a.dim, "--dim", f);
    const double tl = need(a.theta_lower, "--theta-lower", f);
    const double delta = need(a.delta, "--delta", f);
    inputs = {{"dim", dim}, {"theta_lower", tl}, {"delta", delta}};
    flags.push_back("counts-pairs");
    exact = min_samples_lemma1_exact(dim, tl, delta);
    n = min_samples_lemma1(dim, tl, delta);
  } else {
    throw UsageError("unknown --formula '" + f + "' (expected thm1, thm2, thm3 or lemma1)");
  }
  json j = {{"n", n}, {"formula", f}, {"inputs", inputs}, {"flags", flags}, {"exact", exact}};
  out << j.dump(2) << "\n";
}

void run_sweep_cmd(const SweepArgs& a, int threads, std::ostream& out) {
  ConfigMap map = load_config(a.config);
  for (const auto& s : a.set) apply_override(map, s);
  const SweepConfig config = sweep_config_from_map(map);
  emit(sweep_to_csv(run_sweep(config, threads)), a.out, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learn a simplex from noisy uniform samples.", "simplexlearn"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());
  int threads_flag = 0;
  app.add_option("--threads", threads_flag,
                 "Worker threads (default: SIMPLEXLEARN_THREADS or all cores)");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Sample a noisy dataset from a simplex");
  gen_cmd->add_option("--dim", gen.dim, "Dimension K")->required();
  gen_cmd->add_option("--n", gen.n, "Number of samples")->required();
  gen_cmd->add_option("--sigma", gen.sigma, "Noise standard deviation");
  gen_cmd->add_option("--snr", gen.snr, "Vol^(1/K) / sigma");
  gen_cmd->add_option("--seed", gen.seed, "Master seed");
  gen_cmd->add_option("--truth", gen.truth, "Simplex file (default: standard simplex)");
  gen_cmd->add_option("--out", gen.out, "Output .csv or .json (default: stdout CSV)");

  LearnArgs learn_args;
  auto* learn_cmd = app.add_subcommand("learn", "Run the full pipeline on a dataset");
  learn_cmd->add_option("--data", learn_args.data, "Dataset file")->required();
  learn_cmd->add_option("--config", learn_args.config, "Run config file");
  learn_cmd->add_option("--set", learn_args.set, "Override a config key (key=value)");
  learn_cmd->add_option("--seed", learn_args.seed, "Override the config seed");
  learn_cmd->add_option("--truth", learn_args.truth, "Truth simplex file");
  learn_cmd->add_option("--out", learn_args.out, "Result JSON (default: stdout)");
  learn_cmd->add_flag("--timings", learn_args.timings, "Include stage timings in the result");
  learn_cmd->add_option("--threads", threads_flag, "Worker threads");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "TV distance between two uniform simplices");
  eval_cmd->add_option("--a", eval.a, "First simplex file")->required();
  eval_cmd->add_option("--b", eval.b, "Second simplex file")->required();
  eval_cmd->add_option("--mode", eval.mode, "exact | mc | auto");
  eval_cmd->add_option("--budget", eval.budget, "Monte Carlo samples");
  eval_cmd->add_option("--seed", eval.seed, "Monte Carlo seed");

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Bounding ball from the first half of a dataset");
  bound_cmd->add_option("--data", bound.data, "Dataset file")->required();
  bound_cmd->add_option("--theta-lower", bound.theta_lower, "Diameter constant")->required();
  bound_cmd->add_option("--theta-upper", bound.theta_upper, "Facet constant")->required();
  bound_cmd->add_option("--snr", bound.snr, "Configured SNR (default: plug-in)");
  bound_cmd->add_option("--vol-root", bound.vol_root, "Configured Vol^(1/K)");
  bound_cmd->add_option("--delta", bound.delta, "Failure probability");
  bound_cmd->add_option("--plug-in-floor", bound.plug_in_floor, "Plug-in Vol^(1/K) floor");
  bound_cmd->add_flag("--strict", bound.strict, "Fail when too few pairs");
  bound_cmd->add_option("--out", bound.out, "Ball JSON (default: stdout)");

  CoverArgs cover;
  auto* cover_cmd = app.add_subcommand("cover", "Covering set of a ball");
  cover_cmd->add_option("--ball", cover.ball, "Ball JSON")->required();
  cover_cmd->add_option("--eps", cover.eps, "Covering resolution")->required();
  cover_cmd->add_option("--method", cover.method, "grid | random");
  cover_cmd->add_option("--seed", cover.seed, "Seed for random covering and probes");
  cover_cmd->add_option("--cap", cover.cap, "Maximum covering size");
  cover_cmd->add_option("--verify", cover.verify, "Probe points for the coverage check");
  cover_cmd->add_option("--out", cover.out, "Covering JSON (default: stdout)");

  ComplexityArgs cx;
  auto* cx_cmd = app.add_subcommand("complexity", "Sample-size calculators");
  cx_cmd->add_option("--formula", cx.formula, "thm1 | thm2 | thm3 | lemma1")->required();
  cx_cmd->add_option("--dim", cx.dim, "Dimension K");
  cx_cmd->add_option("--theta-lower", cx.theta_lower, "Diameter constant");
  cx_cmd->add_option("--theta-upper", cx.theta_upper, "Facet constant");
  cx_cmd->add_option("--ratio", cx.ratio, "R / Vol^(1/K)");
  cx_cmd->add_option("--eps", cx.eps, "Accuracy");
  cx_cmd->add_option("--delta", cx.delta, "Failure probability");
  cx_cmd->add_option("--M", cx.candidates, "Number of candidates");
  cx_cmd->add_flag("--radius-cap", cx.radius_cap, "Use the radius cap at --snr as the ratio");
  cx_cmd->add_option("--snr", cx.snr, "SNR for --radius-cap");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid of seeded experiments to CSV");
  sweep_cmd->add_option("--config", sweep.config, "Sweep config file")->required();
  sweep_cmd->add_option("--set", sweep.set, "Override a config key (key=value)");
  sweep_cmd->add_option("--out", sweep.out, "CSV output (default: stdout)");
  sweep_cmd->add_option("--threads", threads_flag, "Worker threads");

  std::vector<std::string> rest(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  CLI::App* used = app.get_subcommands().front();
  try {
    const int threads = resolve_threads(threads_flag);
    if (used == gen_cmd) run_gen(gen, out);
    else if (used == learn_cmd) run_learn(learn_args, threads, out);
    else if (used == eval_cmd) run_eval(eval, out);
    else if (used == bound_cmd) run_bound(bound, out);
    else if (used == cover_cmd) run_cover(cover, out);
    else if (used == cx_cmd) run_complexity(cx, out);
    else if (used == sweep_cmd) run_sweep_cmd(sweep, threads, out);
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << used->help();
    return 2;
  } catch (const Error& e) {
    err << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return e.code() == ErrorCode::kParameter ? 2 : 1;
  } catch (const json::exception& e) {
    err << "error [io]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error [internal]: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace simplexlearn
