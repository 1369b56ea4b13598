#include "simplexlearn/sweep.hpp"

#include "simplexlearn/error.hpp"
#include "simplexlearn/io.hpp"
#include "simplexlearn/parallel.hpp"
#include "simplexlearn/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace simplexlearn {
namespace {

template <class T, class Parse>
std::vector<T> list_of(const ConfigMap& map, const std::string& key, Parse parse,
                       std::vector<T> fallback) {
  const auto it = map.find(key);
  if (it == map.end()) return fallback;
  std::vector<T> out;
  for (const auto& item : split_list(it->second)) out.push_back(parse(key, item));
  require(!out.empty(), ErrorCode::kParameter, "sweep axis '" + key + "' is empty");
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& value) {
  const auto dots = value.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t a = parse_count("seeds", value.substr(0, dots));
    const std::uint64_t b = parse_count("seeds", value.substr(dots + 2));
    require(a <= b, ErrorCode::kParameter, "seeds range is empty");
    require(b - a < 10'000'000, ErrorCode::kParameter, "seeds range is too long");
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = a; s <= b; ++s) out.push_back(s);
    return out;
  }
  std::vector<std::uint64_t> out;
  for (const auto& item : split_list(value)) out.push_back(parse_count("seeds", item));
  require(!out.empty(), ErrorCode::kParameter, "seeds list is empty");
  return out;
}

std::string num(double v) { return io::format_double(v); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

struct Cell {
  int dim;
  std::uint64_t n;
  std::optional<double> sigma;
  std::optional<double> snr;
  double eps_rep;
  double delta;
  std::string theta_lower;
  std::string theta_upper;
  std::string covering;
};

std::vector<Cell> expand(const SweepConfig& c) {
  std::vector<Cell> cells;
  const bool by_snr = !c.snr.empty();
  const auto& noise = by_snr ? c.snr : c.sigma;
  for (int dim : c.dim)
    for (auto n : c.n)
      for (double z : noise)
        for (double eps : c.eps_rep)
          for (double delta : c.delta)
            for (const auto& tl : c.theta_lower)
              for (const auto& tu : c.theta_upper)
                for (const auto& cov : c.covering) {
                  Cell cell{dim, n, std::nullopt, std::nullopt, eps, delta, tl, tu, cov};
                  if (by_snr) cell.snr = z;
                  else cell.sigma = z;
                  cells.push_back(cell);
                }
  return cells;
}

Simplex truth_for(const SweepConfig& c, int dim) {
  switch (c.truth) {
    case TruthKind::kStandard: return standard_simplex(dim);
    case TruthKind::kRandom: {
      RngStream rng(c.truth_seed, stream_key(StreamKind::kTruth, static_cast<std::uint64_t>(dim)));
      return random_simplex(dim, IsoperimetryParams{2.0, 2.0}, 1.0, rng);
    }
    case TruthKind::kFile: {
      Simplex s = io::load_simplex(c.truth_path);
      require(s.dim() == dim, ErrorCode::kDimension, "truth file dimension differs from the cell");
      return s;
    }
  }
  return standard_simplex(dim);
}

}  // namespace

std::size_t SweepConfig::cells() const {
  return dim.size() * n.size() * (snr.empty() ? sigma.size() : snr.size()) * eps_rep.size() *
         delta.size() * theta_lower.size() * theta_upper.size() * covering.size();
}

SweepConfig sweep_config_from_map(const ConfigMap& map) {
  static const std::vector<std::string> axis_keys = {
      "dim", "n", "sigma", "snr", "eps_rep", "delta", "theta_lower", "theta_upper",
      "covering", "seeds", "truth", "truth_seed"};
  SweepConfig c;
  for (const auto& [k, v] : map) {
    if (std::find(axis_keys.begin(), axis_keys.end(), k) != axis_keys.end()) continue;
    const auto& run_keys = run_config_keys();
    require(std::find(run_keys.begin(), run_keys.end(), k) != run_keys.end(),
            ErrorCode::kParameter, "unknown sweep key '" + k + "'");
    c.run[k] = v;
  }
  auto as_real = [](const std::string& k, const std::string& v) { return parse_real(k, v); };
  auto as_count = [](const std::string& k, const std::string& v) { return parse_count(k, v); };
  auto as_text = [](const std::string&, const std::string& v) { return v; };
  auto as_dim = [](const std::string& k, const std::string& v) {
    const auto d = parse_count(k, v);
    require(d >= 1 && d <= static_cast<std::uint64_t>(kMaxDim), ErrorCode::kParameter,
            "dim out of range: " + v);
    return static_cast<int>(d);
  };
  c.dim = list_of<int>(map, "dim", as_dim, c.dim);
  c.n = list_of<std::uint64_t>(map, "n", as_count, c.n);
  c.sigma = list_of<double>(map, "sigma", as_real, {});
  c.snr = list_of<double>(map, "snr", as_real, {});
  require(c.sigma.empty() != c.snr.empty(), ErrorCode::kParameter,
          "a sweep needs exactly one of sigma and snr");
  for (double s : c.sigma) require(s >= 0.0, ErrorCode::kParameter, "sigma must be >= 0");
  for (double s : c.snr) require(s > 0.0, ErrorCode::kParameter, "snr must be positive");
  c.eps_rep = list_of<double>(map, "eps_rep", as_real, c.eps_rep);
  c.delta = list_of<double>(map, "delta", as_real, c.delta);
  c.theta_lower = list_of<std::string>(map, "theta_lower", as_text, c.theta_lower);
  c.theta_upper = list_of<std::string>(map, "theta_upper", as_text, c.theta_upper);
  c.covering = list_of<std::string>(map, "covering", as_text, c.covering);
  for (const auto& cov : c.covering) {
    try {
      parse_cover_method(cov);
    } catch (const Error& e) {
      fail(ErrorCode::kParameter, std::string("covering: ") + e.what());
    }
  }
  if (auto it = map.find("seeds"); it != map.end()) c.seeds = parse_seeds(it->second);
  if (auto it = map.find("truth"); it != map.end()) {
    if (it->second == "standard") c.truth = TruthKind::kStandard;
    else if (it->second == "random") c.truth = TruthKind::kRandom;
    else {
      require(!it->second.empty(), ErrorCode::kParameter, "truth is empty");
      c.truth = TruthKind::kFile;
      c.truth_path = it->second;
    }
  }
  if (auto it = map.find("truth_seed"); it != map.end())
    c.truth_seed = parse_count("truth_seed", it->second);
  // Validate the shared keys and every cell's run config up front.
  for (const auto& cell : expand(c)) {
    ConfigMap m = c.run;
    m["eps_rep"] = num(cell.eps_rep);
    m["delta"] = num(cell.delta);
    m["theta_lower"] = cell.theta_lower;
    m["theta_upper"] = cell.theta_upper;
    m["covering"] = cell.covering;
    run_config_from_map(m);
  }
  return c;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols = {
      "cell",        "seed",        "dim",          "n",          "sigma",      "snr",
      "eps_rep",     "delta",       "theta_lower",  "theta_upper", "covering",  "candidates",
      "winner_wins", "tv_to_truth", "lemma3_bound", "n_thm1",     "n_thm2",     "n_thm3",
      "m_lemma1",    "radius",      "error",        "t_bound_ms", "t_cover_ms", "t_enumerate_ms",
      "t_select_ms", "t_total_ms"};
  return cols;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config, int threads) {
  const std::vector<Cell> cells = expand(config);
  require(!cells.empty() && !config.seeds.empty(), ErrorCode::kParameter, "sweep grid is empty");
  const std::size_t seeds = config.seeds.size();
  std::vector<SweepRow> rows(cells.size() * seeds);

  parallel_for(rows.size(), threads, [&](std::size_t begin, std::size_t end, int) {
    for (std::size_t t = begin; t < end; ++t) {
      const std::size_t ci = t / seeds;
      const Cell& cell = cells[ci];
      const std::uint64_t seed = config.seeds[t % seeds];
      std::vector<std::string> f(sweep_columns().size());
      f[0] = std::to_string(ci);
      f[1] = std::to_string(seed);
      f[2] = std::to_string(cell.dim);
      f[3] = std::to_string(cell.n);
      f[6] = num(cell.eps_rep);
      f[7] = num(cell.delta);
      f[8] = cell.theta_lower;
      f[9] = cell.theta_upper;
      f[10] = cell.covering;
      try {
        const Simplex truth = truth_for(config, cell.dim);
        const double vol_root = std::pow(truth.volume(), 1.0 / cell.dim);
        const double sigma = cell.sigma ? *cell.sigma : vol_root / *cell.snr;
        f[4] = num(sigma);
        f[5] = sigma > 0.0 ? num(vol_root / sigma) : "inf";

        ConfigMap m = config.run;
        m["seed"] = std::to_string(seed);
        m["eps_rep"] = f[6];
        m["delta"] = f[7];
        m["theta_lower"] = cell.theta_lower;
        m["theta_upper"] = cell.theta_upper;
        m["covering"] = cell.covering;
        const RunConfig rc = run_config_from_map(m);

        NoisyDataset data = generate_dataset(truth, cell.n, sigma, seed);
        const RunResult r = learn(data, rc, 1);
        const double tl = *r.config.theta_lower;
        const double tu = *r.config.theta_upper;
        const std::size_t m_fam = r.selection.wins.size();
        f[8] = num(tl);
        f[9] = num(tu);
        f[11] = std::to_string(m_fam);
        f[12] = std::to_string(r.selection.wins[r.selection.winner]);
        f[13] = r.tv_to_truth ? num(r.tv_to_truth->value) : "";
        f[14] = r.lemma3_bound ? num(*r.lemma3_bound) : "";
        auto guarded = [](auto fn) -> std::string {
          try {
            return std::to_string(fn());
          } catch (const Error&) {
            return "";
          }
        };
        const double radius = r.ball.radius;
        const double vr = r.quantization.vol_root;
        f[15] = guarded([&] { return min_samples_selection(m_fam, rc.eps_rep, rc.delta); });
        f[16] = guarded(
            [&] { return sample_complexity_thm2(cell.dim, tu, radius, vr, rc.eps_rep, rc.delta); });
        f[17] = guarded([&] {
          return sample_complexity_thm3(cell.dim, tl, tu, radius, vr, rc.eps_rep, rc.delta);
        });
        f[18] = guarded([&] { return min_samples_lemma1(cell.dim, tl, rc.delta); });
        f[19] = num(radius);
        f[21] = num(r.timings.bound_ms);
        f[22] = num(r.timings.cover_ms);
        f[23] = num(r.timings.enumerate_ms);
        f[24] = num(r.timings.select_ms);
        f[25] = num(r.timings.total_ms);
      } catch (const Error& e) {
        f[20] = std::string(error_code_name(e.code())) + ": " + e.what();
      } catch (const std::exception& e) {
        f[20] = std::string("internal: ") + e.what();
      }
      rows[t] = SweepRow{ci, seed, std::move(f)};
    }
  });
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out;
  const auto& cols = sweep_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.fields.size(); ++i)
      out += (i ? "," : "") + csv_field(row.fields[i]);
    out += '\n';
  }
  return out;
}

}  // namespace simplexlearn
