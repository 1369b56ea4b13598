#include "simplexlearn/select.hpp"

#include "simplexlearn/error.hpp"
#include "simplexlearn/parallel.hpp"
#include "simplexlearn/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace simplexlearn {
namespace {

void check_pair(std::size_t i, std::size_t j, std::size_t m) {
  require(i != j, ErrorCode::kInvalidPair, "a Scheffe set needs two distinct candidates");
  require(i < m && j < m, ErrorCode::kInvalidPair, "candidate index out of range");
}

bool in_scheffe_set(const Simplex& si, const Simplex& sj, const Point& x) {
  return si.contains(x, 0.0) && (!sj.contains(x, 0.0) || si.volume() < sj.volume());
}

// Probability of A_ij under the uniform law on `source`, by sampling.
Estimate sampled_measure(const Simplex& source, const Simplex& si, const Simplex& sj,
                         std::size_t budget, RngStream& rng) {
  std::size_t hits = 0;
  for (std::size_t b = 0; b < budget; ++b)
    if (in_scheffe_set(si, sj, sample_uniform_simplex_point(source, rng))) ++hits;
  const double p = static_cast<double>(hits) / static_cast<double>(budget);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(budget))};
}

std::size_t pair_rank(std::size_t i, std::size_t j, std::size_t m) {
  return i * m - i * (i + 1) / 2 + (j - i - 1);
}

struct ContestOutcome {
  ContestRecord record;
  bool i_wins = false;
};

ContestOutcome decide(std::uint32_t i, std::uint32_t j, ScheffeMeasures p, double mu,
                      double se_i = 0.0, double se_j = 0.0) {
  ContestOutcome out;
  out.i_wins = std::abs(p.p_i - mu) <= std::abs(p.p_j - mu);
  out.record = {i, j, p.p_i, p.p_j, se_i, se_j, mu, out.i_wins ? i : j};
  return out;
}

// Runs `contest(i, j)` for every pair with rows folded (t, M-1-t) so each task
// carries about M-1 contests. Wins are merged in worker order.
template <class Contest>
std::vector<std::uint64_t> run_contests(std::size_t m, int threads, const Contest& contest) {
  const std::size_t tasks = (m + 1) / 2;
  const int workers = std::max(1, threads);
  std::vector<std::vector<std::uint64_t>> local(static_cast<std::size_t>(workers),
                                                std::vector<std::uint64_t>(m, 0));
  parallel_for(tasks, workers, [&](std::size_t begin, std::size_t end, int w) {
    auto& wins = local[static_cast<std::size_t>(w)];
    auto row = [&](std::size_t i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (contest(i, j)) ++wins[i];
        else ++wins[j];
      }
    };
    for (std::size_t t = begin; t < end; ++t) {
      row(t);
      if (m - 1 - t != t) row(m - 1 - t);
    }
  });
  std::vector<std::uint64_t> wins(m, 0);
  for (const auto& l : local)
    for (std::size_t c = 0; c < m; ++c) wins[c] += l[c];
  return wins;
}

// K = 1 with exact measures: every quantity reduces to interval endpoints and
// sample ranks, so each contest is O(1). Sample ranks are monotone in the
// endpoints, so the overlap count is min(upto) - max(below), clamped at 0.
std::vector<std::uint64_t> interval_tournament(std::span<const Simplex> family,
                                               const PointSet& samples, bool record,
                                               std::vector<ContestRecord>& records,
                                               int threads) {
  const std::size_t m = family.size();
  const double n = static_cast<double>(samples.size());
  std::vector<double> xs;
  xs.reserve(samples.size());
  for (const auto& p : samples) xs.push_back(p(0));
  std::sort(xs.begin(), xs.end());

  std::vector<double> lo(m), hi(m), vol(m);
  std::vector<std::int64_t> below(m), upto(m);
  for (std::size_t c = 0; c < m; ++c) {
    const auto& v = family[c].vertices();
    lo[c] = std::min(v(0, 0), v(0, 1));
    hi[c] = std::max(v(0, 0), v(0, 1));
    vol[c] = family[c].volume();
    below[c] = std::lower_bound(xs.begin(), xs.end(), lo[c]) - xs.begin();
    upto[c] = std::upper_bound(xs.begin(), xs.end(), hi[c]) - xs.begin();
  }

  if (record) {
    return run_contests(m, threads, [&](std::size_t i, std::size_t j) {
      const double inter = std::max(std::min(hi[i], hi[j]) - std::max(lo[i], lo[j]), 0.0);
      const ScheffeMeasures p = scheffe_measures(vol[i], vol[j], inter);
      std::int64_t count = upto[i] - below[i];
      if (!(vol[i] < vol[j]))
        count -= std::max<std::int64_t>(
            std::min(upto[i], upto[j]) - std::max(below[i], below[j]), 0);
      const ContestOutcome out = decide(static_cast<std::uint32_t>(i),
                                        static_cast<std::uint32_t>(j), p,
                                        static_cast<double>(count) / n);
      records[pair_rank(i, j, m)] = out.record;
      return out.i_wins;
    });
  }

  const std::size_t tasks = (m + 1) / 2;
  const int workers = std::max(1, threads);
  std::vector<std::vector<std::uint64_t>> local(static_cast<std::size_t>(workers),
                                                std::vector<std::uint64_t>(m, 0));
  parallel_for(tasks, workers, [&](std::size_t begin, std::size_t end, int w) {
    std::uint64_t* wins = local[static_cast<std::size_t>(w)].data();
    auto row = [&](std::size_t i) {
      const double lo_i = lo[i], hi_i = hi[i], vol_i = vol[i];
      const std::int64_t below_i = below[i], upto_i = upto[i];
      const std::int64_t inside_i = upto_i - below_i;
      std::uint64_t won = 0;
      for (std::size_t j = i + 1; j < m; ++j) {
        const double inter = std::max(std::min(hi_i, hi[j]) - std::max(lo_i, lo[j]), 0.0);
        const std::int64_t overlap =
            std::max<std::int64_t>(std::min(upto_i, upto[j]) - std::max(below_i, below[j]), 0);
        const bool smaller = vol_i < vol[j];
        const double p_i = smaller ? 1.0 : (vol_i - inter) / vol_i;
        const double p_j = smaller ? inter / vol[j] : 0.0;
        const std::int64_t count = smaller ? inside_i : inside_i - overlap;
        const double mu = static_cast<double>(count) / n;
        const bool i_wins = std::abs(p_i - mu) <= std::abs(p_j - mu);
        won += i_wins;
        wins[j] += !i_wins;
      }
      wins[i] += won;
    };
    for (std::size_t t = begin; t < end; ++t) {
      row(t);
      if (m - 1 - t != t) row(m - 1 - t);
    }
  });
  std::vector<std::uint64_t> wins(m, 0);
  for (const auto& l : local)
    for (std::size_t c = 0; c < m; ++c) wins[c] += l[c];
  return wins;
}

std::vector<std::uint64_t> general_tournament(std::span<const Simplex> family,
                                              const PointSet& samples, MeasureMode mode,
                                              const TournamentOptions& options, bool record,
                                              std::vector<ContestRecord>& records) {
  const std::size_t m = family.size();
  const std::size_t n = samples.size();
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> bits(m * words, 0);
  std::vector<std::uint64_t> counts(m, 0);
  parallel_for(m, options.threads, [&](std::size_t begin, std::size_t end, int) {
    for (std::size_t c = begin; c < end; ++c) {
      std::uint64_t* row = bits.data() + c * words;
      for (std::size_t s = 0; s < n; ++s)
        if (family[c].contains(samples[s], 0.0)) row[s / 64] |= std::uint64_t{1} << (s % 64);
      std::uint64_t total = 0;
      for (std::size_t w = 0; w < words; ++w) total += static_cast<std::uint64_t>(std::popcount(row[w]));
      counts[c] = total;
    }
  });

  return run_contests(m, options.threads, [&](std::size_t i, std::size_t j) {
    const Simplex& si = family[i];
    const Simplex& sj = family[j];
    std::uint64_t count = counts[i];
    if (!(si.volume() < sj.volume())) {
      const std::uint64_t* bi = bits.data() + i * words;
      const std::uint64_t* bj = bits.data() + j * words;
      count = 0;
      for (std::size_t w = 0; w < words; ++w)
        count += static_cast<std::uint64_t>(std::popcount(bi[w] & ~bj[w]));
    }
    const double mu = static_cast<double>(count) / static_cast<double>(n);
    ContestOutcome out;
    if (mode == MeasureMode::kExact) {
      const ScheffeMeasures p =
          scheffe_measures(si.volume(), sj.volume(), intersection_volume_exact(si, sj));
      out = decide(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), p, mu);
    } else {
      const RngStream base(options.seed, stream_key(StreamKind::kContest, i, j));
      RngStream rng_i = base.substream(0);
      RngStream rng_j = base.substream(1);
      const Estimate pi = sampled_measure(si, si, sj, options.mc_budget, rng_i);
      const Estimate pj = sampled_measure(sj, si, sj, options.mc_budget, rng_j);
      out = decide(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                   {pi.value, pj.value}, mu, pi.standard_error, pj.standard_error);
    }
    if (record) records[pair_rank(i, j, m)] = out.record;
    return out.i_wins;
  });
}

}  // namespace

bool scheffe_membership(std::size_t i, std::size_t j, const Point& x,
                        std::span<const Simplex> family) {
  check_pair(i, j, family.size());
  return in_scheffe_set(family[i], family[j], x);
}

ScheffeMeasures scheffe_measures(double vol_i, double vol_j, double intersection) {
  ScheffeMeasures p;
  if (vol_i < vol_j) {
    p.p_i = 1.0;
    p.p_j = intersection / vol_j;
  } else {
    p.p_i = (vol_i - intersection) / vol_i;
    p.p_j = 0.0;
  }
  return p;
}

Estimate candidate_measure_of_scheffe(std::size_t i, std::size_t j,
                                      std::span<const Simplex> family, MeasureMode mode,
                                      std::size_t budget, RngStream& rng) {
  check_pair(i, j, family.size());
  const Simplex& si = family[i];
  const Simplex& sj = family[j];
  require(si.dim() == sj.dim(), ErrorCode::kDimension, "candidates differ in dimension");
  if (mode == MeasureMode::kAuto) mode = resolve_mode(mode, si.dim());
  if (mode == MeasureMode::kExact) {
    require(si.dim() <= 2, ErrorCode::kUnsupportedExact,
            "exact Scheffe measures are available for K <= 2 only");
    return {scheffe_measures(si.volume(), sj.volume(), intersection_volume_exact(si, sj)).p_i,
            0.0};
  }
  require(budget >= 1000, ErrorCode::kParameter, "Monte Carlo budget must be at least 1000");
  return sampled_measure(si, si, sj, budget, rng);
}

double empirical_measure(const PointSet& samples,
                         const std::function<bool(const Point&)>& predicate) {
  require(!samples.empty(), ErrorCode::kInsufficientData, "empirical measure of no samples");
  std::size_t hits = 0;
  for (const auto& x : samples)
    if (predicate(x)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

double min_samples_selection_exact(std::size_t candidates, double eps, double delta) {
  require(candidates >= 1, ErrorCode::kParameter, "need at least one candidate");
  require(eps > 0.0 && eps < 1.0, ErrorCode::kParameter, "epsilon must lie in (0, 1)");
  require(delta > 0.0 && delta < 1.0, ErrorCode::kParameter, "delta must lie in (0, 1)");
  const double m = static_cast<double>(candidates);
  return std::log(3.0 * m * m / delta) / (2.0 * eps * eps);
}

std::uint64_t min_samples_selection(std::size_t candidates, double eps, double delta) {
  return static_cast<std::uint64_t>(std::ceil(min_samples_selection_exact(candidates, eps, delta)));
}

double selection_accuracy(std::size_t candidates, std::size_t n, double delta) {
  require(n >= 1, ErrorCode::kInsufficientData, "need at least one sample");
  require(delta > 0.0 && delta < 1.0, ErrorCode::kParameter, "delta must lie in (0, 1)");
  const double m = static_cast<double>(std::max<std::size_t>(candidates, 1));
  return std::sqrt(std::log(3.0 * m * m / delta) / (2.0 * static_cast<double>(n)));
}

SelectionReport scheffe_tournament(std::span<const Simplex> family, const PointSet& samples,
                                   const TournamentOptions& options) {
  require(!family.empty(), ErrorCode::kEmptyFamily, "tournament needs at least one candidate");
  require(!samples.empty(), ErrorCode::kInsufficientData, "tournament needs samples");
  const int dim = family.front().dim();
  for (const auto& s : family)
    require(s.dim() == dim, ErrorCode::kDimension, "candidates differ in dimension");
  for (const auto& x : samples)
    require(x.size() == dim, ErrorCode::kDimension, "sample dimension mismatch");

  SelectionReport report;
  report.mode = resolve_mode(options.mode, dim);
  if (report.mode == MeasureMode::kExact)
    require(dim <= 2, ErrorCode::kUnsupportedExact,
            "exact tournament measures are available for K <= 2 only; use mc");
  else
    require(options.mc_budget >= 1000, ErrorCode::kParameter,
            "Monte Carlo budget must be at least 1000");

  const std::size_t m = family.size();
  report.guarantee.delta = options.delta;
  report.guarantee.n = samples.size();
  report.guarantee.candidates = m;
  report.guarantee.eps = selection_accuracy(m, samples.size(), options.delta);
  report.guarantee.additive = 4.0 * report.guarantee.eps;

  if (m == 1) {
    report.wins.assign(1, 0);
    report.contests_recorded = true;
    return report;
  }

  report.contests_recorded = m <= options.contest_record_limit;
  if (report.contests_recorded) report.contests.resize(m * (m - 1) / 2);

  if (dim == 1 && report.mode == MeasureMode::kExact)
    report.wins = interval_tournament(family, samples, report.contests_recorded,
                                      report.contests, options.threads);
  else
    report.wins = general_tournament(family, samples, report.mode, options,
                                     report.contests_recorded, report.contests);

  report.winner = static_cast<std::size_t>(
      std::max_element(report.wins.begin(), report.wins.end()) - report.wins.begin());
  return report;
}

}  // namespace simplexlearn
