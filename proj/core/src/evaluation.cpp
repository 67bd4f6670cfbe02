#include "trnrp/evaluation.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "trnrp/rollout.hpp"
#include "trnrp/version.hpp"

namespace trnrp {

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

GapStats gap_stats(std::span<const double> gaps_pct) {
  GapStats g;
  g.count = gaps_pct.size();
  g.mean = mean(gaps_pct);
  g.degenerate = g.count < 2;
  const double half =
      g.degenerate ? 0.0 : kZ95 * sample_sd(gaps_pct) / std::sqrt(static_cast<double>(g.count));
  g.ci_lo = g.mean - half;
  g.ci_hi = g.mean + half;
  return g;
}

std::vector<double> percentage_gaps(std::span<const double> totals, std::span<const double> best) {
  if (totals.size() != best.size()) throw std::invalid_argument("gap inputs differ in length");
  std::vector<double> gaps(totals.size());
  for (std::size_t i = 0; i < totals.size(); ++i) {
    const double diff = totals[i] - best[i];
    gaps[i] = diff == 0.0 ? 0.0 : 100.0 * diff / best[i];
  }
  return gaps;
}

double paired_z(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("paired samples differ in length");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double m = mean(d);
  const double se = sample_sd(d) / std::sqrt(static_cast<double>(d.size()));
  if (se == 0.0) {
    if (m == 0.0) return 0.0;
    return m > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  }
  return m / se;
}

std::vector<Realization> draw_realizations(const Instance& instance, std::size_t count,
                                           std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Realization> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_realization(instance, rng));
  return out;
}

EvaluationReport evaluate(const Instance& instance, std::span<const Policy> policies,
                          std::size_t realizations, std::uint64_t seed) {
  const auto drawn = draw_realizations(instance, realizations, seed);
  return evaluate(instance, policies, drawn, seed);
}

EvaluationReport evaluate(const Instance& instance, std::span<const Policy> policies,
                          std::span<const Realization> realizations, std::uint64_t seed) {
  if (realizations.empty()) throw std::invalid_argument("evaluation needs at least one realization");
  if (policies.empty()) throw std::invalid_argument("evaluation needs at least one policy");

  EvaluationReport report;
  report.realizations = realizations.size();
  report.seed = seed;
  for (const Policy& policy : policies) {
    PolicyResult r;
    r.name = policy.name;
    r.totals.reserve(realizations.size());
    for (const Realization& realization : realizations) {
      r.totals.push_back(rollout(instance, realization, policy.choose).total);
    }
    r.mean_total = mean(r.totals);
    report.results.push_back(std::move(r));
  }
  for (std::size_t i = 1; i < report.results.size(); ++i) {
    if (report.results[i].mean_total < report.results[report.best].mean_total) report.best = i;
  }
  const std::vector<double>& best = report.results[report.best].totals;
  for (PolicyResult& r : report.results) r.gap = gap_stats(percentage_gaps(r.totals, best));
  return report;
}

std::string report_to_csv(const EvaluationReport& report) {
  std::string out = "# trnrp " + std::string(kVersion) + " seed=" + std::to_string(report.seed) + "\n";
  out += "policy,mean_total,gap_mean_pct,gap_ci_lo,gap_ci_hi,R,seed\n";
  char line[256];
  for (const PolicyResult& r : report.results) {
    std::snprintf(line, sizeof line, "%s,%.6f,%.6f,%.6f,%.6f,%zu,%llu\n", r.name.c_str(),
                  r.mean_total, r.gap.mean, r.gap.ci_lo, r.gap.ci_hi, report.realizations,
                  static_cast<unsigned long long>(report.seed));
    out += line;
  }
  return out;
}

}  // namespace trnrp
