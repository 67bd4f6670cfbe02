#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trnrp/instance.hpp"
#include "trnrp/mdp.hpp"
#include "trnrp/policy.hpp"

namespace trnrp {

inline constexpr double kZ95 = 1.96;
inline constexpr double kZOneSided95 = 1.645;

double mean(std::span<const double> xs);
/// Sample standard deviation (n-1 denominator); 0 for fewer than two values.
double sample_sd(std::span<const double> xs);

/// Normal-approximation 95% interval: mean +- 1.96 * sd / sqrt(R).
struct GapStats {
  double mean = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::size_t count = 0;
  /// Set for R = 1, where no spread can be estimated.
  bool degenerate = false;

  double half_width() const { return (ci_hi - ci_lo) / 2.0; }
};
GapStats gap_stats(std::span<const double> gaps_pct);

/// 100 * (t_i - best_i) / best_i per realization; 0 where both are 0.
std::vector<double> percentage_gaps(std::span<const double> totals, std::span<const double> best);

/// Paired z statistic mean(d) / (sd(d)/sqrt(R)) for d_i = a_i - b_i. Returns
/// +-infinity (or 0 when the mean is 0) if every difference is equal.
double paired_z(std::span<const double> a, std::span<const double> b);

/// R realizations drawn from one generator seeded with `seed`.
std::vector<Realization> draw_realizations(const Instance& instance, std::size_t count,
                                           std::uint64_t seed);

struct PolicyResult {
  std::string name;
  double mean_total = 0.0;
  GapStats gap;
  std::vector<double> totals;
};

struct EvaluationReport {
  std::vector<PolicyResult> results;
  std::size_t best = 0;
  std::size_t realizations = 0;
  std::uint64_t seed = 0;
};

/// Every policy runs on the same realization list; gaps are against the
/// policy with the lowest mean (first listed on ties). Throws
/// std::invalid_argument when R = 0 or no policy is given.
EvaluationReport evaluate(const Instance& instance, std::span<const Policy> policies,
                          std::size_t realizations, std::uint64_t seed);
EvaluationReport evaluate(const Instance& instance, std::span<const Policy> policies,
                          std::span<const Realization> realizations, std::uint64_t seed);

/// Header comment "# trnrp <version> seed=<seed>" then columns policy,
/// mean_total, gap_mean_pct, gap_ci_lo, gap_ci_hi, R, seed.
std::string report_to_csv(const EvaluationReport& report);

}  // namespace trnrp
