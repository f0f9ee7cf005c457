// Cross-realization statistics: per-cell mean/variance/confidence
// intervals, the squared relative error of a cell-field, and the figure
// of merit 1 / (RE^2 * T_cpu).

#ifndef POPMC_STATS_HPP
#define POPMC_STATS_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace popmc::stats {

// values[run][cell]; every row must have the same width.
struct RealizationMatrix {
  std::vector<std::vector<double>> values;
  std::vector<double> cpu_seconds; // optional, one entry per run
};

struct Summary {
  std::vector<double> mean;
  std::vector<double> var; // unbiased, 1/(n-1)
  std::vector<double> std_dev;
  std::vector<double> ci99_halfwidth; // t_{0.995, n-1} * std / sqrt(n)
  std::int64_t n_runs = 0;
};

// Throws InsufficientRuns when fewer than two runs are present.
Summary summarize(const RealizationMatrix& matrix);

// RE^2 = sum_m Var(m) / sum_m mean(m)^2.
// Throws DegenerateReference when all means are zero.
double relative_error_sq(const Summary& summary);

// 1 / (re2 * t_cpu); empty when re2 == 0 (infinite merit sentinel).
std::optional<double> figure_of_merit(double re2, double t_cpu_mean);

// Student-t quantile, used for the 99% confidence interval half-width.
double student_t_quantile(double p, std::int64_t dof);

} // namespace popmc::stats

#endif // POPMC_STATS_HPP
