#include "popmc/stats.hpp"

#include <cmath>

#include "popmc/errors.hpp"

namespace popmc::stats {

namespace {

// Regularized incomplete beta via Lentz's continued fraction.
double betacf(double a, double b, double x) {
  constexpr int max_iter = 300;
  constexpr double eps = 3e-16;
  constexpr double fpmin = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return h;
}

double ibeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * betacf(a, b, x) / a;
  }
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

// Student-t CDF with `dof` degrees of freedom.
double student_t_cdf(double t, double dof) {
  const double x = dof / (dof + t * t);
  const double p = 0.5 * ibeta(dof / 2.0, 0.5, x);
  return t >= 0.0 ? 1.0 - p : p;
}

} // namespace

double student_t_quantile(double p, std::int64_t dof) {
  if (dof < 1) throw InsufficientRuns("t quantile needs at least 1 degree of freedom");
  if (!(p > 0.0 && p < 1.0)) throw Error("t quantile probability must lie in (0, 1)");
  // Bisection; the CDF is monotone and the bracket is generous.
  double lo = -1e8, hi = 1e8;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, static_cast<double>(dof)) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Summary summarize(const RealizationMatrix& matrix) {
  const auto n = static_cast<std::int64_t>(matrix.values.size());
  if (n < 2) throw InsufficientRuns("variance needs at least two realizations");
  const std::size_t n_cells = matrix.values.front().size();
  for (const auto& row : matrix.values) {
    if (row.size() != n_cells) throw Error("realization rows have unequal width");
  }

  Summary out;
  out.n_runs = n;
  out.mean.assign(n_cells, 0.0);
  out.var.assign(n_cells, 0.0);
  out.std_dev.assign(n_cells, 0.0);
  out.ci99_halfwidth.assign(n_cells, 0.0);

  for (const auto& row : matrix.values) {
    for (std::size_t m = 0; m < n_cells; ++m) out.mean[m] += row[m];
  }
  for (auto& mu : out.mean) mu /= static_cast<double>(n);

  for (const auto& row : matrix.values) {
    for (std::size_t m = 0; m < n_cells; ++m) {
      const double d = row[m] - out.mean[m];
      out.var[m] += d * d;
    }
  }
  const double t = student_t_quantile(0.995, n - 1);
  for (std::size_t m = 0; m < n_cells; ++m) {
    out.var[m] /= static_cast<double>(n - 1);
    out.std_dev[m] = std::sqrt(out.var[m]);
    out.ci99_halfwidth[m] = t * out.std_dev[m] / std::sqrt(static_cast<double>(n));
  }
  return out;
}

double relative_error_sq(const Summary& summary) {
  double var_sum = 0.0;
  double mean_sq_sum = 0.0;
  for (std::size_t m = 0; m < summary.mean.size(); ++m) {
    var_sum += summary.var[m];
    mean_sq_sum += summary.mean[m] * summary.mean[m];
  }
  if (!(mean_sq_sum > 0.0)) {
    throw DegenerateReference("relative error undefined for an all-zero mean field");
  }
  return var_sum / mean_sq_sum;
}

std::optional<double> figure_of_merit(double re2, double t_cpu_mean) {
  if (re2 < 0.0 || !(t_cpu_mean > 0.0)) {
    throw Error("figure of merit requires re2 >= 0 and positive CPU time");
  }
  if (re2 == 0.0) return std::nullopt;
  return 1.0 / (re2 * t_cpu_mean);
}

} // namespace popmc::stats
