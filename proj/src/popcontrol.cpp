#include "popmc/popcontrol.hpp"

#include <cmath>

#include "popmc/errors.hpp"

namespace popmc::pop {

double compute_objective_weight(double census_energy, double source_energy,
                                std::int64_t objective_count) {
  if (objective_count < 1) {
    throw InvalidObjective("objective count must be >= 1");
  }
  const double total = census_energy + source_energy;
  if (!(total > 0.0)) {
    throw DegenerateCell("cell has no energy to control (E_r + S <= 0)");
  }
  return total / static_cast<double>(objective_count);
}

EmittedSet plan_source_emission(double source_energy, double objective_weight) {
  if (!(source_energy > 0.0)) {
    return {};
  }
  if (!(objective_weight > 0.0)) {
    throw InvalidWeight("objective weight must be positive");
  }
  const auto count =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(source_energy / objective_weight));
  return {count, source_energy / static_cast<double>(count)};
}

std::size_t roulette_split(double weight, double objective_weight, double u,
                           SplittingMode mode, std::vector<double>& out) {
  if (!(weight > 0.0) || !(objective_weight > 0.0)) {
    throw InvalidWeight("roulette_split requires positive weight and objective weight");
  }
  const double ratio = weight / objective_weight;
  const double integer_part = std::floor(ratio);
  const double fractional = ratio - integer_part;

  if (integer_part == 0.0) {
    // Russian Roulette: survive with probability R, promoted to w_obj.
    if (fractional < u) {
      return 0;
    }
    out.push_back(objective_weight);
    return 1;
  }

  const auto n_split = static_cast<std::int64_t>(integer_part) + (u < fractional ? 1 : 0);
  const double copy_weight = (mode == SplittingMode::conservative)
                                 ? weight / static_cast<double>(n_split)
                                 : objective_weight;
  for (std::int64_t i = 0; i < n_split; ++i) {
    out.push_back(copy_weight);
  }
  return static_cast<std::size_t>(n_split);
}

std::pair<std::vector<double>, double> renormalize(std::span<const double> weights,
                                                   double target) {
  if (weights.empty()) {
    throw InvalidWeight("renormalize requires a nonempty weight list");
  }
  if (!(target > 0.0)) {
    throw InvalidWeight("renormalize target must be positive");
  }

  double sum = 0.0;
  bool all_equal = true;
  for (double w : weights) {
    sum += w;
    all_equal = all_equal && (w == weights[0]);
  }
  if (!(sum > 0.0)) {
    throw InvalidWeight("renormalize requires positive total weight");
  }

  const double c = target / sum;
  std::vector<double> scaled(weights.size());
  if (all_equal) {
    // Exact path: an exactly-uniform population stays exactly uniform and
    // sums to the target without roundoff from the running sum.
    const double w = target / static_cast<double>(weights.size());
    for (auto& s : scaled) s = w;
  } else {
    for (std::size_t i = 0; i < weights.size(); ++i) scaled[i] = c * weights[i];
  }
  return {std::move(scaled), c};
}

MultiSourceOutcome apply_cell_control_multi(std::span<const double> initial_weights,
                                            std::span<const double> source_energies,
                                            std::int64_t objective_count,
                                            SplittingMode mode,
                                            rng::StreamKey cell_stream) {
  double census_energy = 0.0;
  for (double w : initial_weights) {
    if (!(w > 0.0)) throw InvalidWeight("initial weights must be positive");
    census_energy += w;
  }
  double source_total = 0.0;
  for (double s : source_energies) {
    if (s < 0.0) throw InvalidWeight("source energies must be non-negative");
    source_total += s;
  }

  MultiSourceOutcome outcome;
  outcome.objective_weight =
      compute_objective_weight(census_energy, source_total, objective_count);

  outcome.emitted.reserve(source_energies.size());
  double emitted_total = 0.0;
  for (double s : source_energies) {
    outcome.emitted.push_back(plan_source_emission(s, outcome.objective_weight));
    emitted_total += outcome.emitted.back().total();
  }

  // Roulette / splitting, one uniform per initial particle. Streams are
  // derived per particle index so any traversal order gives the same result.
  const auto roulette_key = cell_stream.derive(rng::Purpose::roulette);
  std::vector<double> copies;
  double kept_sum = 0.0;
  for (std::size_t p = 0; p < initial_weights.size(); ++p) {
    rng::Generator gen(roulette_key.derive(p));
    const double u = gen.uniform01();
    copies.clear();
    const std::size_t n = roulette_split(initial_weights[p], outcome.objective_weight, u,
                                         mode, copies);
    const bool rouletted = initial_weights[p] / outcome.objective_weight < 1.0;
    if (n == 0) {
      ++outcome.counters.killed;
      continue;
    }
    if (rouletted) {
      ++outcome.counters.survived_rr;
    } else if (n >= 2) {
      ++outcome.counters.split_events;
      outcome.counters.clones_created += static_cast<std::int64_t>(n) - 1;
    }
    for (double w : copies) {
      outcome.kept.push_back({w, p});
      kept_sum += w;
    }
  }

  // Non-void correction: a sourceless cell must never end up empty. The
  // single surviving particle carries the cell energy exactly.
  if (outcome.kept.empty() && !(source_total > 0.0)) {
    outcome.kept.push_back({census_energy, 0});
    outcome.renorm_factor = 1.0;
    return outcome;
  }

  // Final renormalization of kept and emitted particles by the same factor.
  const double total_energy = census_energy + source_total;
  const double present = kept_sum + emitted_total;
  const double c = total_energy / present;
  outcome.renorm_factor = c;
  for (auto& p : outcome.kept) p.weight *= c;
  for (auto& e : outcome.emitted) e.weight *= c;
  return outcome;
}

CellControlOutcome apply_cell_control(const CellControlInput& input,
                                      rng::StreamKey cell_stream) {
  const double sources[] = {input.source_energy};
  auto multi = apply_cell_control_multi(input.initial_weights,
                                        std::span<const double>(sources, 1),
                                        input.objective_count, input.mode, cell_stream);
  CellControlOutcome outcome;
  outcome.kept = std::move(multi.kept);
  outcome.emitted = multi.emitted[0];
  outcome.objective_weight = multi.objective_weight;
  outcome.renorm_factor = multi.renorm_factor;
  outcome.counters = multi.counters;
  return outcome;
}

} // namespace popmc::pop
